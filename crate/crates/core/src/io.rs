//! JSON file formats. All indices in files are 1-based; scalars are JSON
//! integers or `"p/q"` strings; only nonzero entries are stored.
//!
//! * algebra: `{"dim": d, "brackets": [B1, B2?]}`, each `B` a list of
//!   `[i, j, k, c]` meaning `[e_i, e_j]` has coefficient `c` on `e_k`.
//! * cochain: `{"degree": n, "dimG": d, "dimM": m, "entries": [[i1..in, k, c]]}`.
//! * compatible cochain: as a cochain but with `"components": [entries, ..]`.
//! * bimodule: `{"dimM": m, "l1": .., "r1": .., "l2": .., "r2": ..}` with
//!   `l` entries `[x, m, k, c]` and `r` entries `[m, x, k, c]`.
//! * deformation: `{"algebra": path-or-object, "order": N,
//!   "terms1": {"1": entries, ..}, "terms2": {..}}`.
//! * gauge: `{"dim": d, "order": N, "phi": {"1": [[i, k, c]], ..}}`.
//! * extension: `{"dimG", "dimM", "base": algebra, "total": algebra,
//!   "inclusion", "projection", "splitting"}` with matrices as row lists.
//!
//! [`to_canonical_string`] writes a value with one entry per line, so a file
//! written by this module parses and re-serializes to identical bytes.

use serde_json::{json, Map, Value};

use crate::algebra::{BracketTensor, CompatiblePair};
use crate::cochain::{pow, BimoduleActions, Cochain, CompatCochain};
use crate::deformation::{GaugeTransform, TruncatedDeformation};
use crate::error::{Error, Result};
use crate::extension::AbelianExtension;
use crate::linalg::ExactMatrix;
use crate::representation::CompatibleBimodule;
use crate::scalar::{self, Scalar};

fn perr(at: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{at}: {msg}"))
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn field<'a>(obj: &'a Value, key: &str, at: &str) -> Result<&'a Value> {
    obj.as_object()
        .ok_or_else(|| perr(at, "expected an object"))?
        .get(key)
        .ok_or_else(|| perr(at, format!("missing field \"{key}\"")))
}

fn usize_field(obj: &Value, key: &str, at: &str) -> Result<usize> {
    field(obj, key, at)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| perr(&format!("{at}.{key}"), "expected a nonnegative integer"))
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(at, "expected an array"))
}

fn scalar_at(v: &Value, at: &str) -> Result<Scalar> {
    scalar::from_json(v).map_err(|e| perr(at, e))
}

/// Parses `[i1, .., in, c]` entries with the given index bounds; returns
/// 0-based indices.
fn parse_entries(v: &Value, bounds: &[usize], at: &str) -> Result<Vec<(Vec<usize>, Scalar)>> {
    let mut out = Vec::new();
    for (n, e) in array(v, at)?.iter().enumerate() {
        let here = format!("{at}[{n}]");
        let items = array(e, &here)?;
        if items.len() != bounds.len() + 1 {
            return Err(perr(
                &here,
                format!("expected {} indices and a value", bounds.len()),
            ));
        }
        let mut idx = Vec::with_capacity(bounds.len());
        for (p, (item, &bound)) in items.iter().zip(bounds).enumerate() {
            let i = item
                .as_u64()
                .ok_or_else(|| perr(&format!("{here}[{p}]"), "expected an index"))?
                as usize;
            if i == 0 || i > bound {
                return Err(perr(
                    &format!("{here}[{p}]"),
                    format!("index {i} out of range 1..={bound}"),
                ));
            }
            idx.push(i - 1);
        }
        out.push((
            idx,
            scalar_at(&items[bounds.len()], &format!("{here}[{}]", bounds.len()))?,
        ));
    }
    Ok(out)
}

fn entry_value(idx: &[usize], c: &Scalar) -> Value {
    let mut row: Vec<Value> = idx.iter().map(|&i| json!(i + 1)).collect();
    row.push(scalar::to_json(c));
    Value::Array(row)
}

pub fn bracket_to_value(b: &BracketTensor) -> Value {
    Value::Array(
        b.nonzero_entries()
            .iter()
            .map(|(i, j, k, c)| entry_value(&[*i, *j, *k], c))
            .collect(),
    )
}

pub fn bracket_from_value(v: &Value, dim: usize, at: &str) -> Result<BracketTensor> {
    let entries = parse_entries(v, &[dim, dim, dim], at)?;
    BracketTensor::from_entries(dim, entries.into_iter().map(|(i, c)| (i[0], i[1], i[2], c)))
}

/// One or two brackets on a space of dimension `dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub dim: usize,
    pub brackets: Vec<BracketTensor>,
}

impl AlgebraFile {
    pub fn single(b: BracketTensor) -> Self {
        AlgebraFile {
            dim: b.dim(),
            brackets: vec![b],
        }
    }

    pub fn pair(p: &CompatiblePair) -> Self {
        AlgebraFile {
            dim: p.dim(),
            brackets: vec![p.first().clone(), p.second().clone()],
        }
    }

    pub fn first(&self) -> &BracketTensor {
        &self.brackets[0]
    }

    /// The pair `(B1, B2)`, with `B2 = 0` when the file has one bracket.
    /// Not validated.
    pub fn as_pair(&self) -> Result<CompatiblePair> {
        let second = self
            .brackets
            .get(1)
            .cloned()
            .unwrap_or_else(|| BracketTensor::zero(self.dim));
        CompatiblePair::unchecked(self.brackets[0].clone(), second)
    }

    pub fn to_value(&self) -> Value {
        json!({
            "dim": self.dim,
            "brackets": self.brackets.iter().map(bracket_to_value).collect::<Vec<_>>(),
        })
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let dim = usize_field(v, "dim", "algebra")?;
        let list = array(field(v, "brackets", "algebra")?, "algebra.brackets")?;
        if list.is_empty() || list.len() > 2 {
            return Err(perr("algebra.brackets", "expected one or two brackets"));
        }
        let brackets = list
            .iter()
            .enumerate()
            .map(|(n, b)| bracket_from_value(b, dim, &format!("algebra.brackets[{n}]")))
            .collect::<Result<_>>()?;
        Ok(AlgebraFile { dim, brackets })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_value(&parse_json(text)?)
    }

    pub fn to_text(&self) -> String {
        to_canonical_string(&self.to_value())
    }
}

fn cochain_entries(c: &Cochain) -> Value {
    let n = c.degree();
    let d = c.dim_g();
    let mut idx = vec![0; n];
    let mut rows = Vec::new();
    for t in 0..pow(d, n) {
        crate::cochain::decode(d, t, &mut idx);
        for (k, v) in c.value_at(t).iter().enumerate() {
            if *v != scalar::zero() {
                let mut full = idx.clone();
                full.push(k);
                rows.push(entry_value(&full, v));
            }
        }
    }
    Value::Array(rows)
}

fn cochain_from_entries(v: &Value, n: usize, d: usize, m: usize, at: &str) -> Result<Cochain> {
    let mut bounds = vec![d; n];
    bounds.push(m);
    let mut c = Cochain::zero(n, d, m);
    for (idx, val) in parse_entries(v, &bounds, at)? {
        let cur = c.get(&idx[..n], idx[n]).clone();
        c.set(&idx[..n], idx[n], cur + val);
    }
    Ok(c)
}

pub fn cochain_to_value(c: &Cochain) -> Value {
    json!({
        "degree": c.degree(),
        "dimG": c.dim_g(),
        "dimM": c.dim_m(),
        "entries": cochain_entries(c),
    })
}

pub fn cochain_from_value(v: &Value) -> Result<Cochain> {
    let n = usize_field(v, "degree", "cochain")?;
    let d = usize_field(v, "dimG", "cochain")?;
    let m = usize_field(v, "dimM", "cochain")?;
    cochain_from_entries(field(v, "entries", "cochain")?, n, d, m, "cochain.entries")
}

pub fn compat_cochain_to_value(c: &CompatCochain) -> Value {
    json!({
        "degree": c.degree(),
        "dimG": c.dim_g(),
        "dimM": c.dim_m(),
        "components": c.components().iter().map(cochain_entries).collect::<Vec<_>>(),
    })
}

pub fn compat_cochain_from_value(v: &Value) -> Result<CompatCochain> {
    let n = usize_field(v, "degree", "cochain")?;
    let d = usize_field(v, "dimG", "cochain")?;
    let m = usize_field(v, "dimM", "cochain")?;
    let list = array(field(v, "components", "cochain")?, "cochain.components")?;
    let comps = list
        .iter()
        .enumerate()
        .map(|(i, e)| cochain_from_entries(e, n, d, m, &format!("cochain.components[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    CompatCochain::new(n, comps).map_err(|e| perr("cochain.components", e))
}

fn actions_to_values(a: &BimoduleActions) -> (Value, Value) {
    let (d, m) = (a.dim_g(), a.dim_m());
    let mut l = Vec::new();
    let mut r = Vec::new();
    for i in 0..d {
        for j in 0..m {
            for k in 0..m {
                let c = a.left_coeff(i, j, k);
                if *c != scalar::zero() {
                    l.push(entry_value(&[i, j, k], c));
                }
            }
        }
    }
    for i in 0..m {
        for j in 0..d {
            for k in 0..m {
                let c = a.right_coeff(i, j, k);
                if *c != scalar::zero() {
                    r.push(entry_value(&[i, j, k], c));
                }
            }
        }
    }
    (Value::Array(l), Value::Array(r))
}

pub fn bimodule_to_value(cbm: &CompatibleBimodule) -> Value {
    let (l1, r1) = actions_to_values(cbm.actions1());
    let (l2, r2) = actions_to_values(cbm.actions2());
    json!({ "dimM": cbm.dim_m(), "l1": l1, "r1": r1, "l2": l2, "r2": r2 })
}

fn actions_from_values(
    l: &Value,
    r: &Value,
    d: usize,
    m: usize,
    k: usize,
) -> Result<BimoduleActions> {
    let mut a = BimoduleActions::zero(d, m);
    for (idx, c) in parse_entries(l, &[d, m, m], &format!("bimodule.l{k}"))? {
        let cur = a.left_coeff(idx[0], idx[1], idx[2]).clone();
        a.set_left(idx[0], idx[1], idx[2], cur + c);
    }
    for (idx, c) in parse_entries(r, &[m, d, m], &format!("bimodule.r{k}"))? {
        let cur = a.right_coeff(idx[0], idx[1], idx[2]).clone();
        a.set_right(idx[0], idx[1], idx[2], cur + c);
    }
    Ok(a)
}

/// Parses a bimodule over an algebra of dimension `dim_g`.
pub fn bimodule_from_value(v: &Value, dim_g: usize) -> Result<CompatibleBimodule> {
    let m = usize_field(v, "dimM", "bimodule")?;
    let empty = Value::Array(Vec::new());
    let get = |key: &str| -> Result<&Value> {
        match v.get(key) {
            Some(x) => Ok(x),
            None if v.is_object() => Ok(&empty),
            None => Err(perr("bimodule", "expected an object")),
        }
    };
    let a1 = actions_from_values(get("l1")?, get("r1")?, dim_g, m, 1)?;
    let a2 = actions_from_values(get("l2")?, get("r2")?, dim_g, m, 2)?;
    CompatibleBimodule::new(a1, a2)
}

fn terms_to_value(terms: &[Cochain]) -> Value {
    let mut map = Map::new();
    for (i, c) in terms.iter().enumerate() {
        if !c.is_zero() {
            map.insert((i + 1).to_string(), cochain_entries(c));
        }
    }
    Value::Object(map)
}

fn terms_from_value(v: Option<&Value>, order: usize, d: usize, key: &str) -> Result<Vec<Cochain>> {
    let mut terms = vec![Cochain::zero(2, d, d); order];
    let Some(v) = v else {
        return Ok(terms);
    };
    let obj = v
        .as_object()
        .ok_or_else(|| perr(&format!("deformation.{key}"), "expected an object"))?;
    for (k, entries) in obj {
        let at = format!("deformation.{key}.{k}");
        let i: usize = k
            .parse()
            .map_err(|_| perr(&at, "order keys must be integers"))?;
        if i == 0 || i > order {
            return Err(perr(&at, format!("order {i} out of range 1..={order}")));
        }
        terms[i - 1] = cochain_from_entries(entries, 2, d, d, &at)?;
    }
    Ok(terms)
}

/// Parses a deformation; `load` resolves an `"algebra"` given as a path.
/// The base pair is validated.
pub fn deformation_from_value(
    v: &Value,
    load: &dyn Fn(&str) -> Result<Value>,
) -> Result<TruncatedDeformation> {
    let alg = field(v, "algebra", "deformation")?;
    let alg = match alg {
        Value::String(path) => load(path)?,
        other => other.clone(),
    };
    let alg = AlgebraFile::from_value(&alg)?;
    let base = CompatiblePair::new(
        alg.brackets[0].clone(),
        alg.brackets
            .get(1)
            .cloned()
            .unwrap_or_else(|| BracketTensor::zero(alg.dim)),
    )?;
    let order = usize_field(v, "order", "deformation")?;
    let t1 = terms_from_value(v.get("terms1"), order, alg.dim, "terms1")?;
    let t2 = terms_from_value(v.get("terms2"), order, alg.dim, "terms2")?;
    TruncatedDeformation::new(base, t1, t2)
}

/// Writes a deformation with its base algebra inline.
pub fn deformation_to_value(defm: &TruncatedDeformation) -> Value {
    json!({
        "algebra": AlgebraFile::pair(defm.base()).to_value(),
        "order": defm.order(),
        "terms1": terms_to_value(defm.terms1()),
        "terms2": terms_to_value(defm.terms2()),
    })
}

pub fn gauge_from_value(v: &Value) -> Result<GaugeTransform> {
    let d = usize_field(v, "dim", "gauge")?;
    let order = usize_field(v, "order", "gauge")?;
    let mut phi = vec![Cochain::zero(1, d, d); order];
    if let Some(map) = v.get("phi") {
        let obj = map
            .as_object()
            .ok_or_else(|| perr("gauge.phi", "expected an object"))?;
        for (k, entries) in obj {
            let at = format!("gauge.phi.{k}");
            let i: usize = k
                .parse()
                .map_err(|_| perr(&at, "order keys must be integers"))?;
            if i == 0 || i > order {
                return Err(perr(&at, format!("order {i} out of range 1..={order}")));
            }
            phi[i - 1] = cochain_from_entries(entries, 1, d, d, &at)?;
        }
    }
    GaugeTransform::new(d, phi)
}

pub fn gauge_to_value(g: &GaugeTransform) -> Value {
    let terms: Vec<Cochain> = (1..=g.order()).map(|i| g.term(i)).collect();
    json!({ "dim": g.dim(), "order": g.order(), "phi": terms_to_value(&terms) })
}

pub fn matrix_to_value(m: &ExactMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(scalar::to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_value(v: &Value, at: &str) -> Result<ExactMatrix> {
    let rows = array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            array(r, &format!("{at}[{i}]"))?
                .iter()
                .enumerate()
                .map(|(j, x)| scalar_at(x, &format!("{at}[{i}][{j}]")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_rows(rows).map_err(|e| perr(at, e))
}

pub fn extension_to_value(ext: &AbelianExtension) -> Value {
    json!({
        "dimG": ext.base().dim(),
        "dimM": ext.dim_m(),
        "base": AlgebraFile::pair(ext.base()).to_value(),
        "total": AlgebraFile::pair(ext.total()).to_value(),
        "inclusion": matrix_to_value(ext.inclusion()),
        "projection": matrix_to_value(ext.projection()),
        "splitting": matrix_to_value(ext.splitting()),
    })
}

pub fn extension_from_value(v: &Value) -> Result<AbelianExtension> {
    let m = usize_field(v, "dimM", "extension")?;
    let base = AlgebraFile::from_value(field(v, "base", "extension")?)?;
    let total = AlgebraFile::from_value(field(v, "total", "extension")?)?;
    let pair = |a: &AlgebraFile| -> Result<CompatiblePair> {
        let second = a
            .brackets
            .get(1)
            .cloned()
            .unwrap_or_else(|| BracketTensor::zero(a.dim));
        CompatiblePair::new(a.brackets[0].clone(), second)
    };
    AbelianExtension::new(
        pair(&base)?,
        m,
        pair(&total)?,
        matrix_from_value(field(v, "inclusion", "extension")?, "extension.inclusion")?,
        matrix_from_value(field(v, "projection", "extension")?, "extension.projection")?,
        matrix_from_value(field(v, "splitting", "extension")?, "extension.splitting")?,
    )
}

fn is_container(v: &Value) -> bool {
    matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    let close = "  ".repeat(indent);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if !items.iter().any(is_container) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&x.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Stable layout: flat arrays on one line, nested containers one item per
/// line, two-space indentation, trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    const EXAMPLE: &str = "{\n  \"dim\": 3,\n  \"brackets\": [\n    [\n      [1, 3, 2, 1],\n      [3, 3, 1, \"-2/3\"]\n    ]\n  ]\n}\n";

    #[test]
    fn algebra_round_trip() {
        let a = AlgebraFile::parse(EXAMPLE).unwrap();
        assert_eq!(a.first().get(2, 2, 0), &frac(-2, 3));
        assert_eq!(a.to_text(), EXAMPLE);
    }

    #[test]
    fn errors_carry_locations() {
        let bad = r#"{"dim": 2, "brackets": [[[1, 3, 1, 1]]]}"#;
        let e = AlgebraFile::parse(bad).unwrap_err();
        assert_eq!(
            e,
            Error::Parse("algebra.brackets[0][0][1]: index 3 out of range 1..=2".into())
        );
        assert!(matches!(AlgebraFile::parse("{"), Err(Error::Parse(_))));
        let zero_den = r#"{"dim": 1, "brackets": [[[1, 1, 1, "1/0"]]]}"#;
        assert!(matches!(AlgebraFile::parse(zero_den), Err(Error::Parse(_))));
    }

    #[test]
    fn cochain_round_trip() {
        let mut c = Cochain::zero(2, 2, 3);
        c.set(&[1, 0], 2, frac(5, 7));
        c.set(&[0, 0], 0, int(-4));
        let v = cochain_to_value(&c);
        assert_eq!(cochain_from_value(&v).unwrap(), c);
        let text = to_canonical_string(&v);
        assert_eq!(to_canonical_string(&parse_json(&text).unwrap()), text);
    }

    #[test]
    fn bimodule_round_trip() {
        let pair = CompatiblePair::new(
            BracketTensor::from_entries(2, [(0, 0, 1, int(1))]).unwrap(),
            BracketTensor::from_entries(2, [(0, 0, 1, int(1)), (1, 0, 1, int(1))]).unwrap(),
        )
        .unwrap();
        let cbm = CompatibleBimodule::adjoint(&pair);
        let v = bimodule_to_value(&cbm);
        assert_eq!(bimodule_from_value(&v, 2).unwrap(), cbm);
    }
}
