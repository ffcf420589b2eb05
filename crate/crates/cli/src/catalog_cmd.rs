use anyhow::{anyhow, Result};
use compat_leibniz::catalog::{
    self, pair_claims_2d, pair_claims_3d, verify_pair_claim, verify_pairs, CatalogEntry, PairClaim,
    PairStatus, PairVerdict,
};
use compat_leibniz::io::{bracket_to_value, matrix_to_value};
use compat_leibniz::scalar::{self, Scalar};
use serde_json::{json, Value};

use crate::report::*;

fn alpha_text(a: Option<&Scalar>) -> String {
    a.map(|a| format!(" at α = {}", scalar::format(a)))
        .unwrap_or_default()
}

fn alpha_json(a: Option<&Scalar>) -> Value {
    a.map(scalar::to_json).unwrap_or(Value::Null)
}

fn tags(e: &CatalogEntry) -> Vec<String> {
    e.tags.iter().map(|t| t.to_string()).collect()
}

pub fn list() -> Result<Report> {
    let mut r = Report::new(Value::Null);
    let mut items = Vec::new();
    for e in catalog::entries() {
        let mut line = format!("{:<7} {}", e.name, tags(&e).join(", "));
        if let Some(p) = e.parameter {
            line.push_str(&format!("  [{}]", p.describe()));
        }
        r.line(line.trim_end());
        items.push(json!({
            "name": e.name,
            "dim": e.dim,
            "parameter": e.parameter.map(|p| p.describe()),
            "tags": tags(&e),
        }));
    }
    r.json = json!({ "entries": items });
    Ok(r)
}

/// Accepts `alpha=V`, `α=V`, `a=V` or a bare `V`.
pub fn parse_param(s: &str) -> Result<Scalar> {
    let value = match s.split_once('=') {
        Some((k, v)) if matches!(k.trim(), "alpha" | "α" | "a") => v,
        Some((k, _)) => return Err(anyhow!("unknown parameter {k:?}; expected alpha=VALUE")),
        None => s,
    };
    Ok(scalar::parse(value.trim())?)
}

pub fn show(name: &str, param: Option<&str>) -> Result<Report> {
    let entry = catalog::lookup(name)?;
    let alpha = param.map(parse_param).transpose()?;
    let b = entry.instantiate(alpha.as_ref())?;
    let mut r = Report::new(Value::Null);
    r.line(format!("{}{}", entry.name, alpha_text(alpha.as_ref())));
    if !entry.tags.is_empty() {
        r.line(format!("tags: {}", tags(&entry).join(", ")));
    }
    let mut any = false;
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            let v = b.basis_product(i, j);
            if !v.is_zero() {
                r.line(format!("[e{}, e{}] = {v}", i + 1, j + 1));
                any = true;
            }
        }
    }
    if !any {
        r.line("all brackets vanish");
    }
    r.json = json!({
        "name": entry.name,
        "dim": entry.dim,
        "alpha": alpha_json(alpha.as_ref()),
        "tags": tags(&entry),
        "bracket": bracket_to_value(&b),
    });
    Ok(r)
}

/// A pinned claim already names its parameter value.
fn pair_head(claim: &PairClaim, alpha: Option<&Scalar>) -> String {
    match claim.fixed_alpha {
        Some(_) => claim.label(),
        None => format!("{}{}", claim.label(), alpha_text(alpha)),
    }
}

/// The two 2D pairs that fail at their printed bases.
fn negative_claims_2d() -> Vec<PairClaim> {
    vec![PairClaim::new(2, 1, 2, None), PairClaim::new(2, 1, 3, None)]
}

fn canonical_section(r: &mut Report, claims: &[PairClaim]) -> Result<Vec<Value>> {
    let mut out = Vec::new();
    for claim in claims {
        for alpha in claim.parameter_values()? {
            let verdict = verify_pair_claim(claim, alpha.as_ref())?;
            let head = pair_head(claim, alpha.as_ref());
            let witness = match &verdict {
                PairVerdict::CompatibleAtCanonicalBasis => {
                    r.line(format!("{head}: compatible"));
                    Value::Null
                }
                PairVerdict::DefectFound(w) => {
                    r.line(format!("{head}: not compatible ({})", w.condition));
                    witness_lines(r, &w.witness);
                    pair_witness_json(w)
                }
            };
            out.push(json!({
                "pair": claim.label(),
                "alpha": alpha_json(alpha.as_ref()),
                "compatible": verdict.is_compatible(),
                "witness": witness,
            }));
        }
    }
    Ok(out)
}

pub fn verify(pairs: bool, attempts: usize, seed: u64) -> Result<Report> {
    let mut r = Report::new(Value::Null);
    let reports = catalog::verify_catalog()?;
    let mut entries = Vec::new();
    for e in &reports {
        let mut line = format!(
            "{}{}: Leibniz {}",
            e.name,
            alpha_text(e.alpha.as_ref()),
            pass(e.leibniz.holds())
        );
        if let Some(anti) = e.antisymmetric {
            line.push_str(&format!(", antisymmetric {}", pass(anti)));
        }
        r.line(line);
        if let Some(w) = e.leibniz.witness() {
            witness_lines(&mut r, w);
        }
        entries.push(json!({
            "name": e.name,
            "alpha": alpha_json(e.alpha.as_ref()),
            "leibniz": e.leibniz.holds(),
            "witness": e.leibniz.witness().map(witness_json),
            "antisymmetric": e.antisymmetric,
        }));
    }
    let passed = reports.iter().all(|e| e.passed());
    r.line(format!("catalog: {}", pass(passed)));
    r.failed = !passed;

    let mut pair_json = Value::Null;
    if pairs {
        r.line("");
        r.line("2D pairs at the printed bases:");
        let mut two = canonical_section(&mut r, &pair_claims_2d())?;
        two.extend(canonical_section(&mut r, &negative_claims_2d())?);

        r.line("");
        r.line(format!(
            "3D pairs (search: {attempts} attempts, seed {seed}):"
        ));
        let mut three = Vec::new();
        let mut counts = [0usize; 3];
        for p in verify_pairs(&pair_claims_3d(), attempts, seed)? {
            let head = pair_head(&p.claim, p.alpha.as_ref());
            r.line(format!("{head}: {}", p.status.label()));
            let (witness, basis) = match &p.status {
                PairStatus::Verified => {
                    counts[0] += 1;
                    (Value::Null, Value::Null)
                }
                PairStatus::WitnessFound(b) => {
                    counts[1] += 1;
                    r.line(format!("  basis change: {}", matrix_text(b.matrix())));
                    (Value::Null, matrix_to_value(b.matrix()))
                }
                PairStatus::Unresolved(w) => {
                    counts[2] += 1;
                    r.line(format!("  canonical defect: {}", w.witness));
                    (pair_witness_json(w), Value::Null)
                }
            };
            three.push(json!({
                "pair": p.claim.label(),
                "alpha": alpha_json(p.alpha.as_ref()),
                "status": p.status.label(),
                "witness": witness,
                "basis_change": basis,
            }));
        }
        r.line(format!(
            "verified {}, witness-found {}, unresolved {}",
            counts[0], counts[1], counts[2]
        ));
        pair_json = json!({
            "two_dimensional": two,
            "three_dimensional": three,
            "summary": { "verified": counts[0], "witness_found": counts[1], "unresolved": counts[2] },
        });
    }
    r.json = json!({ "entries": entries, "entries_passed": passed, "pairs": pair_json });
    Ok(r)
}

fn matrix_text(m: &compat_leibniz::linalg::ExactMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let cells: Vec<String> = m.row(i).iter().map(scalar::format).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}
