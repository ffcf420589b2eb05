use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use compat_leibniz::deformation::{apply_gauge, Infinitesimal, TruncatedDeformation};
use compat_leibniz::io::{self, compat_cochain_to_value, deformation_to_value, gauge_from_value};
use compat_leibniz::Error;
use serde_json::{json, Value};

use crate::report::*;

/// Loads a deformation; an `"algebra"` path is taken relative to the file.
pub fn load(path: &Path) -> Result<TruncatedDeformation> {
    let v = read_json(path)?;
    let loader = |rel: &str| -> compat_leibniz::Result<Value> {
        let p = sibling(path, rel);
        let text = std::fs::read_to_string(&p)
            .map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
        io::parse_json(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
    };
    io::deformation_from_value(&v, &loader).with_context(|| path.display().to_string())
}

fn infinitesimal(d: &TruncatedDeformation) -> Result<Option<Infinitesimal>> {
    match d.infinitesimal() {
        Ok(inf) => Ok(Some(inf)),
        Err(Error::NoInfinitesimal) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn verify(path: &Path) -> Result<Report> {
    let d = load(path)?;
    let failure = d.first_failure()?;
    let mut r = Report::new(Value::Null);
    r.line(format!(
        "Deformation of order {}: {}",
        d.order(),
        pass(failure.is_none())
    ));
    if let Some((n, c)) = failure {
        r.line(format!("  first nonzero residual: {c} at t^{n}"));
        r.failed = true;
    }
    let inf = infinitesimal(&d)?;
    match &inf {
        None => r.line("infinitesimal: none (all terms vanish)"),
        Some(i) => r.line(format!(
            "infinitesimal: order {}, 2-cocycle: {}",
            i.order,
            if i.is_cocycle { "yes" } else { "no" }
        )),
    }
    r.json = json!({
        "order": d.order(),
        "valid": failure.is_none(),
        "failure": failure.map(|(n, c)| json!({ "order": n, "component": c.to_string() })),
        "infinitesimal": inf.map(|i| json!({ "order": i.order, "cocycle": i.is_cocycle })),
    });
    Ok(r)
}

pub fn obstruction(path: &Path) -> Result<Report> {
    let d = load(path)?;
    let mut r = Report::new(Value::Null);
    let obs = match d.obstruction() {
        Ok(o) => o,
        Err(Error::InvalidDeformation(msg)) => {
            r.line(format!("Deformation of order {}: FAIL", d.order()));
            r.line(format!("  {msg}"));
            r.failed = true;
            r.json = json!({ "order": d.order(), "valid": false, "reason": msg });
            return Ok(r);
        }
        Err(e) => return Err(e.into()),
    };
    r.line(format!("obstruction at order {}", obs.order + 1));
    r.line(format!(
        "closed: {}",
        if obs.is_closed { "yes" } else { "no" }
    ));
    r.line(format!(
        "zero: {}",
        if obs.is_zero() { "yes" } else { "no" }
    ));
    let names = ["first", "mixed", "second"];
    for (name, c) in names.iter().zip(obs.class.components()) {
        if let Some(at) = first_nonzero_text(c) {
            r.line(format!("  {name}: {at}"));
        }
    }
    r.json = json!({
        "order": obs.order,
        "valid": true,
        "closed": obs.is_closed,
        "zero": obs.is_zero(),
        "class": compat_cochain_to_value(&obs.class),
    });
    Ok(r)
}

fn emit(r: &mut Report, v: &Value, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(p) => {
            write_json(p, v)?;
            r.line(format!("written to {}", p.display()));
        }
        None => r.text.push_str(&io::to_canonical_string(v)),
    }
    Ok(())
}

pub fn extend(path: &Path, out: Option<&PathBuf>) -> Result<Report> {
    let d = load(path)?;
    let mut r = Report::new(Value::Null);
    if let Some((n, c)) = d.first_failure()? {
        r.line(format!("Deformation of order {}: FAIL", d.order()));
        r.line(format!("  first nonzero residual: {c} at t^{n}"));
        r.failed = true;
        r.json = json!({ "order": d.order(), "extended": false, "deformation": Value::Null });
        return Ok(r);
    }
    match d.extend()? {
        Some(e) => {
            let v = deformation_to_value(&e);
            r.line(format!("Extension to order {}: FOUND", e.order()));
            emit(&mut r, &v, out)?;
            r.json = json!({ "order": e.order(), "extended": true, "deformation": v });
        }
        None => {
            r.line(format!(
                "Extension to order {}: NONE (the obstruction is not a coboundary)",
                d.order() + 1
            ));
            r.failed = true;
            r.json = json!({ "order": d.order(), "extended": false, "deformation": Value::Null });
        }
    }
    Ok(r)
}

pub fn gauge(path: &Path, phi: &Path, out: Option<&PathBuf>) -> Result<Report> {
    let d = load(path)?;
    let g = gauge_from_value(&read_json(phi)?).with_context(|| phi.display().to_string())?;
    let moved = apply_gauge(&d, &g)?;
    let valid = moved.is_deformation_of_order()?;
    let v = deformation_to_value(&moved);
    let mut r = Report::new(Value::Null);
    r.line(format!(
        "Gauge of order {} applied: deformation {}",
        g.order(),
        pass(valid)
    ));
    r.failed = !valid;
    emit(&mut r, &v, out)?;
    r.json = json!({ "order": moved.order(), "valid": valid, "deformation": v });
    Ok(r)
}
