use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use compat_leibniz::cochain::CompatCochain;
use compat_leibniz::extension::{build_extension, ext_classes_dim};
use compat_leibniz::io::{
    self, bimodule_from_value, bimodule_to_value, compat_cochain_from_value,
    compat_cochain_to_value, extension_from_value, extension_to_value,
};
use compat_leibniz::representation::{is_compatible_bimodule, CompatibleBimodule, ConditionB};
use compat_leibniz::{CompatiblePair, Error};
use serde_json::{json, Value};

use crate::algebra_cmd::load_pair;
use crate::report::*;

fn load_bimodule(path: &Path, pair: &CompatiblePair) -> Result<CompatibleBimodule> {
    let cbm = bimodule_from_value(&read_json(path)?, pair.dim())
        .with_context(|| path.display().to_string())?;
    if let Some(w) = is_compatible_bimodule(pair, &cbm, ConditionB::Symmetric)? {
        bail!("{}: not a compatible bimodule: {w}", path.display());
    }
    Ok(cbm)
}

pub fn build(
    algebra: &Path,
    bimodule: &Path,
    cocycle: &Path,
    out: Option<&PathBuf>,
) -> Result<Report> {
    let pair = load_pair(algebra)?;
    let cbm = load_bimodule(bimodule, &pair)?;
    let f = compat_cochain_from_value(&read_json(cocycle)?)
        .with_context(|| cocycle.display().to_string())?;
    if f.degree() != 2 {
        bail!("{}: the cocycle must have degree 2", cocycle.display());
    }
    let (f1, f2) = (&f.components()[0], &f.components()[1]);
    let mut r = Report::new(Value::Null);
    let ext = match build_extension(&pair, &cbm, f1, f2) {
        Ok(e) => e,
        Err(Error::NotACocycle { component }) => {
            r.line("Cocycle: FAIL");
            r.line(format!(
                "  component {component} of the coboundary is nonzero"
            ));
            r.failed = true;
            r.json = json!({ "cocycle": false, "extension": Value::Null });
            return Ok(r);
        }
        Err(e) => return Err(e.into()),
    };
    let v = extension_to_value(&ext);
    r.line("Cocycle: PASS");
    r.line(format!(
        "extension of dimension {} = {} + {}",
        ext.total().dim(),
        ext.dim_m(),
        pair.dim()
    ));
    match out {
        Some(p) => {
            write_json(p, &v)?;
            r.line(format!("written to {}", p.display()));
        }
        None => r.text.push_str(&io::to_canonical_string(&v)),
    }
    r.json = json!({ "cocycle": true, "extension": v });
    Ok(r)
}

pub fn extract(path: &Path) -> Result<Report> {
    let ext =
        extension_from_value(&read_json(path)?).with_context(|| path.display().to_string())?;
    let (f1, f2) = ext.extract_cocycle()?;
    let cocycle = compat_cochain_to_value(&CompatCochain::new(2, vec![f1, f2])?);
    let bimodule = bimodule_to_value(&ext.induced_bimodule()?);
    let json = json!({ "cocycle": cocycle, "bimodule": bimodule });
    let mut r = Report::new(json.clone());
    r.text.push_str(&io::to_canonical_string(&json));
    Ok(r)
}

pub fn classes(algebra: &Path, bimodule: &Path) -> Result<Report> {
    let pair = load_pair(algebra)?;
    let cbm = load_bimodule(bimodule, &pair)?;
    let dim = ext_classes_dim(&pair, &cbm)?;
    let mut r = Report::new(json!({ "dimension": dim }));
    r.line(dim.to_string());
    Ok(r)
}
