use std::path::Path;

use anyhow::{bail, Context, Result};
use compat_leibniz::algebra::is_compatible_pair;
use compat_leibniz::cochain::{cohomology_dim_with, BimoduleActions, Cochain, CompatData};
use compat_leibniz::graded::mc_check;
use compat_leibniz::io::AlgebraFile;
use compat_leibniz::{BracketTensor, CompatiblePair};
use serde_json::{json, Value};

use crate::report::*;

pub fn load_algebra(path: &Path) -> Result<AlgebraFile> {
    AlgebraFile::parse(&read(path)?).with_context(|| path.display().to_string())
}

/// The validated pair of a file; a single bracket is paired with zero.
pub fn load_pair(path: &Path) -> Result<CompatiblePair> {
    let file = load_algebra(path)?;
    let second = file
        .brackets
        .get(1)
        .cloned()
        .unwrap_or_else(|| BracketTensor::zero(file.dim));
    CompatiblePair::new(file.brackets[0].clone(), second)
        .with_context(|| path.display().to_string())
}

pub fn check(path: &Path, compatible: bool) -> Result<Report> {
    let file = load_algebra(path)?;
    if compatible && file.brackets.len() != 2 {
        bail!(
            "{}: --compatible needs a file with two brackets",
            path.display()
        );
    }
    let mut r = Report::new(Value::Null);
    let mut brackets = Vec::new();
    let single = file.brackets.len() == 1;
    for (n, b) in file.brackets.iter().enumerate() {
        let check = b.is_leibniz();
        let ok = check.holds();
        if single {
            r.line(format!("Leibniz: {}", pass(ok)));
        } else {
            r.line(format!("Leibniz (bracket {}): {}", n + 1, pass(ok)));
        }
        if let Some(w) = check.witness() {
            witness_lines(&mut r, w);
            r.failed = true;
        }
        brackets.push(json!({
            "bracket": n + 1,
            "leibniz": ok,
            "witness": check.witness().map(witness_json),
        }));
    }
    let mut compat = Value::Null;
    if compatible {
        let failure = is_compatible_pair(&file.brackets[0], &file.brackets[1])?;
        match &failure {
            None => r.line("Compatible: PASS"),
            Some(w) => {
                r.line(format!("Compatible: FAIL ({})", w.condition));
                witness_lines(&mut r, &w.witness);
                r.failed = true;
            }
        }
        compat = json!({
            "holds": failure.is_none(),
            "failure": failure.as_ref().map(pair_witness_json),
        });
    }
    r.json = json!({ "dim": file.dim, "brackets": brackets, "compatible": compat });
    Ok(r)
}

pub fn mc(path: &Path) -> Result<Report> {
    let file = load_algebra(path)?;
    let m1 = Cochain::from_bracket(&file.brackets[0]);
    let m2 = match file.brackets.get(1) {
        Some(b) => Cochain::from_bracket(b),
        None => Cochain::zero(2, file.dim, file.dim),
    };
    let report = mc_check(&m1, &m2)?;
    let mut r = Report::new(Value::Null);
    let mut comps = Vec::new();
    for (name, c) in report.components() {
        match first_nonzero_text(c) {
            None => r.line(format!("{name}: PASS")),
            Some(at) => {
                r.line(format!("{name}: FAIL"));
                r.line(format!("  first nonzero: {at}"));
            }
        }
        comps.push(json!({
            "name": name,
            "zero": c.is_zero(),
            "first_nonzero": first_nonzero_json(c),
        }));
    }
    r.failed = !report.is_zero();
    r.json = json!({ "components": comps, "maurer_cartan": report.is_zero() });
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Coefficients {
    /// The algebra acting on itself by its bracket(s).
    Adjoint,
    /// A one-dimensional module with zero actions.
    Trivial,
}

impl Coefficients {
    fn name(self) -> &'static str {
        match self {
            Coefficients::Adjoint => "adjoint",
            Coefficients::Trivial => "trivial",
        }
    }

    fn actions(self, b: &BracketTensor) -> BimoduleActions {
        match self {
            Coefficients::Adjoint => BimoduleActions::adjoint(b),
            Coefficients::Trivial => BimoduleActions::zero(b.dim(), 1),
        }
    }
}

pub fn cohomology(
    path: &Path,
    coefficients: Coefficients,
    degree: usize,
    compatible: bool,
    bracket: usize,
) -> Result<Report> {
    let limits = limits()?;
    let dim = if compatible {
        let pair = load_pair(path)?;
        let a1 = coefficients.actions(pair.first());
        let a2 = coefficients.actions(pair.second());
        CompatData::new(&pair, &a1, &a2)?.cohomology_dim_with(degree, &limits)?
    } else {
        let file = load_algebra(path)?;
        let Some(b) = bracket.checked_sub(1).and_then(|i| file.brackets.get(i)) else {
            bail!(
                "{}: --bracket {bracket} out of range 1..={}",
                path.display(),
                file.brackets.len()
            );
        };
        if let Some(w) = b.is_leibniz().witness() {
            bail!("{}: bracket {bracket} is not Leibniz: {w}", path.display());
        }
        cohomology_dim_with(b, &coefficients.actions(b), degree, &limits)?
    };
    let mut r = Report::new(json!({
        "degree": degree,
        "coefficients": coefficients.name(),
        "compatible": compatible,
        "bracket": if compatible { Value::Null } else { json!(bracket) },
        "dimension": dim,
    }));
    r.line(dim.to_string());
    Ok(r)
}
