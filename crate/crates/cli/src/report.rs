use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use compat_leibniz::algebra::{PairWitness, Witness};
use compat_leibniz::cochain::{Cochain, Limits, DEFAULT_MAX_DEGREE};
use compat_leibniz::io::{self, to_canonical_string};
use compat_leibniz::{scalar, Vector};
use serde_json::{json, Value};

/// What a subcommand produced: human-readable lines, the same content as
/// JSON, and whether a check failed.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub failed: bool,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report {
            text: String::new(),
            json,
            failed: false,
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            to_canonical_string(&self.json)
        } else {
            self.text.clone()
        }
    }
}

pub fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = read(path)?;
    io::parse_json(&text).with_context(|| path.display().to_string())
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    std::fs::write(path, to_canonical_string(v))
        .with_context(|| format!("cannot write {}", path.display()))
}

/// Resolves `rel` against the directory holding `base`.
pub fn sibling(base: &Path, rel: &str) -> PathBuf {
    match base.parent() {
        Some(dir) => dir.join(rel),
        None => PathBuf::from(rel),
    }
}

pub fn vector_json(v: &Vector) -> Value {
    Value::Array(v.0.iter().map(scalar::to_json).collect())
}

pub fn witness_json(w: &Witness) -> Value {
    let (i, j, k) = w.triple;
    json!({ "triple": [i + 1, j + 1, k + 1], "defect": vector_json(&w.defect) })
}

pub fn pair_witness_json(w: &PairWitness) -> Value {
    json!({ "condition": condition_key(w), "witness": witness_json(&w.witness) })
}

fn condition_key(w: &PairWitness) -> &'static str {
    use compat_leibniz::algebra::PairCondition::*;
    match w.condition {
        FirstLeibniz => "first-leibniz",
        SecondLeibniz => "second-leibniz",
        Mixed => "mixed",
    }
}

pub fn witness_lines(r: &mut Report, w: &Witness) {
    let (i, j, k) = w.triple;
    r.line(format!("  witness: (e{}, e{}, e{})", i + 1, j + 1, k + 1));
    r.line(format!("  defect: {}", w.defect));
}

/// `(e_i, .., e_j) -> value` for the first nonzero value of a cochain.
pub fn first_nonzero_text(c: &Cochain) -> Option<String> {
    c.first_nonzero().map(|(idx, v)| {
        let mut s = String::from("(");
        for (n, i) in idx.iter().enumerate() {
            if n > 0 {
                s.push_str(", ");
            }
            let _ = write!(s, "e{}", i + 1);
        }
        let _ = write!(s, ") -> {v}");
        s
    })
}

pub fn first_nonzero_json(c: &Cochain) -> Value {
    match c.first_nonzero() {
        Some((idx, v)) => json!({
            "arguments": idx.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "value": vector_json(&v),
        }),
        None => Value::Null,
    }
}

/// The degree cap, overridable through `COMPAT_LEIBNIZ_MAX_DEGREE`.
pub fn limits() -> Result<Limits> {
    match std::env::var("COMPAT_LEIBNIZ_MAX_DEGREE") {
        Ok(s) => {
            let max_degree = s.trim().parse().with_context(|| {
                format!("COMPAT_LEIBNIZ_MAX_DEGREE must be a nonnegative integer, got {s:?}")
            })?;
            Ok(Limits { max_degree })
        }
        Err(_) => Ok(Limits {
            max_degree: DEFAULT_MAX_DEGREE,
        }),
    }
}
