//! Built-in tables of the non-abelian Leibniz algebras of dimension 2 and 3,
//! and the list of pairs claimed to be compatible.
//!
//! Pair claims hold up to isomorphism. Here they are checked at the printed
//! bases first; a failing pair is handed to a seeded random search over basis
//! changes of the second algebra. A pair that is not resolved this way is
//! reported as unresolved, never as incompatible.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{is_compatible_pair, BasisChange, BracketTensor, Check, PairWitness};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::scalar::{frac, int, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Lie,
    Solvable,
    Nilpotent,
    Simple,
    AssociativeCommutative,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Lie => "Lie",
            Tag::Solvable => "solvable",
            Tag::Nilpotent => "nilpotent",
            Tag::Simple => "simple",
            Tag::AssociativeCommutative => "associative-commutative",
        })
    }
}

/// Allowed values of the parameter `α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Admissible {
    Any,
    NonZero,
    NotZeroOrOne,
}

impl Admissible {
    pub fn allows(&self, a: &Scalar) -> bool {
        match self {
            Admissible::Any => true,
            Admissible::NonZero => *a != int(0),
            Admissible::NotZeroOrOne => *a != int(0) && *a != int(1),
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            Admissible::Any => "any α",
            Admissible::NonZero => "α ≠ 0",
            Admissible::NotZeroOrOne => "α ∉ {0, 1}",
        }
    }
}

/// One family. Each structure constant is `c0 + c1·α`; entries are 1-based
/// `(i, j, k, c0, c1)` meaning `[e_i, e_j]` has `(c0 + c1·α) e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub dim: usize,
    pub parameter: Option<Admissible>,
    pub entries: Vec<(usize, usize, usize, i64, i64)>,
    pub tags: Vec<Tag>,
}

impl CatalogEntry {
    fn new(
        dim: usize,
        label: &str,
        parameter: Option<Admissible>,
        entries: &[(usize, usize, usize, i64, i64)],
        tags: &[Tag],
    ) -> Self {
        CatalogEntry {
            name: format!("{dim}D:{label}"),
            dim,
            parameter,
            entries: entries.to_vec(),
            tags: tags.to_vec(),
        }
    }

    pub fn is_lie(&self) -> bool {
        self.tags.contains(&Tag::Lie)
    }

    pub fn instantiate(&self, alpha: Option<&Scalar>) -> Result<BracketTensor> {
        let a = match (self.parameter, alpha) {
            (None, None) => int(0),
            (None, Some(_)) => {
                return Err(Error::InadmissibleParameter(format!(
                    "{} takes no parameter",
                    self.name
                )))
            }
            (Some(_), None) => {
                return Err(Error::InadmissibleParameter(format!(
                    "{} needs a value for α",
                    self.name
                )))
            }
            (Some(adm), Some(a)) => {
                if !adm.allows(a) {
                    return Err(Error::InadmissibleParameter(format!(
                        "α = {} is excluded for {} ({})",
                        crate::scalar::format(a),
                        self.name,
                        adm.describe()
                    )));
                }
                a.clone()
            }
        };
        BracketTensor::from_entries(
            self.dim,
            self.entries
                .iter()
                .map(|&(i, j, k, c0, c1)| (i - 1, j - 1, k - 1, int(c0) + int(c1) * &a)),
        )
    }

    /// The default rational samples `{-2, 0, 2, 1/2}` allowed for this entry,
    /// or a single `None` for entries without a parameter.
    pub fn samples(&self) -> Vec<Option<Scalar>> {
        match self.parameter {
            None => vec![None],
            Some(adm) => default_samples()
                .into_iter()
                .filter(|a| adm.allows(a))
                .map(Some)
                .collect(),
        }
    }
}

pub fn default_samples() -> Vec<Scalar> {
    vec![int(-2), int(0), int(2), frac(1, 2)]
}

/// All 20 families: 2D L1-L3, then 3D L1-L17.
pub fn entries() -> Vec<CatalogEntry> {
    use Admissible::*;
    use Tag::*;
    vec![
        CatalogEntry::new(
            2,
            "L1",
            None,
            &[(1, 2, 2, 1, 0), (2, 1, 2, -1, 0)],
            &[Lie, Solvable],
        ),
        CatalogEntry::new(2, "L2", None, &[(1, 1, 2, 1, 0)], &[Nilpotent]),
        CatalogEntry::new(
            2,
            "L3",
            None,
            &[(1, 1, 2, 1, 0), (2, 1, 2, 1, 0)],
            &[Solvable],
        ),
        CatalogEntry::new(
            3,
            "L1",
            Some(NonZero),
            &[
                (1, 3, 1, 0, 1),
                (2, 3, 1, 1, 0),
                (2, 3, 2, 1, 0),
                (3, 3, 1, 1, 0),
            ],
            &[Solvable],
        ),
        CatalogEntry::new(
            3,
            "L2",
            None,
            &[(3, 3, 1, 1, 0), (2, 3, 1, 1, 0), (2, 3, 2, 1, 0)],
            &[Solvable],
        ),
        CatalogEntry::new(
            3,
            "L3",
            None,
            &[
                (1, 2, 3, 1, 0),
                (1, 3, 3, -2, 0),
                (2, 1, 3, -1, 0),
                (2, 3, 3, 2, 0),
                (3, 1, 3, 2, 0),
                (3, 2, 3, -2, 0),
            ],
            &[Lie, Simple],
        ),
        CatalogEntry::new(
            3,
            "L4",
            Some(Any),
            &[
                (1, 3, 1, 0, 1),
                (2, 3, 2, -1, 0),
                (3, 2, 2, 1, 0),
                (3, 3, 1, 1, 0),
            ],
            &[Solvable],
        ),
        CatalogEntry::new(
            3,
            "L5",
            None,
            &[(1, 3, 1, 1, 0), (2, 3, 1, 1, 0), (3, 3, 1, 1, 0)],
            &[Solvable],
        ),
        CatalogEntry::new(
            3,
            "L6",
            None,
            &[(1, 3, 2, 1, 0), (3, 3, 1, 1, 0)],
            &[Nilpotent],
        ),
        CatalogEntry::new(
            3,
            "L7",
            None,
            &[
                (1, 2, 1, 1, 0),
                (1, 3, 1, 1, 0),
                (3, 2, 1, 1, 0),
                (3, 3, 1, 1, 0),
            ],
            &[Solvable],
        ),
        CatalogEntry::new(
            3,
            "L8",
            None,
            &[(1, 1, 2, 1, 0), (2, 1, 2, 1, 0)],
            &[Solvable],
        ),
        CatalogEntry::new(
            3,
            "L9",
            Some(NotZeroOrOne),
            &[
                (1, 2, 2, 1, 0),
                (1, 3, 3, 0, 1),
                (2, 1, 2, -1, 0),
                (3, 1, 3, 0, -1),
            ],
            &[Lie, Solvable],
        ),
        CatalogEntry::new(
            3,
            "L10",
            None,
            &[(1, 2, 2, 1, 0), (2, 1, 2, -1, 0)],
            &[Lie, Solvable],
        ),
        CatalogEntry::new(
            3,
            "L11",
            None,
            &[
                (1, 2, 2, 1, 0),
                (1, 3, 2, 1, 0),
                (1, 3, 3, 1, 0),
                (2, 1, 2, -1, 0),
                (3, 1, 2, -1, 0),
                (3, 1, 3, -1, 0),
            ],
            &[Lie, Solvable],
        ),
        CatalogEntry::new(
            3,
            "L12",
            Some(Any),
            &[(2, 2, 1, 1, 0), (2, 3, 1, 1, 0), (3, 3, 1, 0, 1)],
            &[Nilpotent],
        ),
        CatalogEntry::new(
            3,
            "L13",
            None,
            &[(2, 2, 1, 1, 0), (2, 3, 1, 1, 0), (3, 2, 1, 1, 0)],
            &[AssociativeCommutative, Nilpotent],
        ),
        CatalogEntry::new(
            3,
            "L14",
            None,
            &[(1, 3, 1, 1, 0), (2, 3, 2, 1, 0), (3, 3, 1, 1, 0)],
            &[Solvable],
        ),
        CatalogEntry::new(
            3,
            "L15",
            None,
            &[(1, 1, 2, 1, 0)],
            &[AssociativeCommutative, Nilpotent],
        ),
        CatalogEntry::new(
            3,
            "L16",
            None,
            &[
                (1, 2, 2, 1, 0),
                (1, 3, 3, 1, 0),
                (2, 1, 2, -1, 0),
                (3, 1, 3, -1, 0),
            ],
            &[Lie, Solvable],
        ),
        CatalogEntry::new(
            3,
            "L17",
            None,
            &[(1, 2, 3, 1, 0), (2, 1, 3, -1, 0)],
            &[Lie, Nilpotent],
        ),
    ]
}

/// Looks up `"2D:L2"`, `"3d:l12"` and the like.
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    entries()
        .into_iter()
        .find(|e| e.name.eq_ignore_ascii_case(name.trim()))
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

pub fn instantiate(name: &str, alpha: Option<&Scalar>) -> Result<BracketTensor> {
    lookup(name)?.instantiate(alpha)
}

/// Outcome for one entry at one parameter value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryReport {
    pub name: String,
    pub alpha: Option<Scalar>,
    pub leibniz: Check,
    /// `Some(antisymmetric?)` for Lie-tagged entries.
    pub antisymmetric: Option<bool>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.leibniz.holds() && self.antisymmetric != Some(false)
    }
}

pub fn verify_entries(list: &[CatalogEntry]) -> Result<Vec<EntryReport>> {
    let mut out = Vec::new();
    for e in list {
        for alpha in e.samples() {
            let b = e.instantiate(alpha.as_ref())?;
            out.push(EntryReport {
                name: e.name.clone(),
                alpha,
                leibniz: b.is_leibniz(),
                antisymmetric: e.is_lie().then(|| b.is_antisymmetric()),
            });
        }
    }
    Ok(out)
}

pub fn verify_catalog() -> Result<Vec<EntryReport>> {
    verify_entries(&entries())
}

/// Which entry of a pair carries the parameter, and its fixed value if the
/// claim pins one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairClaim {
    pub first: String,
    pub second: String,
    pub fixed_alpha: Option<Scalar>,
}

impl PairClaim {
    pub fn new(dim: usize, a: usize, b: usize, fixed: Option<i64>) -> Self {
        PairClaim {
            first: format!("{dim}D:L{a}"),
            second: format!("{dim}D:L{b}"),
            fixed_alpha: fixed.map(int),
        }
    }

    pub fn label(&self) -> String {
        let mut s = format!("({}, {})", self.first, self.second);
        if let Some(a) = &self.fixed_alpha {
            s.push_str(&format!(" for α = {}", crate::scalar::format(a)));
        }
        s
    }

    pub fn swapped(&self) -> Self {
        PairClaim {
            first: self.second.clone(),
            second: self.first.clone(),
            fixed_alpha: self.fixed_alpha.clone(),
        }
    }

    /// Parameter values to test: the pinned value, or the default samples of
    /// whichever entry has a parameter.
    pub fn parameter_values(&self) -> Result<Vec<Option<Scalar>>> {
        if let Some(a) = &self.fixed_alpha {
            return Ok(vec![Some(a.clone())]);
        }
        let (a, b) = (lookup(&self.first)?, lookup(&self.second)?);
        Ok(if a.parameter.is_some() {
            a.samples()
        } else {
            b.samples()
        })
    }

    fn tensors(&self, alpha: Option<&Scalar>) -> Result<(BracketTensor, BracketTensor)> {
        let (a, b) = (lookup(&self.first)?, lookup(&self.second)?);
        let pa = a.parameter.and(alpha);
        let pb = b.parameter.and(alpha);
        if a.parameter.is_none() && b.parameter.is_none() && alpha.is_some() {
            return Err(Error::InadmissibleParameter(format!(
                "{} has no parameter",
                self.label()
            )));
        }
        Ok((a.instantiate(pa)?, b.instantiate(pb)?))
    }
}

pub fn pair_claims_2d() -> Vec<PairClaim> {
    vec![PairClaim::new(2, 2, 3, None)]
}

pub fn pair_claims_3d() -> Vec<PairClaim> {
    [
        (1, 2, None),
        (1, 5, None),
        (1, 6, None),
        (1, 14, None),
        (2, 5, None),
        (2, 6, None),
        (2, 14, None),
        (4, 13, Some(-2)),
        (5, 6, None),
        (5, 14, None),
        (6, 14, None),
        (7, 12, Some(0)),
        (8, 15, None),
        (9, 10, None),
        (9, 11, None),
        (9, 16, None),
        (9, 17, None),
        (10, 11, None),
        (10, 16, None),
        (11, 16, None),
        (11, 17, None),
        (12, 13, None),
        (16, 17, None),
    ]
    .into_iter()
    .map(|(a, b, f)| PairClaim::new(3, a, b, f))
    .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairVerdict {
    CompatibleAtCanonicalBasis,
    DefectFound(PairWitness),
}

impl PairVerdict {
    pub fn is_compatible(&self) -> bool {
        matches!(self, PairVerdict::CompatibleAtCanonicalBasis)
    }
}

/// Exact check of the printed structure constants. Says nothing about
/// isomorphism classes.
pub fn verify_pair_claim(claim: &PairClaim, alpha: Option<&Scalar>) -> Result<PairVerdict> {
    let (b1, b2) = claim.tensors(alpha)?;
    Ok(match is_compatible_pair(&b1, &b2)? {
        None => PairVerdict::CompatibleAtCanonicalBasis,
        Some(w) => PairVerdict::DefectFound(w),
    })
}

fn random_invertible(dim: usize, rng: &mut ChaCha8Rng) -> BasisChange {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..dim)
            .map(|_| (0..dim).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        let m = ExactMatrix::from_rows(rows).expect("square");
        if let Ok(p) = BasisChange::new(m) {
            return p;
        }
    }
}

/// Tries the identity, then up to `attempts` random invertible integer basis
/// changes (entries in `-2..=2`) of the second algebra. Deterministic in
/// `seed`.
pub fn search_witness_basis(
    claim: &PairClaim,
    alpha: Option<&Scalar>,
    attempts: usize,
    seed: u64,
) -> Result<Option<BasisChange>> {
    let (b1, b2) = claim.tensors(alpha)?;
    if is_compatible_pair(&b1, &b2)?.is_none() {
        return Ok(Some(BasisChange::identity(b1.dim())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let p = random_invertible(b1.dim(), &mut rng);
        let moved = b2.apply_basis_change(&p)?;
        if is_compatible_pair(&b1, &moved)?.is_none() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairStatus {
    Verified,
    WitnessFound(BasisChange),
    Unresolved(PairWitness),
}

impl PairStatus {
    pub fn label(&self) -> &'static str {
        match self {
            PairStatus::Verified => "verified",
            PairStatus::WitnessFound(_) => "witness-found",
            PairStatus::Unresolved(_) => "unresolved",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub claim: PairClaim,
    pub alpha: Option<Scalar>,
    pub status: PairStatus,
}

/// Runs every claim at every parameter value, in the listed order.
pub fn verify_pairs(claims: &[PairClaim], attempts: usize, seed: u64) -> Result<Vec<PairReport>> {
    let mut out = Vec::new();
    for claim in claims {
        for alpha in claim.parameter_values()? {
            let status = match verify_pair_claim(claim, alpha.as_ref())? {
                PairVerdict::CompatibleAtCanonicalBasis => PairStatus::Verified,
                PairVerdict::DefectFound(w) => {
                    match search_witness_basis(claim, alpha.as_ref(), attempts, seed)? {
                        Some(p) => PairStatus::WitnessFound(p),
                        None => PairStatus::Unresolved(w),
                    }
                }
            };
            out.push(PairReport {
                claim: claim.clone(),
                alpha,
                status,
            });
        }
    }
    Ok(out)
}
