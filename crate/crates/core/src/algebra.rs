//! Bilinear brackets given by structure constants, the Leibniz identity and
//! the compatibility condition between two brackets.
//!
//! Brackets follow the right Leibniz convention
//! `[x,[y,z]] = [[x,y],z] - [[x,z],y]`. Antisymmetry is never assumed.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::scalar::Scalar;

/// Coordinates of an element in a fixed basis `e_1, ..., e_d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector(vec![Scalar::zero(); dim])
    }

    /// The basis vector `e_{i+1}` (0-based index).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Scalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector(self.0.iter().map(|a| a * s).collect())
    }
}

impl fmt::Display for Vector {
    /// Renders as a combination of basis vectors, e.g. `e1 - 2/3 e3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            if !abs.is_one() {
                write!(f, "{} ", crate::scalar::format(&abs))?;
            }
            write!(f, "e{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Structure constants `c[i][j][k]`: the coefficient of `e_k` in `[e_i, e_j]`.
///
/// Stored flat in lexicographic order of `(i, j, k)`, which is also the
/// coefficient layout of a 2-cochain with values in the algebra itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BracketTensor {
    dim: usize,
    coeffs: Vec<Scalar>,
}

impl BracketTensor {
    pub fn zero(dim: usize) -> Self {
        BracketTensor {
            dim,
            coeffs: vec![Scalar::zero(); dim * dim * dim],
        }
    }

    pub fn from_flat(dim: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} structure constants for dimension {dim}, got {}",
                dim * dim * dim,
                coeffs.len()
            )));
        }
        Ok(BracketTensor { dim, coeffs })
    }

    /// Builds a tensor from 0-based `(i, j, k, c)` entries; repeated entries add up.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        let mut t = Self::zero(dim);
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({}, {}, {}) out of range for dimension {dim}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            let idx = t.index(i, j, k);
            t.coeffs[idx] += c;
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.coeffs[self.index(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let idx = self.index(i, j, k);
        self.coeffs[idx] = v;
    }

    /// Nonzero entries as 0-based `(i, j, k, c)` in lexicographic order.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let d = self.dim;
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `[e_i, e_j]` as a vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let start = self.index(i, j, 0);
        Vector(self.coeffs[start..start + self.dim].to_vec())
    }

    fn check(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of dimension {} used with a bracket of dimension {}",
                v.dim(),
                self.dim
            )));
        }
        Ok(())
    }

    /// `[x, y] = sum x_i y_j c[i][j][k] e_k`.
    pub fn evaluate(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.eval_unchecked(x, y))
    }

    pub(crate) fn eval_unchecked(&self, x: &Vector, y: &Vector) -> Vector {
        let d = self.dim;
        let mut out = Vector::zero(d);
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.0.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for k in 0..d {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        out.0[k] += &w * c;
                    }
                }
            }
        }
        out
    }

    /// `[x,[y,z]] - [[x,y],z] + [[x,z],y]`.
    pub fn leibniz_defect(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        Ok(self.defect_unchecked(x, y, z))
    }

    fn defect_unchecked(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        let b = |u: &Vector, v: &Vector| self.eval_unchecked(u, v);
        b(x, &b(y, z)).sub(&b(&b(x, y), z)).add(&b(&b(x, z), y))
    }

    /// Checks the Leibniz identity on all basis triples; on failure returns the
    /// lexicographically first failing triple.
    pub fn is_leibniz(&self) -> Check {
        let d = self.dim;
        for (i, j, k) in triples(d) {
            let defect = self.defect_unchecked(
                &Vector::basis(d, i),
                &Vector::basis(d, j),
                &Vector::basis(d, k),
            );
            if !defect.is_zero() {
                return Check::Fails(Witness {
                    triple: (i, j, k),
                    defect,
                });
            }
        }
        Check::Holds
    }

    /// Whether `[e_i, e_j] = -[e_j, e_i]` for all basis pairs.
    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| {
            (0..d).all(|j| (0..d).all(|k| (self.get(i, j, k) + self.get(j, i, k)).is_zero()))
        })
    }

    /// Entrywise `l1 * b1 + l2 * b2`.
    pub fn linear_combination(
        l1: &Scalar,
        b1: &BracketTensor,
        l2: &Scalar,
        b2: &BracketTensor,
    ) -> Result<BracketTensor> {
        same_dim(b1, b2)?;
        Ok(BracketTensor {
            dim: b1.dim,
            coeffs: b1
                .coeffs
                .iter()
                .zip(&b2.coeffs)
                .map(|(a, b)| l1 * a + l2 * b)
                .collect(),
        })
    }

    /// The bracket `[x, y]' = P^{-1} [P x, P y]`.
    pub fn apply_basis_change(&self, p: &BasisChange) -> Result<BracketTensor> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "basis change of dimension {} applied to a bracket of dimension {}",
                p.dim(),
                self.dim
            )));
        }
        let d = self.dim;
        let cols: Vec<Vector> = (0..d).map(|i| Vector(p.matrix.column(i))).collect();
        let mut out = BracketTensor::zero(d);
        for i in 0..d {
            for j in 0..d {
                let img = self.eval_unchecked(&cols[i], &cols[j]);
                let back = p.inverse.mul_vec(&img.0)?;
                for (k, v) in back.into_iter().enumerate() {
                    out.set(i, j, k, v);
                }
            }
        }
        Ok(out)
    }
}

fn same_dim(b1: &BracketTensor, b2: &BracketTensor) -> Result<()> {
    if b1.dim != b2.dim {
        return Err(Error::DimensionMismatch(format!(
            "brackets of dimensions {} and {}",
            b1.dim, b2.dim
        )));
    }
    Ok(())
}

pub(crate) fn triples(d: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..d).flat_map(move |i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
}

/// A failing basis triple (0-based) and the value of the defect there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub triple: (usize, usize, usize),
    pub defect: Vector,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        write!(f, "(e{}, e{}, e{}) -> {}", i + 1, j + 1, k + 1, self.defect)
    }
}

/// Outcome of an exhaustive identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Holds,
    Fails(Witness),
}

impl Check {
    pub fn holds(&self) -> bool {
        matches!(self, Check::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Check::Holds => None,
            Check::Fails(w) => Some(w),
        }
    }
}

/// Which part of the compatible-pair definition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairCondition {
    FirstLeibniz,
    SecondLeibniz,
    Mixed,
}

impl fmt::Display for PairCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairCondition::FirstLeibniz => "first bracket is not Leibniz",
            PairCondition::SecondLeibniz => "second bracket is not Leibniz",
            PairCondition::Mixed => "mixed compatibility condition fails",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    pub condition: PairCondition,
    pub witness: Witness,
}

/// `[x,[y,z]1]2 + [x,[y,z]2]1 - [[x,y]1,z]2 - [[x,y]2,z]1 + [[x,z]1,y]2 + [[x,z]2,y]1`.
pub fn compat_defect(
    b1: &BracketTensor,
    b2: &BracketTensor,
    x: &Vector,
    y: &Vector,
    z: &Vector,
) -> Result<Vector> {
    same_dim(b1, b2)?;
    b1.check(x)?;
    b1.check(y)?;
    b1.check(z)?;
    Ok(compat_defect_unchecked(b1, b2, x, y, z))
}

fn compat_defect_unchecked(
    b1: &BracketTensor,
    b2: &BracketTensor,
    x: &Vector,
    y: &Vector,
    z: &Vector,
) -> Vector {
    let p = |b: &BracketTensor, u: &Vector, v: &Vector| b.eval_unchecked(u, v);
    let yz1 = p(b1, y, z);
    let yz2 = p(b2, y, z);
    let xy1 = p(b1, x, y);
    let xy2 = p(b2, x, y);
    let xz1 = p(b1, x, z);
    let xz2 = p(b2, x, z);
    p(b2, x, &yz1)
        .add(&p(b1, x, &yz2))
        .sub(&p(b2, &xy1, z))
        .sub(&p(b1, &xy2, z))
        .add(&p(b2, &xz1, y))
        .add(&p(b1, &xz2, y))
}

/// Checks the mixed condition alone on all basis triples.
pub fn mixed_condition(b1: &BracketTensor, b2: &BracketTensor) -> Result<Check> {
    same_dim(b1, b2)?;
    let d = b1.dim;
    for (i, j, k) in triples(d) {
        let defect = compat_defect_unchecked(
            b1,
            b2,
            &Vector::basis(d, i),
            &Vector::basis(d, j),
            &Vector::basis(d, k),
        );
        if !defect.is_zero() {
            return Ok(Check::Fails(Witness {
                triple: (i, j, k),
                defect,
            }));
        }
    }
    Ok(Check::Holds)
}

/// Both brackets Leibniz and the mixed condition on all basis triples.
pub fn is_compatible_pair(b1: &BracketTensor, b2: &BracketTensor) -> Result<Option<PairWitness>> {
    same_dim(b1, b2)?;
    if let Check::Fails(w) = b1.is_leibniz() {
        return Ok(Some(PairWitness {
            condition: PairCondition::FirstLeibniz,
            witness: w,
        }));
    }
    if let Check::Fails(w) = b2.is_leibniz() {
        return Ok(Some(PairWitness {
            condition: PairCondition::SecondLeibniz,
            witness: w,
        }));
    }
    Ok(mixed_condition(b1, b2)?.witness().map(|w| PairWitness {
        condition: PairCondition::Mixed,
        witness: w.clone(),
    }))
}

/// Two brackets on the same space.
///
/// `CompatiblePair::new` validates; `unchecked` keeps the pair as given and
/// records that it has not been validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatiblePair {
    b1: BracketTensor,
    b2: BracketTensor,
    validated: bool,
}

impl CompatiblePair {
    pub fn new(b1: BracketTensor, b2: BracketTensor) -> Result<Self> {
        if let Some(w) = is_compatible_pair(&b1, &b2)? {
            return Err(Error::NotCompatible(format!(
                "{} at {}",
                w.condition, w.witness
            )));
        }
        Ok(CompatiblePair {
            b1,
            b2,
            validated: true,
        })
    }

    pub fn unchecked(b1: BracketTensor, b2: BracketTensor) -> Result<Self> {
        same_dim(&b1, &b2)?;
        Ok(CompatiblePair {
            b1,
            b2,
            validated: false,
        })
    }

    pub fn abelian(dim: usize) -> Self {
        CompatiblePair {
            b1: BracketTensor::zero(dim),
            b2: BracketTensor::zero(dim),
            validated: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.b1.dim
    }

    pub fn first(&self) -> &BracketTensor {
        &self.b1
    }

    pub fn second(&self) -> &BracketTensor {
        &self.b2
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn check(&self) -> Result<Option<PairWitness>> {
        is_compatible_pair(&self.b1, &self.b2)
    }

    pub fn swapped(&self) -> Self {
        CompatiblePair {
            b1: self.b2.clone(),
            b2: self.b1.clone(),
            validated: self.validated,
        }
    }

    pub fn apply_basis_change(&self, p: &BasisChange) -> Result<Self> {
        Ok(CompatiblePair {
            b1: self.b1.apply_basis_change(p)?,
            b2: self.b2.apply_basis_change(p)?,
            validated: self.validated,
        })
    }
}

/// An invertible change of basis; column `i` holds the image of `e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChange {
    matrix: ExactMatrix,
    inverse: ExactMatrix,
}

impl BasisChange {
    pub fn new(matrix: ExactMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::ShapeMismatch("basis change must be square".into()));
        }
        let inverse = matrix.inverse()?;
        Ok(BasisChange { matrix, inverse })
    }

    pub fn identity(dim: usize) -> Self {
        BasisChange {
            matrix: ExactMatrix::identity(dim),
            inverse: ExactMatrix::identity(dim),
        }
    }

    /// The basis change sending `e_i` to `e_{perm[i]}`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut m = ExactMatrix::zeros(n, n);
        for (i, &p) in perm.iter().enumerate() {
            if p >= n {
                return Err(Error::ShapeMismatch(format!(
                    "permutation entry {p} out of range"
                )));
            }
            m.set(p, i, Scalar::one());
        }
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn inverse(&self) -> BasisChange {
        BasisChange {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }
}
