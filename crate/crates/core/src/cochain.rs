//! Leibniz cochains `CL^n(g; M) = Hom(g^{⊗n}, M)`, the coboundary for one
//! bracket, and the compatible complex built from two of them.
//!
//! A cochain of degree `n` stores `d^n * m` coefficients: the value on the
//! basis tuple `(e_{i1}, ..., e_{in})` occupies the `m` slots starting at
//! `index(i1..in) * m`, with tuples enumerated lexicographically.

use num_traits::Zero;

use crate::algebra::{BracketTensor, CompatiblePair, Vector};
use crate::error::{Error, Result};
use crate::linalg::{self, ExactMatrix};
use crate::scalar::Scalar;

/// Default cap on the cochain degree accepted by the cohomology routines.
pub const DEFAULT_MAX_DEGREE: usize = 5;

/// Size guards for the matrix-based routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

impl Limits {
    /// Largest coefficient count of a cochain space the routines will build:
    /// `4^(max_degree + 1) * 4`, i.e. dimension 4 at the top degree.
    pub fn max_cochain_size(&self) -> usize {
        4usize
            .saturating_pow(self.max_degree as u32 + 1)
            .saturating_mul(4)
    }

    pub fn check(&self, degree: usize, dim_g: usize, dim_m: usize) -> Result<()> {
        if degree > self.max_degree {
            return Err(Error::DegreeTooLarge {
                degree,
                cap: self.max_degree,
            });
        }
        let size = dim_g
            .saturating_pow(degree as u32 + 1)
            .saturating_mul(dim_m);
        let limit = self.max_cochain_size();
        if size > limit {
            return Err(Error::CochainTooLarge {
                degree: degree + 1,
                size,
                limit,
            });
        }
        Ok(())
    }
}

pub(crate) fn pow(d: usize, n: usize) -> usize {
    d.pow(n as u32)
}

/// Lexicographic rank of a basis tuple.
pub(crate) fn encode(d: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * d + i)
}

pub(crate) fn decode(d: usize, mut t: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = t % d;
        t /= d;
    }
}

/// Left and right actions of `g` on `M`.
///
/// `left[(i*m + j)*m + k]` is the coefficient of `f_k` in `l(e_i, f_j)`;
/// `right[(i*d + j)*m + k]` is the coefficient of `f_k` in `r(f_i, e_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BimoduleActions {
    dim_g: usize,
    dim_m: usize,
    left: Vec<Scalar>,
    right: Vec<Scalar>,
}

impl BimoduleActions {
    pub fn zero(dim_g: usize, dim_m: usize) -> Self {
        let n = dim_g * dim_m * dim_m;
        BimoduleActions {
            dim_g,
            dim_m,
            left: vec![Scalar::zero(); n],
            right: vec![Scalar::zero(); n],
        }
    }

    /// `M = g` with `l = r = [ , ]`.
    pub fn adjoint(b: &BracketTensor) -> Self {
        BimoduleActions {
            dim_g: b.dim(),
            dim_m: b.dim(),
            left: b.coeffs().to_vec(),
            right: b.coeffs().to_vec(),
        }
    }

    pub fn from_flat(
        dim_g: usize,
        dim_m: usize,
        left: Vec<Scalar>,
        right: Vec<Scalar>,
    ) -> Result<Self> {
        let n = dim_g * dim_m * dim_m;
        if left.len() != n || right.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "action arrays must have {n} entries for dim g = {dim_g}, dim M = {dim_m}"
            )));
        }
        Ok(BimoduleActions {
            dim_g,
            dim_m,
            left,
            right,
        })
    }

    pub fn dim_g(&self) -> usize {
        self.dim_g
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn left_coeffs(&self) -> &[Scalar] {
        &self.left
    }

    pub fn right_coeffs(&self) -> &[Scalar] {
        &self.right
    }

    pub fn left_coeff(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.left[(i * self.dim_m + j) * self.dim_m + k]
    }

    pub fn right_coeff(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.right[(i * self.dim_g + j) * self.dim_m + k]
    }

    pub fn set_left(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let idx = (i * self.dim_m + j) * self.dim_m + k;
        self.left[idx] = v;
    }

    pub fn set_right(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let idx = (i * self.dim_g + j) * self.dim_m + k;
        self.right[idx] = v;
    }

    /// `l(x, v)` for `x` in `g`, `v` in `M`.
    pub fn left(&self, x: &Vector, v: &Vector) -> Vector {
        let m = self.dim_m;
        let mut out = Vector::zero(m);
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, vj) in v.0.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let w = xi * vj;
                for k in 0..m {
                    let c = self.left_coeff(i, j, k);
                    if !c.is_zero() {
                        out.0[k] += &w * c;
                    }
                }
            }
        }
        out
    }

    /// `r(v, x)` for `v` in `M`, `x` in `g`.
    pub fn right(&self, v: &Vector, x: &Vector) -> Vector {
        let m = self.dim_m;
        let mut out = Vector::zero(m);
        for (i, vi) in v.0.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, xj) in x.0.iter().enumerate() {
                if xj.is_zero() {
                    continue;
                }
                let w = vi * xj;
                for k in 0..m {
                    let c = self.right_coeff(i, j, k);
                    if !c.is_zero() {
                        out.0[k] += &w * c;
                    }
                }
            }
        }
        out
    }

    fn check_against(&self, b: &BracketTensor) -> Result<()> {
        if self.dim_g != b.dim() {
            return Err(Error::DimensionMismatch(format!(
                "actions are over an algebra of dimension {}, bracket has dimension {}",
                self.dim_g,
                b.dim()
            )));
        }
        Ok(())
    }
}

/// A multilinear map `g^{⊗n} -> M` in coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    dim_g: usize,
    dim_m: usize,
    coeffs: Vec<Scalar>,
}

impl Cochain {
    pub fn zero(degree: usize, dim_g: usize, dim_m: usize) -> Self {
        Cochain {
            degree,
            dim_g,
            dim_m,
            coeffs: vec![Scalar::zero(); pow(dim_g, degree) * dim_m],
        }
    }

    pub fn from_flat(
        degree: usize,
        dim_g: usize,
        dim_m: usize,
        coeffs: Vec<Scalar>,
    ) -> Result<Self> {
        let want = pow(dim_g, degree) * dim_m;
        if coeffs.len() != want {
            return Err(Error::DimensionMismatch(format!(
                "degree-{degree} cochain needs {want} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Cochain {
            degree,
            dim_g,
            dim_m,
            coeffs,
        })
    }

    /// The basis cochain with a single 1 at flat position `pos`.
    pub fn basis(degree: usize, dim_g: usize, dim_m: usize, pos: usize) -> Self {
        let mut c = Self::zero(degree, dim_g, dim_m);
        c.coeffs[pos] = Scalar::from_integer(1.into());
        c
    }

    /// Degree-0 cochain holding one element of `M`.
    pub fn from_element(dim_g: usize, v: &Vector) -> Self {
        Cochain {
            degree: 0,
            dim_g,
            dim_m: v.dim(),
            coeffs: v.0.clone(),
        }
    }

    /// The bracket viewed as a 2-cochain with values in `g`.
    pub fn from_bracket(b: &BracketTensor) -> Self {
        Cochain {
            degree: 2,
            dim_g: b.dim(),
            dim_m: b.dim(),
            coeffs: b.coeffs().to_vec(),
        }
    }

    /// Inverse of [`Cochain::from_bracket`]; requires degree 2 and `M = g`.
    pub fn to_bracket(&self) -> Result<BracketTensor> {
        if self.degree != 2 || self.dim_g != self.dim_m {
            return Err(Error::DimensionMismatch(
                "only a degree-2 cochain with values in g is a bracket".into(),
            ));
        }
        BracketTensor::from_flat(self.dim_g, self.coeffs.clone())
    }

    /// Sets coefficient of `f_k` in the value on the basis tuple `idx`.
    pub fn set(&mut self, idx: &[usize], k: usize, v: Scalar) {
        let pos = encode(self.dim_g, idx) * self.dim_m + k;
        self.coeffs[pos] = v;
    }

    pub fn get(&self, idx: &[usize], k: usize) -> &Scalar {
        &self.coeffs[encode(self.dim_g, idx) * self.dim_m + k]
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim_g(&self) -> usize {
        self.dim_g
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Value on the basis tuple with lexicographic rank `t`.
    pub fn value_at(&self, t: usize) -> &[Scalar] {
        &self.coeffs[t * self.dim_m..(t + 1) * self.dim_m]
    }

    pub fn value(&self, idx: &[usize]) -> Vector {
        Vector(self.value_at(encode(self.dim_g, idx)).to_vec())
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn evaluate(&self, args: &[Vector]) -> Result<Vector> {
        if args.len() != self.degree || args.iter().any(|a| a.dim() != self.dim_g) {
            return Err(Error::DimensionMismatch(format!(
                "degree-{} cochain evaluated on {} arguments",
                self.degree,
                args.len()
            )));
        }
        let d = self.dim_g;
        let mut out = Vector::zero(self.dim_m);
        let mut idx = vec![0; self.degree];
        for t in 0..pow(d, self.degree) {
            decode(d, t, &mut idx);
            let mut w = Scalar::from_integer(1.into());
            for (a, &i) in args.iter().zip(&idx) {
                if a.0[i].is_zero() {
                    w = Scalar::zero();
                    break;
                }
                w *= &a.0[i];
            }
            if w.is_zero() {
                continue;
            }
            for (k, c) in self.value_at(t).iter().enumerate() {
                if !c.is_zero() {
                    out.0[k] += &w * c;
                }
            }
        }
        Ok(out)
    }

    fn same_shape(&self, other: &Cochain) -> Result<()> {
        if self.degree != other.degree || self.dim_g != other.dim_g || self.dim_m != other.dim_m {
            return Err(Error::DimensionMismatch(format!(
                "cochains of shape (n={}, d={}, m={}) and (n={}, d={}, m={})",
                self.degree, self.dim_g, self.dim_m, other.degree, other.dim_g, other.dim_m
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.same_shape(other)?;
        Ok(self.zip_map(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.same_shape(other)?;
        Ok(self.zip_map(other, |a, b| a - b))
    }

    fn zip_map(&self, other: &Cochain, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Cochain {
        Cochain {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> Cochain {
        Cochain {
            degree: self.degree,
            dim_g: self.dim_g,
            dim_m: self.dim_m,
            coeffs: Vec::new(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Cochain {
        Cochain {
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
            ..self.clone_shape()
        }
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
            ..self.clone_shape()
        }
    }

    pub(crate) fn add_assign(&mut self, other: &Cochain) {
        debug_assert_eq!(self.coeffs.len(), other.coeffs.len());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    /// First basis tuple (0-based) with a nonzero value, and that value.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, Vector)> {
        let mut idx = vec![0; self.degree];
        (0..pow(self.dim_g, self.degree)).find_map(|t| {
            let v = self.value_at(t);
            if v.iter().all(Zero::is_zero) {
                None
            } else {
                decode(self.dim_g, t, &mut idx);
                Some((idx.clone(), Vector(v.to_vec())))
            }
        })
    }
}

/// The Leibniz coboundary
///
/// ```text
/// δf(x1..x_{n+1}) = l(x1, f(x2..x_{n+1}))
///                 + Σ_{i=2}^{n+1} (-1)^i r(f(x1..x̂i..x_{n+1}), xi)
///                 + Σ_{i<j} (-1)^{j+1} f(x1..x_{i-1}, [xi,xj], x_{i+1}..x̂j..x_{n+1})
/// ```
///
/// In degree 0 only the first term survives: `δm(x) = l(x, m)`.
pub fn delta(b: &BracketTensor, acts: &BimoduleActions, f: &Cochain) -> Result<Cochain> {
    acts.check_against(b)?;
    if f.dim_g != b.dim() || f.dim_m != acts.dim_m {
        return Err(Error::DimensionMismatch(format!(
            "cochain (d={}, m={}) does not match bracket dimension {} and module dimension {}",
            f.dim_g,
            f.dim_m,
            b.dim(),
            acts.dim_m
        )));
    }
    Ok(delta_unchecked(b, acts, f))
}

fn delta_unchecked(b: &BracketTensor, acts: &BimoduleActions, f: &Cochain) -> Cochain {
    let d = b.dim();
    let m = acts.dim_m;
    let n = f.degree;
    let mut out = Cochain::zero(n + 1, d, m);
    if f.is_zero() {
        return out;
    }
    let mut idx = vec![0; n + 1];
    let mut sub = vec![0; n];
    let mut acc = vec![Scalar::zero(); m];
    for t in 0..pow(d, n + 1) {
        decode(d, t, &mut idx);
        acc.iter_mut().for_each(|a| a.set_zero());

        // l(x1, f(x2..))
        let val = f.value_at(encode(d, &idx[1..]));
        for (j, fj) in val.iter().enumerate() {
            if fj.is_zero() {
                continue;
            }
            for (k, a) in acc.iter_mut().enumerate() {
                let c = acts.left_coeff(idx[0], j, k);
                if !c.is_zero() {
                    *a += fj * c;
                }
            }
        }

        // (-1)^i r(f(.. x̂i ..), xi)
        for i in 2..=n + 1 {
            let pos = i - 1;
            let mut w = 0;
            for (p, &v) in idx.iter().enumerate() {
                if p != pos {
                    sub[w] = v;
                    w += 1;
                }
            }
            let val = f.value_at(encode(d, &sub));
            let negative = i % 2 == 1;
            for (j, fj) in val.iter().enumerate() {
                if fj.is_zero() {
                    continue;
                }
                for (k, a) in acc.iter_mut().enumerate() {
                    let c = acts.right_coeff(j, idx[pos], k);
                    if !c.is_zero() {
                        if negative {
                            *a -= fj * c;
                        } else {
                            *a += fj * c;
                        }
                    }
                }
            }
        }

        // (-1)^{j+1} f(.., [xi,xj], .., x̂j, ..)
        for i in 1..=n + 1 {
            for j in i + 1..=n + 1 {
                let negative = j % 2 == 0;
                let (pi, pj) = (i - 1, j - 1);
                for s in 0..d {
                    let c = b.get(idx[pi], idx[pj], s);
                    if c.is_zero() {
                        continue;
                    }
                    let mut w = 0;
                    for (p, &v) in idx.iter().enumerate() {
                        if p == pj {
                            continue;
                        }
                        sub[w] = if p == pi { s } else { v };
                        w += 1;
                    }
                    let val = f.value_at(encode(d, &sub));
                    for (k, a) in acc.iter_mut().enumerate() {
                        if val[k].is_zero() {
                            continue;
                        }
                        if negative {
                            *a -= c * &val[k];
                        } else {
                            *a += c * &val[k];
                        }
                    }
                }
            }
        }

        out.coeffs[t * m..(t + 1) * m].clone_from_slice(&acc);
    }
    out
}

/// Matrix of `δ^n`, rows indexed like degree-`(n+1)` cochains and columns
/// like degree-`n` cochains. Entries are read off the coboundary formula
/// term by term.
pub fn delta_matrix(b: &BracketTensor, acts: &BimoduleActions, n: usize) -> Result<ExactMatrix> {
    acts.check_against(b)?;
    let d = b.dim();
    let m = acts.dim_m;
    let mut mat = ExactMatrix::zeros(pow(d, n + 1) * m, pow(d, n) * m);
    let mut bump = |r: usize, c: usize, v: &Scalar, negative: bool| {
        let cur = mat.get(r, c);
        let next = if negative { cur - v } else { cur + v };
        mat.set(r, c, next);
    };
    let mut idx = vec![0; n + 1];
    let mut sub = vec![0; n];
    for t in 0..pow(d, n + 1) {
        decode(d, t, &mut idx);
        let rows = t * m;

        let col = encode(d, &idx[1..]) * m;
        for j in 0..m {
            for k in 0..m {
                let c = acts.left_coeff(idx[0], j, k);
                if !c.is_zero() {
                    bump(rows + k, col + j, c, false);
                }
            }
        }

        for i in 2..=n + 1 {
            let pos = i - 1;
            let mut w = 0;
            for (p, &v) in idx.iter().enumerate() {
                if p != pos {
                    sub[w] = v;
                    w += 1;
                }
            }
            let col = encode(d, &sub) * m;
            for j in 0..m {
                for k in 0..m {
                    let c = acts.right_coeff(j, idx[pos], k);
                    if !c.is_zero() {
                        bump(rows + k, col + j, c, i % 2 == 1);
                    }
                }
            }
        }

        for i in 1..=n + 1 {
            for j in i + 1..=n + 1 {
                let (pi, pj) = (i - 1, j - 1);
                for s in 0..d {
                    let c = b.get(idx[pi], idx[pj], s);
                    if c.is_zero() {
                        continue;
                    }
                    let mut w = 0;
                    for (p, &v) in idx.iter().enumerate() {
                        if p == pj {
                            continue;
                        }
                        sub[w] = if p == pi { s } else { v };
                        w += 1;
                    }
                    let col = encode(d, &sub) * m;
                    for k in 0..m {
                        bump(rows + k, col + k, c, j % 2 == 0);
                    }
                }
            }
        }
    }
    Ok(mat)
}

/// The same matrix assembled column by column from images of basis cochains
/// under [`delta`]. Slower; kept as a cross-check.
pub fn delta_matrix_by_columns(
    b: &BracketTensor,
    acts: &BimoduleActions,
    n: usize,
) -> Result<ExactMatrix> {
    acts.check_against(b)?;
    let d = b.dim();
    let m = acts.dim_m;
    let cols = pow(d, n) * m;
    let mut mat = ExactMatrix::zeros(pow(d, n + 1) * m, cols);
    for c in 0..cols {
        let img = delta_unchecked(b, acts, &Cochain::basis(n, d, m, c));
        for (r, v) in img.coeffs.into_iter().enumerate() {
            if !v.is_zero() {
                mat.set(r, c, v);
            }
        }
    }
    Ok(mat)
}

/// `dim HL^n(g; M) = dim C^n - rank δ^n - rank δ^{n-1}`.
///
/// Also verifies `δ^n ∘ δ^{n-1} = 0` and reports a violation instead of a
/// meaningless dimension.
pub fn cohomology_dim(b: &BracketTensor, acts: &BimoduleActions, n: usize) -> Result<usize> {
    cohomology_dim_with(b, acts, n, &Limits::default())
}

pub fn cohomology_dim_with(
    b: &BracketTensor,
    acts: &BimoduleActions,
    n: usize,
    limits: &Limits,
) -> Result<usize> {
    limits.check(n, b.dim(), acts.dim_m)?;
    let dn = delta_matrix(b, acts, n)?;
    let rank_n = linalg::rank(&dn);
    let rank_prev = if n == 0 {
        0
    } else {
        let prev = delta_matrix(b, acts, n - 1)?;
        if !dn.mul(&prev)?.is_zero() {
            return Err(Error::InvalidBimodule(format!(
                "δ^{n} ∘ δ^{} is not zero; the bracket or the actions are invalid",
                n - 1
            )));
        }
        linalg::rank(&prev)
    };
    Ok(dn.cols() - rank_n - rank_prev)
}

/// An element of `C^n_com(g, M)`: `n` cochains of degree `n` for `n >= 1`, or
/// one degree-0 cochain (an element of `M`) for `n = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatCochain {
    degree: usize,
    components: Vec<Cochain>,
}

impl CompatCochain {
    pub fn new(degree: usize, components: Vec<Cochain>) -> Result<Self> {
        let want = degree.max(1);
        if components.len() != want {
            return Err(Error::DimensionMismatch(format!(
                "degree-{degree} compatible cochain needs {want} components, got {}",
                components.len()
            )));
        }
        let first = &components[0];
        if components
            .iter()
            .any(|c| c.degree != degree || c.dim_g != first.dim_g || c.dim_m != first.dim_m)
        {
            return Err(Error::DimensionMismatch(
                "components of a compatible cochain must share degree and dimensions".into(),
            ));
        }
        Ok(CompatCochain { degree, components })
    }

    pub fn zero(degree: usize, dim_g: usize, dim_m: usize) -> Self {
        CompatCochain {
            degree,
            components: vec![Cochain::zero(degree, dim_g, dim_m); degree.max(1)],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[Cochain] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Cochain> {
        self.components
    }

    pub fn dim_g(&self) -> usize {
        self.components[0].dim_g
    }

    pub fn dim_m(&self) -> usize {
        self.components[0].dim_m
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Cochain::is_zero)
    }

    /// All coefficients, component after component.
    pub fn flat(&self) -> Vec<Scalar> {
        self.components
            .iter()
            .flat_map(|c| c.coeffs.iter().cloned())
            .collect()
    }

    pub fn from_flat(degree: usize, dim_g: usize, dim_m: usize, coeffs: &[Scalar]) -> Result<Self> {
        let size = pow(dim_g, degree) * dim_m;
        let parts = degree.max(1);
        if coeffs.len() != size * parts {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coefficients, got {}",
                size * parts,
                coeffs.len()
            )));
        }
        let components = coeffs
            .chunks(size.max(1))
            .take(parts)
            .map(|ch| Cochain::from_flat(degree, dim_g, dim_m, ch.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, components)
    }

    pub fn sub(&self, other: &CompatCochain) -> Result<CompatCochain> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch(
                "compatible cochains of different degree".into(),
            ));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(CompatCochain {
            degree: self.degree,
            components,
        })
    }

    pub fn add(&self, other: &CompatCochain) -> Result<CompatCochain> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch(
                "compatible cochains of different degree".into(),
            ));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(CompatCochain {
            degree: self.degree,
            components,
        })
    }

    /// Index of the first nonzero component.
    pub fn first_nonzero_component(&self) -> Option<usize> {
        self.components.iter().position(|c| !c.is_zero())
    }
}

/// Coefficient data for the compatible complex: a pair of brackets with one
/// set of actions for each.
#[derive(Debug, Clone, Copy)]
pub struct CompatData<'a> {
    pub pair: &'a CompatiblePair,
    pub acts1: &'a BimoduleActions,
    pub acts2: &'a BimoduleActions,
}

impl<'a> CompatData<'a> {
    pub fn new(
        pair: &'a CompatiblePair,
        acts1: &'a BimoduleActions,
        acts2: &'a BimoduleActions,
    ) -> Result<Self> {
        acts1.check_against(pair.first())?;
        acts2.check_against(pair.second())?;
        if acts1.dim_m != acts2.dim_m {
            return Err(Error::DimensionMismatch(format!(
                "the two action sets act on modules of dimensions {} and {}",
                acts1.dim_m, acts2.dim_m
            )));
        }
        Ok(CompatData { pair, acts1, acts2 })
    }

    pub fn dim_g(&self) -> usize {
        self.pair.dim()
    }

    pub fn dim_m(&self) -> usize {
        self.acts1.dim_m
    }

    pub fn delta1(&self, f: &Cochain) -> Result<Cochain> {
        delta(self.pair.first(), self.acts1, f)
    }

    pub fn delta2(&self, f: &Cochain) -> Result<Cochain> {
        delta(self.pair.second(), self.acts2, f)
    }

    /// `δ1 δ2 f + δ2 δ1 f`; identically zero for valid compatible data.
    pub fn anticommute_check(&self, f: &Cochain) -> Result<Cochain> {
        let a = self.delta1(&self.delta2(f)?)?;
        let b = self.delta2(&self.delta1(f)?)?;
        a.add(&b)
    }

    /// Matrix of `m -> δ1 m - δ2 m` from `M` to `Hom(g, M)`.
    fn c0_condition_matrix(&self) -> Result<ExactMatrix> {
        let d1 = delta_matrix(self.pair.first(), self.acts1, 0)?;
        let d2 = delta_matrix(self.pair.second(), self.acts2, 0)?;
        let mut out = ExactMatrix::zeros(d1.rows(), d1.cols());
        for i in 0..d1.rows() {
            for j in 0..d1.cols() {
                out.set(i, j, d1.get(i, j) - d2.get(i, j));
            }
        }
        Ok(out)
    }

    /// Basis of `C^0_com`: the elements on which both degree-0 coboundaries
    /// agree, so that `δ_c m` is their common value.
    pub fn c0_com_basis(&self) -> Result<Vec<Vector>> {
        Ok(linalg::kernel_basis(&self.c0_condition_matrix()?)
            .into_iter()
            .map(Vector)
            .collect())
    }

    /// `δ_c(h1..hn) = (δ1 h1, .., δ1 hi + δ2 h_{i-1}, .., δ2 hn)`; in degree 0,
    /// `δ_c m = δ1 m = δ2 m` for `m` in `C^0_com`.
    pub fn delta_c(&self, h: &CompatCochain) -> Result<CompatCochain> {
        if h.dim_g() != self.dim_g() || h.dim_m() != self.dim_m() {
            return Err(Error::DimensionMismatch(
                "compatible cochain does not match the algebra or module".into(),
            ));
        }
        let n = h.degree;
        if n == 0 {
            let m = &h.components[0];
            let a = self.delta1(m)?;
            let b = self.delta2(m)?;
            if a != b {
                let bad = (0..self.dim_g())
                    .find(|&x| a.value_at(x) != b.value_at(x))
                    .unwrap_or(0);
                return Err(Error::NotInC0Com(bad + 1));
            }
            return CompatCochain::new(1, vec![a]);
        }
        let mut comps = vec![Cochain::zero(n + 1, self.dim_g(), self.dim_m()); n + 1];
        for (i, hi) in h.components.iter().enumerate() {
            comps[i].add_assign(&self.delta1(hi)?);
            comps[i + 1].add_assign(&self.delta2(hi)?);
        }
        CompatCochain::new(n + 1, comps)
    }

    /// Matrix of `δ_c` on `C^n_com` for `n >= 1`, assembled from the blocks
    /// `δ1` (diagonal) and `δ2` (subdiagonal).
    pub fn delta_c_matrix(&self, n: usize) -> Result<ExactMatrix> {
        if n == 0 {
            let basis = self.c0_com_basis()?;
            let cols: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|v| Ok(self.delta1(&Cochain::from_element(self.dim_g(), v))?.coeffs))
                .collect::<Result<_>>()?;
            return ExactMatrix::from_columns(self.dim_g() * self.dim_m(), &cols);
        }
        let d1 = delta_matrix(self.pair.first(), self.acts1, n)?;
        let d2 = delta_matrix(self.pair.second(), self.acts2, n)?;
        let (br, bc) = (d1.rows(), d1.cols());
        let mut out = ExactMatrix::zeros((n + 1) * br, n * bc);
        for comp in 0..n {
            for i in 0..br {
                for j in 0..bc {
                    let a = d1.get(i, j);
                    if !a.is_zero() {
                        out.set(comp * br + i, comp * bc + j, a.clone());
                    }
                    let b = d2.get(i, j);
                    if !b.is_zero() {
                        out.set((comp + 1) * br + i, comp * bc + j, b.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// `dim ker δ_c|_n - rank δ_c|_{n-1}`, with `C^0_com` as the degree-0 space.
    pub fn cohomology_dim(&self, n: usize) -> Result<usize> {
        self.cohomology_dim_with(n, &Limits::default())
    }

    pub fn cohomology_dim_with(&self, n: usize, limits: &Limits) -> Result<usize> {
        limits.check(n, self.dim_g(), self.dim_m())?;
        let dn = self.delta_c_matrix(n)?;
        let rank_n = linalg::rank(&dn);
        let rank_prev = if n == 0 {
            0
        } else {
            let prev = self.delta_c_matrix(n - 1)?;
            if !dn.mul(&prev)?.is_zero() {
                return Err(Error::InvalidBimodule(format!(
                    "δ_c ∘ δ_c is not zero from degree {}; the data is not a compatible bimodule",
                    n - 1
                )));
            }
            linalg::rank(&prev)
        };
        Ok(dn.cols() - rank_n - rank_prev)
    }

    /// Whether `h` is a `δ_c`-coboundary; returns a preimage when it is.
    pub fn coboundary_preimage(&self, h: &CompatCochain) -> Result<Option<CompatCochain>> {
        let n = h.degree;
        if n == 0 {
            return Ok(if h.is_zero() { Some(h.clone()) } else { None });
        }
        let mat = self.delta_c_matrix(n - 1)?;
        let Some(x) = linalg::solve(&mat, &h.flat())? else {
            return Ok(None);
        };
        if n == 1 {
            let basis = self.c0_com_basis()?;
            let mut v = Vector::zero(self.dim_m());
            for (coef, b) in x.iter().zip(&basis) {
                v = v.add(&b.scale(coef));
            }
            return Ok(Some(CompatCochain::new(
                0,
                vec![Cochain::from_element(self.dim_g(), &v)],
            )?));
        }
        Ok(Some(CompatCochain::from_flat(
            n - 1,
            self.dim_g(),
            self.dim_m(),
            &x,
        )?))
    }
}
