//! Shuffles, the circle product and graded bracket on `CL^{*+1}(g; g)`, the
//! lifted graded Lie algebra of tuples, and Maurer-Cartan checks.
//!
//! Graded degrees follow the usual shift: a cochain of cochain degree `p + 1`
//! has graded degree `p`, so a bracket is a degree-1 element.

use num_traits::Zero;

use crate::algebra::BracketTensor;
use crate::cochain::{decode, encode, pow, Cochain};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A `(p, q)`-shuffle: `perm[0..p]` and `perm[p..]` are both increasing.
/// Entries are 0-based positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shuffle {
    pub p: usize,
    pub q: usize,
    pub perm: Vec<usize>,
    pub sign: i8,
}

/// All `(p, q)`-shuffles, ordered lexicographically by the first block.
pub fn shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    let n = p + q;
    let mut out = Vec::new();
    let mut first: Vec<usize> = (0..p).collect();
    loop {
        let mut perm = first.clone();
        perm.extend((0..n).filter(|i| !first.contains(i)));
        let inversions: usize = first
            .iter()
            .map(|&a| perm[p..].iter().filter(|&&b| b < a).count())
            .sum();
        out.push(Shuffle {
            p,
            q,
            perm,
            sign: if inversions.is_multiple_of(2) { 1 } else { -1 },
        });
        // next combination of p out of n
        let Some(i) = (0..p).rev().find(|&i| first[i] != i + n - p) else {
            break;
        };
        first[i] += 1;
        for j in i + 1..p {
            first[j] = first[j - 1] + 1;
        }
    }
    out
}

fn check_g_valued(c: &Cochain) -> Result<()> {
    if c.dim_g() != c.dim_m() {
        return Err(Error::DimensionMismatch(
            "graded bracket needs cochains with values in g".into(),
        ));
    }
    if c.degree() == 0 {
        return Err(Error::DimensionMismatch(
            "graded bracket is defined on cochains of degree at least 1".into(),
        ));
    }
    Ok(())
}

/// The circle product, for `alpha` of cochain degree `p + 1` and `beta` of
/// cochain degree `q + 1`:
///
/// ```text
/// (α∘β)(x1..x_{p+q+1}) = Σ_{k=1}^{p+1} (-1)^{q(k-1)} Σ_{σ ∈ Sh(q, p-k+1)} sgn σ
///     α(x1..x_{k-1}, β(xk, x_σ(k+1)..x_σ(k+q)), x_σ(k+q+1)..x_σ(p+q+1))
/// ```
///
/// with `σ` permuting the positions `k+1..p+q+1`.
pub fn circ(alpha: &Cochain, beta: &Cochain) -> Result<Cochain> {
    check_g_valued(alpha)?;
    check_g_valued(beta)?;
    if alpha.dim_g() != beta.dim_g() {
        return Err(Error::DimensionMismatch(format!(
            "cochains over algebras of dimension {} and {}",
            alpha.dim_g(),
            beta.dim_g()
        )));
    }
    let d = alpha.dim_g();
    let p = alpha.degree() - 1;
    let q = beta.degree() - 1;
    let n = p + q + 1;
    let mut out = Cochain::zero(n, d, d);
    if alpha.is_zero() || beta.is_zero() {
        return Ok(out);
    }

    // Per k (0-based k0 = k - 1): sign and shuffle tables over the tail positions.
    let plan: Vec<(bool, Vec<Shuffle>)> = (0..=p)
        .map(|k0| ((q * k0) % 2 == 1, shuffles(q, p - k0)))
        .collect();

    let mut idx = vec![0; n];
    let mut b_args = vec![0; q + 1];
    let mut a_args = vec![0; p + 1];
    let mut acc = vec![Scalar::zero(); d];
    for t in 0..pow(d, n) {
        decode(d, t, &mut idx);
        acc.iter_mut().for_each(Zero::set_zero);
        for (k0, (k_negative, table)) in plan.iter().enumerate() {
            let tail = &idx[k0 + 1..];
            for sh in table {
                b_args[0] = idx[k0];
                for (slot, &pos) in sh.perm[..q].iter().enumerate() {
                    b_args[slot + 1] = tail[pos];
                }
                let bval = beta.value_at(encode(d, &b_args));
                if bval.iter().all(Zero::is_zero) {
                    continue;
                }
                a_args[..k0].copy_from_slice(&idx[..k0]);
                for (slot, &pos) in sh.perm[q..].iter().enumerate() {
                    a_args[k0 + 1 + slot] = tail[pos];
                }
                let negative = *k_negative ^ (sh.sign < 0);
                for (s, bs) in bval.iter().enumerate() {
                    if bs.is_zero() {
                        continue;
                    }
                    a_args[k0] = s;
                    let aval = alpha.value_at(encode(d, &a_args));
                    for (r, ar) in aval.iter().enumerate() {
                        if ar.is_zero() {
                            continue;
                        }
                        if negative {
                            acc[r] -= bs * ar;
                        } else {
                            acc[r] += bs * ar;
                        }
                    }
                }
            }
        }
        for (r, v) in acc.iter().enumerate() {
            if !v.is_zero() {
                out.set(&idx, r, v.clone());
            }
        }
    }
    Ok(out)
}

/// `[α, β] = α∘β + (-1)^{pq+1} β∘α`.
pub fn nr_bracket(alpha: &Cochain, beta: &Cochain) -> Result<Cochain> {
    let ab = circ(alpha, beta)?;
    let ba = circ(beta, alpha)?;
    let p = alpha.degree() - 1;
    let q = beta.degree() - 1;
    if (p * q).is_multiple_of(2) {
        ab.sub(&ba)
    } else {
        ab.add(&ba)
    }
}

/// The three Maurer-Cartan components `([m1,m1], [m1,m2], [m2,m2])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McReport {
    pub m1m1: Cochain,
    pub m1m2: Cochain,
    pub m2m2: Cochain,
}

impl McReport {
    pub fn is_zero(&self) -> bool {
        self.m1m1.is_zero() && self.m1m2.is_zero() && self.m2m2.is_zero()
    }

    pub fn components(&self) -> [(&'static str, &Cochain); 3] {
        [
            ("[m1,m1]", &self.m1m1),
            ("[m1,m2]", &self.m1m2),
            ("[m2,m2]", &self.m2m2),
        ]
    }
}

pub fn mc_check(m1: &Cochain, m2: &Cochain) -> Result<McReport> {
    for m in [m1, m2] {
        if m.degree() != 2 {
            return Err(Error::DimensionMismatch(
                "Maurer-Cartan check takes 2-cochains".into(),
            ));
        }
    }
    Ok(McReport {
        m1m1: nr_bracket(m1, m1)?,
        m1m2: nr_bracket(m1, m2)?,
        m2m2: nr_bracket(m2, m2)?,
    })
}

pub fn mc_check_brackets(b1: &BracketTensor, b2: &BracketTensor) -> Result<McReport> {
    mc_check(&Cochain::from_bracket(b1), &Cochain::from_bracket(b2))
}

/// An element of `(g_com)^n`: `n + 1` cochains of cochain degree `n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedElement {
    degree: usize,
    components: Vec<Cochain>,
}

impl GradedElement {
    pub fn new(degree: usize, components: Vec<Cochain>) -> Result<Self> {
        if components.len() != degree + 1 {
            return Err(Error::DimensionMismatch(format!(
                "graded element of degree {degree} needs {} components, got {}",
                degree + 1,
                components.len()
            )));
        }
        let d = components[0].dim_g();
        for c in &components {
            check_g_valued(c)?;
            if c.degree() != degree + 1 || c.dim_g() != d {
                return Err(Error::DimensionMismatch(
                    "components of a graded element must share degree and dimension".into(),
                ));
            }
        }
        Ok(GradedElement { degree, components })
    }

    pub fn zero(degree: usize, dim: usize) -> Self {
        GradedElement {
            degree,
            components: vec![Cochain::zero(degree + 1, dim, dim); degree + 1],
        }
    }

    /// The pair `(m1, m2)` as a degree-1 element.
    pub fn from_pair(b1: &BracketTensor, b2: &BracketTensor) -> Result<Self> {
        Self::new(
            1,
            vec![Cochain::from_bracket(b1), Cochain::from_bracket(b2)],
        )
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim_g()
    }

    pub fn components(&self) -> &[Cochain] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Cochain::is_zero)
    }

    pub fn add(&self, other: &GradedElement) -> Result<GradedElement> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch(
                "graded elements of different degree".into(),
            ));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(GradedElement {
            degree: self.degree,
            components,
        })
    }

    pub fn scale(&self, s: &Scalar) -> GradedElement {
        GradedElement {
            degree: self.degree,
            components: self.components.iter().map(|c| c.scale(s)).collect(),
        }
    }
}

/// Bracket on `g_com`: the `i`-th component of `[h, k]_c` is
/// `Σ_{q+r=i+1} [h_q, k_r]` (1-based indices).
pub fn com_bracket(h: &GradedElement, k: &GradedElement) -> Result<GradedElement> {
    if h.dim() != k.dim() {
        return Err(Error::DimensionMismatch(format!(
            "graded elements over algebras of dimension {} and {}",
            h.dim(),
            k.dim()
        )));
    }
    let deg = h.degree + k.degree;
    let mut comps = vec![Cochain::zero(deg + 1, h.dim(), h.dim()); deg + 1];
    for (q, hq) in h.components.iter().enumerate() {
        for (r, kr) in k.components.iter().enumerate() {
            comps[q + r].add_assign(&nr_bracket(hq, kr)?);
        }
    }
    GradedElement::new(deg, comps)
}

/// `ψ(h1, .., h_{n+1}) = h1 + .. + h_{n+1}`.
pub fn psi(h: &GradedElement) -> Cochain {
    let mut out = h.components[0].clone();
    for c in &h.components[1..] {
        out.add_assign(c);
    }
    out
}

/// `d_(m1,m2) = [(m1, m2), -]_c`. Refuses pairs that are not Maurer-Cartan.
pub fn differential_d(m1: &Cochain, m2: &Cochain, h: &GradedElement) -> Result<GradedElement> {
    let report = mc_check(m1, m2)?;
    if let Some((name, _)) = report.components().into_iter().find(|(_, c)| !c.is_zero()) {
        return Err(Error::NotMaurerCartan(format!("{name} is not zero")));
    }
    let mu = GradedElement::new(1, vec![m1.clone(), m2.clone()])?;
    com_bracket(&mu, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Vector;
    use crate::scalar::int;

    fn bt(dim: usize, entries: &[(usize, usize, usize, i64)]) -> BracketTensor {
        BracketTensor::from_entries(
            dim,
            entries
                .iter()
                .map(|&(i, j, k, c)| (i - 1, j - 1, k - 1, int(c))),
        )
        .unwrap()
    }

    #[test]
    fn shuffle_counts_and_signs() {
        let s = shuffles(1, 1);
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].perm.clone(), s[0].sign), (vec![0, 1], 1));
        assert_eq!((s[1].perm.clone(), s[1].sign), (vec![1, 0], -1));
        assert_eq!(shuffles(0, 3).len(), 1);
        assert_eq!(shuffles(0, 3)[0].perm, vec![0, 1, 2]);
        assert_eq!(shuffles(2, 1).len(), 3);
        assert_eq!(shuffles(0, 0).len(), 1);
    }

    #[test]
    fn circ_on_l2() {
        let m = Cochain::from_bracket(&bt(2, &[(1, 1, 2, 1)]));
        let mm = circ(&m, &m).unwrap();
        assert!(mm.value(&[0, 0, 0]).is_zero());
        assert!(mm.is_zero());
    }

    #[test]
    fn circ_with_zero() {
        let m = Cochain::from_bracket(&bt(2, &[(1, 1, 2, 1)]));
        assert!(circ(&m, &Cochain::zero(3, 2, 2)).unwrap().is_zero());
        assert!(nr_bracket(&m, &Cochain::zero(1, 2, 2)).unwrap().is_zero());
    }

    #[test]
    fn square_of_a_bracket_is_minus_its_defect() {
        // sum bracket of the non-example
        let mu = bt(3, &[(1, 1, 2, 1), (2, 2, 3, 1), (1, 2, 3, 1)]);
        let m = Cochain::from_bracket(&mu);
        let mm = circ(&m, &m).unwrap();
        assert_eq!(mm.value(&[0, 0, 0]), Vector::basis(3, 2).scale(&int(-1)));
        let e = |i| Vector::basis(3, i);
        for (i, j, k) in crate::algebra::triples(3) {
            let defect = mu.leibniz_defect(&e(i), &e(j), &e(k)).unwrap();
            assert_eq!(mm.value(&[i, j, k]), defect.scale(&int(-1)));
        }
        let sq = nr_bracket(&m, &m).unwrap();
        assert_eq!(sq, mm.scale(&int(2)));
    }

    #[test]
    fn compatible_example_is_maurer_cartan() {
        let b1 = bt(3, &[(1, 1, 3, 1)]);
        let b2 = bt(3, &[(1, 1, 2, 1), (2, 1, 3, 1)]);
        assert!(mc_check_brackets(&b1, &b2).unwrap().is_zero());
        let n1 = bt(3, &[(1, 2, 3, 1), (2, 1, 3, -1)]);
        let r = mc_check_brackets(&n1, &b2).unwrap();
        assert!(r.m1m1.is_zero() && r.m2m2.is_zero() && !r.m1m2.is_zero());
    }

    #[test]
    fn com_bracket_of_pair_with_itself() {
        let b1 = bt(3, &[(1, 1, 3, 1)]);
        let b2 = bt(3, &[(1, 2, 3, 1), (2, 1, 3, -1)]);
        let mu = GradedElement::from_pair(&b1, &b2).unwrap();
        let sq = com_bracket(&mu, &mu).unwrap();
        let r = mc_check_brackets(&b1, &b2).unwrap();
        assert_eq!(sq.components()[0], r.m1m1);
        assert_eq!(sq.components()[1], r.m1m2.scale(&int(2)));
        assert_eq!(sq.components()[2], r.m2m2);
        assert_eq!(
            psi(&mu),
            Cochain::from_bracket(
                &BracketTensor::linear_combination(&int(1), &b1, &int(1), &b2).unwrap()
            )
        );
    }

    #[test]
    fn differential_rejects_non_mc() {
        let b1 = bt(3, &[(1, 2, 3, 1), (2, 1, 3, -1)]);
        let b2 = bt(3, &[(1, 1, 2, 1), (2, 1, 3, 1)]);
        let h = GradedElement::zero(1, 3);
        assert!(matches!(
            differential_d(&Cochain::from_bracket(&b1), &Cochain::from_bracket(&b2), &h),
            Err(Error::NotMaurerCartan(_))
        ));
    }
}
