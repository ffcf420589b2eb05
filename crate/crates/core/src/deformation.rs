//! Truncated one-parameter deformations `m_{k,t} = Σ_{i=0}^N m_{k,i} t^i` of
//! a compatible pair, with `m_{k,0}` the base brackets.

use num_traits::Zero;

use crate::algebra::{BracketTensor, CompatiblePair, Vector};
use crate::cochain::{BimoduleActions, Cochain, CompatCochain, CompatData};
use crate::error::{Error, Result};
use crate::graded::nr_bracket;
use crate::linalg::{self, ExactMatrix};
use crate::scalar::{frac, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedDeformation {
    base: CompatiblePair,
    terms1: Vec<Cochain>,
    terms2: Vec<Cochain>,
}

/// Which of the three deformation equations fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResidualComponent {
    First,
    Mixed,
    Second,
}

impl std::fmt::Display for ResidualComponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ResidualComponent::First => "Σ[m1i,m1j]",
            ResidualComponent::Mixed => "Σ[m1i,m2j]",
            ResidualComponent::Second => "Σ[m2i,m2j]",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residuals {
    pub first: Cochain,
    pub mixed: Cochain,
    pub second: Cochain,
}

impl Residuals {
    pub fn first_nonzero(&self) -> Option<ResidualComponent> {
        [
            (ResidualComponent::First, &self.first),
            (ResidualComponent::Mixed, &self.mixed),
            (ResidualComponent::Second, &self.second),
        ]
        .into_iter()
        .find(|(_, c)| !c.is_zero())
        .map(|(n, _)| n)
    }

    pub fn is_zero(&self) -> bool {
        self.first_nonzero().is_none()
    }
}

/// The first nonzero pair of terms and whether it is a `δ_c` 2-cocycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infinitesimal {
    pub order: usize,
    pub m1: Cochain,
    pub m2: Cochain,
    pub is_cocycle: bool,
}

/// `(O_{m1}, O_{m1,m2}, O_{m2})` as an element of `C^3_com(g, g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub order: usize,
    pub class: CompatCochain,
    pub is_closed: bool,
}

impl Obstruction {
    pub fn is_zero(&self) -> bool {
        self.class.is_zero()
    }
}

fn check_term(dim: usize, c: &Cochain) -> Result<()> {
    if c.degree() != 2 || c.dim_g() != dim || c.dim_m() != dim {
        return Err(Error::InvalidDeformation(format!(
            "deformation terms must be 2-cochains on g of dimension {dim}"
        )));
    }
    Ok(())
}

fn adjoint_data(base: &CompatiblePair) -> (BimoduleActions, BimoduleActions) {
    (
        BimoduleActions::adjoint(base.first()),
        BimoduleActions::adjoint(base.second()),
    )
}

impl TruncatedDeformation {
    /// `terms1[i - 1]` and `terms2[i - 1]` are the coefficients of `t^i`.
    pub fn new(base: CompatiblePair, terms1: Vec<Cochain>, terms2: Vec<Cochain>) -> Result<Self> {
        if terms1.len() != terms2.len() {
            return Err(Error::InvalidDeformation(format!(
                "{} first-bracket terms but {} second-bracket terms",
                terms1.len(),
                terms2.len()
            )));
        }
        for c in terms1.iter().chain(&terms2) {
            check_term(base.dim(), c)?;
        }
        Ok(TruncatedDeformation {
            base,
            terms1,
            terms2,
        })
    }

    /// The order-0 deformation consisting of the base alone.
    pub fn trivial(base: CompatiblePair) -> Self {
        TruncatedDeformation {
            base,
            terms1: Vec::new(),
            terms2: Vec::new(),
        }
    }

    pub fn base(&self) -> &CompatiblePair {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.terms1.len()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Coefficient of `t^i` in the first bracket; `i = 0` is the base.
    pub fn term1(&self, i: usize) -> Cochain {
        if i == 0 {
            Cochain::from_bracket(self.base.first())
        } else {
            self.terms1[i - 1].clone()
        }
    }

    pub fn term2(&self, i: usize) -> Cochain {
        if i == 0 {
            Cochain::from_bracket(self.base.second())
        } else {
            self.terms2[i - 1].clone()
        }
    }

    pub fn terms1(&self) -> &[Cochain] {
        &self.terms1
    }

    pub fn terms2(&self) -> &[Cochain] {
        &self.terms2
    }

    /// Appends the `t^{N+1}` terms.
    pub fn extended(&self, m1: Cochain, m2: Cochain) -> Result<Self> {
        check_term(self.dim(), &m1)?;
        check_term(self.dim(), &m2)?;
        let mut out = self.clone();
        out.terms1.push(m1);
        out.terms2.push(m2);
        Ok(out)
    }

    fn convolution(&self, n: usize, lo: usize) -> Result<Residuals> {
        let d = self.dim();
        let mut first = Cochain::zero(3, d, d);
        let mut mixed = Cochain::zero(3, d, d);
        let mut second = Cochain::zero(3, d, d);
        for i in lo..=n - lo {
            let j = n - i;
            let (a1, a2) = (self.term1(i), self.term2(i));
            let (b1, b2) = (self.term1(j), self.term2(j));
            first.add_assign(&nr_bracket(&a1, &b1)?);
            mixed.add_assign(&nr_bracket(&a1, &b2)?);
            second.add_assign(&nr_bracket(&a2, &b2)?);
        }
        Ok(Residuals {
            first,
            mixed,
            second,
        })
    }

    /// `(Σ_{i+j=n}[m1i,m1j], Σ_{i+j=n}[m1i,m2j], Σ_{i+j=n}[m2i,m2j])`.
    pub fn residuals(&self, n: usize) -> Result<Residuals> {
        if n > self.order() {
            return Err(Error::OrderOutOfRange {
                requested: n,
                max: self.order(),
            });
        }
        self.convolution(n, 0)
    }

    /// `None` when every residual up to the order vanishes, otherwise the
    /// first failing `(n, component)`.
    pub fn first_failure(&self) -> Result<Option<(usize, ResidualComponent)>> {
        for n in 0..=self.order() {
            if let Some(c) = self.residuals(n)?.first_nonzero() {
                return Ok(Some((n, c)));
            }
        }
        Ok(None)
    }

    pub fn is_deformation_of_order(&self) -> Result<bool> {
        Ok(self.first_failure()?.is_none())
    }

    fn require_valid(&self) -> Result<()> {
        if let Some((n, c)) = self.first_failure()? {
            return Err(Error::InvalidDeformation(format!(
                "{c} does not vanish at order {n}"
            )));
        }
        Ok(())
    }

    /// The first order `n >= 1` with `(m1n, m2n) != 0`, checked against
    /// `δ_c (m1n, m2n) = 0` with adjoint coefficients.
    pub fn infinitesimal(&self) -> Result<Infinitesimal> {
        let n = (1..=self.order())
            .find(|&n| !self.terms1[n - 1].is_zero() || !self.terms2[n - 1].is_zero())
            .ok_or(Error::NoInfinitesimal)?;
        let (m1, m2) = (self.term1(n), self.term2(n));
        let (a1, a2) = adjoint_data(&self.base);
        let data = CompatData::new(&self.base, &a1, &a2)?;
        let image = data.delta_c(&CompatCochain::new(2, vec![m1.clone(), m2.clone()])?)?;
        Ok(Infinitesimal {
            order: n,
            m1,
            m2,
            is_cocycle: image.is_zero(),
        })
    }

    /// `O^n = (½ Σ[m1i,m1j], Σ[m1i,m2j], ½ Σ[m2i,m2j])` over `i + j = n + 1`
    /// with `i, j > 0`, where `n` is the order.
    pub fn obstruction(&self) -> Result<Obstruction> {
        self.require_valid()?;
        let n = self.order();
        let r = self.convolution(n + 1, 1)?;
        let half = frac(1, 2);
        let class = CompatCochain::new(
            3,
            vec![r.first.scale(&half), r.mixed, r.second.scale(&half)],
        )?;
        let (a1, a2) = adjoint_data(&self.base);
        let data = CompatData::new(&self.base, &a1, &a2)?;
        let is_closed = data.delta_c(&class)?.is_zero();
        Ok(Obstruction {
            order: n,
            class,
            is_closed,
        })
    }

    /// A solution of `δ_c(x, y) = O^n`, i.e. terms `(m1_{n+1}, m2_{n+1})`
    /// extending the deformation, with free variables set to zero.
    pub fn try_extend(&self) -> Result<Option<(Cochain, Cochain)>> {
        let obs = self.obstruction()?;
        let (a1, a2) = adjoint_data(&self.base);
        let data = CompatData::new(&self.base, &a1, &a2)?;
        let a = data.delta_c_matrix(2)?;
        let Some(x) = linalg::solve(&a, &obs.class.flat())? else {
            return Ok(None);
        };
        let mut parts = CompatCochain::from_flat(2, self.dim(), self.dim(), &x)?.into_components();
        let y = parts.pop().expect("two components");
        let x = parts.pop().expect("two components");
        Ok(Some((x, y)))
    }

    /// `try_extend` followed by appending the solution.
    pub fn extend(&self) -> Result<Option<TruncatedDeformation>> {
        match self.try_extend()? {
            Some((x, y)) => Ok(Some(self.extended(x, y)?)),
            None => Ok(None),
        }
    }
}

/// `Φ_t = id + Σ_{i=1}^N φ_i t^i`, each `φ_i` a linear map `g -> g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeTransform {
    dim: usize,
    phi: Vec<ExactMatrix>,
}

/// Matrix of a 1-cochain with values in `g`: column `j` is `φ(e_j)`.
pub fn linear_map_matrix(c: &Cochain) -> Result<ExactMatrix> {
    if c.degree() != 1 || c.dim_g() != c.dim_m() {
        return Err(Error::ShapeMismatch(
            "expected a 1-cochain with values in g".into(),
        ));
    }
    let d = c.dim_g();
    let cols: Vec<Vec<Scalar>> = (0..d).map(|j| c.value_at(j).to_vec()).collect();
    ExactMatrix::from_columns(d, &cols)
}

pub fn matrix_cochain(m: &ExactMatrix) -> Cochain {
    let d = m.rows();
    let mut c = Cochain::zero(1, d, d);
    for j in 0..d {
        for i in 0..d {
            let v = m.get(i, j);
            if !v.is_zero() {
                c.set(&[j], i, v.clone());
            }
        }
    }
    c
}

impl GaugeTransform {
    pub fn new(dim: usize, phi: Vec<Cochain>) -> Result<Self> {
        let phi = phi
            .iter()
            .map(|c| {
                if c.dim_g() != dim {
                    return Err(Error::ShapeMismatch(format!(
                        "gauge term over dimension {} for an algebra of dimension {dim}",
                        c.dim_g()
                    )));
                }
                linear_map_matrix(c)
            })
            .collect::<Result<_>>()?;
        Ok(GaugeTransform { dim, phi })
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        GaugeTransform {
            dim,
            phi: vec![ExactMatrix::zeros(dim, dim); order],
        }
    }

    pub fn order(&self) -> usize {
        self.phi.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `φ_i` as a 1-cochain (`i >= 1`).
    pub fn term(&self, i: usize) -> Cochain {
        matrix_cochain(&self.phi[i - 1])
    }

    fn coefficient(&self, i: usize) -> ExactMatrix {
        if i == 0 {
            ExactMatrix::identity(self.dim)
        } else {
            self.phi[i - 1].clone()
        }
    }

    /// Truncated inverse: `ψ_0 = id`, `ψ_k = -Σ_{i=1}^k φ_i ψ_{k-i}`.
    pub fn inverse(&self) -> GaugeTransform {
        let mut psi = vec![ExactMatrix::identity(self.dim)];
        for k in 1..=self.order() {
            let mut acc = ExactMatrix::zeros(self.dim, self.dim);
            for i in 1..=k {
                let prod = self.phi[i - 1].mul(&psi[k - i]).expect("square matrices");
                acc = sub_matrix(&acc, &prod);
            }
            psi.push(acc);
        }
        psi.remove(0);
        GaugeTransform {
            dim: self.dim,
            phi: psi,
        }
    }
}

fn sub_matrix(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let mut out = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, a.get(i, j) - b.get(i, j));
        }
    }
    out
}

/// Coefficients of `Φ^{-1} ∘ m_t ∘ (Φ ⊗ Φ)` mod `t^{N+1}`, orders `1..=N`,
/// from `terms = [m_0, .., m_N]`.
fn conjugate(
    terms: &[Cochain],
    phi: &GaugeTransform,
    psi: &GaugeTransform,
) -> Result<Vec<Cochain>> {
    let n = terms.len() - 1;
    let d = phi.dim;
    let brackets = terms
        .iter()
        .map(Cochain::to_bracket)
        .collect::<Result<Vec<BracketTensor>>>()?;
    let cols: Vec<Vec<Vector>> = (0..=n)
        .map(|i| {
            let m = phi.coefficient(i);
            (0..d).map(|j| Vector(m.column(j))).collect()
        })
        .collect();
    // inner[l] = Σ_{a+b+c=l} m_a(φ_b x, φ_c y)
    let mut inner: Vec<BracketTensor> = vec![BracketTensor::zero(d); n + 1];
    for (a, m) in brackets.iter().enumerate() {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                let l = a + b + c;
                for x in 0..d {
                    for y in 0..d {
                        let v = m.eval_unchecked(&cols[b][x], &cols[c][y]);
                        for (k, val) in v.0.into_iter().enumerate() {
                            if !val.is_zero() {
                                let cur = inner[l].get(x, y, k) + val;
                                inner[l].set(x, y, k, cur);
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for total in 1..=n {
        let mut acc = BracketTensor::zero(d);
        for k in 0..=total {
            let psi_k = psi.coefficient(k);
            let p = &inner[total - k];
            for x in 0..d {
                for y in 0..d {
                    let img = psi_k.mul_vec(&p.basis_product(x, y).0)?;
                    for (r, val) in img.into_iter().enumerate() {
                        if !val.is_zero() {
                            let cur = acc.get(x, y, r) + val;
                            acc.set(x, y, r, cur);
                        }
                    }
                }
            }
        }
        out.push(Cochain::from_bracket(&acc));
    }
    Ok(out)
}

/// `m'_{k,t} = Φ_t^{-1} ∘ m_{k,t} ∘ (Φ_t ⊗ Φ_t)` truncated at the order.
///
/// The order-0 terms are unchanged because `Φ_0 = id`.
pub fn apply_gauge(
    defm: &TruncatedDeformation,
    g: &GaugeTransform,
) -> Result<TruncatedDeformation> {
    if g.order() != defm.order() || g.dim() != defm.dim() {
        return Err(Error::ShapeMismatch(format!(
            "gauge of order {} and dimension {} for a deformation of order {} and dimension {}",
            g.order(),
            g.dim(),
            defm.order(),
            defm.dim()
        )));
    }
    let psi = g.inverse();
    let full1: Vec<Cochain> = (0..=defm.order()).map(|i| defm.term1(i)).collect();
    let full2: Vec<Cochain> = (0..=defm.order()).map(|i| defm.term2(i)).collect();
    TruncatedDeformation::new(
        defm.base.clone(),
        conjugate(&full1, g, &psi)?,
        conjugate(&full2, g, &psi)?,
    )
}

/// Whether the infinitesimals differ by a `δ_c` coboundary. The two are
/// compared at the lower of their orders; a deformation with no nonzero term
/// at that order contributes zero.
pub fn infinitesimals_cohomologous(
    a: &TruncatedDeformation,
    b: &TruncatedDeformation,
) -> Result<bool> {
    if a.base != b.base {
        return Err(Error::BaseMismatch);
    }
    let order_of = |d: &TruncatedDeformation| match d.infinitesimal() {
        Ok(inf) => Ok(Some(inf.order)),
        Err(Error::NoInfinitesimal) => Ok(None),
        Err(e) => Err(e),
    };
    let n = match (order_of(a)?, order_of(b)?) {
        (None, None) => return Ok(true),
        (Some(x), None) | (None, Some(x)) => x,
        (Some(x), Some(y)) => x.min(y),
    };
    let term = |d: &TruncatedDeformation, k: u8| -> Cochain {
        let dim = d.dim();
        if n > d.order() {
            Cochain::zero(2, dim, dim)
        } else if k == 1 {
            d.term1(n)
        } else {
            d.term2(n)
        }
    };
    let diff = CompatCochain::new(
        2,
        vec![term(a, 1).sub(&term(b, 1))?, term(a, 2).sub(&term(b, 2))?],
    )?;
    let (a1, a2) = adjoint_data(&a.base);
    let data = CompatData::new(&a.base, &a1, &a2)?;
    Ok(data.coboundary_preimage(&diff)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::delta;
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

    fn l2_over_abelian() -> TruncatedDeformation {
        TruncatedDeformation::new(
            CompatiblePair::abelian(2),
            vec![Cochain::from_bracket(&bt(2, &[(1, 1, 2, 1)]))],
            vec![Cochain::zero(2, 2, 2)],
        )
        .unwrap()
    }

    #[test]
    fn trivial_deformation() {
        let base =
            CompatiblePair::new(bt(3, &[(1, 1, 3, 1)]), bt(3, &[(1, 1, 2, 1), (2, 1, 3, 1)]))
                .unwrap();
        let d = TruncatedDeformation::trivial(base);
        assert!(d.residuals(0).unwrap().is_zero());
        assert!(d.is_deformation_of_order().unwrap());
        assert_eq!(d.infinitesimal(), Err(Error::NoInfinitesimal));
        assert_eq!(
            d.residuals(1),
            Err(Error::OrderOutOfRange {
                requested: 1,
                max: 0
            })
        );
    }

    #[test]
    fn leibniz_term_over_abelian_base() {
        let d = l2_over_abelian();
        assert!(d.is_deformation_of_order().unwrap());
        let inf = d.infinitesimal().unwrap();
        assert_eq!(inf.order, 1);
        assert!(inf.is_cocycle);
        let obs = d.obstruction().unwrap();
        assert!(obs.is_zero() && obs.is_closed);
        let ext = d.extend().unwrap().unwrap();
        assert!(ext.is_deformation_of_order().unwrap());
        assert!(ext.residuals(2).unwrap().is_zero());
    }

    #[test]
    fn non_leibniz_term_is_obstructed() {
        let mu = bt(3, &[(1, 1, 2, 1), (2, 2, 3, 1), (1, 2, 3, 1)]);
        let d = TruncatedDeformation::new(
            CompatiblePair::abelian(3),
            vec![Cochain::from_bracket(&mu)],
            vec![Cochain::zero(2, 3, 3)],
        )
        .unwrap();
        assert!(d.is_deformation_of_order().unwrap());
        let obs = d.obstruction().unwrap();
        let sq = nr_bracket(&Cochain::from_bracket(&mu), &Cochain::from_bracket(&mu)).unwrap();
        assert_eq!(obs.class.components()[0], sq.scale(&frac(1, 2)));
        assert!(obs.class.components()[1].is_zero() && obs.class.components()[2].is_zero());
        // over the abelian base δ_c = 0, so a nonzero obstruction cannot be solved
        assert_eq!(d.try_extend().unwrap(), None);
        let padded = d
            .extended(Cochain::zero(2, 3, 3), Cochain::zero(2, 3, 3))
            .unwrap();
        assert_eq!(
            padded.first_failure().unwrap(),
            Some((2, ResidualComponent::First))
        );
    }

    #[test]
    fn gauge_shifts_first_order_terms() {
        let b1 = bt(3, &[(1, 1, 3, 1)]);
        let b2 = bt(3, &[(1, 1, 2, 1), (2, 1, 3, 1)]);
        let base = CompatiblePair::new(b1.clone(), b2.clone()).unwrap();
        let d = TruncatedDeformation::new(
            base,
            vec![Cochain::zero(2, 3, 3)],
            vec![Cochain::zero(2, 3, 3)],
        )
        .unwrap();
        let mut phi = Cochain::zero(1, 3, 3);
        phi.set(&[0], 1, int(1));
        phi.set(&[2], 2, int(-2));
        let g = GaugeTransform::new(3, vec![phi.clone()]).unwrap();
        let moved = apply_gauge(&d, &g).unwrap();
        let d1 = delta(&b1, &BimoduleActions::adjoint(&b1), &phi).unwrap();
        let d2 = delta(&b2, &BimoduleActions::adjoint(&b2), &phi).unwrap();
        assert_eq!(moved.term1(1), d1);
        assert_eq!(moved.term2(1), d2);
        assert!(infinitesimals_cohomologous(&d, &moved).unwrap());
        let back = apply_gauge(&moved, &g.inverse()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn identity_gauge() {
        let d = l2_over_abelian();
        assert_eq!(apply_gauge(&d, &GaugeTransform::identity(2, 1)).unwrap(), d);
    }
}
