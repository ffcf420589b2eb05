//! Abelian extensions `0 -> M -> E -> g -> 0` of a compatible pair by a
//! compatible bimodule. The total space is `M ⊕ g` with the `M` basis first.

use num_traits::Zero;

use crate::algebra::{BracketTensor, CompatiblePair, Vector};
use crate::cochain::{BimoduleActions, Cochain, CompatCochain, CompatData};
use crate::error::{Error, Result};
use crate::linalg::{self, ExactMatrix};
use crate::representation::{is_compatible_bimodule, CompatibleBimodule, ConditionB};
use crate::scalar::{one, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianExtension {
    base: CompatiblePair,
    dim_m: usize,
    total: CompatiblePair,
    incl: ExactMatrix,
    proj: ExactMatrix,
    split: ExactMatrix,
}

fn cocycle_data<'a>(
    pair: &'a CompatiblePair,
    cbm: &'a CompatibleBimodule,
) -> Result<CompatData<'a>> {
    CompatData::new(pair, cbm.actions1(), cbm.actions2())
}

/// Checks `δ_c (f1, f2) = 0`, reporting the first nonzero component (1-based).
pub fn check_cocycle(
    pair: &CompatiblePair,
    cbm: &CompatibleBimodule,
    f1: &Cochain,
    f2: &Cochain,
) -> Result<()> {
    let data = cocycle_data(pair, cbm)?;
    let image = data.delta_c(&CompatCochain::new(2, vec![f1.clone(), f2.clone()])?)?;
    match image.first_nonzero_component() {
        Some(c) => Err(Error::NotACocycle { component: c + 1 }),
        None => Ok(()),
    }
}

fn total_bracket(b: &BracketTensor, acts: &BimoduleActions, f: &Cochain) -> BracketTensor {
    let d = b.dim();
    let m = acts.dim_m();
    let mut out = BracketTensor::zero(m + d);
    for a in 0..m {
        for j in 0..d {
            for c in 0..m {
                let r = acts.right_coeff(a, j, c);
                if !r.is_zero() {
                    out.set(a, m + j, c, r.clone());
                }
                let l = acts.left_coeff(j, a, c);
                if !l.is_zero() {
                    out.set(m + j, a, c, l.clone());
                }
            }
        }
    }
    for i in 0..d {
        for j in 0..d {
            for c in 0..m {
                let v = f.get(&[i, j], c);
                if !v.is_zero() {
                    out.set(m + i, m + j, c, v.clone());
                }
            }
            for k in 0..d {
                let v = b.get(i, j, k);
                if !v.is_zero() {
                    out.set(m + i, m + j, m + k, v.clone());
                }
            }
        }
    }
    out
}

fn block_identity(
    rows: usize,
    cols: usize,
    row_off: usize,
    col_off: usize,
    n: usize,
) -> ExactMatrix {
    let mut out = ExactMatrix::zeros(rows, cols);
    for i in 0..n {
        out.set(row_off + i, col_off + i, one());
    }
    out
}

/// `μ_k((m,x),(n,y)) = (r_k(m,y) + l_k(x,n) + f_k(x,y), m_k(x,y))` with the
/// canonical inclusion, projection and splitting.
pub fn build_extension(
    pair: &CompatiblePair,
    cbm: &CompatibleBimodule,
    f1: &Cochain,
    f2: &Cochain,
) -> Result<AbelianExtension> {
    let d = pair.dim();
    let m = cbm.dim_m();
    for f in [f1, f2] {
        if f.degree() != 2 || f.dim_g() != d || f.dim_m() != m {
            return Err(Error::DimensionMismatch(format!(
                "cocycle components must be 2-cochains g -> M with dim g = {d}, dim M = {m}"
            )));
        }
    }
    check_cocycle(pair, cbm, f1, f2)?;
    let total = CompatiblePair::new(
        total_bracket(pair.first(), cbm.actions1(), f1),
        total_bracket(pair.second(), cbm.actions2(), f2),
    )
    .map_err(|e| Error::InvalidExtension(e.to_string()))?;
    AbelianExtension::new(
        pair.clone(),
        m,
        total,
        block_identity(m + d, m, 0, 0, m),
        block_identity(d, m + d, 0, m, d),
        block_identity(m + d, d, m, 0, d),
    )
}

impl AbelianExtension {
    /// Validates `j∘i = 0`, `j∘s = id`, exactness, that `j` is a morphism for
    /// both brackets and that `M` squares to zero in both.
    pub fn new(
        base: CompatiblePair,
        dim_m: usize,
        total: CompatiblePair,
        incl: ExactMatrix,
        proj: ExactMatrix,
        split: ExactMatrix,
    ) -> Result<Self> {
        let d = base.dim();
        let e = d + dim_m;
        let bad = |s: &str| Err(Error::InvalidExtension(s.to_string()));
        if total.dim() != e
            || (incl.rows(), incl.cols()) != (e, dim_m)
            || (proj.rows(), proj.cols()) != (d, e)
            || (split.rows(), split.cols()) != (e, d)
        {
            return bad("maps do not have the shapes M -> E, E -> g, g -> E");
        }
        if !proj.mul(&incl)?.is_zero() {
            return bad("j ∘ i is not zero");
        }
        if proj.mul(&split)? != ExactMatrix::identity(d) {
            return bad("j ∘ s is not the identity");
        }
        if linalg::rank(&incl) != dim_m {
            return bad("i is not injective");
        }
        if linalg::rank(&proj) != d {
            return bad("j is not surjective");
        }
        let ext = AbelianExtension {
            base,
            dim_m,
            total,
            incl,
            proj,
            split,
        };
        for (mu, b) in [
            (ext.total.first(), ext.base.first()),
            (ext.total.second(), ext.base.second()),
        ] {
            for a in 0..e {
                for c in 0..e {
                    let va = Vector::basis(e, a);
                    let vc = Vector::basis(e, c);
                    let lhs = ext.proj.mul_vec(&mu.eval_unchecked(&va, &vc).0)?;
                    let ja = Vector(ext.proj.mul_vec(&va.0)?);
                    let jc = Vector(ext.proj.mul_vec(&vc.0)?);
                    if Vector(lhs) != b.eval_unchecked(&ja, &jc) {
                        return bad("j is not a morphism of the brackets");
                    }
                }
            }
            for a in 0..dim_m {
                for c in 0..dim_m {
                    let ia = Vector(ext.incl.column(a));
                    let ic = Vector(ext.incl.column(c));
                    if !mu.eval_unchecked(&ia, &ic).is_zero() {
                        return bad("products of elements of M do not vanish");
                    }
                }
            }
        }
        Ok(ext)
    }

    pub fn base(&self) -> &CompatiblePair {
        &self.base
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn total(&self) -> &CompatiblePair {
        &self.total
    }

    pub fn inclusion(&self) -> &ExactMatrix {
        &self.incl
    }

    pub fn projection(&self) -> &ExactMatrix {
        &self.proj
    }

    pub fn splitting(&self) -> &ExactMatrix {
        &self.split
    }

    /// Same extension with another splitting `s'`.
    pub fn with_splitting(&self, split: ExactMatrix) -> Result<Self> {
        Self::new(
            self.base.clone(),
            self.dim_m,
            self.total.clone(),
            self.incl.clone(),
            self.proj.clone(),
            split,
        )
    }

    /// The splitting `s + i∘g` for a 1-cochain `g: g -> M`.
    pub fn shifted_splitting(&self, g: &Cochain) -> Result<ExactMatrix> {
        let gm = cochain_matrix(g, self.base.dim(), self.dim_m)?;
        let ig = self.incl.mul(&gm)?;
        let mut out = self.split.clone();
        for i in 0..out.rows() {
            for j in 0..out.cols() {
                out.set(i, j, self.split.get(i, j) + ig.get(i, j));
            }
        }
        Ok(out)
    }

    fn s(&self, x: usize) -> Vector {
        Vector(self.split.column(x))
    }

    fn i(&self, a: usize) -> Vector {
        Vector(self.incl.column(a))
    }

    /// Coordinates in `M` of an element of `image(i)`.
    fn i_inverse(&self, v: &Vector) -> Result<Vector> {
        linalg::solve(&self.incl, &v.0)?
            .map(Vector)
            .ok_or_else(|| Error::InvalidExtension("element does not lie in the image of i".into()))
    }

    /// `l_k(x, m) = i^{-1} μ_k(s(x), i(m))` and `r_k(m, x) = i^{-1} μ_k(i(m), s(x))`.
    pub fn induced_bimodule(&self) -> Result<CompatibleBimodule> {
        let d = self.base.dim();
        let m = self.dim_m;
        let mut acts = Vec::new();
        for mu in [self.total.first(), self.total.second()] {
            let mut a = BimoduleActions::zero(d, m);
            for x in 0..d {
                for k in 0..m {
                    let l = self.i_inverse(&mu.eval_unchecked(&self.s(x), &self.i(k)))?;
                    let r = self.i_inverse(&mu.eval_unchecked(&self.i(k), &self.s(x)))?;
                    for c in 0..m {
                        a.set_left(x, k, c, l.0[c].clone());
                        a.set_right(k, x, c, r.0[c].clone());
                    }
                }
            }
            acts.push(a);
        }
        let a2 = acts.pop().expect("two structures");
        let a1 = acts.pop().expect("two structures");
        CompatibleBimodule::new(a1, a2)
    }

    /// `f_k(x, y) = i^{-1}(μ_k(s x, s y) - s(m_k(x, y)))`, verified to be a
    /// `δ_c` 2-cocycle for the induced bimodule.
    pub fn extract_cocycle(&self) -> Result<(Cochain, Cochain)> {
        let d = self.base.dim();
        let m = self.dim_m;
        let mut out = Vec::new();
        for (mu, b) in [
            (self.total.first(), self.base.first()),
            (self.total.second(), self.base.second()),
        ] {
            let mut f = Cochain::zero(2, d, m);
            for x in 0..d {
                for y in 0..d {
                    let lifted = mu.eval_unchecked(&self.s(x), &self.s(y));
                    let down = Vector(self.split.mul_vec(&b.basis_product(x, y).0)?);
                    let v = self.i_inverse(&lifted.sub(&down))?;
                    for (c, val) in v.0.into_iter().enumerate() {
                        f.set(&[x, y], c, val);
                    }
                }
            }
            out.push(f);
        }
        let f2 = out.pop().expect("two structures");
        let f1 = out.pop().expect("two structures");
        let cbm = self.induced_bimodule()?;
        check_cocycle(&self.base, &cbm, &f1, &f2)?;
        Ok((f1, f2))
    }
}

fn cochain_matrix(g: &Cochain, d: usize, m: usize) -> Result<ExactMatrix> {
    if g.degree() != 1 || g.dim_g() != d || g.dim_m() != m {
        return Err(Error::DimensionMismatch(format!(
            "expected a 1-cochain g -> M with dim g = {d}, dim M = {m}"
        )));
    }
    let cols: Vec<Vec<Scalar>> = (0..d).map(|j| g.value_at(j).to_vec()).collect();
    ExactMatrix::from_columns(m, &cols)
}

/// Whether `φ(i(m) + s(x)) = i'(m + g(x)) + s'(x)` is a morphism of both
/// brackets from `a` to `b` with `φ∘i = i'` and `j'∘φ = j`.
pub fn equivalence_map(a: &AbelianExtension, b: &AbelianExtension, g: &Cochain) -> Result<bool> {
    if a.base != b.base {
        return Err(Error::BaseMismatch);
    }
    if a.dim_m != b.dim_m {
        return Err(Error::DimensionMismatch(format!(
            "extensions by modules of dimensions {} and {}",
            a.dim_m, b.dim_m
        )));
    }
    let d = a.base.dim();
    let m = a.dim_m;
    let e = d + m;
    let gm = cochain_matrix(g, d, m)?;
    // φ on the basis of E, as columns
    let mut phi_cols = Vec::with_capacity(e);
    for k in 0..e {
        let v = Vector::basis(e, k);
        let x = Vector(a.proj.mul_vec(&v.0)?);
        let rest = v.sub(&Vector(a.split.mul_vec(&x.0)?));
        let mm = a.i_inverse(&rest)?;
        let mg = mm.add(&Vector(gm.mul_vec(&x.0)?));
        let img = Vector(b.incl.mul_vec(&mg.0)?).add(&Vector(b.split.mul_vec(&x.0)?));
        phi_cols.push(img.0);
    }
    let phi = ExactMatrix::from_columns(e, &phi_cols)?;
    if phi.mul(&a.incl)? != b.incl || b.proj.mul(&phi)? != a.proj {
        return Ok(false);
    }
    for (ma, mb) in [
        (a.total.first(), b.total.first()),
        (a.total.second(), b.total.second()),
    ] {
        for p in 0..e {
            for q in 0..e {
                let lhs = phi.mul_vec(&ma.basis_product(p, q).0)?;
                let rhs = mb.eval_unchecked(&Vector(phi.column(p)), &Vector(phi.column(q)));
                if Vector(lhs) != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A `g` with `f_a - f_b = δ_c g`, if the extracted cocycles are cohomologous.
/// Then `equivalence_map(a, b, g)` holds.
pub fn connecting_map(a: &AbelianExtension, b: &AbelianExtension) -> Result<Option<Cochain>> {
    if a.base != b.base {
        return Err(Error::BaseMismatch);
    }
    let (fa1, fa2) = a.extract_cocycle()?;
    let (fb1, fb2) = b.extract_cocycle()?;
    let cbm = a.induced_bimodule()?;
    if b.induced_bimodule()? != cbm {
        return Ok(None);
    }
    let data = cocycle_data(&a.base, &cbm)?;
    let diff = CompatCochain::new(2, vec![fa1.sub(&fb1)?, fa2.sub(&fb2)?])?;
    Ok(data
        .coboundary_preimage(&diff)?
        .map(|c| c.into_components().remove(0)))
}

/// `dim H^2_com(g, M)`, the dimension of the space of equivalence classes of
/// abelian extensions.
pub fn ext_classes_dim(pair: &CompatiblePair, cbm: &CompatibleBimodule) -> Result<usize> {
    if let Some(w) = is_compatible_bimodule(pair, cbm, ConditionB::Symmetric)? {
        return Err(Error::InvalidBimodule(w.to_string()));
    }
    cocycle_data(pair, cbm)?.cohomology_dim(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::delta;
    use crate::representation::semidirect;
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

    fn example() -> CompatiblePair {
        CompatiblePair::new(bt(3, &[(1, 1, 3, 1)]), bt(3, &[(1, 1, 2, 1), (2, 1, 3, 1)])).unwrap()
    }

    fn g_cochain() -> Cochain {
        let mut g = Cochain::zero(1, 3, 3);
        g.set(&[0], 1, int(2));
        g.set(&[1], 0, int(-1));
        g.set(&[2], 2, int(1));
        g
    }

    #[test]
    fn zero_cocycle_gives_semidirect() {
        let pair = example();
        let cbm = CompatibleBimodule::adjoint(&pair);
        let z = Cochain::zero(2, 3, 3);
        let ext = build_extension(&pair, &cbm, &z, &z).unwrap();
        // semidirect uses g first; E uses M first
        let sd = semidirect(&pair, &cbm).unwrap();
        let perm = crate::algebra::BasisChange::permutation(&[3, 4, 5, 0, 1, 2]).unwrap();
        let moved = sd.apply_basis_change(&perm).unwrap();
        assert_eq!(moved.first(), ext.total().first());
        assert_eq!(moved.second(), ext.total().second());
        assert_eq!(ext.extract_cocycle().unwrap(), (z.clone(), z));
        assert_eq!(ext.induced_bimodule().unwrap(), cbm);
    }

    #[test]
    fn one_dimensional_example() {
        let pair = CompatiblePair::abelian(1);
        let cbm = CompatibleBimodule::zero(1, 1);
        let mut f1 = Cochain::zero(2, 1, 1);
        f1.set(&[0, 0], 0, int(1));
        let ext = build_extension(&pair, &cbm, &f1, &Cochain::zero(2, 1, 1)).unwrap();
        assert_eq!(ext.total().dim(), 2);
        assert_eq!(ext.total().first().get(1, 1, 0), &int(1));
        assert!(ext.total().first().is_leibniz().holds());
    }

    #[test]
    fn coboundary_extension_and_splitting_change() {
        let pair = example();
        let cbm = CompatibleBimodule::adjoint(&pair);
        let g = g_cochain();
        let f1 = delta(pair.first(), cbm.actions1(), &g).unwrap();
        let f2 = delta(pair.second(), cbm.actions2(), &g).unwrap();
        let ext = build_extension(&pair, &cbm, &f1, &f2).unwrap();
        let z = Cochain::zero(2, 3, 3);
        let sd = build_extension(&pair, &cbm, &z, &z).unwrap();
        assert!(equivalence_map(&ext, &sd, &g).unwrap());
        assert!(!equivalence_map(&ext, &sd, &Cochain::zero(1, 3, 3)).unwrap());
        let found = connecting_map(&ext, &sd).unwrap().expect("cohomologous");
        assert!(equivalence_map(&ext, &sd, &found).unwrap());

        // moving the splitting of the semidirect product by i∘g recovers (f1, f2)
        let moved = sd
            .with_splitting(sd.shifted_splitting(&g).unwrap())
            .unwrap();
        assert_eq!(moved.extract_cocycle().unwrap(), (f1, f2));
        assert_eq!(moved.induced_bimodule().unwrap(), cbm);
    }

    #[test]
    fn rejects_non_cocycle() {
        let pair = example();
        let cbm = CompatibleBimodule::adjoint(&pair);
        let mut f1 = Cochain::zero(2, 3, 3);
        f1.set(&[0, 0], 0, int(1));
        let z = Cochain::zero(2, 3, 3);
        assert!(matches!(
            build_extension(&pair, &cbm, &f1, &z),
            Err(Error::NotACocycle { .. })
        ));
    }

    #[test]
    fn abelian_classes() {
        let pair = CompatiblePair::abelian(2);
        let cbm = CompatibleBimodule::zero(2, 1);
        assert_eq!(ext_classes_dim(&pair, &cbm).unwrap(), 2 * 4);
    }
}
