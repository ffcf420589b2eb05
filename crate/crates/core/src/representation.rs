//! Bimodules over a Leibniz algebra, compatible bimodules over a compatible
//! pair, and the semidirect product.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{BracketTensor, CompatiblePair, Vector};
use crate::cochain::BimoduleActions;
use crate::error::{Error, Result};

/// The three Leibniz identities with one argument taken from `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BimoduleIdentity {
    /// `l(x, l(y, m)) = l([x,y], m) - r(l(x,m), y)`
    Llm,
    /// `l(x, r(m, y)) = r(l(x,m), y) - l([x,y], m)`
    Lml,
    /// `r(m, [x,y]) = r(r(m,x), y) - r(r(m,y), x)`
    Mll,
}

impl fmt::Display for BimoduleIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BimoduleIdentity::Llm => "(g, g, M)",
            BimoduleIdentity::Lml => "(g, M, g)",
            BimoduleIdentity::Mll => "(M, g, g)",
        })
    }
}

/// Which axiom failed, on which basis elements `(x, y, m)` (0-based), with
/// what defect in `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleWitness {
    pub condition: BimoduleCondition,
    pub x: usize,
    pub y: usize,
    pub m: usize,
    pub defect: Vector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BimoduleCondition {
    First(BimoduleIdentity),
    Second(BimoduleIdentity),
    Single(BimoduleIdentity),
    A,
    B,
    C,
}

impl fmt::Display for BimoduleCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BimoduleCondition::First(i) => write!(f, "bimodule axiom {i} for the first structure"),
            BimoduleCondition::Second(i) => {
                write!(f, "bimodule axiom {i} for the second structure")
            }
            BimoduleCondition::Single(i) => write!(f, "bimodule axiom {i}"),
            BimoduleCondition::A => f.write_str("compatibility condition (a)"),
            BimoduleCondition::B => f.write_str("compatibility condition (b)"),
            BimoduleCondition::C => f.write_str("compatibility condition (c)"),
        }
    }
}

impl fmt::Display for BimoduleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at x = e{}, y = e{}, m = f{}: defect {}",
            self.condition,
            self.x + 1,
            self.y + 1,
            self.m + 1,
            self.defect
        )
    }
}

/// Reading of compatibility condition (b).
///
/// The printed condition has `r1(l2(x,m),y)` twice on the right. `Symmetric`
/// uses `r1(l2(x,m),y) + r2(l1(x,m),y)`, which is what the adjoint bimodule
/// satisfies; `Literal` uses the printed text.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum ConditionB {
    #[default]
    Symmetric,
    Literal,
}

fn basis_triples(d: usize, m: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..d).flat_map(move |x| (0..d).flat_map(move |y| (0..m).map(move |k| (x, y, k))))
}

fn check_dims(b: &BracketTensor, acts: &BimoduleActions) -> Result<()> {
    if b.dim() != acts.dim_g() {
        return Err(Error::DimensionMismatch(format!(
            "actions over dimension {} for a bracket of dimension {}",
            acts.dim_g(),
            b.dim()
        )));
    }
    Ok(())
}

fn identity_defect(
    id: BimoduleIdentity,
    b: &BracketTensor,
    a: &BimoduleActions,
    x: &Vector,
    y: &Vector,
    m: &Vector,
) -> Vector {
    match id {
        BimoduleIdentity::Llm => a
            .left(x, &a.left(y, m))
            .sub(&a.left(&b.eval_unchecked(x, y), m))
            .add(&a.right(&a.left(x, m), y)),
        BimoduleIdentity::Lml => a
            .left(x, &a.right(m, y))
            .sub(&a.right(&a.left(x, m), y))
            .add(&a.left(&b.eval_unchecked(x, y), m)),
        BimoduleIdentity::Mll => a
            .right(m, &b.eval_unchecked(x, y))
            .sub(&a.right(&a.right(m, x), y))
            .add(&a.right(&a.right(m, y), x)),
    }
}

const IDENTITIES: [BimoduleIdentity; 3] = [
    BimoduleIdentity::Llm,
    BimoduleIdentity::Lml,
    BimoduleIdentity::Mll,
];

fn first_bimodule_failure(
    b: &BracketTensor,
    acts: &BimoduleActions,
    wrap: fn(BimoduleIdentity) -> BimoduleCondition,
) -> Option<BimoduleWitness> {
    let d = b.dim();
    let m = acts.dim_m();
    for id in IDENTITIES {
        for (x, y, k) in basis_triples(d, m) {
            let defect = identity_defect(
                id,
                b,
                acts,
                &Vector::basis(d, x),
                &Vector::basis(d, y),
                &Vector::basis(m, k),
            );
            if !defect.is_zero() {
                return Some(BimoduleWitness {
                    condition: wrap(id),
                    x,
                    y,
                    m: k,
                    defect,
                });
            }
        }
    }
    None
}

/// Checks the three bimodule axioms on all basis triples; `None` means they
/// hold.
pub fn is_bimodule(b: &BracketTensor, acts: &BimoduleActions) -> Result<Option<BimoduleWitness>> {
    check_dims(b, acts)?;
    Ok(first_bimodule_failure(b, acts, BimoduleCondition::Single))
}

/// `(M, l1, r1, l2, r2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompatibleBimodule {
    actions1: BimoduleActions,
    actions2: BimoduleActions,
}

impl CompatibleBimodule {
    pub fn new(actions1: BimoduleActions, actions2: BimoduleActions) -> Result<Self> {
        if actions1.dim_g() != actions2.dim_g() || actions1.dim_m() != actions2.dim_m() {
            return Err(Error::DimensionMismatch(
                "the two action sets must share dim g and dim M".into(),
            ));
        }
        Ok(CompatibleBimodule { actions1, actions2 })
    }

    /// `l_k = r_k = [ , ]_k`.
    pub fn adjoint(pair: &CompatiblePair) -> Self {
        CompatibleBimodule {
            actions1: BimoduleActions::adjoint(pair.first()),
            actions2: BimoduleActions::adjoint(pair.second()),
        }
    }

    pub fn zero(dim_g: usize, dim_m: usize) -> Self {
        CompatibleBimodule {
            actions1: BimoduleActions::zero(dim_g, dim_m),
            actions2: BimoduleActions::zero(dim_g, dim_m),
        }
    }

    pub fn dim_g(&self) -> usize {
        self.actions1.dim_g()
    }

    pub fn dim_m(&self) -> usize {
        self.actions1.dim_m()
    }

    pub fn actions1(&self) -> &BimoduleActions {
        &self.actions1
    }

    pub fn actions2(&self) -> &BimoduleActions {
        &self.actions2
    }

    pub fn swapped(&self) -> Self {
        CompatibleBimodule {
            actions1: self.actions2.clone(),
            actions2: self.actions1.clone(),
        }
    }
}

/// Both bimodule structures plus conditions (a), (b), (c) on all basis
/// `(x, y, m)`. Condition (a) is used in its type-correct form
/// `l1(x, l2(y,m)) + l2(x, l1(y,m)) = l1([x,y]2, m) + l2([x,y]1, m)
///  - r1(l2(x,m), y) - r2(l1(x,m), y)`.
pub fn is_compatible_bimodule(
    pair: &CompatiblePair,
    cbm: &CompatibleBimodule,
    variant: ConditionB,
) -> Result<Option<BimoduleWitness>> {
    let (b1, b2) = (pair.first(), pair.second());
    check_dims(b1, &cbm.actions1)?;
    if let Some(w) = first_bimodule_failure(b1, &cbm.actions1, BimoduleCondition::First) {
        return Ok(Some(w));
    }
    if let Some(w) = first_bimodule_failure(b2, &cbm.actions2, BimoduleCondition::Second) {
        return Ok(Some(w));
    }
    let (a1, a2) = (&cbm.actions1, &cbm.actions2);
    let d = pair.dim();
    let m = cbm.dim_m();
    let conditions = [
        BimoduleCondition::A,
        BimoduleCondition::B,
        BimoduleCondition::C,
    ];
    for cond in conditions {
        for (i, j, k) in basis_triples(d, m) {
            let x = Vector::basis(d, i);
            let y = Vector::basis(d, j);
            let v = Vector::basis(m, k);
            let xy1 = b1.eval_unchecked(&x, &y);
            let xy2 = b2.eval_unchecked(&x, &y);
            let defect = match cond {
                BimoduleCondition::A => a1
                    .left(&x, &a2.left(&y, &v))
                    .add(&a2.left(&x, &a1.left(&y, &v)))
                    .sub(&a1.left(&xy2, &v))
                    .sub(&a2.left(&xy1, &v))
                    .add(&a1.right(&a2.left(&x, &v), &y))
                    .add(&a2.right(&a1.left(&x, &v), &y)),
                BimoduleCondition::B => {
                    let r12 = a1.right(&a2.left(&x, &v), &y);
                    let second = match variant {
                        ConditionB::Symmetric => a2.right(&a1.left(&x, &v), &y),
                        ConditionB::Literal => r12.clone(),
                    };
                    a1.left(&x, &a2.right(&v, &y))
                        .add(&a2.left(&x, &a1.right(&v, &y)))
                        .sub(&r12)
                        .sub(&second)
                        .add(&a1.left(&xy2, &v))
                        .add(&a2.left(&xy1, &v))
                }
                _ => a1
                    .right(&v, &xy2)
                    .add(&a2.right(&v, &xy1))
                    .sub(&a1.right(&a2.right(&v, &x), &y))
                    .sub(&a2.right(&a1.right(&v, &x), &y))
                    .add(&a1.right(&a2.right(&v, &y), &x))
                    .add(&a2.right(&a1.right(&v, &y), &x)),
            };
            if !defect.is_zero() {
                return Ok(Some(BimoduleWitness {
                    condition: cond,
                    x: i,
                    y: j,
                    m: k,
                    defect,
                }));
            }
        }
    }
    Ok(None)
}

/// Bracket on `g ⊕ M` (g indices first):
/// `[(x,m),(y,n)] = ([x,y], l(x,n) + r(m,y))`.
pub fn semidirect_bracket(b: &BracketTensor, acts: &BimoduleActions) -> Result<BracketTensor> {
    check_dims(b, acts)?;
    let d = b.dim();
    let m = acts.dim_m();
    let mut out = BracketTensor::zero(d + m);
    for (i, j, k, c) in b.nonzero_entries() {
        out.set(i, j, k, c);
    }
    for i in 0..d {
        for a in 0..m {
            for c in 0..m {
                let l = acts.left_coeff(i, a, c);
                if !l.is_zero() {
                    out.set(i, d + a, d + c, l.clone());
                }
                let r = acts.right_coeff(a, i, c);
                if !r.is_zero() {
                    out.set(d + a, i, d + c, r.clone());
                }
            }
        }
    }
    Ok(out)
}

/// The semidirect product `g ⋉ M` as a compatible pair on `g ⊕ M`.
pub fn semidirect(pair: &CompatiblePair, cbm: &CompatibleBimodule) -> Result<CompatiblePair> {
    if let Some(w) = is_compatible_bimodule(pair, cbm, ConditionB::Symmetric)? {
        return Err(Error::InvalidBimodule(w.to_string()));
    }
    CompatiblePair::new(
        semidirect_bracket(pair.first(), &cbm.actions1)?,
        semidirect_bracket(pair.second(), &cbm.actions2)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
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

    fn example3d() -> BracketTensor {
        bt(3, &[(1, 3, 2, 1), (3, 3, 1, 1)])
    }

    fn compatible_example() -> CompatiblePair {
        CompatiblePair::new(bt(3, &[(1, 1, 3, 1)]), bt(3, &[(1, 1, 2, 1), (2, 1, 3, 1)])).unwrap()
    }

    #[test]
    fn adjoint_and_zero_are_bimodules() {
        let b = example3d();
        assert_eq!(
            is_bimodule(&b, &BimoduleActions::adjoint(&b)).unwrap(),
            None
        );
        assert_eq!(is_bimodule(&b, &BimoduleActions::zero(3, 2)).unwrap(), None);
    }

    #[test]
    fn perturbed_left_action_fails() {
        let b = example3d();
        let mut acts = BimoduleActions::adjoint(&b);
        acts.set_left(0, 0, 1, int(1));
        let w = is_bimodule(&b, &acts)
            .unwrap()
            .expect("perturbation must break an axiom");
        assert!(!w.defect.is_zero());
    }

    #[test]
    fn adjoint_compatible_bimodule() {
        let pair = compatible_example();
        let cbm = CompatibleBimodule::adjoint(&pair);
        assert_eq!(
            is_compatible_bimodule(&pair, &cbm, ConditionB::Symmetric).unwrap(),
            None
        );
        let zero = CompatibleBimodule::zero(3, 2);
        assert_eq!(
            is_compatible_bimodule(&pair, &zero, ConditionB::Symmetric).unwrap(),
            None
        );
    }

    #[test]
    fn semidirect_of_example() {
        let pair = compatible_example();
        let sd = semidirect(&pair, &CompatibleBimodule::adjoint(&pair)).unwrap();
        assert_eq!(sd.dim(), 6);
        assert!(sd.check().unwrap().is_none());
        // projection to g recovers the brackets
        for (i, j, k, c) in pair.first().nonzero_entries() {
            assert_eq!(sd.first().get(i, j, k), &c);
        }
        let ab = semidirect(&CompatiblePair::abelian(2), &CompatibleBimodule::zero(2, 3)).unwrap();
        assert!(ab.first().is_zero() && ab.second().is_zero() && ab.dim() == 5);
    }

    #[test]
    fn semidirect_with_zero_second_structure() {
        let b = example3d();
        let pair = CompatiblePair::new(b.clone(), BracketTensor::zero(3)).unwrap();
        let cbm =
            CompatibleBimodule::new(BimoduleActions::adjoint(&b), BimoduleActions::zero(3, 3))
                .unwrap();
        let sd = semidirect(&pair, &cbm).unwrap();
        assert!(sd.second().is_zero());
    }
}
