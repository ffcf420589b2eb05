mod common;

use common::*;
use compat_leibniz::cochain::{
    cohomology_dim, delta, delta_matrix, delta_matrix_by_columns, BimoduleActions, Cochain,
    CompatCochain, CompatData,
};
use compat_leibniz::linalg::{rank, ExactMatrix};
use compat_leibniz::representation::{is_compatible_bimodule, CompatibleBimodule, ConditionB};
use compat_leibniz::CompatiblePair;
use num_traits::Zero;

fn product_is_zero(a: &ExactMatrix, b: &ExactMatrix) -> bool {
    a.mul(b).unwrap().is_zero()
}

#[test]
fn delta_squares_to_zero_on_catalog() {
    for (name, b) in catalog_brackets() {
        let acts = BimoduleActions::adjoint(&b);
        let mut prev = delta_matrix(&b, &acts, 0).unwrap();
        for n in 1..=3 {
            let next = delta_matrix(&b, &acts, n).unwrap();
            assert!(
                product_is_zero(&next, &prev),
                "{name}: δ^{n} δ^{} != 0",
                n - 1
            );
            prev = next;
        }
    }
}

#[test]
fn delta_squares_to_zero_with_trivial_and_zero_coefficients() {
    for (name, b) in catalog_brackets().into_iter().step_by(3) {
        let acts = BimoduleActions::zero(b.dim(), 2);
        for n in 0..3 {
            let d0 = delta_matrix(&b, &acts, n).unwrap();
            let d1 = delta_matrix(&b, &acts, n + 1).unwrap();
            assert!(product_is_zero(&d1, &d0), "{name} at degree {n}");
        }
    }
}

#[test]
fn assembly_oracle() {
    let mut r = rng(7);
    for (name, b) in catalog_brackets().into_iter().step_by(4) {
        let acts = BimoduleActions::adjoint(&b);
        for n in 0..3 {
            let direct = delta_matrix(&b, &acts, n).unwrap();
            assert_eq!(
                direct,
                delta_matrix_by_columns(&b, &acts, n).unwrap(),
                "{name}"
            );
        }
        for _ in 0..10 {
            let n = 2;
            let f = random_cochain(&mut r, n, b.dim(), b.dim());
            let mat = delta_matrix(&b, &acts, n).unwrap();
            let pointwise = delta(&b, &acts, &f).unwrap();
            assert_eq!(
                mat.mul_vec(f.coeffs()).unwrap(),
                pointwise.coeffs(),
                "{name}"
            );
        }
    }
}

#[test]
fn rank_nullity_cross_check() {
    for (name, b) in catalog_brackets().into_iter().step_by(2) {
        let acts = BimoduleActions::adjoint(&b);
        let d = b.dim();
        for n in 0..3 {
            let cn = d.pow(n as u32) * d;
            let r_here = rank(&delta_matrix(&b, &acts, n).unwrap());
            let r_prev = if n == 0 {
                0
            } else {
                rank(&delta_matrix(&b, &acts, n - 1).unwrap())
            };
            assert_eq!(
                cohomology_dim(&b, &acts, n).unwrap(),
                cn - r_here - r_prev,
                "{name}"
            );
        }
    }
}

fn adjoint_data(pair: &CompatiblePair) -> (BimoduleActions, BimoduleActions) {
    (
        BimoduleActions::adjoint(pair.first()),
        BimoduleActions::adjoint(pair.second()),
    )
}

#[test]
fn anticommutation_on_full_bases() {
    for (name, pair) in canonical_compatible_pairs() {
        let (a1, a2) = adjoint_data(&pair);
        for n in 0..=2 {
            let d1 = delta_matrix(pair.first(), &a1, n).unwrap();
            let d2 = delta_matrix(pair.second(), &a2, n).unwrap();
            let e1 = delta_matrix(pair.first(), &a1, n + 1).unwrap();
            let e2 = delta_matrix(pair.second(), &a2, n + 1).unwrap();
            let lhs = e1.mul(&d2).unwrap();
            let rhs = e2.mul(&d1).unwrap();
            for i in 0..lhs.rows() {
                for j in 0..lhs.cols() {
                    assert!(
                        (lhs.get(i, j) + rhs.get(i, j)).is_zero(),
                        "{name} degree {n}"
                    );
                }
            }
        }
    }
}

#[test]
fn anticommute_check_pointwise() {
    let mut r = rng(11);
    let pair = example_pair();
    let (a1, a2) = adjoint_data(&pair);
    let data = CompatData::new(&pair, &a1, &a2).unwrap();
    for n in 1..=2 {
        for _ in 0..5 {
            let f = random_cochain(&mut r, n, 3, 3);
            assert!(data.anticommute_check(&f).unwrap().is_zero());
        }
    }
    // second bracket zero
    let pair =
        CompatiblePair::new(pair.first().clone(), compat_leibniz::BracketTensor::zero(3)).unwrap();
    let a1 = BimoduleActions::adjoint(pair.first());
    let a2 = BimoduleActions::zero(3, 3);
    let data = CompatData::new(&pair, &a1, &a2).unwrap();
    let f = random_cochain(&mut r, 2, 3, 3);
    assert!(data.anticommute_check(&f).unwrap().is_zero());
}

#[test]
fn compatible_differential_squares_to_zero() {
    for (name, pair) in canonical_compatible_pairs() {
        let (a1, a2) = adjoint_data(&pair);
        let data = CompatData::new(&pair, &a1, &a2).unwrap();
        for n in 0..=2 {
            let lo = data.delta_c_matrix(n).unwrap();
            let hi = data.delta_c_matrix(n + 1).unwrap();
            assert!(
                product_is_zero(&hi, &lo),
                "{name}: δ_c δ_c != 0 at degree {n}"
            );
        }
    }
}

#[test]
fn adjoint_bimodules_of_verified_pairs_are_compatible() {
    for (name, pair) in canonical_compatible_pairs() {
        let cbm = CompatibleBimodule::adjoint(&pair);
        assert_eq!(
            is_compatible_bimodule(&pair, &cbm, ConditionB::Symmetric).unwrap(),
            None,
            "{name}"
        );
    }
}

#[test]
fn delta_c_pointwise_matches_matrix() {
    let mut r = rng(5);
    let pair = example_pair();
    let (a1, a2) = adjoint_data(&pair);
    let data = CompatData::new(&pair, &a1, &a2).unwrap();
    for n in 1..=2 {
        let mat = data.delta_c_matrix(n).unwrap();
        let comps = (0..n).map(|_| random_cochain(&mut r, n, 3, 3)).collect();
        let h = CompatCochain::new(n, comps).unwrap();
        let img = data.delta_c(&h).unwrap();
        assert_eq!(mat.mul_vec(&h.flat()).unwrap(), img.flat());
        assert!(data.delta_c(&img).unwrap().is_zero());
    }
}

#[test]
fn c0_com_of_example_matches_brute_force() {
    // δ1 m = δ2 m in degree 0, i.e. l1(x, m) = l2(x, m), by a hand-assembled kernel
    let pair = example_pair();
    let (a1, a2) = adjoint_data(&pair);
    let data = CompatData::new(&pair, &a1, &a2).unwrap();
    let basis = data.c0_com_basis().unwrap();
    let mut rows = Vec::new();
    for x in 0..3 {
        for k in 0..3 {
            let row = (0..3)
                .map(|j| a1.left_coeff(x, j, k) - a2.left_coeff(x, j, k))
                .collect();
            rows.push(row);
        }
    }
    let cond = ExactMatrix::from_rows(rows).unwrap();
    assert_eq!(basis.len(), 3 - rank(&cond));
    for v in &basis {
        assert!(cond.mul_vec(&v.0).unwrap().iter().all(|c| c.is_zero()));
        let m = Cochain::from_element(3, v);
        let h = CompatCochain::new(0, vec![m.clone()]).unwrap();
        let img = data.delta_c(&h).unwrap();
        assert_eq!(img.components()[0], delta(pair.first(), &a1, &m).unwrap());
    }
}

#[test]
fn abelian_pair_closed_forms() {
    let pair = CompatiblePair::abelian(2);
    for m in 1..=2 {
        let acts = BimoduleActions::zero(2, m);
        let data = CompatData::new(&pair, &acts, &acts).unwrap();
        assert_eq!(data.cohomology_dim(0).unwrap(), m);
        for n in 1..=3 {
            assert_eq!(
                data.cohomology_dim(n).unwrap(),
                n * 2usize.pow(n as u32) * m
            );
        }
    }
}
