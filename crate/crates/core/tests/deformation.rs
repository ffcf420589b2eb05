mod common;

use common::*;
use compat_leibniz::cochain::{BimoduleActions, Cochain, CompatCochain, CompatData};
use compat_leibniz::deformation::{
    apply_gauge, infinitesimals_cohomologous, GaugeTransform, TruncatedDeformation,
};
use compat_leibniz::graded::nr_bracket;
use compat_leibniz::linalg::{kernel_basis, rank, solve};
use compat_leibniz::scalar::{frac, int};
use compat_leibniz::{CompatiblePair, Error};
use rand_chacha::ChaCha8Rng;

fn adjoint(pair: &CompatiblePair) -> (BimoduleActions, BimoduleActions) {
    (
        BimoduleActions::adjoint(pair.first()),
        BimoduleActions::adjoint(pair.second()),
    )
}

/// A random `δ_c` 2-cocycle, i.e. a valid order-1 deformation.
fn random_order_one(r: &mut ChaCha8Rng, pair: &CompatiblePair) -> TruncatedDeformation {
    let (a1, a2) = adjoint(pair);
    let data = CompatData::new(pair, &a1, &a2).unwrap();
    let mat = data.delta_c_matrix(2).unwrap();
    let ker = kernel_basis(&mat);
    let flat = random_combination(r, &ker, mat.cols());
    let parts = CompatCochain::from_flat(2, pair.dim(), pair.dim(), &flat)
        .unwrap()
        .into_components();
    TruncatedDeformation::new(pair.clone(), vec![parts[0].clone()], vec![parts[1].clone()]).unwrap()
}

fn pairs() -> Vec<(String, CompatiblePair)> {
    let mut out = vec![("example".to_string(), example_pair())];
    out.extend(canonical_compatible_pairs().into_iter().step_by(2));
    out
}

#[test]
fn residuals_at_zero_are_base_mc_equations() {
    for (name, pair) in pairs() {
        let d = TruncatedDeformation::trivial(pair.clone());
        assert!(d.residuals(0).unwrap().is_zero(), "{name}");
    }
    let bad = CompatiblePair::unchecked(
        bt(3, &[(1, 2, 3, 1), (2, 1, 3, -1)]),
        bt(3, &[(1, 1, 2, 1), (2, 1, 3, 1)]),
    )
    .unwrap();
    let r = TruncatedDeformation::trivial(bad).residuals(0).unwrap();
    assert!(r.first.is_zero() && !r.mixed.is_zero() && r.second.is_zero());
}

#[test]
fn zero_terms_have_zero_residuals() {
    let pair = example_pair();
    let z = Cochain::zero(2, 3, 3);
    let d =
        TruncatedDeformation::new(pair, vec![z.clone(), z.clone()], vec![z.clone(), z]).unwrap();
    for n in 0..=2 {
        assert!(d.residuals(n).unwrap().is_zero());
    }
}

#[test]
fn infinitesimals_are_cocycles_and_obstructions_closed() {
    let mut r = rng(31);
    for (name, pair) in pairs() {
        for _ in 0..3 {
            let d = random_order_one(&mut r, &pair);
            assert!(d.is_deformation_of_order().unwrap(), "{name}");
            if d.terms1()[0].is_zero() && d.terms2()[0].is_zero() {
                continue;
            }
            let inf = d.infinitesimal().unwrap();
            assert_eq!(inf.order, 1);
            assert!(inf.is_cocycle, "{name}");
            let obs = d.obstruction().unwrap();
            assert!(obs.is_closed, "{name}");
        }
    }
}

#[test]
fn obstruction_matches_printed_factors() {
    let mut r = rng(32);
    let pair = example_pair();
    let d = random_order_one(&mut r, &pair);
    let obs = d.obstruction().unwrap();
    let (m1, m2) = (&d.terms1()[0], &d.terms2()[0]);
    let c = obs.class.components();
    assert_eq!(c[0], nr_bracket(m1, m1).unwrap().scale(&frac(1, 2)));
    assert_eq!(c[1], nr_bracket(m1, m2).unwrap());
    assert_eq!(c[2], nr_bracket(m2, m2).unwrap().scale(&frac(1, 2)));
}

#[test]
fn extension_exactly_when_ranks_match() {
    let mut r = rng(33);
    let mut extended = 0;
    for (name, pair) in pairs() {
        let (a1, a2) = adjoint(&pair);
        let data = CompatData::new(&pair, &a1, &a2).unwrap();
        let a = data.delta_c_matrix(2).unwrap();
        for _ in 0..3 {
            let d = random_order_one(&mut r, &pair);
            let obs = d.obstruction().unwrap();
            let b = obs.class.flat();
            let aug: Vec<_> = b
                .iter()
                .enumerate()
                .map(|(i, bi)| {
                    let mut row = a.row(i).to_vec();
                    row.push(bi.clone());
                    row
                })
                .collect();
            let aug = compat_leibniz::linalg::ExactMatrix::from_rows(aug).unwrap();
            let solvable = rank(&aug) == rank(&a);
            assert_eq!(solvable, solve(&a, &b).unwrap().is_some());
            match d.extend().unwrap() {
                Some(e) => {
                    assert!(solvable, "{name}");
                    assert_eq!(e.order(), 2);
                    assert!(e.is_deformation_of_order().unwrap(), "{name}");
                    extended += 1;
                }
                None => assert!(!solvable, "{name}"),
            }
        }
    }
    assert!(extended > 0);
}

#[test]
fn nonzero_obstruction_over_abelian_base() {
    // the sum bracket of the non-example is not Leibniz
    let mu = Cochain::from_bracket(&bt(3, &[(1, 1, 2, 1), (2, 2, 3, 1), (1, 2, 3, 1)]));
    let d = TruncatedDeformation::new(
        CompatiblePair::abelian(3),
        vec![mu.clone()],
        vec![Cochain::zero(2, 3, 3)],
    )
    .unwrap();
    assert!(d.is_deformation_of_order().unwrap());
    let obs = d.obstruction().unwrap();
    assert_eq!(
        obs.class.components()[0],
        nr_bracket(&mu, &mu).unwrap().scale(&frac(1, 2))
    );
    assert!(!obs.is_zero());
    assert_eq!(d.try_extend().unwrap(), None);
    let z = Cochain::zero(2, 3, 3);
    let forced = d.extended(z.clone(), z).unwrap();
    assert_eq!(forced.first_failure().unwrap().map(|f| f.0), Some(2));
}

fn random_gauge(r: &mut ChaCha8Rng, dim: usize, order: usize) -> GaugeTransform {
    GaugeTransform::new(
        dim,
        (0..order).map(|_| random_cochain(r, 1, dim, dim)).collect(),
    )
    .unwrap()
}

#[test]
fn gauge_shifts_first_order_terms_by_coboundaries() {
    let mut r = rng(34);
    for (name, pair) in pairs() {
        let (a1, a2) = adjoint(&pair);
        let data = CompatData::new(&pair, &a1, &a2).unwrap();
        let d = random_order_one(&mut r, &pair);
        let g = random_gauge(&mut r, pair.dim(), 1);
        let moved = apply_gauge(&d, &g).unwrap();
        let phi = g.term(1);
        assert_eq!(
            moved.terms1()[0].sub(&d.terms1()[0]).unwrap(),
            data.delta1(&phi).unwrap(),
            "{name}"
        );
        assert_eq!(
            moved.terms2()[0].sub(&d.terms2()[0]).unwrap(),
            data.delta2(&phi).unwrap(),
            "{name}"
        );
        assert!(moved.is_deformation_of_order().unwrap());
        assert!(infinitesimals_cohomologous(&d, &moved).unwrap());
    }
}

#[test]
fn second_order_gauge_term() {
    let mut r = rng(35);
    let pair = example_pair();
    let (a1, a2) = adjoint(&pair);
    let data = CompatData::new(&pair, &a1, &a2).unwrap();
    let d = random_order_one(&mut r, &pair).extend().unwrap().unwrap();
    let phi2 = random_cochain(&mut r, 1, 3, 3);
    let g = GaugeTransform::new(3, vec![Cochain::zero(1, 3, 3), phi2.clone()]).unwrap();
    let moved = apply_gauge(&d, &g).unwrap();
    assert_eq!(moved.terms1()[0], d.terms1()[0]);
    assert_eq!(moved.terms2()[0], d.terms2()[0]);
    assert_eq!(
        moved.terms1()[1].sub(&d.terms1()[1]).unwrap(),
        data.delta1(&phi2).unwrap()
    );
    assert_eq!(
        moved.terms2()[1].sub(&d.terms2()[1]).unwrap(),
        data.delta2(&phi2).unwrap()
    );
}

#[test]
fn gauge_round_trip() {
    let mut r = rng(36);
    for (_, pair) in pairs().into_iter().take(4) {
        let d = random_order_one(&mut r, &pair).extend().unwrap();
        let Some(d) = d else { continue };
        let g = random_gauge(&mut r, pair.dim(), 2);
        let moved = apply_gauge(&d, &g).unwrap();
        assert!(moved.is_deformation_of_order().unwrap());
        assert_eq!(apply_gauge(&moved, &g.inverse()).unwrap(), d);
        assert_eq!(
            apply_gauge(&d, &GaugeTransform::identity(pair.dim(), 2)).unwrap(),
            d
        );
    }
}

#[test]
fn cohomologous_over_abelian_base_only_when_equal() {
    let base = CompatiblePair::abelian(2);
    let l2 = Cochain::from_bracket(&bt(2, &[(1, 1, 2, 1)]));
    let z = Cochain::zero(2, 2, 2);
    let a = TruncatedDeformation::new(base.clone(), vec![l2.clone()], vec![z.clone()]).unwrap();
    let b = TruncatedDeformation::new(base.clone(), vec![z.clone()], vec![l2.clone()]).unwrap();
    assert!(infinitesimals_cohomologous(&a, &a).unwrap());
    assert!(!infinitesimals_cohomologous(&a, &b).unwrap());
    let other = TruncatedDeformation::trivial(example_pair());
    assert_eq!(
        infinitesimals_cohomologous(&a, &other),
        Err(Error::BaseMismatch)
    );
}

#[test]
fn coboundary_infinitesimals_are_gauge_removable() {
    // the mechanism behind rigidity; no listed pair has H^2_com = 0, so the
    // coboundary is built directly
    let mut r = rng(37);
    for (name, pair) in pairs() {
        let (a1, a2) = adjoint(&pair);
        let data = CompatData::new(&pair, &a1, &a2).unwrap();
        let phi = random_cochain(&mut r, 1, pair.dim(), pair.dim());
        let d = TruncatedDeformation::new(
            pair.clone(),
            vec![data.delta1(&phi).unwrap()],
            vec![data.delta2(&phi).unwrap()],
        )
        .unwrap();
        assert!(d.is_deformation_of_order().unwrap(), "{name}");
        let h = CompatCochain::new(2, vec![d.terms1()[0].clone(), d.terms2()[0].clone()]).unwrap();
        let pre = data.coboundary_preimage(&h).unwrap().expect("coboundary");
        let g = GaugeTransform::new(pair.dim(), vec![pre.components()[0].scale(&int(-1))]).unwrap();
        let moved = apply_gauge(&d, &g).unwrap();
        assert!(
            moved.terms1()[0].is_zero() && moved.terms2()[0].is_zero(),
            "{name}"
        );
    }
}
