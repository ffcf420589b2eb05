use compat_leibniz::algebra::{compat_defect, is_compatible_pair};
use compat_leibniz::cochain::Cochain;
use compat_leibniz::io::{self, AlgebraFile};
use compat_leibniz::linalg::{kernel_basis, rank, solve, ExactMatrix};
use compat_leibniz::scalar::{self, frac, int};
use compat_leibniz::{BasisChange, BracketTensor, Scalar, Vector};
use num_traits::Zero;
use proptest::prelude::*;

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        3 => Just(int(0)),
        2 => (-3i64..=3).prop_map(int),
        1 => (-4i64..=4, 1i64..=3).prop_map(|(p, q)| frac(p, q)),
    ]
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(scalar_strategy(), c), r)
            .prop_map(|rows| ExactMatrix::from_rows(rows).unwrap())
    })
}

fn bracket_strategy(dim: usize) -> impl Strategy<Value = BracketTensor> {
    prop::collection::vec(
        prop_oneof![6 => Just(int(0)), 1 => Just(int(1)), 1 => Just(int(-1))],
        dim * dim * dim,
    )
    .prop_map(move |c| BracketTensor::from_flat(dim, c).unwrap())
}

fn invertible_strategy(dim: usize) -> impl Strategy<Value = BasisChange> {
    prop::collection::vec((-2i64..=2).prop_map(int), dim * dim).prop_filter_map(
        "singular",
        move |c| {
            let rows = c.chunks(dim).map(|r| r.to_vec()).collect();
            BasisChange::new(ExactMatrix::from_rows(rows).unwrap()).ok()
        },
    )
}

fn vector_strategy(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(scalar_strategy(), dim).prop_map(Vector)
}

/// Rows rotated by `seed` and then reversed in pairs.
fn permuted_rows(a: &ExactMatrix, seed: usize) -> ExactMatrix {
    let n = a.rows();
    let mut order: Vec<usize> = (0..n).map(|i| (i + seed) % n).collect();
    for pair in order.chunks_mut(2) {
        pair.reverse();
    }
    ExactMatrix::from_rows(order.into_iter().map(|i| a.row(i).to_vec()).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_of_transpose(a in matrix_strategy(50)) {
        prop_assert_eq!(rank(&a), rank(&a.transpose()));
    }

    #[test]
    fn rank_ignores_row_order(a in matrix_strategy(20), seed in 0usize..20) {
        prop_assert_eq!(rank(&a), rank(&permuted_rows(&a, seed)));
        let t = a.transpose();
        prop_assert_eq!(rank(&a), rank(&permuted_rows(&t, seed)));
    }

    #[test]
    fn kernel_vectors_are_annihilated(a in matrix_strategy(20)) {
        let ker = kernel_basis(&a);
        prop_assert_eq!(ker.len(), a.cols() - rank(&a));
        for v in &ker {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solutions_solve(a in matrix_strategy(15), seed in prop::collection::vec(scalar_strategy(), 15)) {
        // b in the column space half of the time
        let x0: Vec<Scalar> = seed.iter().cycle().take(a.cols()).cloned().collect();
        let inside = a.mul_vec(&x0).unwrap();
        let outside: Vec<Scalar> = seed.iter().cycle().take(a.rows()).cloned().collect();
        for b in [inside, outside] {
            match solve(&a, &b).unwrap() {
                Some(x) => prop_assert_eq!(a.mul_vec(&x).unwrap(), b),
                None => {
                    let rows = b
                        .iter()
                        .enumerate()
                        .map(|(i, bi)| {
                            let mut r = a.row(i).to_vec();
                            r.push(bi.clone());
                            r
                        })
                        .collect();
                    prop_assert!(rank(&ExactMatrix::from_rows(rows).unwrap()) > rank(&a));
                }
            }
        }
    }

    #[test]
    fn basis_change_round_trip(b in bracket_strategy(3), p in invertible_strategy(3)) {
        let moved = b.apply_basis_change(&p).unwrap();
        prop_assert_eq!(moved.apply_basis_change(&p.inverse()).unwrap(), b.clone());
        prop_assert_eq!(moved.is_leibniz().holds(), b.is_leibniz().holds());
    }

    #[test]
    fn compatibility_is_symmetric(b1 in bracket_strategy(2), b2 in bracket_strategy(2)) {
        prop_assert_eq!(
            is_compatible_pair(&b1, &b2).unwrap().is_none(),
            is_compatible_pair(&b2, &b1).unwrap().is_none()
        );
    }

    #[test]
    fn diagonal_compat_defect_is_twice_leibniz(
        b in bracket_strategy(3),
        x in vector_strategy(3),
        y in vector_strategy(3),
        z in vector_strategy(3),
    ) {
        let lhs = compat_defect(&b, &b, &x, &y, &z).unwrap();
        prop_assert_eq!(lhs, b.leibniz_defect(&x, &y, &z).unwrap().scale(&int(2)));
    }

    #[test]
    fn compatibility_via_sum_probe(
        b1 in bracket_strategy(2),
        b2 in bracket_strategy(2),
        lambdas in prop::collection::vec((scalar_strategy(), scalar_strategy()), 5),
    ) {
        let sum = BracketTensor::linear_combination(&int(1), &b1, &int(1), &b2).unwrap();
        let probe = b1.is_leibniz().holds() && b2.is_leibniz().holds() && sum.is_leibniz().holds();
        let compatible = is_compatible_pair(&b1, &b2).unwrap().is_none();
        prop_assert_eq!(compatible, probe);
        if compatible {
            for (l1, l2) in &lambdas {
                let c = BracketTensor::linear_combination(l1, &b1, l2, &b2).unwrap();
                prop_assert!(c.is_leibniz().holds());
            }
        }
    }

    #[test]
    fn algebra_file_round_trip(b1 in bracket_strategy(3), b2 in bracket_strategy(3), scale in scalar_strategy()) {
        let b2 = BracketTensor::linear_combination(&scale, &b2, &int(0), &b1).unwrap();
        let file = AlgebraFile { dim: 3, brackets: vec![b1, b2] };
        let text = file.to_text();
        let back = AlgebraFile::parse(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn cochain_round_trip(coeffs in prop::collection::vec(scalar_strategy(), 12)) {
        let c = Cochain::from_flat(2, 2, 3, coeffs).unwrap();
        let v = io::cochain_to_value(&c);
        prop_assert_eq!(io::cochain_from_value(&v).unwrap(), c);
    }

    #[test]
    fn scalar_text_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let x = frac(p, q);
        prop_assert_eq!(scalar::parse(&scalar::format(&x)).unwrap(), x.clone());
        prop_assert_eq!(scalar::from_json(&scalar::to_json(&x)).unwrap(), x);
    }
}
