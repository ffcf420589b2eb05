#![allow(dead_code)]

use compat_leibniz::catalog::{self, PairClaim};
use compat_leibniz::cochain::Cochain;
use compat_leibniz::scalar::int;
use compat_leibniz::{BracketTensor, CompatiblePair, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn bt(dim: usize, entries: &[(usize, usize, usize, i64)]) -> BracketTensor {
    BracketTensor::from_entries(
        dim,
        entries
            .iter()
            .map(|&(i, j, k, c)| (i - 1, j - 1, k - 1, int(c))),
    )
    .unwrap()
}

/// The compatible pair used throughout the examples.
pub fn example_pair() -> CompatiblePair {
    CompatiblePair::new(bt(3, &[(1, 1, 3, 1)]), bt(3, &[(1, 1, 2, 1), (2, 1, 3, 1)])).unwrap()
}

/// Every catalog tensor at every default admissible parameter.
pub fn catalog_brackets() -> Vec<(String, BracketTensor)> {
    let mut out = Vec::new();
    for e in catalog::entries() {
        for alpha in e.samples() {
            let label = match &alpha {
                Some(a) => format!("{} α={}", e.name, compat_leibniz::scalar::format(a)),
                None => e.name.clone(),
            };
            out.push((label, e.instantiate(alpha.as_ref()).unwrap()));
        }
    }
    out
}

/// Pairs from the published lists that are compatible in the printed bases.
pub fn canonical_compatible_pairs() -> Vec<(String, CompatiblePair)> {
    let mut claims = catalog::pair_claims_2d();
    claims.extend(catalog::pair_claims_3d());
    let mut out = Vec::new();
    for claim in claims {
        for alpha in claim.parameter_values().unwrap() {
            if catalog::verify_pair_claim(&claim, alpha.as_ref())
                .unwrap()
                .is_compatible()
            {
                out.push((
                    label(&claim, alpha.as_ref()),
                    pair_of(&claim, alpha.as_ref()),
                ));
            }
        }
    }
    out
}

pub fn label(claim: &PairClaim, alpha: Option<&Scalar>) -> String {
    match alpha {
        Some(a) if claim.fixed_alpha.is_none() => {
            format!("{} α={}", claim.label(), compat_leibniz::scalar::format(a))
        }
        _ => claim.label(),
    }
}

pub fn pair_of(claim: &PairClaim, alpha: Option<&Scalar>) -> CompatiblePair {
    let a = catalog::lookup(&claim.first).unwrap();
    let b = catalog::lookup(&claim.second).unwrap();
    let b1 = a.instantiate(a.parameter.and(alpha)).unwrap();
    let b2 = b.instantiate(b.parameter.and(alpha)).unwrap();
    CompatiblePair::new(b1, b2).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(rng: &mut ChaCha8Rng) -> Scalar {
    int(rng.gen_range(-2..=2))
}

/// Random sparse bracket: each constant is nonzero with probability `p`.
pub fn random_bracket(rng: &mut ChaCha8Rng, dim: usize, p: f64) -> BracketTensor {
    let mut b = BracketTensor::zero(dim);
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                if rng.gen_bool(p) {
                    b.set(
                        i,
                        j,
                        k,
                        int(rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 }),
                    );
                }
            }
        }
    }
    b
}

pub fn random_cochain(rng: &mut ChaCha8Rng, degree: usize, dim_g: usize, dim_m: usize) -> Cochain {
    let n = dim_g.pow(degree as u32) * dim_m;
    Cochain::from_flat(degree, dim_g, dim_m, (0..n).map(|_| small(rng)).collect()).unwrap()
}

/// Random combination of the given vectors with small integer weights.
pub fn random_combination(rng: &mut ChaCha8Rng, basis: &[Vec<Scalar>], len: usize) -> Vec<Scalar> {
    let mut out = vec![int(0); len];
    for v in basis {
        let w = small(rng);
        for (o, x) in out.iter_mut().zip(v) {
            *o += &w * x;
        }
    }
    out
}
