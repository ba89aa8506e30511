use logknot::center::{Decomposer, DecomposerOptions, EngineKind, Extraction};
use logknot::repn::build_projective;
use logknot::scalar::{CyclotomicField, CyclotomicNumber, Exact};
use logknot::tangle::{random_knot_braid, random_word, Evaluator, TangleEngine, DEFAULT_CAP};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn element(p: u32, coeffs: &[i64]) -> CyclotomicNumber {
    let f = CyclotomicField::get(p).unwrap();
    coeffs
        .iter()
        .enumerate()
        .fold(f.zero(), |acc, (j, &c)| &acc + &(&f.from_i64(c) * &f.zeta_pow(j as i64)))
}

fn triple() -> impl Strategy<Value = (u32, Vec<i64>, Vec<i64>, Vec<i64>)> {
    (2u32..=6).prop_flat_map(|p| {
        let v = || prop::collection::vec(-20i64..=20, 2 * p as usize);
        (Just(p), v(), v(), v())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((p, a, b, c) in triple()) {
        let (x, y, z) = (element(p, &a), element(p, &b), element(p, &c));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn to_complex_is_a_homomorphism((p, a, b, _c) in triple()) {
        let (x, y) = (element(p, &a), element(p, &b));
        let (zx, zy) = (x.to_c64(), y.to_c64());
        let scale = 1.0 + zx.norm() * zy.norm();
        prop_assert!(((&x * &y).to_c64() - zx * zy).norm() < 1e-10 * scale);
        prop_assert!(((&x + &y).to_c64() - (zx + zy)).norm() < 1e-10 * scale);
        prop_assert!((x.to_complex(128).to_c64() - zx).norm() < 1e-10 * (1.0 + zx.norm()));
    }

    #[test]
    fn quantum_integer_symmetries(p in 2u32..=8, n in -40i64..=40) {
        let f = CyclotomicField::get(p).unwrap();
        let pi = p as i64;
        prop_assert_eq!(f.quantum_integer(-n), -f.quantum_integer(n));
        prop_assert_eq!(f.quantum_integer(pi - n), f.quantum_integer(n));
        prop_assert_eq!(f.quantum_integer(n + pi), -f.quantum_integer(n));
        prop_assert!(f.quantum_integer(pi * n).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn markov_moves_preserve_the_decomposition(seed in any::<u64>(), p in 2u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_knot_braid(&mut rng, 3, 8);
        let g = random_word(&mut rng, b.strands(), 6);
        let opts = DecomposerOptions { extraction: Extraction::GeneratorColumn, ..Default::default() };
        let d = Decomposer::new(&Exact::new(p).unwrap(), opts).unwrap();
        let r = d.verify_markov(&b, &g).unwrap();
        prop_assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn tangle_operators_commute_with_generators(seed in any::<u64>(), t in 1u32..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_knot_braid(&mut rng, 3, 8);
        let m = build_projective(&Exact::new(3).unwrap(), -1, t).unwrap();
        let z = Evaluator::new(m.clone(), DEFAULT_CAP).unwrap().tangle_operator(&b).unwrap().matrix;
        for x in [m.e_dense(), m.f_dense()] {
            prop_assert!(z.mul(&x).sub(&x.mul(&z)).is_zero());
        }
    }

    #[test]
    fn block_and_dense_engines_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_knot_braid(&mut rng, 3, 8);
        let e = Exact::new(2).unwrap();
        let block = Decomposer::new(&e, DecomposerOptions::default()).unwrap().decompose(&b).unwrap();
        let opts = DecomposerOptions { engine: EngineKind::Dense, ..Default::default() };
        let dense = Decomposer::new(&e, opts).unwrap().decompose(&b).unwrap();
        prop_assert_eq!(block, dense);
    }
}
