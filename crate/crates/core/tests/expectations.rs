use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qm_core::algebra::{Filtration, PartitionAlgebra};
use qm_core::instances::{CantorModel, IntervalModel, UhfModel};
use qm_core::verify::{expectation_axioms, AxiomDeviations};

const TOL: f64 = 1e-10;

fn assert_small(d: AxiomDeviations) {
    for (name, v) in [
        ("idempotence", d.idempotence),
        ("contractivity", d.contractivity),
        ("bimodule", d.bimodule),
        ("trace", d.trace),
        ("nesting", d.nesting),
    ] {
        assert!(v <= TOL, "{name}: {v:e}");
    }
}

fn partition_axioms(alg: &PartitionAlgebra, seed: u64) -> AxiomDeviations {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut brng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let top = alg.top_level();
    expectation_axioms(
        alg,
        10,
        |a| a.random_element(top, &mut rng),
        |a, n| a.random_element(n, &mut brng),
    )
    .unwrap()
}

fn positive_weights(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|w| w / total).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn interval_axioms_hold_for_any_faithful_weights(level in 2usize..14, seed in any::<u64>()) {
        let m = IntervalModel::with_weights(level, positive_weights(level, seed)).unwrap();
        assert_small(partition_axioms(m.algebra(), seed));
    }

    #[test]
    fn cantor_axioms(depth in 1usize..7, seed in any::<u64>()) {
        let m = CantorModel::new(depth).unwrap();
        assert_small(partition_axioms(m.algebra(), seed));
    }

    #[test]
    fn uhf_axioms(sites in 1usize..4, seed in any::<u64>()) {
        let m = UhfModel::new(sites).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut brng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let top = m.algebra().top_level();
        let d = expectation_axioms(m.algebra(), 6, |a| a.random_hermitian(top, &mut rng), |a, n| a.random_matrix(n, &mut brng)).unwrap();
        assert_small(d);
    }
}

#[test]
fn extreme_levels_are_scalars_and_identity() {
    let m = IntervalModel::new(9).unwrap();
    let alg = m.algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = alg.random_element(alg.top_level(), &mut rng).unwrap();
    let scalar = alg.expectation(1, &a).unwrap();
    let tau = alg.trace(&a);
    assert!(scalar.values().iter().all(|v| (v - tau).abs() <= 1e-15));
    assert!(
        alg.expectation(alg.top_level(), &a)
            .unwrap()
            .max_abs_diff(&a)
            <= 1e-15
    );

    let u = UhfModel::new(3).unwrap();
    let alg = u.algebra();
    let x = alg.random_hermitian(alg.top_level(), &mut rng).unwrap();
    let e1 = alg.expectation(1, &x).unwrap();
    let want = alg.unit().scaled(alg.trace(&x));
    assert!(e1.max_abs_diff(&want) <= 1e-15);
}

#[test]
fn levels_outside_the_truncation_are_rejected() {
    let m = CantorModel::new(3).unwrap();
    let alg = m.algebra();
    let a = alg.unit();
    assert!(alg.expectation(0, &a).is_err());
    assert!(alg.expectation(alg.top_level() + 1, &a).is_err());
}
