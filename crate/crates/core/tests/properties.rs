//! Cross-module invariants: norm preservation under every operator the
//! artifact builds, unitarity of those operators, bitwise marginalization
//! consistency, and the law of large numbers for seeded sampling.

use num_complex::Complex64;
use proptest::prelude::*;
use qsonify::grover::{build_circuit, GroverConfig};
use qsonify::statevec::{SeededSampler, StateVector, UnitaryMatrix};
use qsonify::walk::{build_coin_op, build_move_op, run_walk, WalkConfig, WalkMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_state(rng: &mut ChaCha8Rng, dimension: usize) -> StateVector {
    loop {
        let amps: Vec<Complex64> = (0..dimension)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            let amps = amps.into_iter().map(|a| a / norm).collect();
            return StateVector::new(amps).unwrap();
        }
    }
}

#[test]
fn built_operators_preserve_norm_over_a_thousand_random_applications() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let coin = build_coin_op(14);
    let mover = build_move_op(14);
    let circuit = build_circuit(&GroverConfig::new(0)).unwrap();

    for trial in 0..700 {
        let psi = random_state(&mut rng, 28);
        let op = if trial % 2 == 0 { &coin } else { &mover };
        let out = op.apply(&psi).unwrap();
        assert!((out.norm() - 1.0).abs() < 1e-12, "walk trial {trial}");
    }
    for trial in 0..300 {
        let psi = random_state(&mut rng, 8);
        let column = &circuit.stages()[trial % circuit.stage_count()];
        let out = column.operator().apply(&psi).unwrap();
        assert!((out.norm() - 1.0).abs() < 1e-12, "circuit trial {trial}");
    }
}

#[test]
fn built_operators_are_unitary() {
    assert!(build_coin_op(14).unitarity_deviation() < 1e-12);
    assert!(build_move_op(14).unitarity_deviation() < 1e-12);
    for n_sites in [2, 3, 5, 9] {
        assert!(build_coin_op(n_sites).unitarity_deviation() < 1e-12);
        assert!(build_move_op(n_sites).unitarity_deviation() < 1e-12);
    }
    let circuit = build_circuit(&GroverConfig::new(0)).unwrap();
    for column in circuit.stages() {
        assert!(column.operator().unitarity_deviation() < 1e-12);
    }
}

#[test]
fn coin_summed_born_probabilities_equal_the_marginal_bitwise() {
    // Evolve exact basis states through the walk operators so the joint
    // distribution and the site marginal see identical amplitudes.
    let coin = build_coin_op(14);
    let mover = build_move_op(14);
    for start in [0, 3, 7, 13] {
        let mut psi = StateVector::basis(2, 0).kron(&StateVector::basis(14, start));
        for _ in 0..8 {
            psi = mover.apply(&coin.apply(&psi).unwrap()).unwrap();
        }
        let joint = psi.born_probabilities().unwrap();
        let marginal = psi.marginal_sites(14).unwrap();
        for j in 0..14 {
            let summed = joint.probabilities()[j] + joint.probabilities()[14 + j];
            assert_eq!(
                summed.to_bits(),
                marginal.probabilities()[j].to_bits(),
                "start {start} site {j}"
            );
        }
    }
}

#[test]
fn sampling_obeys_the_law_of_large_numbers() {
    let trace = run_walk(&WalkConfig::new(WalkMode::Quantum, 3, 0)).unwrap();
    let dist = trace.per_step_distributions.unwrap().pop().unwrap();
    for shots in [1_000usize, 10_000, 100_000] {
        let mut sampler = SeededSampler::new(31);
        let draws = dist.sample(&mut sampler, shots).unwrap();
        let mut counts = vec![0usize; dist.len()];
        for d in draws {
            counts[d] += 1;
        }
        let bound = 5.0 / (shots as f64).sqrt();
        for (j, &n) in counts.iter().enumerate() {
            let freq = n as f64 / shots as f64;
            assert!(
                (freq - dist.probabilities()[j]).abs() < bound,
                "shots {shots} site {j}: freq {freq}"
            );
        }
    }
}

#[test]
fn walk_state_norm_survives_a_long_run() {
    let coin = build_coin_op(14);
    let mover = build_move_op(14);
    let mut psi = StateVector::basis(2, 0).kron(&StateVector::basis(14, 7));
    for _ in 0..1000 {
        psi = mover.apply(&coin.apply(&psi).unwrap()).unwrap();
    }
    assert!((psi.norm() - 1.0).abs() <= 1e-9);
}

proptest! {
    #[test]
    fn random_states_stay_normalized_under_the_walk_operators(
        parts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 28),
        use_move in any::<bool>(),
    ) {
        let norm = parts.iter().map(|(re, im)| re * re + im * im).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        let amps: Vec<Complex64> = parts
            .iter()
            .map(|&(re, im)| Complex64::new(re / norm, im / norm))
            .collect();
        let psi = StateVector::new(amps).unwrap();
        let op = if use_move { build_move_op(14) } else { build_coin_op(14) };
        let out = op.apply(&psi).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kron_dimensions_multiply(da in 1usize..6, db in 1usize..6) {
        let joint = UnitaryMatrix::identity(da).kron(&UnitaryMatrix::identity(db));
        prop_assert_eq!(joint.dimension(), da * db);
        let psi = StateVector::basis(da, 0).kron(&StateVector::basis(db, db - 1));
        prop_assert_eq!(psi.dimension(), da * db);
        prop_assert!((psi.norm() - 1.0).abs() < 1e-12);
    }
}
