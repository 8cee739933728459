//! Checks the walk engine against an independent oracle that evolves the
//! state as a sparse map of (coin, site) → amplitude under the textbook
//! update rules, with no matrices involved.

use std::collections::HashMap;

use num_complex::Complex64;
use qsonify::walk::{run_walk, WalkConfig, WalkMode};

const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

type AmpMap = HashMap<(u8, usize), Complex64>;

fn initial_state(site: usize) -> AmpMap {
    let mut state = AmpMap::new();
    state.insert((0, site), Complex64::ONE);
    state
}

/// Hadamard on the coin: heads → (heads + tails)/√2, tails → (heads − tails)/√2.
fn coin_toss(state: &AmpMap) -> AmpMap {
    let mut next = AmpMap::new();
    for (&(coin, site), &amp) in state {
        let scaled = amp * INV_SQRT2;
        *next.entry((0, site)).or_insert(Complex64::ZERO) += scaled;
        let sign = if coin == 0 { 1.0 } else { -1.0 };
        *next.entry((1, site)).or_insert(Complex64::ZERO) += scaled * sign;
    }
    next
}

/// Conditional shift: heads moves up one site, tails down one, on the ring.
fn conditional_move(state: &AmpMap, n_sites: usize) -> AmpMap {
    let mut next = AmpMap::new();
    for (&(coin, site), &amp) in state {
        let target = if coin == 0 {
            (site + 1) % n_sites
        } else {
            (site + n_sites - 1) % n_sites
        };
        *next.entry((coin, target)).or_insert(Complex64::ZERO) += amp;
    }
    next
}

fn site_marginal(state: &AmpMap, n_sites: usize) -> Vec<f64> {
    let mut probs = vec![0.0; n_sites];
    for (&(_, site), &amp) in state {
        probs[site] += amp.norm_sqr();
    }
    probs
}

fn oracle_marginals(start: usize, n_sites: usize, steps: usize) -> Vec<Vec<f64>> {
    let mut state = initial_state(start);
    let mut marginals = Vec::with_capacity(steps);
    for _ in 0..steps {
        state = conditional_move(&coin_toss(&state), n_sites);
        marginals.push(site_marginal(&state, n_sites));
    }
    marginals
}

#[test]
fn oracle_reproduces_the_frozen_early_marginals() {
    let marginals = oracle_marginals(7, 14, 3);
    let frozen: [&[(usize, f64)]; 3] = [
        &[(6, 0.5), (8, 0.5)],
        &[(5, 0.25), (7, 0.5), (9, 0.25)],
        &[(4, 0.125), (6, 0.125), (8, 0.625), (10, 0.125)],
    ];
    for (step, expected) in frozen.iter().enumerate() {
        let marginal = &marginals[step];
        let mut support = 0.0;
        for &(site, p) in *expected {
            assert!(
                (marginal[site] - p).abs() < 1e-12,
                "step {} site {site}: {}",
                step + 1,
                marginal[site]
            );
            support += marginal[site];
        }
        assert!((support - 1.0).abs() < 1e-12, "step {}", step + 1);
    }
}

#[test]
fn engine_marginals_match_the_oracle_for_ten_steps() {
    let config = WalkConfig::new(WalkMode::Quantum, 10, 0);
    let trace = run_walk(&config).unwrap();
    let engine = trace.per_step_distributions.unwrap();
    let oracle = oracle_marginals(config.start, config.n_sites, config.steps);
    for (step, (dist, expected)) in engine.iter().zip(&oracle).enumerate() {
        for (site, (&p, &q)) in dist.probabilities().iter().zip(expected).enumerate() {
            assert!((p - q).abs() < 1e-12, "step {} site {site}", step + 1);
        }
    }
}

#[test]
fn engine_matches_oracle_away_from_the_default_geometry() {
    let mut config = WalkConfig::new(WalkMode::Quantum, 12, 0);
    config.n_sites = 5;
    config.start = 0;
    let trace = run_walk(&config).unwrap();
    let engine = trace.per_step_distributions.unwrap();
    let oracle = oracle_marginals(0, 5, 12);
    for (step, (dist, expected)) in engine.iter().zip(&oracle).enumerate() {
        for (site, (&p, &q)) in dist.probabilities().iter().zip(expected).enumerate() {
            assert!((p - q).abs() < 1e-12, "step {} site {site}", step + 1);
        }
    }
}

#[test]
fn step_six_spread_exceeds_the_classical_value_on_both_routes() {
    let sigma = |probs: &[f64]| {
        let mean: f64 = probs.iter().enumerate().map(|(j, p)| j as f64 * p).sum();
        probs
            .iter()
            .enumerate()
            .map(|(j, p)| (j as f64 - mean).powi(2) * p)
            .sum::<f64>()
            .sqrt()
    };

    let oracle = oracle_marginals(7, 14, 6);
    let sigma_oracle = sigma(&oracle[5]);

    let trace = run_walk(&WalkConfig::new(WalkMode::Quantum, 6, 0)).unwrap();
    let engine = trace.per_step_distributions.unwrap();
    let sigma_engine = sigma(engine[5].probabilities());

    assert!((sigma_engine - sigma_oracle).abs() < 1e-12);
    let classical = 6f64.sqrt();
    assert!(
        sigma_engine > classical,
        "quantum {sigma_engine} vs classical {classical}"
    );
}
