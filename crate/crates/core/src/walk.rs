//! Discrete-time coined walk on a ring of sites: a Hadamard coin toss followed
//! by a coin-conditioned shift with periodic boundaries. Quantum mode samples
//! positions while leaving the state uncollapsed; classical mode projects onto
//! the measured site after every step, which recovers a nearest-neighbor
//! random walk.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevec::{ProbabilityDistribution, SeededSampler, StateVector, UnitaryMatrix};

pub const DEFAULT_N_SITES: usize = 14;
pub const DEFAULT_START: usize = 7;
pub const DEFAULT_STEPS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkMode {
    Quantum,
    Classical,
}

impl std::fmt::Display for WalkMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WalkMode::Quantum => write!(f, "quantum"),
            WalkMode::Classical => write!(f, "classical"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub n_sites: usize,
    pub start: usize,
    pub steps: usize,
    pub mode: WalkMode,
    pub seed: u64,
}

impl WalkConfig {
    pub fn new(mode: WalkMode, steps: usize, seed: u64) -> Self {
        Self {
            n_sites: DEFAULT_N_SITES,
            start: DEFAULT_START,
            steps,
            mode,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites < 2 {
            return Err(Error::TooFewSites(self.n_sites));
        }
        if self.start >= self.n_sites {
            return Err(Error::StartOutOfRange {
                start: self.start,
                n_sites: self.n_sites,
            });
        }
        if self.steps == 0 {
            return Err(Error::ZeroSteps);
        }
        Ok(())
    }
}

/// Joint coin ⊗ site state of the walker after `step_count` steps.
#[derive(Clone, Debug)]
pub struct WalkState {
    psi: StateVector,
    step_count: usize,
}

impl WalkState {
    pub fn psi(&self) -> &StateVector {
        &self.psi
    }

    pub fn step_count(&self) -> usize {
        self.step_count
    }
}

/// One sampled position per step, plus the exact pre-measurement site
/// marginal at every step so downstream consumers need no re-simulation.
#[derive(Clone, Debug)]
pub struct WalkTrace {
    pub positions: Vec<usize>,
    pub config: WalkConfig,
    pub per_step_distributions: Option<Vec<ProbabilityDistribution>>,
}

/// Coin toss on the joint space: `H ⊗ I_{n_sites}`.
pub fn build_coin_op(n_sites: usize) -> UnitaryMatrix {
    UnitaryMatrix::hadamard().kron(&UnitaryMatrix::identity(n_sites))
}

/// Conditional shift: heads moves the walker one site up, tails one site
/// down, modulo `n_sites`. A permutation on the joint space.
pub fn build_move_op(n_sites: usize) -> UnitaryMatrix {
    let dim = 2 * n_sites;
    let mut entries = vec![num_complex::Complex64::ZERO; dim * dim];
    for j in 0..n_sites {
        let up = (j + 1) % n_sites;
        let down = (j + n_sites - 1) % n_sites;
        // |heads⟩⟨heads| ⊗ |j+1⟩⟨j|  and  |tails⟩⟨tails| ⊗ |j-1⟩⟨j|
        entries[up * dim + j] = num_complex::Complex64::ONE;
        entries[(n_sites + down) * dim + (n_sites + j)] = num_complex::Complex64::ONE;
    }
    UnitaryMatrix::from_raw(dim, entries)
}

/// Initial state |heads⟩ ⊗ |start⟩.
pub fn init_state(config: &WalkConfig) -> Result<WalkState> {
    config.validate()?;
    Ok(WalkState {
        psi: StateVector::basis(2, 0).kron(&StateVector::basis(config.n_sites, config.start)),
        step_count: 0,
    })
}

struct WalkOperators {
    coin: UnitaryMatrix,
    mover: UnitaryMatrix,
}

impl WalkOperators {
    fn build(n_sites: usize) -> Self {
        Self {
            coin: build_coin_op(n_sites),
            mover: build_move_op(n_sites),
        }
    }
}

/// Advances the walker one step: coin toss, conditional move, then one
/// sampled position measurement. In quantum mode the returned state is the
/// uncollapsed post-move state; in classical mode it is the basis state at
/// the sampled site with the coin reset to heads.
pub fn step(
    state: &WalkState,
    config: &WalkConfig,
    sampler: &mut SeededSampler,
) -> Result<(usize, WalkState)> {
    let ops = WalkOperators::build(config.n_sites);
    let (position, _, next) = step_with_ops(state, config, &ops, sampler)?;
    Ok((position, next))
}

fn step_with_ops(
    state: &WalkState,
    config: &WalkConfig,
    ops: &WalkOperators,
    sampler: &mut SeededSampler,
) -> Result<(usize, ProbabilityDistribution, WalkState)> {
    let psi = ops.mover.apply(&ops.coin.apply(&state.psi)?)?;
    let marginal = psi.marginal_sites(config.n_sites)?;
    let position = marginal.sample_one(sampler)?;
    let next_psi = match config.mode {
        WalkMode::Quantum => psi,
        WalkMode::Classical => {
            StateVector::basis(2, 0).kron(&StateVector::basis(config.n_sites, position))
        }
    };
    Ok((
        position,
        marginal,
        WalkState {
            psi: next_psi,
            step_count: state.step_count + 1,
        },
    ))
}

/// Runs the full walk, recording one sampled position and the exact site
/// marginal per step. Deterministic given the config seed.
pub fn run_walk(config: &WalkConfig) -> Result<WalkTrace> {
    let mut state = init_state(config)?;
    let ops = WalkOperators::build(config.n_sites);
    let mut sampler = SeededSampler::new(config.seed);
    let mut positions = Vec::with_capacity(config.steps);
    let mut distributions = Vec::with_capacity(config.steps);
    for _ in 0..config.steps {
        let (position, marginal, next) = step_with_ops(&state, config, &ops, &mut sampler)?;
        positions.push(position);
        distributions.push(marginal);
        state = next;
    }
    Ok(WalkTrace {
        positions,
        config: config.clone(),
        per_step_distributions: Some(distributions),
    })
}
