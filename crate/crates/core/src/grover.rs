//! Stage-sliced 3-qubit search circuit: an initial Hadamard layer, then per
//! iteration a phase oracle (X-conjugated, Hadamard-conjugated CCX) and a
//! diffuser (inversion about the mean). Snapshots between gate columns expose
//! the evolving distribution, and per-stage shot sampling produces tally
//! tables.
//!
//! Qubit `i` (0-based, `0..3`) carries bit `i` of the outcome value, so the
//! readout string is `q3 q2 q1` with q3 most significant: the circuit built
//! for `marked = 6` amplifies the outcome read as "110".

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevec::{ProbabilityDistribution, SeededSampler, StateVector, UnitaryMatrix};

pub const QUBITS: usize = 3;
pub const OUTCOMES: usize = 8;

/// Stage count of the single-iteration circuit.
pub const DEFAULT_STAGE_COUNT: usize = 11;

pub const DEFAULT_MARKED: u8 = 6;
pub const DEFAULT_ITERATIONS: usize = 1;
pub const DEFAULT_SHOTS_PER_STAGE: usize = 100;

/// Outcome value rendered as its 3-bit readout string (q3 q2 q1).
pub fn outcome_label(value: u8) -> String {
    format!("{value:03b}")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroverConfig {
    pub marked: u8,
    pub iterations: usize,
    pub shots_per_stage: usize,
    pub seed: u64,
}

impl GroverConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            marked: DEFAULT_MARKED,
            iterations: DEFAULT_ITERATIONS,
            shots_per_stage: DEFAULT_SHOTS_PER_STAGE,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.marked >= OUTCOMES as u8 {
            return Err(Error::MarkedOutOfRange(self.marked));
        }
        if self.iterations == 0 {
            return Err(Error::ZeroIterations);
        }
        if self.shots_per_stage == 0 {
            return Err(Error::ZeroShots);
        }
        Ok(())
    }
}

/// A gate placed on specific qubits within one column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    X(usize),
    Ccx { controls: [usize; 2], target: usize },
}

impl Gate {
    fn operator(&self) -> UnitaryMatrix {
        match *self {
            Gate::H(q) => embed_single(&UnitaryMatrix::hadamard(), q),
            Gate::X(q) => embed_single(&UnitaryMatrix::pauli_x(), q),
            Gate::Ccx { controls, target } => ccx_operator(controls, target),
        }
    }
}

/// Lifts a 2x2 gate on qubit `q` to the 8-dimensional space. Qubit `q` is bit
/// `q` of the outcome index, so qubit 2 is the slow tensor factor.
fn embed_single(gate: &UnitaryMatrix, q: usize) -> UnitaryMatrix {
    assert!(q < QUBITS);
    let factor = |i: usize| {
        if i == q {
            gate.clone()
        } else {
            UnitaryMatrix::identity(2)
        }
    };
    factor(2).kron(&factor(1)).kron(&factor(0))
}

/// CCX as an 8x8 permutation: flips the target bit when both control bits
/// are set.
fn ccx_operator(controls: [usize; 2], target: usize) -> UnitaryMatrix {
    let control_mask = (1usize << controls[0]) | (1 << controls[1]);
    let mut entries = vec![num_complex::Complex64::ZERO; OUTCOMES * OUTCOMES];
    for v in 0..OUTCOMES {
        let out = if v & control_mask == control_mask {
            v ^ (1 << target)
        } else {
            v
        };
        entries[out * OUTCOMES + v] = num_complex::Complex64::ONE;
    }
    UnitaryMatrix::from_raw(OUTCOMES, entries)
}

/// One circuit column: the gates drawn in a single vertical slice, acting on
/// disjoint qubits, together with their composite operator.
#[derive(Clone, Debug)]
pub struct GateColumn {
    gates: Vec<Gate>,
    operator: UnitaryMatrix,
}

impl GateColumn {
    fn new(gates: Vec<Gate>) -> Self {
        let operator = gates.iter().fold(UnitaryMatrix::identity(OUTCOMES), |acc, g| {
            g.operator().matmul(&acc).expect("fixed 8-dim operators")
        });
        Self { gates, operator }
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn operator(&self) -> &UnitaryMatrix {
        &self.operator
    }
}

/// Ordered gate columns; stage `k` is column `k` counting from 1.
#[derive(Clone, Debug)]
pub struct GroverCircuit {
    stages: Vec<GateColumn>,
    marked: u8,
    iterations: usize,
}

impl GroverCircuit {
    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    pub fn stages(&self) -> &[GateColumn] {
        &self.stages
    }

    pub fn marked(&self) -> u8 {
        self.marked
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }
}

fn h_layer() -> Vec<Gate> {
    (0..QUBITS).map(Gate::H).collect()
}

fn x_layer() -> Vec<Gate> {
    (0..QUBITS).map(Gate::X).collect()
}

fn ccx_column() -> Vec<Gate> {
    vec![Gate::Ccx {
        controls: [0, 1],
        target: 2,
    }]
}

fn selector_x_gates(marked: u8) -> Vec<Gate> {
    (0..QUBITS)
        .filter(|&q| (marked >> q) & 1 == 0)
        .map(Gate::X)
        .collect()
}

/// Column opening the oracle: X on every qubit whose marked bit is 0, then
/// the H conjugating the CCX target. Gate list order is application order,
/// which matters when the marked value puts an X on the target qubit.
fn oracle_open(marked: u8) -> Vec<Gate> {
    let mut gates = selector_x_gates(marked);
    gates.push(Gate::H(2));
    gates
}

/// Column closing the oracle: the mirror image, H on the target first.
fn oracle_close(marked: u8) -> Vec<Gate> {
    let mut gates = vec![Gate::H(2)];
    gates.extend(selector_x_gates(marked));
    gates
}

/// Builds the stage-sliced circuit: one Hadamard layer, then per iteration
/// three oracle columns and seven diffuser columns. The default config
/// (marked 6, one iteration) yields the 11-stage layout.
pub fn build_circuit(config: &GroverConfig) -> Result<GroverCircuit> {
    config.validate()?;
    let mut stages = vec![GateColumn::new(h_layer())];
    for _ in 0..config.iterations {
        // oracle: phase flip of the marked basis state
        stages.push(GateColumn::new(oracle_open(config.marked)));
        stages.push(GateColumn::new(ccx_column()));
        stages.push(GateColumn::new(oracle_close(config.marked)));
        // diffuser: inversion about the mean
        stages.push(GateColumn::new(h_layer()));
        stages.push(GateColumn::new(x_layer()));
        stages.push(GateColumn::new(vec![Gate::H(2)]));
        stages.push(GateColumn::new(ccx_column()));
        stages.push(GateColumn::new(vec![Gate::H(2)]));
        stages.push(GateColumn::new(x_layer()));
        stages.push(GateColumn::new(h_layer()));
    }
    Ok(GroverCircuit {
        stages,
        marked: config.marked,
        iterations: config.iterations,
    })
}

/// |000⟩ evolved through columns `1..=stage`.
pub fn state_at_stage(circuit: &GroverCircuit, stage: usize) -> Result<StateVector> {
    if stage == 0 || stage > circuit.stage_count() {
        return Err(Error::StageOutOfRange {
            stage,
            count: circuit.stage_count(),
        });
    }
    let mut psi = StateVector::basis(OUTCOMES, 0);
    for column in &circuit.stages[..stage] {
        psi = column.operator().apply(&psi)?;
    }
    Ok(psi)
}

/// Born probabilities of the stage-`stage` snapshot, labeled by outcome value.
pub fn stage_distribution(circuit: &GroverCircuit, stage: usize) -> Result<ProbabilityDistribution> {
    state_at_stage(circuit, stage)?.born_probabilities()
}

/// Draws `shots` independent outcome values from the stage distribution.
pub fn sample_stage(
    circuit: &GroverCircuit,
    stage: usize,
    shots: usize,
    sampler: &mut SeededSampler,
) -> Result<Vec<u8>> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let dist = stage_distribution(circuit, stage)?;
    let draws = dist.sample(sampler, shots)?;
    Ok(draws.into_iter().map(|v| v as u8).collect())
}

/// Stage × outcome tally proportions; row `k-1` holds stage `k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceTable {
    pub rows: Vec<Vec<f64>>,
}

impl TraceTable {
    pub fn stage_count(&self) -> usize {
        self.rows.len()
    }

    pub fn outcome_labels() -> Vec<String> {
        (0..OUTCOMES as u8).map(outcome_label).collect()
    }
}

/// A full sampled run: the tally table plus the raw per-stage samples and the
/// exact stage distributions they were drawn from.
#[derive(Clone, Debug)]
pub struct GroverRun {
    pub config: GroverConfig,
    pub table: TraceTable,
    pub stage_samples: Vec<Vec<u8>>,
    pub exact_distributions: Vec<ProbabilityDistribution>,
}

/// Samples every stage in order with a single seeded sampler.
pub fn run(config: &GroverConfig) -> Result<GroverRun> {
    let circuit = build_circuit(config)?;
    let mut sampler = SeededSampler::new(config.seed);
    let mut rows = Vec::with_capacity(circuit.stage_count());
    let mut stage_samples = Vec::with_capacity(circuit.stage_count());
    let mut exact_distributions = Vec::with_capacity(circuit.stage_count());
    for stage in 1..=circuit.stage_count() {
        let samples = sample_stage(&circuit, stage, config.shots_per_stage, &mut sampler)?;
        let mut tally = vec![0usize; OUTCOMES];
        for &v in &samples {
            tally[v as usize] += 1;
        }
        rows.push(
            tally
                .into_iter()
                .map(|n| n as f64 / config.shots_per_stage as f64)
                .collect(),
        );
        stage_samples.push(samples);
        exact_distributions.push(stage_distribution(&circuit, stage)?);
    }
    Ok(GroverRun {
        config: config.clone(),
        table: TraceTable { rows },
        stage_samples,
        exact_distributions,
    })
}

/// Per-stage tally proportions in the shape of an 11 × 8 table.
pub fn full_trace(config: &GroverConfig) -> Result<TraceTable> {
    Ok(run(config)?.table)
}
