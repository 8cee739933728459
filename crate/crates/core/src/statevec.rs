//! Dense complex linear algebra for small Hilbert spaces: Kronecker products,
//! unitary application, Born-rule probabilities, site marginals, and seeded
//! sampling of measurement outcomes.
//!
//! All spaces handled here are tiny (28 dimensions for the walk, 8 for the
//! search circuit), so everything is dense and row-major.

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Tolerance on `|norm - 1|` for state construction and on `U†U - I` entries.
pub const NORM_TOL: f64 = 1e-12;

/// Born sampling rejects states whose norm drifted beyond this.
pub const BORN_NORM_TOL: f64 = 1e-9;

/// Probabilities in `[-NEG_CLAMP, 0)` are clamped to zero; anything more
/// negative is an internal error rather than roundoff.
pub const NEG_CLAMP: f64 = 1e-14;

/// Complex amplitude vector over a joint Hilbert space. Invariant: the squared
/// magnitudes sum to 1 within [`NORM_TOL`] at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state from raw amplitudes, rejecting unnormalized input.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = l2_norm(&amplitudes);
        let deviation = (norm - 1.0).abs();
        if deviation > NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { amplitudes })
    }

    /// Basis state |index⟩ in a `dimension`-dimensional space.
    pub fn basis(dimension: usize, index: usize) -> Self {
        assert!(index < dimension, "basis index {index} out of range {dimension}");
        let mut amplitudes = vec![Complex64::ZERO; dimension];
        amplitudes[index] = Complex64::ONE;
        Self { amplitudes }
    }

    /// Internal constructor for amplitudes already known to be normalized
    /// (images of unitaries, tensor products of normalized states).
    pub(crate) fn from_raw(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amplitudes)
    }

    /// Tensor product `self ⊗ other` with `self` as the slow index, matching
    /// the `kron(coin, site)` layout: joint index = coin * n_sites + site.
    pub fn kron(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dimension() * other.dimension());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Self { amplitudes }
    }

    /// Born rule: outcome `i` has probability `|amplitude_i|^2`. Rejects
    /// states whose norm has drifted more than [`BORN_NORM_TOL`] from 1.
    pub fn born_probabilities(&self) -> Result<ProbabilityDistribution> {
        let deviation = (self.norm() - 1.0).abs();
        if deviation > BORN_NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        ProbabilityDistribution::new(self.amplitudes.iter().map(|a| a.norm_sqr()).collect())
    }

    /// Walker-position marginal for a coin ⊗ site state:
    /// `p(j) = |psi[j]|^2 + |psi[n_sites + j]|^2`.
    pub fn marginal_sites(&self, n_sites: usize) -> Result<ProbabilityDistribution> {
        if self.dimension() != 2 * n_sites {
            return Err(Error::MarginalDimension {
                dimension: self.dimension(),
                n_sites,
            });
        }
        let probs = (0..n_sites)
            .map(|j| self.amplitudes[j].norm_sqr() + self.amplitudes[n_sites + j].norm_sqr())
            .collect();
        ProbabilityDistribution::new(probs)
    }
}

fn l2_norm(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Dense row-major unitary matrix. Invariant: `U†U = I` within [`NORM_TOL`]
/// elementwise at validated construction.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    dimension: usize,
    entries: Vec<Complex64>,
}

impl UnitaryMatrix {
    /// Builds a matrix from row-major entries, rejecting non-unitary input.
    pub fn new(dimension: usize, entries: Vec<Complex64>) -> Result<Self> {
        assert_eq!(entries.len(), dimension * dimension, "entry count mismatch");
        let m = Self { dimension, entries };
        let deviation = m.unitarity_deviation();
        if deviation > NORM_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(m)
    }

    /// Internal constructor for matrices unitary by construction
    /// (permutations, Hadamard blocks, products and tensors of unitaries).
    pub(crate) fn from_raw(dimension: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), dimension * dimension);
        Self { dimension, entries }
    }

    pub fn identity(dimension: usize) -> Self {
        let mut entries = vec![Complex64::ZERO; dimension * dimension];
        for i in 0..dimension {
            entries[i * dimension + i] = Complex64::ONE;
        }
        Self { dimension, entries }
    }

    /// The 2x2 Hadamard coin/gate: maps basis states to equal-magnitude
    /// superpositions with a relative phase.
    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::from_raw(2, vec![h, h, h, -h])
    }

    /// The 2x2 Pauli X (bit flip).
    pub fn pauli_x() -> Self {
        Self::from_raw(2, vec![Complex64::ZERO, Complex64::ONE, Complex64::ONE, Complex64::ZERO])
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dimension + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Tensor product `self ⊗ other` with `self` as the slow (block) index.
    pub fn kron(&self, other: &Self) -> Self {
        let da = self.dimension;
        let db = other.dimension;
        let d = da * db;
        let mut entries = vec![Complex64::ZERO; d * d];
        for ia in 0..da {
            for ja in 0..da {
                let a = self.entry(ia, ja);
                for ib in 0..db {
                    for jb in 0..db {
                        entries[(ia * db + ib) * d + (ja * db + jb)] = a * other.entry(ib, jb);
                    }
                }
            }
        }
        Self::from_raw(d, entries)
    }

    /// Matrix-vector product. The output norm equals the input norm up to
    /// floating-point roundoff because `self` is unitary.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.dimension() != self.dimension {
            return Err(Error::DimensionMismatch {
                operator: self.dimension,
                state: psi.dimension(),
            });
        }
        let amps = psi.amplitudes();
        let out = (0..self.dimension)
            .map(|i| {
                let row = &self.entries[i * self.dimension..(i + 1) * self.dimension];
                row.iter().zip(amps).map(|(u, a)| u * a).sum()
            })
            .collect();
        Ok(StateVector::from_raw(out))
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dimension != other.dimension {
            return Err(Error::DimensionMismatch {
                operator: self.dimension,
                state: other.dimension,
            });
        }
        let d = self.dimension;
        let mut entries = vec![Complex64::ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entry(i, k);
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += a * other.entry(k, j);
                }
            }
        }
        Ok(Self::from_raw(d, entries))
    }

    /// Max elementwise deviation of `U†U` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.dimension;
        let mut max_dev = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let mut dot = Complex64::ZERO;
                for k in 0..d {
                    dot += self.entry(k, i).conj() * self.entry(k, j);
                }
                let expected = if i == j { Complex64::ONE } else { Complex64::ZERO };
                max_dev = max_dev.max((dot - expected).norm());
            }
        }
        max_dev
    }
}

/// Nonnegative reals summing to 1 over outcome indices `0..len`.
///
/// Entries in `[-NEG_CLAMP, 0)` are clamped to zero; if clamping occurred or
/// the sum deviates from 1 by more than [`NORM_TOL`] (but at most
/// [`BORN_NORM_TOL`]), the vector is renormalized. Engine-internal paths never
/// trigger the renormalization, which keeps the coin-summed joint Born
/// probabilities bitwise equal to the site marginals.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityDistribution {
    probabilities: Vec<f64>,
}

impl ProbabilityDistribution {
    pub fn new(mut probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        let mut clamped = false;
        for (index, p) in probabilities.iter_mut().enumerate() {
            if *p < 0.0 {
                if *p < -NEG_CLAMP {
                    return Err(Error::NegativeProbability { index, value: *p });
                }
                *p = 0.0;
                clamped = true;
            }
        }
        let sum: f64 = probabilities.iter().sum();
        if (sum - 1.0).abs() > BORN_NORM_TOL {
            return Err(Error::ProbabilitySum { sum });
        }
        if clamped || (sum - 1.0).abs() > NORM_TOL {
            for p in &mut probabilities {
                *p /= sum;
            }
        }
        Ok(Self { probabilities })
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Outcome labels are the indices `0..len`.
    pub fn labels(&self) -> impl Iterator<Item = usize> {
        0..self.probabilities.len()
    }

    /// Draws `shots` independent outcome indices.
    pub fn sample(&self, sampler: &mut SeededSampler, shots: usize) -> Result<Vec<usize>> {
        let index = WeightedIndex::new(self.probabilities.iter().copied())
            .map_err(|_| Error::EmptyDistribution)?;
        Ok((0..shots).map(|_| index.sample(&mut sampler.rng)).collect())
    }

    /// Draws a single outcome index.
    pub fn sample_one(&self, sampler: &mut SeededSampler) -> Result<usize> {
        Ok(self.sample(sampler, 1)?[0])
    }
}

/// Deterministic outcome sampler: the same seed yields the identical outcome
/// sequence for the identical call sequence. Single-owner mutable; move it
/// between threads, never share it.
#[derive(Clone, Debug)]
pub struct SeededSampler {
    seed: u64,
    rng: ChaCha8Rng,
}

impl SeededSampler {
    /// Identity of the underlying generator, recorded in output metadata.
    pub const GENERATOR_ID: &'static str = "chacha8";

    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}
