//! Quantum-algorithm sonification engine: simulates a coined quantum walk on
//! a 14-site ring and a stage-sliced 3-qubit search circuit, samples their
//! measurement outcomes, and turns the resulting number sequences into
//! Standard MIDI Files and tabular exports.
//!
//! - [`statevec`] — dense complex state vectors, unitaries, Born-rule
//!   probabilities, and seeded sampling.
//! - [`walk`] — the coined walk in quantum (uncollapsed) and classical
//!   (collapse-per-step) modes.
//! - [`grover`] — the 11-stage search circuit with per-stage snapshots and
//!   shot tallies.
//! - [`sonify`] — integer sequences to note events: raw transposition or
//!   C-harmonic-minor quantization on a tempo grid.
//! - [`midiio`] — SMF (format 0) bytes, CSV/JSON exports, and number-file
//!   ingestion.

pub mod error;
pub mod grover;
pub mod midiio;
pub mod sonify;
pub mod statevec;
pub mod walk;

pub use error::{Error, Result};
