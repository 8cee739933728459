//! File formats: Standard MIDI File (format 0) emission, CSV and JSON trace
//! serialization, and plain-text number-file ingestion.
//!
//! The SMF writer emits one track, no running status, a single set-tempo meta
//! event at tick 0, and note-on/note-off pairs with variable-length delta
//! times, so output bytes are stable enough for golden tests.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grover::{GroverConfig, GroverRun, TraceTable};
use crate::sonify::NoteEvent;
use crate::statevec::SeededSampler;
use crate::walk::{WalkConfig, WalkTrace};

pub const DEFAULT_TICKS_PER_QUARTER: u16 = 480;
pub const DEFAULT_TEMPO_BPM: f64 = 120.0;

/// Largest delta time a 4-byte variable-length quantity can carry.
pub const MAX_DELTA_TICKS: u64 = 0x0fff_ffff;

/// A single-track SMF in memory.
#[derive(Clone, Debug, PartialEq)]
pub struct SmfDocument {
    pub ticks_per_quarter: u16,
    pub tempo_bpm: f64,
    pub events: Vec<NoteEvent>,
    pub channel: u8,
}

impl SmfDocument {
    pub fn new(ticks_per_quarter: u16, tempo_bpm: f64, events: Vec<NoteEvent>) -> Self {
        Self {
            ticks_per_quarter,
            tempo_bpm,
            events,
            channel: 0,
        }
    }
}

/// Appends `value` as an SMF variable-length quantity (big-endian 7-bit
/// groups, continuation bit on all but the last byte).
pub fn encode_delta_time(value: u64, out: &mut Vec<u8>) -> Result<()> {
    if value > MAX_DELTA_TICKS {
        return Err(Error::DeltaOverflow(value));
    }
    for shift in [21u32, 14, 7] {
        if value >> shift != 0 {
            out.push(((value >> shift) & 0x7f) as u8 | 0x80);
        }
    }
    out.push((value & 0x7f) as u8);
    Ok(())
}

fn tempo_microseconds(tempo_bpm: f64) -> Result<u32> {
    if !(tempo_bpm.is_finite() && tempo_bpm > 0.0) {
        return Err(Error::InvalidMidiField(format!(
            "tempo must be positive, got {tempo_bpm}"
        )));
    }
    let us = (60_000_000.0 / tempo_bpm).round();
    if !(1.0..=16_777_215.0).contains(&us) {
        return Err(Error::InvalidMidiField(format!(
            "tempo {tempo_bpm} BPM leaves the 3-byte microsecond range"
        )));
    }
    Ok(us as u32)
}

/// Serializes the document to SMF format 0 bytes.
pub fn write_smf(doc: &SmfDocument) -> Result<Vec<u8>> {
    if doc.channel > 15 {
        return Err(Error::InvalidMidiField(format!(
            "channel {} out of range 0..=15",
            doc.channel
        )));
    }
    if doc.ticks_per_quarter == 0 || doc.ticks_per_quarter > 0x7fff {
        return Err(Error::InvalidMidiField(format!(
            "ticks per quarter {} out of range 1..=32767",
            doc.ticks_per_quarter
        )));
    }
    let tempo_us = tempo_microseconds(doc.tempo_bpm)?;
    if doc.events.windows(2).any(|w| w[1].onset < w[0].onset) {
        return Err(Error::UnsortedEvents);
    }
    for event in &doc.events {
        if event.pitch > 127 {
            return Err(Error::InvalidMidiField(format!(
                "pitch {} out of range 0..=127",
                event.pitch
            )));
        }
        if event.velocity == 0 || event.velocity > 127 {
            return Err(Error::InvalidMidiField(format!(
                "velocity {} out of range 1..=127",
                event.velocity
            )));
        }
        if event.duration == 0 {
            return Err(Error::InvalidMidiField("zero-duration note".to_string()));
        }
    }

    // (tick, rank, message): tempo first, then note-offs before note-ons at
    // equal ticks so adjacent equal pitches do not overlap.
    let mut messages: Vec<(u64, u8, [u8; 3])> =
        vec![(0, 0, [0xff, 0x51, 0x03])];
    for event in &doc.events {
        let on = u64::from(event.onset);
        let off = on + u64::from(event.duration);
        messages.push((on, 2, [0x90 | doc.channel, event.pitch, event.velocity]));
        messages.push((off, 1, [0x80 | doc.channel, event.pitch, 0x00]));
    }
    messages.sort_by_key(|&(tick, rank, _)| (tick, rank));

    let mut track = Vec::new();
    let mut cursor = 0u64;
    for (tick, rank, message) in messages {
        encode_delta_time(tick - cursor, &mut track)?;
        track.extend_from_slice(&message);
        if rank == 0 {
            // set-tempo payload: microseconds per quarter, 3 bytes big-endian
            track.extend_from_slice(&tempo_us.to_be_bytes()[1..]);
        }
        cursor = tick;
    }
    encode_delta_time(0, &mut track)?;
    track.extend_from_slice(&[0xff, 0x2f, 0x00]); // end of track

    let mut bytes = Vec::with_capacity(22 + track.len());
    bytes.extend_from_slice(b"MThd");
    bytes.extend_from_slice(&6u32.to_be_bytes());
    bytes.extend_from_slice(&0u16.to_be_bytes()); // format 0
    bytes.extend_from_slice(&1u16.to_be_bytes()); // one track
    bytes.extend_from_slice(&doc.ticks_per_quarter.to_be_bytes());
    bytes.extend_from_slice(b"MTrk");
    bytes.extend_from_slice(&(track.len() as u32).to_be_bytes());
    bytes.extend_from_slice(&track);
    Ok(bytes)
}

/// Float formatting for CSV: two decimals mirrors the tally-table
/// presentation, full precision round-trips exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsvPrecision {
    TwoDecimals,
    Full,
}

impl CsvPrecision {
    fn fmt(self, value: f64) -> String {
        match self {
            CsvPrecision::TwoDecimals => format!("{value:.2}"),
            CsvPrecision::Full => format!("{value}"),
        }
    }
}

fn walk_comment_header(config: &WalkConfig) -> String {
    format!(
        "# generator: {}\n# mode: {}\n# n_sites: {}\n# start: {}\n# steps: {}\n# seed: {}\n",
        SeededSampler::GENERATOR_ID,
        config.mode,
        config.n_sites,
        config.start,
        config.steps,
        config.seed,
    )
}

/// One row per step: the sampled position plus the exact site marginal.
pub fn write_walk_csv(trace: &WalkTrace, precision: CsvPrecision) -> String {
    let mut out = walk_comment_header(&trace.config);
    out.push_str("step,position");
    for j in 0..trace.config.n_sites {
        let _ = write!(out, ",p{j}");
    }
    out.push('\n');
    for (i, &position) in trace.positions.iter().enumerate() {
        let _ = write!(out, "{},{position}", i + 1);
        if let Some(dists) = &trace.per_step_distributions {
            for &p in dists[i].probabilities() {
                let _ = write!(out, ",{}", precision.fmt(p));
            }
        }
        out.push('\n');
    }
    out
}

fn grover_comment_header(config: &GroverConfig) -> String {
    format!(
        "# generator: {}\n# marked: {}\n# iterations: {}\n# shots_per_stage: {}\n# seed: {}\n",
        SeededSampler::GENERATOR_ID,
        config.marked,
        config.iterations,
        config.shots_per_stage,
        config.seed,
    )
}

/// Stage × outcome tally proportions, one row per stage.
pub fn write_grover_csv(
    table: &TraceTable,
    config: &GroverConfig,
    precision: CsvPrecision,
) -> String {
    let mut out = grover_comment_header(config);
    out.push_str("stage");
    for label in TraceTable::outcome_labels() {
        let _ = write!(out, ",{label}");
    }
    out.push('\n');
    for (k, row) in table.rows.iter().enumerate() {
        let _ = write!(out, "{}", k + 1);
        for &p in row {
            let _ = write!(out, ",{}", precision.fmt(p));
        }
        out.push('\n');
    }
    out
}

/// Long-form per-stage histogram rows (stage, outcome, tallied proportion,
/// exact probability) for external plotting.
pub fn write_histogram_csv(run: &GroverRun, precision: CsvPrecision) -> String {
    let mut out = grover_comment_header(&run.config);
    out.push_str("stage,outcome,proportion,exact_probability\n");
    let labels = TraceTable::outcome_labels();
    for (k, (row, exact)) in run
        .table
        .rows
        .iter()
        .zip(&run.exact_distributions)
        .enumerate()
    {
        for (label, (&p, &q)) in labels.iter().zip(row.iter().zip(exact.probabilities())) {
            let _ = writeln!(out, "{},{label},{},{q}", k + 1, precision.fmt(p));
        }
    }
    out
}

/// JSON form of a walk trace, with the config and generator identity that
/// reproduce it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkDocument {
    pub generator: String,
    pub config: WalkConfig,
    pub positions: Vec<usize>,
    pub per_step_distributions: Option<Vec<Vec<f64>>>,
}

impl WalkDocument {
    pub fn from_trace(trace: &WalkTrace) -> Self {
        Self {
            generator: SeededSampler::GENERATOR_ID.to_string(),
            config: trace.config.clone(),
            positions: trace.positions.clone(),
            per_step_distributions: trace
                .per_step_distributions
                .as_ref()
                .map(|dists| dists.iter().map(|d| d.probabilities().to_vec()).collect()),
        }
    }
}

/// JSON form of a sampled search run: tallies, raw per-stage samples, and the
/// exact distributions they were drawn from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroverDocument {
    pub generator: String,
    pub config: GroverConfig,
    pub outcome_labels: Vec<String>,
    pub table: Vec<Vec<f64>>,
    pub stage_samples: Vec<Vec<u8>>,
    pub exact_distributions: Vec<Vec<f64>>,
}

impl GroverDocument {
    pub fn from_run(run: &GroverRun) -> Self {
        Self {
            generator: SeededSampler::GENERATOR_ID.to_string(),
            config: run.config.clone(),
            outcome_labels: TraceTable::outcome_labels(),
            table: run.table.rows.clone(),
            stage_samples: run.stage_samples.clone(),
            exact_distributions: run
                .exact_distributions
                .iter()
                .map(|d| d.probabilities().to_vec())
                .collect(),
        }
    }
}

/// Tagged union of the JSON trace files this crate emits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TraceDocument {
    Walk(WalkDocument),
    Grover(GroverDocument),
}

impl TraceDocument {
    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// The integer sequence a sonifier should play: walk positions in step
    /// order, or all per-stage samples concatenated in stage order.
    pub fn values(&self) -> Vec<i64> {
        match self {
            TraceDocument::Walk(doc) => doc.positions.iter().map(|&p| p as i64).collect(),
            TraceDocument::Grover(doc) => doc
                .stage_samples
                .iter()
                .flatten()
                .map(|&v| i64::from(v))
                .collect(),
        }
    }
}

/// Integers parsed from a MAX-patch-style text file.
#[derive(Clone, Debug, PartialEq)]
pub struct NumberFile {
    pub values: Vec<i64>,
    pub source_path: String,
}

/// Reads whitespace- and newline-separated integers; blank lines are skipped
/// and parse errors carry the line number.
pub fn read_numbers(path: impl AsRef<Path>) -> Result<NumberFile> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let source_path = path.display().to_string();
    let mut values = Vec::new();
    for (index, line) in text.lines().enumerate() {
        for token in line.split_whitespace() {
            let value = token
                .parse::<i64>()
                .map_err(|_| Error::InvalidNumberToken {
                    path: source_path.clone(),
                    line: index + 1,
                    token: token.to_string(),
                })?;
            values.push(value);
        }
    }
    if values.is_empty() {
        return Err(Error::EmptyNumberFile(source_path));
    }
    Ok(NumberFile {
        values,
        source_path,
    })
}
