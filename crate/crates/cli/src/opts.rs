//! Command-line surface. Every value flag is optional here; defaults and
//! config-file fallbacks are resolved in `execs`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsonify::sonify::PitchMode;
use qsonify::walk::WalkMode;

/// Environment variable consulted for the default seed when neither the
/// `--seed` flag nor a config file supplies one.
pub const SEED_ENV: &str = "QSONIFY_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "qsonify",
    version,
    about = "Simulate coined-quantum-walk and 3-qubit search data, then sonify it into Standard MIDI Files"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Simulate the coined walk on a ring and write trace files (.csv, .json)
    Walk(WalkArgs),
    /// Simulate the staged search circuit and write tally files (.csv, .json)
    Grover(GroverArgs),
    /// Turn a number file or trace JSON into a Standard MIDI File
    Sonify(SonifyArgs),
    /// Simulate and sonify in one run with a single shared seed
    Pipeline(PipelineArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkModeArg {
    /// Sample positions while the state evolves uncollapsed
    Quantum,
    /// Collapse onto the measured site after every step
    Classical,
}

impl From<WalkModeArg> for WalkMode {
    fn from(mode: WalkModeArg) -> Self {
        match mode {
            WalkModeArg::Quantum => WalkMode::Quantum,
            WalkModeArg::Classical => WalkMode::Classical,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PitchModeArg {
    /// Pitch = value + transpose
    Raw,
    /// Snap values onto a musical scale
    Quantized,
}

impl From<PitchModeArg> for PitchMode {
    fn from(mode: PitchModeArg) -> Self {
        match mode {
            PitchModeArg::Raw => PitchMode::Raw,
            PitchModeArg::Quantized => PitchMode::Quantized,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgorithmArg {
    Walk,
    Grover,
}

#[derive(Args, Debug)]
pub struct WalkArgs {
    /// Walk mode (required here or in the config file)
    #[arg(long, value_enum)]
    pub mode: Option<WalkModeArg>,
    /// Number of steps to simulate [default: 1000]
    #[arg(long)]
    pub steps: Option<usize>,
    /// Ring size [default: 14]
    #[arg(long)]
    pub sites: Option<usize>,
    /// Starting site [default: 7]
    #[arg(long)]
    pub start: Option<usize>,
    /// Sampler seed [default: $QSONIFY_SEED, then 0]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output path prefix for the emitted files [default: walk]
    #[arg(long)]
    pub out_prefix: Option<PathBuf>,
    /// Flat key=value config file; explicit flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write distributions at full precision instead of two decimals
    #[arg(long)]
    pub full_precision: bool,
}

#[derive(Args, Debug)]
pub struct GroverArgs {
    /// Marked outcome value, 0..=7 [default: 6]
    #[arg(long)]
    pub marked: Option<u8>,
    /// Oracle+diffuser rounds [default: 1]
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Measurements per stage [default: 100]
    #[arg(long)]
    pub shots: Option<usize>,
    /// Sampler seed [default: $QSONIFY_SEED, then 0]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output path prefix for the emitted files [default: grover]
    #[arg(long)]
    pub out_prefix: Option<PathBuf>,
    /// Flat key=value config file; explicit flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write proportions at full precision instead of two decimals
    #[arg(long)]
    pub full_precision: bool,
}

#[derive(Args, Debug)]
pub struct SonifyArgs {
    /// Input file: whitespace-separated integers (.txt) or a trace .json
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Pitch mapping [default: raw]
    #[arg(long, value_enum)]
    pub mode: Option<PitchModeArg>,
    /// Scale for quantized mode [default: c-harmonic-minor]
    #[arg(long)]
    pub scale: Option<String>,
    /// Semitone shift in raw mode [default: 12; walk traces: 36, three octaves]
    #[arg(long)]
    pub transpose: Option<i32>,
    /// Tempo in BPM, one value per quarter note [default: 120]
    #[arg(long)]
    pub tempo: Option<f64>,
    /// Fixed note duration in milliseconds [default: 250]
    #[arg(long)]
    pub dur_ms: Option<f64>,
    /// Constant note velocity, 1..=127 [default: 100]
    #[arg(long)]
    pub velocity: Option<u8>,
    /// SMF time resolution [default: 480]
    #[arg(long)]
    pub ticks_per_quarter: Option<u16>,
    /// Output .mid path (a .mid.json sidecar is written beside it)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Flat key=value config file; explicit flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PipelineArgs {
    /// Which simulation feeds the sonifier (required here or in the config file)
    #[arg(long, value_enum)]
    pub algorithm: Option<AlgorithmArg>,
    /// Walk mode; required when --algorithm walk
    #[arg(long, value_enum)]
    pub mode: Option<WalkModeArg>,
    /// Walk steps [default: 1000]
    #[arg(long)]
    pub steps: Option<usize>,
    /// Walk ring size [default: 14]
    #[arg(long)]
    pub sites: Option<usize>,
    /// Walk starting site [default: 7]
    #[arg(long)]
    pub start: Option<usize>,
    /// Marked outcome value, 0..=7 [default: 6]
    #[arg(long)]
    pub marked: Option<u8>,
    /// Oracle+diffuser rounds [default: 1]
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Measurements per stage [default: 100]
    #[arg(long)]
    pub shots: Option<usize>,
    /// Shared sampler seed [default: $QSONIFY_SEED, then 0]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Pitch mapping for the .mid [default: raw]
    #[arg(long, value_enum)]
    pub pitch_mode: Option<PitchModeArg>,
    /// Scale for quantized pitch mode [default: c-harmonic-minor]
    #[arg(long)]
    pub scale: Option<String>,
    /// Semitone shift in raw mode [default: 36 for walk, 12 for grover]
    #[arg(long)]
    pub transpose: Option<i32>,
    /// Tempo in BPM [default: 120]
    #[arg(long)]
    pub tempo: Option<f64>,
    /// Fixed note duration in milliseconds [default: 250]
    #[arg(long)]
    pub dur_ms: Option<f64>,
    /// Constant note velocity, 1..=127 [default: 100]
    #[arg(long)]
    pub velocity: Option<u8>,
    /// SMF time resolution [default: 480]
    #[arg(long)]
    pub ticks_per_quarter: Option<u16>,
    /// Output path prefix for all emitted files [default: pipeline]
    #[arg(long)]
    pub out_prefix: Option<PathBuf>,
    /// Flat key=value config file; explicit flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write proportions at full precision instead of two decimals
    #[arg(long)]
    pub full_precision: bool,
}
