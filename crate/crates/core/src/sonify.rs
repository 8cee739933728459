//! Turns integer sequences into pitched note events: raw semitone mapping or
//! quantization onto a musical scale, with a fixed note duration and one note
//! per quarter at the configured tempo.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ring size shared with the walk; interval profiles are signed steps on
/// this ring.
const RING: i64 = 14;

/// Transposition applied to search-outcome data in raw mode: one octave up,
/// out of the inaudible bottom register.
pub const DEFAULT_GROVER_TRANSPOSE: i32 = 12;

/// Transposition applied to walk positions in raw mode: three octaves up.
pub const DEFAULT_WALK_TRANSPOSE: i32 = 36;

pub const DEFAULT_TEMPO_BPM: f64 = 120.0;
pub const DEFAULT_NOTE_DURATION_MS: f64 = 250.0;
pub const DEFAULT_VELOCITY: u8 = 100;
pub const DEFAULT_TICKS_PER_QUARTER: u16 = 480;

/// A scale as semitone offsets from a tonic pitch, spanning two octaves of
/// input values (value `v` maps to octave `v / len`, degree `v % len`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaleMap {
    name: String,
    tonic_pitch: u8,
    degree_offsets: Vec<u8>,
}

impl ScaleMap {
    pub fn new(name: &str, tonic_pitch: u8, degree_offsets: Vec<u8>) -> Result<Self> {
        if degree_offsets.is_empty() {
            return Err(Error::InvalidScale {
                name: name.to_string(),
                reason: "no degree offsets".to_string(),
            });
        }
        let increasing = degree_offsets.windows(2).all(|w| w[0] < w[1]);
        if !increasing || *degree_offsets.last().unwrap() > 11 {
            return Err(Error::InvalidScale {
                name: name.to_string(),
                reason: "offsets must be strictly increasing within 0..=11".to_string(),
            });
        }
        if tonic_pitch > 127 {
            return Err(Error::PitchOutOfRange(i64::from(tonic_pitch)));
        }
        Ok(Self {
            name: name.to_string(),
            tonic_pitch,
            degree_offsets,
        })
    }

    /// C harmonic minor from C2 (MIDI 36): C, D, E♭, F, G, A♭, B. Two octaves
    /// of its 7 degrees cover the 14 walk sites.
    pub fn c_harmonic_minor() -> Self {
        Self {
            name: "c-harmonic-minor".to_string(),
            tonic_pitch: 36,
            degree_offsets: vec![0, 2, 3, 5, 7, 8, 11],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tonic_pitch(&self) -> u8 {
        self.tonic_pitch
    }

    pub fn degree_offsets(&self) -> &[u8] {
        &self.degree_offsets
    }

    /// Number of input values the two-octave mapping accepts.
    pub fn span(&self) -> usize {
        2 * self.degree_offsets.len()
    }

    /// Pitch classes (semitones mod 12) belonging to the scale.
    pub fn pitch_classes(&self) -> Vec<u8> {
        self.degree_offsets
            .iter()
            .map(|o| (self.tonic_pitch + o) % 12)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PitchMode {
    Raw,
    Quantized,
}

impl std::fmt::Display for PitchMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PitchMode::Raw => write!(f, "raw"),
            PitchMode::Quantized => write!(f, "quantized"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SonifyConfig {
    pub mode: PitchMode,
    pub transpose_semitones: i32,
    pub tempo_bpm: f64,
    pub note_duration_ms: f64,
    pub velocity: u8,
    pub ticks_per_quarter: u16,
}

impl Default for SonifyConfig {
    fn default() -> Self {
        Self {
            mode: PitchMode::Raw,
            transpose_semitones: DEFAULT_GROVER_TRANSPOSE,
            tempo_bpm: DEFAULT_TEMPO_BPM,
            note_duration_ms: DEFAULT_NOTE_DURATION_MS,
            velocity: DEFAULT_VELOCITY,
            ticks_per_quarter: DEFAULT_TICKS_PER_QUARTER,
        }
    }
}

impl SonifyConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tempo_bpm.is_finite() && self.tempo_bpm > 0.0) {
            return Err(Error::InvalidSonifyConfig(format!(
                "tempo must be positive, got {}",
                self.tempo_bpm
            )));
        }
        if !(self.note_duration_ms.is_finite() && self.note_duration_ms > 0.0) {
            return Err(Error::InvalidSonifyConfig(format!(
                "note duration must be positive, got {} ms",
                self.note_duration_ms
            )));
        }
        if self.velocity == 0 || self.velocity > 127 {
            return Err(Error::InvalidSonifyConfig(format!(
                "velocity must be in 1..=127, got {}",
                self.velocity
            )));
        }
        if self.ticks_per_quarter == 0 || self.ticks_per_quarter > 0x7fff {
            return Err(Error::InvalidSonifyConfig(format!(
                "ticks per quarter must be in 1..=32767, got {}",
                self.ticks_per_quarter
            )));
        }
        Ok(())
    }

    /// Fixed per-note duration in ticks: `note_duration_ms` on the tempo grid.
    pub fn duration_ticks(&self) -> Result<u32> {
        self.validate()?;
        let ms_per_quarter = 60_000.0 / self.tempo_bpm;
        let ticks = (self.note_duration_ms / ms_per_quarter * f64::from(self.ticks_per_quarter))
            .round();
        if ticks < 1.0 {
            return Err(Error::InvalidSonifyConfig(format!(
                "note duration {} ms rounds to zero ticks at {} BPM",
                self.note_duration_ms, self.tempo_bpm
            )));
        }
        if ticks > f64::from(u32::MAX) {
            return Err(Error::InvalidSonifyConfig(format!(
                "note duration {} ms overflows the tick counter",
                self.note_duration_ms
            )));
        }
        Ok(ticks as u32)
    }
}

/// A note in MIDI semantics; onset and duration are in ticks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoteEvent {
    pub pitch: u8,
    pub velocity: u8,
    pub onset: u32,
    pub duration: u32,
}

/// Direct semitone mapping: `pitch = value + transpose`.
pub fn raw_to_pitch(value: i64, transpose_semitones: i32) -> Result<u8> {
    let pitch = value + i64::from(transpose_semitones);
    if !(0..=127).contains(&pitch) {
        return Err(Error::PitchOutOfRange(pitch));
    }
    Ok(pitch as u8)
}

/// Scale quantization: value `v` maps to degree `v mod n` in octave `v / n`
/// above the tonic, for `n` scale degrees.
pub fn quantize(value: i64, scale: &ScaleMap) -> Result<u8> {
    let span = scale.span();
    if value < 0 || value >= span as i64 {
        return Err(Error::OutsideScaleSpan {
            value,
            span,
            scale: scale.name.clone(),
        });
    }
    let degrees = scale.degree_offsets.len() as i64;
    let octave = value / degrees;
    let offset = scale.degree_offsets[(value % degrees) as usize];
    let pitch = i64::from(scale.tonic_pitch) + 12 * octave + i64::from(offset);
    if pitch > 127 {
        return Err(Error::PitchOutOfRange(pitch));
    }
    Ok(pitch as u8)
}

/// Maps a value sequence to note events on the tempo grid: one note per
/// quarter, constant velocity, constant duration.
pub fn to_note_events(
    values: &[i64],
    config: &SonifyConfig,
    scale: Option<&ScaleMap>,
) -> Result<Vec<NoteEvent>> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    config.validate()?;
    let duration = config.duration_ticks()?;
    let default_scale;
    let scale = match (config.mode, scale) {
        (PitchMode::Raw, _) => None,
        (PitchMode::Quantized, Some(s)) => Some(s),
        (PitchMode::Quantized, None) => {
            default_scale = ScaleMap::c_harmonic_minor();
            Some(&default_scale)
        }
    };
    values
        .iter()
        .enumerate()
        .map(|(i, &value)| {
            let pitch = match scale {
                None => raw_to_pitch(value, config.transpose_semitones)?,
                Some(s) => quantize(value, s)?,
            };
            let onset = u32::try_from(i)
                .ok()
                .and_then(|i| i.checked_mul(u32::from(config.ticks_per_quarter)))
                .ok_or_else(|| {
                    Error::InvalidSonifyConfig("onset overflows the tick counter".to_string())
                })?;
            Ok(NoteEvent {
                pitch,
                velocity: config.velocity,
                onset,
                duration,
            })
        })
        .collect()
}

/// Signed per-pair steps on the 14-site ring, the minimal-magnitude
/// representative of `(b - a) mod 14` (ties at distance 7 resolve to +7).
/// Returns an empty list for sequences shorter than two values.
pub fn melodic_interval_profile(values: &[i64]) -> Vec<i64> {
    values
        .windows(2)
        .map(|w| {
            let d = (w[1] - w[0]).rem_euclid(RING);
            if d > RING / 2 {
                d - RING
            } else {
                d
            }
        })
        .collect()
}
