//! Minimal SMF reader used only by tests to round-trip the writer's output.
//! Understands exactly what the writer emits: format 0, one track, no running
//! status, note-on/note-off, and meta events.

#![allow(dead_code)]

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParsedEventKind {
    NoteOn { channel: u8, pitch: u8, velocity: u8 },
    NoteOff { channel: u8, pitch: u8 },
    Tempo(u32),
    EndOfTrack,
    OtherMeta(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParsedEvent {
    pub tick: u64,
    pub kind: ParsedEventKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParsedSmf {
    pub format: u16,
    pub track_count: u16,
    pub ticks_per_quarter: u16,
    pub events: Vec<ParsedEvent>,
}

impl ParsedSmf {
    pub fn tempo_microseconds(&self) -> Option<u32> {
        self.events.iter().find_map(|e| match e.kind {
            ParsedEventKind::Tempo(us) => Some(us),
            _ => None,
        })
    }

    /// Pairs each note-on with the next note-off of the same pitch and
    /// channel, returning (onset, pitch, velocity, duration).
    pub fn notes(&self) -> Result<Vec<(u64, u8, u8, u64)>, String> {
        let mut notes = Vec::new();
        let mut open: Vec<(u64, u8, u8, u8, usize)> = Vec::new();
        for event in &self.events {
            match event.kind {
                ParsedEventKind::NoteOn { channel, pitch, velocity } => {
                    open.push((event.tick, channel, pitch, velocity, notes.len()));
                    notes.push((event.tick, pitch, velocity, 0));
                }
                ParsedEventKind::NoteOff { channel, pitch } => {
                    let slot = open
                        .iter()
                        .position(|&(_, c, p, _, _)| c == channel && p == pitch)
                        .ok_or_else(|| format!("note-off without note-on for pitch {pitch}"))?;
                    let (onset, _, _, _, index) = open.remove(slot);
                    notes[index].3 = event.tick - onset;
                }
                _ => {}
            }
        }
        if !open.is_empty() {
            return Err(format!("{} unterminated notes", open.len()));
        }
        Ok(notes)
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], String> {
        if self.pos + n > self.bytes.len() {
            return Err(format!("truncated file at offset {}", self.pos));
        }
        let slice = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn u8(&mut self) -> Result<u8, String> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, String> {
        let b = self.take(2)?;
        Ok(u16::from_be_bytes([b[0], b[1]]))
    }

    fn u32(&mut self) -> Result<u32, String> {
        let b = self.take(4)?;
        Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn vlq(&mut self) -> Result<u64, String> {
        let mut value = 0u64;
        for _ in 0..4 {
            let byte = self.u8()?;
            value = (value << 7) | u64::from(byte & 0x7f);
            if byte & 0x80 == 0 {
                return Ok(value);
            }
        }
        Err("variable-length quantity longer than 4 bytes".to_string())
    }
}

pub fn parse_smf(bytes: &[u8]) -> Result<ParsedSmf, String> {
    let mut cursor = Cursor { bytes, pos: 0 };
    if cursor.take(4)? != b"MThd" {
        return Err("missing MThd header".to_string());
    }
    if cursor.u32()? != 6 {
        return Err("unexpected header length".to_string());
    }
    let format = cursor.u16()?;
    let track_count = cursor.u16()?;
    let ticks_per_quarter = cursor.u16()?;
    if ticks_per_quarter & 0x8000 != 0 {
        return Err("SMPTE time division is not supported".to_string());
    }

    if cursor.take(4)? != b"MTrk" {
        return Err("missing MTrk chunk".to_string());
    }
    let track_len = cursor.u32()? as usize;
    let track_end = cursor.pos + track_len;
    if track_end > bytes.len() {
        return Err("track length exceeds file".to_string());
    }

    let mut events = Vec::new();
    let mut tick = 0u64;
    while cursor.pos < track_end {
        tick += cursor.vlq()?;
        let status = cursor.u8()?;
        let kind = match status {
            0xff => {
                let meta_type = cursor.u8()?;
                let len = cursor.vlq()? as usize;
                let data = cursor.take(len)?;
                match meta_type {
                    0x51 => {
                        if data.len() != 3 {
                            return Err("bad tempo payload".to_string());
                        }
                        ParsedEventKind::Tempo(u32::from_be_bytes([0, data[0], data[1], data[2]]))
                    }
                    0x2f => ParsedEventKind::EndOfTrack,
                    other => ParsedEventKind::OtherMeta(other),
                }
            }
            s if s & 0xf0 == 0x90 => {
                let pitch = cursor.u8()?;
                let velocity = cursor.u8()?;
                if velocity == 0 {
                    ParsedEventKind::NoteOff { channel: s & 0x0f, pitch }
                } else {
                    ParsedEventKind::NoteOn { channel: s & 0x0f, pitch, velocity }
                }
            }
            s if s & 0xf0 == 0x80 => {
                let pitch = cursor.u8()?;
                let _velocity = cursor.u8()?;
                ParsedEventKind::NoteOff { channel: s & 0x0f, pitch }
            }
            other => return Err(format!("unsupported status byte 0x{other:02x}")),
        };
        let end = kind == ParsedEventKind::EndOfTrack;
        events.push(ParsedEvent { tick, kind });
        if end {
            break;
        }
    }
    if events.last().map(|e| e.kind) != Some(ParsedEventKind::EndOfTrack) {
        return Err("track does not end with end-of-track".to_string());
    }
    Ok(ParsedSmf {
        format,
        track_count,
        ticks_per_quarter,
        events,
    })
}
