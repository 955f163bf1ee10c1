//! Minimal RIFF/WAVE reader and writer.
//!
//! Read: PCM 16-bit or IEEE float 32-bit, mono or stereo (stereo is averaged
//! to mono). Write: mono PCM 16-bit. Unknown chunks are skipped; anything
//! else in the container is a parse error.

use crate::audio::{AudioClip, ClipLabel};
use crate::error::{Error, Result};
use std::fs;
use std::io::Write;
use std::path::Path;

const FORMAT_PCM: u16 = 1;
const FORMAT_IEEE_FLOAT: u16 = 3;

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.bytes.len() {
            return Err(Error::WavParse("unexpected end of file".into()));
        }
        let out = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    fn u16(&mut self) -> Result<u16> {
        let b = self.take(2)?;
        Ok(u16::from_le_bytes([b[0], b[1]]))
    }

    fn u32(&mut self) -> Result<u32> {
        let b = self.take(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }
}

pub fn load_wav(path: impl AsRef<Path>) -> Result<AudioClip> {
    let bytes = fs::read(&path)?;
    let mut r = Reader {
        bytes: &bytes,
        pos: 0,
    };

    if r.take(4)? != b"RIFF" {
        return Err(Error::WavParse("missing RIFF magic".into()));
    }
    let _riff_size = r.u32()?;
    if r.take(4)? != b"WAVE" {
        return Err(Error::WavParse("missing WAVE magic".into()));
    }

    let mut fmt: Option<(u16, u16, u32, u16)> = None; // format, channels, rate, bits
    let mut data: Option<&[u8]> = None;
    while r.pos + 8 <= bytes.len() {
        let id: [u8; 4] = r.take(4)?.try_into().unwrap();
        let size = r.u32()? as usize;
        match &id {
            b"fmt " => {
                if size < 16 {
                    return Err(Error::WavParse("fmt chunk too small".into()));
                }
                let audio_format = r.u16()?;
                let channels = r.u16()?;
                let sample_rate = r.u32()?;
                let _byte_rate = r.u32()?;
                let _block_align = r.u16()?;
                let bits = r.u16()?;
                r.take(size - 16)?;
                fmt = Some((audio_format, channels, sample_rate, bits));
            }
            b"data" => {
                data = Some(r.take(size)?);
            }
            _ => {
                r.take(size)?;
            }
        }
        // Chunks are word-aligned.
        if size % 2 == 1 && r.pos < bytes.len() {
            r.take(1)?;
        }
    }

    let (audio_format, channels, sample_rate, bits) =
        fmt.ok_or_else(|| Error::WavParse("missing fmt chunk".into()))?;
    let data = data.ok_or_else(|| Error::WavParse("missing data chunk".into()))?;
    if sample_rate == 0 {
        return Err(Error::WavParse("zero sample rate".into()));
    }
    if channels != 1 && channels != 2 {
        return Err(Error::UnsupportedFormat(format!("{channels} channels")));
    }

    let per_channel = match (audio_format, bits) {
        (FORMAT_PCM, 16) => {
            let n = data.len() / 2;
            let mut mono = Vec::with_capacity(n / channels as usize);
            let ch = channels as usize;
            let frames = n / ch;
            for f in 0..frames {
                let mut acc = 0.0f64;
                for c in 0..ch {
                    let o = (f * ch + c) * 2;
                    let v = i16::from_le_bytes([data[o], data[o + 1]]);
                    acc += v as f64 / 32768.0;
                }
                mono.push(acc / ch as f64);
            }
            mono
        }
        (FORMAT_IEEE_FLOAT, 32) => {
            let n = data.len() / 4;
            let ch = channels as usize;
            let frames = n / ch;
            let mut mono = Vec::with_capacity(frames);
            for f in 0..frames {
                let mut acc = 0.0f64;
                for c in 0..ch {
                    let o = (f * ch + c) * 4;
                    let v = f32::from_le_bytes([data[o], data[o + 1], data[o + 2], data[o + 3]]);
                    acc += v as f64;
                }
                mono.push(acc / ch as f64);
            }
            mono
        }
        (fmt_code, bits) => {
            return Err(Error::UnsupportedFormat(format!(
                "format code {fmt_code}, {bits} bits"
            )));
        }
    };
    if per_channel.is_empty() {
        return Err(Error::WavParse("empty data chunk".into()));
    }

    Ok(AudioClip {
        samples: per_channel,
        sample_rate,
        subject_id: String::new(),
        label: ClipLabel::Interferer,
        source_tag: path.as_ref().display().to_string(),
    })
}

/// Write a clip as mono 16-bit PCM. Samples are scaled by 32768, rounded and
/// clamped, so a clip loaded from 16-bit PCM round-trips bit-exactly.
pub fn save_wav(clip: &AudioClip, path: impl AsRef<Path>) -> Result<()> {
    let n = clip.samples.len();
    let data_size = (n * 2) as u32;
    let mut out = Vec::with_capacity(44 + n * 2);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_size).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&FORMAT_PCM.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes()); // channels
    out.extend_from_slice(&clip.sample_rate.to_le_bytes());
    out.extend_from_slice(&(clip.sample_rate * 2).to_le_bytes()); // byte rate
    out.extend_from_slice(&2u16.to_le_bytes()); // block align
    out.extend_from_slice(&16u16.to_le_bytes()); // bits per sample
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_size.to_le_bytes());
    for &s in &clip.samples {
        let v = (s * 32768.0).round().clamp(-32768.0, 32767.0) as i16;
        out.extend_from_slice(&v.to_le_bytes());
    }
    let mut file = fs::File::create(path)?;
    file.write_all(&out)?;
    Ok(())
}
