//! Monaural audio clips: loading, duration fixing, band-limited resampling
//! and SNR-controlled mixing.

mod resample;
mod wav;

pub use resample::resample;
pub use wav::{load_wav, save_wav};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Origin of a clip within the corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClipLabel {
    Snore,
    Interferer,
    Mixture,
}

/// A mono sample buffer plus the metadata the corpus protocol needs.
///
/// Samples are real amplitudes nominally in [-1, 1]; `sample_rate` is in Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioClip {
    pub samples: Vec<f64>,
    pub sample_rate: u32,
    pub subject_id: String,
    pub label: ClipLabel,
    pub source_tag: String,
}

impl AudioClip {
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Self {
        Self {
            samples,
            sample_rate,
            subject_id: String::new(),
            label: ClipLabel::Interferer,
            source_tag: String::new(),
        }
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }

    pub fn rms(&self) -> f64 {
        rms(&self.samples)
    }

    pub fn peak(&self) -> f64 {
        self.samples.iter().fold(0.0f64, |acc, &s| acc.max(s.abs()))
    }
}

/// Mixing specification: target signal-to-noise ratio in dB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixSpec {
    pub snr_db: f64,
}

pub fn rms(samples: &[f64]) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    (samples.iter().map(|s| s * s).sum::<f64>() / samples.len() as f64).sqrt()
}

/// Force a clip to exactly `round(seconds * rate)` samples: shorter clips are
/// right-padded with zeros, longer clips keep their leading portion.
pub fn fix_duration(clip: &AudioClip, seconds: f64) -> AudioClip {
    assert!(seconds > 0.0, "duration must be positive");
    let target = (seconds * clip.sample_rate as f64).round() as usize;
    let mut out = clip.clone();
    out.samples.resize(target, 0.0);
    out
}

/// Mix `signal + g * noise` where the gain `g` realizes the requested SNR:
/// `g = (rms(signal)/rms(noise)) * 10^(-snr_db/20)`, RMS taken over the whole
/// fixed-duration clips. If the mixture exceeds full scale it is rescaled by
/// `1/peak` and the factor is recorded in `source_tag`.
pub fn mix_at_snr(signal: &AudioClip, noise: &AudioClip, spec: MixSpec) -> Result<AudioClip> {
    if !spec.snr_db.is_finite() {
        return Err(Error::Argument("snr_db must be finite".into()));
    }
    if signal.sample_rate != noise.sample_rate {
        return Err(Error::Mismatch(format!(
            "sample rates differ: {} vs {}",
            signal.sample_rate, noise.sample_rate
        )));
    }
    if signal.samples.len() != noise.samples.len() {
        return Err(Error::Mismatch(format!(
            "lengths differ: {} vs {}",
            signal.samples.len(),
            noise.samples.len()
        )));
    }
    let rms_n = noise.rms();
    if rms_n == 0.0 {
        return Err(Error::DegenerateNoise);
    }
    let gain = signal.rms() / rms_n * 10f64.powf(-spec.snr_db / 20.0);
    let mut samples: Vec<f64> = signal
        .samples
        .iter()
        .zip(&noise.samples)
        .map(|(s, n)| s + gain * n)
        .collect();
    let peak = samples.iter().fold(0.0f64, |acc, &s| acc.max(s.abs()));
    let mut tag = format!("mix:snr_db={}", spec.snr_db);
    if peak > 1.0 {
        let scale = 1.0 / peak;
        for s in &mut samples {
            *s *= scale;
        }
        tag.push_str(&format!(";peak_scale={scale}"));
    }
    Ok(AudioClip {
        samples,
        sample_rate: signal.sample_rate,
        subject_id: signal.subject_id.clone(),
        label: ClipLabel::Mixture,
        source_tag: tag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clip(samples: Vec<f64>, rate: u32) -> AudioClip {
        AudioClip::new(samples, rate)
    }

    #[test]
    fn fix_duration_pads_with_trailing_zeros() {
        let c = clip(vec![0.5; 16_000], 8_000); // 2.0 s
        let fixed = fix_duration(&c, 3.5);
        assert_eq!(fixed.samples.len(), 28_000);
        assert!(fixed.samples[16_000..].iter().all(|&s| s == 0.0));
        assert!(fixed.samples[..16_000].iter().all(|&s| s == 0.5));
    }

    #[test]
    fn fix_duration_is_identity_at_exact_length() {
        let c = clip(vec![0.25; 28_000], 8_000);
        assert_eq!(fix_duration(&c, 3.5), c);
    }

    #[test]
    fn fix_duration_truncates_keeping_the_head() {
        let samples: Vec<f64> = (0..40_000).map(|i| i as f64 * 1e-6).collect();
        let c = clip(samples.clone(), 8_000); // 5.0 s
        let fixed = fix_duration(&c, 3.5);
        assert_eq!(fixed.samples.len(), 28_000);
        assert_eq!(fixed.samples[..], samples[..28_000]);
    }

    #[test]
    fn fix_duration_is_idempotent() {
        let c = clip(vec![0.1; 10_000], 8_000);
        let once = fix_duration(&c, 3.5);
        let twice = fix_duration(&once, 3.5);
        assert_eq!(once, twice);
    }

    #[test]
    fn equal_rms_at_zero_snr_uses_unit_gain() {
        let s = clip(vec![0.5; 1000], 8_000);
        let n = clip(vec![-0.5; 1000], 8_000);
        let mix = mix_at_snr(&s, &n, MixSpec { snr_db: 0.0 }).unwrap();
        // g = 1 exactly, so the mixture cancels to zero.
        assert!(mix.samples.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn twenty_db_snr_scales_noise_by_tenth() {
        let s = clip(vec![1.0; 100], 8_000);
        let n = clip(vec![1.0; 100], 8_000);
        let mix = mix_at_snr(&s, &n, MixSpec { snr_db: 20.0 }).unwrap();
        // 1 + 0.1 = 1.1 clips, so the whole mixture is rescaled by 1/1.1.
        let expect = 1.1 * (1.0 / 1.1);
        for &x in &mix.samples {
            assert!((x - expect).abs() < 1e-12);
        }
        assert!(mix.source_tag.contains("peak_scale="));
    }

    #[test]
    fn zero_rms_noise_is_rejected() {
        let s = clip(vec![0.5; 100], 8_000);
        let n = clip(vec![0.0; 100], 8_000);
        assert!(matches!(
            mix_at_snr(&s, &n, MixSpec { snr_db: 0.0 }),
            Err(Error::DegenerateNoise)
        ));
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        let s = clip(vec![0.5; 100], 8_000);
        let shorter = clip(vec![0.5; 99], 8_000);
        let other_rate = clip(vec![0.5; 100], 16_000);
        assert!(matches!(
            mix_at_snr(&s, &shorter, MixSpec { snr_db: 0.0 }),
            Err(Error::Mismatch(_))
        ));
        assert!(matches!(
            mix_at_snr(&s, &other_rate, MixSpec { snr_db: 0.0 }),
            Err(Error::Mismatch(_))
        ));
    }

    #[test]
    fn realized_snr_matches_request_to_nano_db() {
        use crate::rng::Xoshiro256StarStar;
        let mut rng = Xoshiro256StarStar::seed_from_u64(11);
        for &snr in &[-5.0, 0.0, 5.0, 12.5, -17.25] {
            let s = clip((0..4096).map(|_| rng.range_f64(-0.3, 0.3)).collect(), 8_000);
            let n = clip((0..4096).map(|_| rng.range_f64(-0.2, 0.2)).collect(), 8_000);
            let gain = s.rms() / n.rms() * 10f64.powf(-snr / 20.0);
            let scaled: Vec<f64> = n.samples.iter().map(|x| x * gain).collect();
            let realized = 20.0 * (s.rms() / rms(&scaled)).log10();
            assert!((realized - snr).abs() < 1e-9, "snr {snr} -> {realized}");
        }
    }
}
