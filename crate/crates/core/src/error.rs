//! Crate-wide error type.

use crate::tfr::SpectrogramKind;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed WAV file: {0}")]
    WavParse(String),

    #[error("unsupported WAV encoding: {0}")]
    UnsupportedFormat(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("input too short: got {got} samples, need at least {need}")]
    TooShort { need: usize, got: usize },

    #[error("expected a {expected:?} spectrogram, got {got:?}")]
    KindMismatch {
        expected: SpectrogramKind,
        got: SpectrogramKind,
    },

    #[error("noise has zero RMS; SNR mixing is undefined")]
    DegenerateNoise,

    #[error("mismatched inputs: {0}")]
    Mismatch(String),

    #[error("harmonic stack aliases: {f0} Hz x {harmonics} harmonics reaches the Nyquist of {sample_rate} Hz")]
    Aliasing {
        f0: f64,
        harmonics: usize,
        sample_rate: u32,
    },

    #[error("interferer pool exhausted: need {need} distinct interferers, pool holds {have}")]
    PoolExhausted { need: usize, have: usize },

    #[error("degenerate sample: all paired differences are zero")]
    DegenerateSample,

    #[error("subject leakage between test set and training folds: {0}")]
    SubjectLeakage(String),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
