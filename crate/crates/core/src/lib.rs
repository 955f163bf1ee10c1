//! Harmonic/percussive separation feature pipeline for snore detection.
//!
//! The crate covers the full experimental chain: monaural audio I/O and SNR
//! mixing, three time-frequency front-ends (STFT, Mel, CQT), median-filter
//! HPSS with Wiener soft masking, reproducible synthetic corpora with
//! subject-disjoint splits, a compact from-scratch CNN trained with Adam and
//! early stopping, and the evaluation statistics (confusion metrics, ROC/AUC,
//! Wilcoxon signed-rank) used to compare input features.

pub mod audio;
pub mod corpus;
pub mod error;
pub mod evalstat;
pub mod experiment;
pub mod export;
pub mod hpss;
pub mod learner;
pub mod render;
pub mod rng;
pub mod tfr;

pub use error::{Error, Result};
