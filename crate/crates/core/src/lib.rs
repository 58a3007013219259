//! Sarcasm detection with convolutional feature extractors.
//!
//! Four families of sentence CNNs (sentiment, emotion, personality and a
//! sarcasm baseline) are trained independently; the activations of their
//! fully-connected layers are fused and classified with an SVM. The crate
//! also carries the evaluation harness: stratified cross-validation,
//! macro-F1, cross-corpus runs, Spearman correlation and PCA export.

pub mod error;
pub mod experiments;
pub mod manifest;
pub mod model_zoo;
pub mod neural;
pub mod svm;
pub mod synth;
pub mod text;

pub use error::{Error, ErrorKind, Result};
