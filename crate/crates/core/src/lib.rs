//! Semi-supervised training toolkit: a FixMatch-style trainer with
//! variational confidence calibration (VCC) for pseudo-label gating and
//! influence-function core-set selection (INFUSE) for unlabeled-data pruning.
//!
//! The numeric core is a minimal dense-tensor reverse-mode autodiff engine
//! ([`tensor`]); models are small MLPs ([`nn`]); everything runs on synthetic
//! low-dimensional datasets ([`data`]). All randomness flows from a single
//! root seed through named sub-streams ([`rng`]), so runs are reproducible
//! bit-for-bit and checkpoints can resume mid-run without divergence.

pub mod config;
pub mod consistency;
pub mod data;
pub mod infuse;
pub mod linalg;
pub mod metrics;
pub mod nn;
pub mod report;
pub mod rng;
pub mod tensor;
pub mod trainer;
pub mod vcc;

pub use config::ExperimentConfig;
pub use tensor::{Tape, Tensor, TensorError, Var};
pub use trainer::Trainer;
