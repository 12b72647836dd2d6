//! Shot noise processes with exponential and general response functions,
//! the Laplace-transform calculus relating selfdecomposable laws to their
//! background driving Lévy processes, and regular-variation diagnostics that
//! separate shot-noise laws from other positive laws.
//!
//! The crate is `no_std` and only needs `alloc`. Randomness is always passed
//! in explicitly as an [`rand::Rng`]; [`rng::stream`] builds reproducible
//! per-worker streams from a single root seed.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod diagnostics;
pub mod engine;
mod error;
pub mod inversion;
pub mod law;
pub mod quad;
pub mod response;
pub mod rng;
pub mod special;
mod stable;
pub mod transform;

pub use diagnostics::{
    classify, ks_distance, ks_two_sample, linnik_tail_ratio, rv_index_at_zero, rv_index_from_lt,
    rv_index_from_samples, DiagnosisInput, Evidence,
    DiagnosisReport, IndexEstimate, Method, Verdict,
};
pub use engine::{
    existence_check, levy_measure_tail, sample_stationary, shot_noise_transform, simulate_path,
    ConvergenceStatus, ConvergenceVerdict, SamplePath, ShotNoiseModel,
};
pub use error::{Error, Result};
pub use law::{LawKind, NamedLaw};
pub use response::ResponseFunction;
pub use transform::LaplaceTransform;
