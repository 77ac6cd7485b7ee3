//! Design of unimodular (constant-modulus) waveform sets with low integrated
//! sidelobe level, plain or lag-weighted, by majorization-minimization.
//!
//! Each solver iteration costs a handful of length-2P FFTs per waveform
//! (per waveform pair for the weighted objective). A dense reference
//! implementation of every intermediate quantity lives in [`oracle`] for
//! verification on small sizes.

pub mod accel;
pub mod error;
pub mod isl;
pub mod metrics;
pub mod oracle;
pub mod par;
pub mod solve;
pub mod spectra;
pub mod waveform;
pub mod wisl;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use par::Exec;
pub use solve::{Solution, Status};
pub use waveform::{DesignConfig, IterationTrace, StopRule, WaveformSet, WeightProfile};

/// Runs the solver selected by `cfg.weights`.
pub fn design(cfg: &DesignConfig) -> Result<Solution> {
    match cfg.weights {
        Some(_) => wisl::solve_wisl(cfg),
        None => isl::solve_isl(cfg),
    }
}
