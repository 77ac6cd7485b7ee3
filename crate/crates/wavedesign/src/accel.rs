//! SQUAREM extrapolation around a monotone fixed-point map, with projection
//! back to unit modulus and an objective safeguard.

use num_complex::Complex64;

use crate::waveform::{phase_project, WaveformSet};

/// Step-length rule recorded in run metadata.
pub const SQUAREM_VARIANT: &str = "SqS3 norm ratio: alpha = min(-|r|/|v|, -1), backtrack (alpha-1)/2 up to 20";

/// Backtracking halvings before falling back to the plain double step.
pub const MAX_BACKTRACKS: usize = 20;

/// Below this ‖v‖ the extrapolation is skipped.
pub const MIN_CURVATURE_NORM: f64 = 1e-300;

/// A descent map on unit-modulus sets together with its exact objective.
pub trait FixedPointMap {
    fn step(&self, y: &WaveformSet) -> WaveformSet;
    fn objective(&self, y: &WaveformSet) -> f64;
}

#[derive(Clone, Debug)]
pub struct SquaremOutcome {
    pub waveforms: WaveformSet,
    pub objective: f64,
    /// Step length actually used; −1 is the plain double step.
    pub alpha: f64,
    pub backtracks: usize,
}

pub fn squarem_step<F: FixedPointMap + ?Sized>(map: &F, y0: &WaveformSet) -> SquaremOutcome {
    let y1 = map.step(y0);
    let y2 = map.step(&y1);
    let r: Vec<Complex64> = y1.as_slice().iter().zip(y0.as_slice()).map(|(a, b)| a - b).collect();
    let v: Vec<Complex64> = y2
        .as_slice()
        .iter()
        .zip(y1.as_slice())
        .zip(&r)
        .map(|((a, b), r)| a - b - r)
        .collect();
    let norm_v = norm(&v);
    if norm_v < MIN_CURVATURE_NORM {
        let objective = map.objective(&y2);
        return SquaremOutcome {
            waveforms: y2,
            objective,
            alpha: -1.0,
            backtracks: 0,
        };
    }

    let target = map.objective(&y2);
    let mut alpha = (-norm(&r) / norm_v).min(-1.0);
    let mut backtracks = 0;
    loop {
        if backtracks == MAX_BACKTRACKS {
            alpha = -1.0;
        }
        let candidate = if alpha == -1.0 {
            y2.clone()
        } else {
            let z: Vec<Complex64> = y0
                .as_slice()
                .iter()
                .zip(&r)
                .zip(&v)
                .map(|((y, r), v)| y - r * (2.0 * alpha) + v * (alpha * alpha))
                .collect();
            phase_project(&z, &y2).expect("same shape")
        };
        let next = map.step(&candidate);
        let objective = map.objective(&next);
        if objective <= target || alpha == -1.0 {
            return SquaremOutcome {
                waveforms: next,
                objective,
                alpha,
                backtracks,
            };
        }
        alpha = (alpha - 1.0) / 2.0;
        backtracks += 1;
    }
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
