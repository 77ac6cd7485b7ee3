//! Outer iteration loop shared by the ISL and WISL solvers.

use std::time::Instant;

use crate::accel::{squarem_step, FixedPointMap};
use crate::error::Result;
use crate::waveform::{stop_check, IterationTrace, StopRule, WaveformSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Converged,
    MaxIterations,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub waveforms: WaveformSet,
    pub trace: IterationTrace,
    pub status: Status,
    /// Outer iterations performed; an accelerated iteration is one SQUAREM cycle.
    pub iterations: usize,
    pub elapsed_ns: u128,
}

impl Solution {
    pub fn final_objective(&self) -> f64 {
        self.trace.last().map(|r| r.objective).unwrap_or(f64::NAN)
    }

    pub fn converged(&self) -> bool {
        self.status == Status::Converged
    }
}

/// Iterates `map` (or its SQUAREM wrapper) from `start` until `rule` fires or
/// `max_iters` outer iterations have run. Timing starts after `start` exists.
pub fn iterate<F: FixedPointMap + ?Sized>(
    map: &F,
    start: WaveformSet,
    accelerate: bool,
    rule: StopRule,
    max_iters: usize,
) -> Result<Solution> {
    let clock = Instant::now();
    let mut trace = IterationTrace::new();
    let first = map.objective(&start);
    trace.push(0, first, clock.elapsed().as_nanos());
    if first == 0.0 {
        return Ok(Solution {
            waveforms: start,
            trace,
            status: Status::Converged,
            iterations: 0,
            elapsed_ns: clock.elapsed().as_nanos(),
        });
    }

    let mut current = start;
    for k in 1..=max_iters {
        let (next, objective) = if accelerate {
            let out = squarem_step(map, &current);
            (out.waveforms, out.objective)
        } else {
            let next = map.step(&current);
            let objective = map.objective(&next);
            (next, objective)
        };
        trace.push(k, objective, clock.elapsed().as_nanos());
        let done = stop_check(rule, &trace, &next, &current)?;
        current = next;
        if done {
            return Ok(Solution {
                waveforms: current,
                trace,
                status: Status::Converged,
                iterations: k,
                elapsed_ns: clock.elapsed().as_nanos(),
            });
        }
    }
    Ok(Solution {
        waveforms: current,
        trace,
        status: Status::MaxIterations,
        iterations: max_iters,
        elapsed_ns: clock.elapsed().as_nanos(),
    })
}
