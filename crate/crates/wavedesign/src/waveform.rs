//! Domain types shared by both solvers: the waveform matrix, lag weights,
//! run configuration, iteration traces, seeded starts, the unit-modulus
//! projection and the stopping rules.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{shape, Error, Result};
use crate::par::Exec;

/// Name of the generator behind [`random_unimodular`], recorded in run metadata.
pub const RNG_ALGORITHM: &str = "ChaCha20 (rand_chacha, seed_from_u64)";

/// Magnitudes below this are treated as zero by [`phase_project`].
pub const PHASE_TIE_MAGNITUDE: f64 = 1e-300;

/// P×M matrix of unit-modulus entries, stored column-major so that the flat
/// slice is the stacked vector of all waveforms.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveformSet {
    num_codes: usize,
    code_length: usize,
    data: Vec<Complex64>,
}

impl WaveformSet {
    /// Builds a set from column-major data, rejecting entries whose magnitude
    /// differs from one by more than `tol`.
    pub fn from_column_major(
        code_length: usize,
        num_codes: usize,
        data: Vec<Complex64>,
        tol: f64,
    ) -> Result<Self> {
        if code_length == 0 || num_codes == 0 {
            return Err(Error::Config("M and P must be positive".into()));
        }
        if data.len() != code_length * num_codes {
            return Err(shape(
                format!("{} entries", code_length * num_codes),
                format!("{} entries", data.len()),
            ));
        }
        for (index, z) in data.iter().enumerate() {
            let magnitude = z.norm();
            if (magnitude - 1.0).abs().is_nan() || (magnitude - 1.0).abs() > tol {
                return Err(Error::NotUnimodular { index, magnitude });
            }
        }
        Ok(Self {
            num_codes,
            code_length,
            data,
        })
    }

    /// Builds a set from per-entry phases in radians (column-major).
    pub fn from_phases(code_length: usize, num_codes: usize, phases: &[f64]) -> Result<Self> {
        let data = phases.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        Self::from_column_major(code_length, num_codes, data, 1e-12)
    }

    pub fn num_codes(&self) -> usize {
        self.num_codes
    }

    pub fn code_length(&self) -> usize {
        self.code_length
    }

    /// Total number of entries, M·P.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.data
    }

    /// Waveform `m` (0-based).
    pub fn column(&self, m: usize) -> &[Complex64] {
        let p = self.code_length;
        &self.data[m * p..(m + 1) * p]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks_exact(self.code_length)
    }

    /// Entry at sample `p`, waveform `m` (both 0-based).
    pub fn get(&self, p: usize, m: usize) -> Complex64 {
        self.data[m * self.code_length + p]
    }

    /// Frobenius norm of the difference with another set of the same shape.
    pub fn distance(&self, other: &WaveformSet) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn same_shape(&self, other: &WaveformSet) -> bool {
        self.num_codes == other.num_codes && self.code_length == other.code_length
    }
}

/// Draws M waveforms of length P with i.i.d. phases uniform on (−π, π].
pub fn random_unimodular(num_codes: usize, code_length: usize, seed: u64) -> WaveformSet {
    assert!(num_codes >= 1 && code_length >= 1, "M and P must be positive");
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let data = (0..num_codes * code_length)
        .map(|_| {
            let u: f64 = rng.gen();
            Complex64::from_polar(1.0, PI - 2.0 * PI * u)
        })
        .collect();
    WaveformSet {
        num_codes,
        code_length,
        data,
    }
}

/// Entrywise `z / |z|`; entries with `|z| < 1e-300` keep the phase of `previous`.
pub fn phase_project(z: &[Complex64], previous: &WaveformSet) -> Result<WaveformSet> {
    if z.len() != previous.len() {
        return Err(shape(
            format!("{} entries", previous.len()),
            format!("{} entries", z.len()),
        ));
    }
    let data = z
        .iter()
        .zip(&previous.data)
        .map(|(&v, &old)| unit(v).unwrap_or(old))
        .collect();
    Ok(WaveformSet {
        num_codes: previous.num_codes,
        code_length: previous.code_length,
        data,
    })
}

pub(crate) fn unit(z: Complex64) -> Option<Complex64> {
    let r = z.norm();
    if r.is_finite() && r >= PHASE_TIE_MAGNITUDE {
        Some(z / r)
    } else {
        None
    }
}

/// Symmetric lag weights γ_0 … γ_{P−1}; negative lags mirror positive ones.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightProfile {
    gamma: Vec<f64>,
    omega: Vec<usize>,
}

impl WeightProfile {
    pub fn new(gamma: Vec<f64>) -> Result<Self> {
        if gamma.is_empty() {
            return Err(Error::InvalidWeights("profile is empty".into()));
        }
        if let Some((p, g)) = gamma
            .iter()
            .enumerate()
            .find(|(_, g)| !g.is_finite() || **g < 0.0)
        {
            return Err(Error::InvalidWeights(format!(
                "weight at lag {p} is {g}; weights must be finite and nonnegative"
            )));
        }
        let omega = std::iter::once(0)
            .chain((1..gamma.len()).filter(|&p| gamma[p] != 0.0))
            .collect();
        Ok(Self { gamma, omega })
    }

    /// All weights one: WISL reduces to ISL.
    pub fn ones(code_length: usize) -> Self {
        Self::new(vec![1.0; code_length]).expect("valid profile")
    }

    /// γ_p = 1 for |p| ≤ band, zero elsewhere. Requires band < P.
    pub fn band(code_length: usize, band: usize) -> Result<Self> {
        if band >= code_length {
            return Err(Error::InvalidWeights(format!(
                "band {band} must be smaller than the code length {code_length}"
            )));
        }
        Self::new((0..code_length).map(|p| if p <= band { 1.0 } else { 0.0 }).collect())
    }

    pub fn code_length(&self) -> usize {
        self.gamma.len()
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    /// Lag 0 plus every positive lag with a nonzero weight, ascending.
    pub fn omega(&self) -> &[usize] {
        &self.omega
    }

    pub fn is_ones(&self) -> bool {
        self.gamma.iter().all(|&g| g == 1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StopRule {
    /// |obj_k − obj_{k−1}| / obj_0 ≤ tol on the linear objective.
    RelativeObjective(f64),
    /// ‖Y_k − Y_{k−1}‖_F ≤ tol.
    FrobeniusDiff(f64),
}

impl StopRule {
    pub const DEFAULT_RELATIVE_TOL: f64 = 1e-8;
    pub const DEFAULT_FROBENIUS_TOL: f64 = 1e-3;

    pub fn tol(self) -> f64 {
        match self {
            StopRule::RelativeObjective(t) | StopRule::FrobeniusDiff(t) => t,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StopRule::RelativeObjective(_) => "rel-obj",
            StopRule::FrobeniusDiff(_) => "frob",
        }
    }
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule::RelativeObjective(Self::DEFAULT_RELATIVE_TOL)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DesignConfig {
    pub num_codes: usize,
    pub code_length: usize,
    /// Absent means plain ISL.
    pub weights: Option<WeightProfile>,
    pub seed: u64,
    pub accelerate: bool,
    pub stop_rule: StopRule,
    pub max_iters: usize,
    pub exec: Exec,
}

impl DesignConfig {
    pub fn isl(num_codes: usize, code_length: usize, seed: u64) -> Self {
        Self {
            num_codes,
            code_length,
            weights: None,
            seed,
            accelerate: true,
            stop_rule: StopRule::default(),
            max_iters: 100_000,
            exec: Exec::Sequential,
        }
    }

    pub fn wisl(num_codes: usize, weights: WeightProfile, seed: u64) -> Self {
        Self {
            code_length: weights.code_length(),
            weights: Some(weights),
            ..Self::isl(num_codes, 1, seed)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_codes == 0 || self.code_length == 0 {
            return Err(Error::Config("M and P must be positive".into()));
        }
        let tol = self.stop_rule.tol();
        if tol.is_nan() || tol <= 0.0 || !tol.is_finite() {
            return Err(Error::Config(format!("tolerance must be positive, got {tol}")));
        }
        if self.max_iters == 0 {
            return Err(Error::Config("max_iters must be at least 1".into()));
        }
        if let Some(w) = &self.weights {
            if w.code_length() != self.code_length {
                return Err(shape(
                    format!("{} weights", self.code_length),
                    format!("{} weights", w.code_length()),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceRecord {
    pub iter: usize,
    pub objective: f64,
    pub objective_db: f64,
    pub elapsed_ns: u128,
}

/// Per-iteration objective history; record 0 is the starting point.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IterationTrace {
    records: Vec<TraceRecord>,
}

impl IterationTrace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a record. Iteration indices must strictly increase.
    pub fn push(&mut self, iter: usize, objective: f64, elapsed_ns: u128) {
        if let Some(last) = self.records.last() {
            assert!(iter > last.iter, "trace iterations must increase");
        }
        self.records.push(TraceRecord {
            iter,
            objective,
            objective_db: db10(objective),
            elapsed_ns,
        });
    }

    pub fn records(&self) -> &[TraceRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn initial(&self) -> Option<f64> {
        self.records.first().map(|r| r.objective)
    }

    pub fn last(&self) -> Option<&TraceRecord> {
        self.records.last()
    }

    pub fn objectives(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.objective)
    }

    /// Largest increase between consecutive records, relative to the first.
    pub fn worst_increase(&self) -> f64 {
        let Some(first) = self.initial() else { return 0.0 };
        self.records
            .windows(2)
            .map(|w| (w[1].objective - w[0].objective) / first)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// 10·log10 of a power quantity.
pub fn db10(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Evaluates a stopping rule on the last two trace records and iterates.
pub fn stop_check(
    rule: StopRule,
    trace: &IterationTrace,
    now: &WaveformSet,
    prev: &WaveformSet,
) -> Result<bool> {
    match rule {
        StopRule::RelativeObjective(tol) => {
            let r = trace.records();
            if r.len() < 2 {
                return Err(Error::Config(
                    "relative-objective rule needs two recorded iterations".into(),
                ));
            }
            let first = r[0].objective;
            if first == 0.0 {
                return Err(Error::ZeroInitialObjective);
            }
            let diff = (r[r.len() - 1].objective - r[r.len() - 2].objective).abs();
            Ok(diff / first <= tol)
        }
        StopRule::FrobeniusDiff(tol) => {
            if !now.same_shape(prev) {
                return Err(shape(
                    format!("{}x{}", prev.code_length, prev.num_codes),
                    format!("{}x{}", now.code_length, now.num_codes),
                ));
            }
            Ok(now.distance(prev) <= tol)
        }
    }
}
