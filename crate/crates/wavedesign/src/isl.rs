//! ISL minimization: each iteration forms the grid power spectrum μ, builds a
//! Hermitian Toeplitz matrix from it and projects T·Y back to unit modulus.

use num_complex::Complex64;

use crate::accel::FixedPointMap;
use crate::error::{Error, Result};
use crate::metrics::isl_with;
use crate::par::Exec;
use crate::solve::{iterate, Solution};
use crate::spectra::{ColumnSpectra, SpectrumGrid, ToeplitzOperator};
use crate::waveform::{phase_project, random_unimodular, DesignConfig, WaveformSet};

/// Per-iteration quantities of the ISL update.
#[derive(Clone, Debug)]
pub struct IslState {
    pub waveforms: WaveformSet,
    /// μ_p = Σ_m |a_p^H y_m|² for p = 1..2P.
    pub mu: Vec<f64>,
    pub mu_max: f64,
    /// First column of T.
    pub v: Vec<Complex64>,
}

impl IslState {
    pub fn new(grid: &SpectrumGrid, y: &WaveformSet, exec: Exec) -> Self {
        let spectra = ColumnSpectra::new(grid, y.as_slice(), exec).expect("grid matches waveform");
        Self::from_spectra(grid, y, &spectra)
    }

    fn from_spectra(grid: &SpectrumGrid, y: &WaveformSet, spectra: &ColumnSpectra) -> Self {
        let mu = mu_from_spectra(grid, spectra);
        let mu_max = mu.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let v = compute_v(grid, &mu, y.num_codes()).expect("grid-sized spectrum");
        Self {
            waveforms: y.clone(),
            mu,
            mu_max,
            v,
        }
    }

    pub fn toeplitz(&self) -> ToeplitzOperator {
        ToeplitzOperator::hermitian(self.v.clone())
    }
}

fn mu_from_spectra(grid: &SpectrumGrid, spectra: &ColumnSpectra) -> Vec<f64> {
    let n = grid.size();
    let mut mu = vec![0.0; n];
    for m in 0..spectra.num_columns() {
        let bins = spectra.column(m);
        for (i, acc) in mu.iter_mut().enumerate() {
            *acc += bins[(i + 1) % n].norm_sqr();
        }
    }
    mu
}

/// μ_p = Σ_m |a_p^H y_m|² on the 2P grid.
pub fn compute_mu(grid: &SpectrumGrid, y: &WaveformSet, exec: Exec) -> Vec<f64> {
    let spectra = ColumnSpectra::new(grid, y.as_slice(), exec).expect("grid matches waveform");
    mu_from_spectra(grid, &spectra)
}

/// v = −Ã(μ − ½(μ_max + M²P²)·1).
pub fn compute_v(grid: &SpectrumGrid, mu: &[f64], num_codes: usize) -> Result<Vec<Complex64>> {
    let p = grid.code_length() as f64;
    let m = num_codes as f64;
    let mu_max = mu.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let shift = 0.5 * (mu_max + m * m * p * p);
    let s: Vec<Complex64> = mu.iter().map(|&x| Complex64::new(shift - x, 0.0)).collect();
    grid.adjoint_grid(&s)
}

/// One ISL update: phase of T·Y.
pub fn isl_step(grid: &SpectrumGrid, y: &WaveformSet, exec: Exec) -> WaveformSet {
    let spectra = ColumnSpectra::new(grid, y.as_slice(), exec).expect("grid matches waveform");
    let state = IslState::from_spectra(grid, y, &spectra);
    let ty = state
        .toeplitz()
        .apply_spectra(grid, &spectra, exec)
        .expect("grid matches waveform");
    phase_project(&ty, y).expect("same shape")
}

/// The ISL update as a fixed-point map with its exact objective.
#[derive(Clone, Debug)]
pub struct IslMap {
    grid: SpectrumGrid,
    exec: Exec,
}

impl IslMap {
    pub fn new(code_length: usize, exec: Exec) -> Self {
        Self {
            grid: SpectrumGrid::new(code_length),
            exec,
        }
    }

    pub fn grid(&self) -> &SpectrumGrid {
        &self.grid
    }
}

impl FixedPointMap for IslMap {
    fn step(&self, y: &WaveformSet) -> WaveformSet {
        isl_step(&self.grid, y, self.exec)
    }

    fn objective(&self, y: &WaveformSet) -> f64 {
        isl_with(&self.grid, y, self.exec)
    }
}

/// Runs ISL minimization from the seeded random start.
pub fn solve_isl(cfg: &DesignConfig) -> Result<Solution> {
    cfg.validate()?;
    if cfg.weights.is_some() {
        return Err(Error::Config("ISL solver takes no weights".into()));
    }
    let start = random_unimodular(cfg.num_codes, cfg.code_length, cfg.seed);
    solve_isl_from(cfg, start)
}

/// Runs ISL minimization from a given start.
pub fn solve_isl_from(cfg: &DesignConfig, start: WaveformSet) -> Result<Solution> {
    let map = IslMap::new(cfg.code_length, cfg.exec);
    iterate(&map, start, cfg.accelerate, cfg.stop_rule, cfg.max_iters)
}
