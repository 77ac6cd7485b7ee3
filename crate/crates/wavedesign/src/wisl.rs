//! WISL minimization: each iteration assembles the block-Toeplitz matrix B
//! from weighted lag sums of the current iterate, bounds the curvature of the
//! quadratic remainder by a Frobenius norm, and projects a shifted product.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::accel::FixedPointMap;
use crate::error::{shape, Error, Result};
use crate::metrics::{cross_circular, wisl_with};
use crate::par::{map_range, Exec};
use crate::solve::{iterate, Solution};
use crate::spectra::{inverse_truncate, ColumnSpectra, SpectrumGrid, ToeplitzOperator};
use crate::waveform::{phase_project, random_unimodular, DesignConfig, WaveformSet, WeightProfile};

pub const POWER_TOL: f64 = 1e-10;
pub const POWER_MAX_ITERS: usize = 10_000;
const POWER_SEED: u64 = 0x5eed_f9a3;

/// Outcome of power iteration on the weight Toeplitz matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerEstimate {
    pub value: f64,
    pub iterations: usize,
    /// ‖Γx − θx‖ at the final unit iterate, θ its Rayleigh quotient.
    pub residual: f64,
}

/// Γx for the symmetric Toeplitz matrix with first column γ.
fn gamma_apply(w: &WeightProfile, x: &[f64], out: &mut [f64]) {
    let g = w.gamma();
    let n = x.len();
    for (o, &xi) in out.iter_mut().zip(x) {
        *o = g[0] * xi;
    }
    for &p in &w.omega()[1..] {
        let gp = g[p];
        for i in 0..n - p {
            out[i] += gp * x[i + p];
            out[i + p] += gp * x[i];
        }
    }
}

fn l2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Power iteration for the spectral radius of the weight Toeplitz matrix.
pub fn power_iteration(w: &WeightProfile) -> Result<PowerEstimate> {
    let n = w.code_length();
    let mut rng = ChaCha8Rng::seed_from_u64(POWER_SEED);
    let mut x: Vec<f64> = (0..n).map(|_| 1.0 + 0.25 * rng.gen::<f64>()).collect();
    let s = l2(&x);
    x.iter_mut().for_each(|v| *v /= s);
    let mut gx = vec![0.0; n];
    let mut last = f64::NAN;
    for k in 1..=POWER_MAX_ITERS {
        gamma_apply(w, &x, &mut gx);
        let e = l2(&gx);
        if e == 0.0 {
            return Ok(PowerEstimate {
                value: 0.0,
                iterations: k,
                residual: 0.0,
            });
        }
        let done = (e - last).abs() <= POWER_TOL * e;
        for (xi, gi) in x.iter_mut().zip(&gx) {
            *xi = gi / e;
        }
        last = e;
        if done || k == POWER_MAX_ITERS {
            gamma_apply(w, &x, &mut gx);
            let theta: f64 = x.iter().zip(&gx).map(|(a, b)| a * b).sum();
            let residual = x
                .iter()
                .zip(&gx)
                .map(|(a, b)| (b - theta * a).powi(2))
                .sum::<f64>()
                .sqrt();
            let est = PowerEstimate {
                value: e,
                iterations: k,
                residual,
            };
            if done {
                return Ok(est);
            }
            return Err(Error::PowerIteration {
                iterations: k,
                estimate: e,
                residual,
            });
        }
    }
    unreachable!("loop returns at the iteration cap")
}

/// Spectral radius of the weight Toeplitz matrix by power iteration.
pub fn gamma_spectral_bound(w: &WeightProfile) -> Result<f64> {
    power_iteration(w).map(|e| e.value)
}

/// Largest absolute row sum of the weight Toeplitz matrix; never below the
/// spectral radius.
pub fn gamma_row_sum_bound(w: &WeightProfile) -> f64 {
    let g = w.gamma();
    let n = g.len();
    let mut prefix = vec![0.0; n];
    for p in 1..n {
        prefix[p] = prefix[p - 1] + g[p];
    }
    (0..n)
        .map(|i| g[0] + prefix[i] + prefix[n - 1 - i])
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RadiusSource {
    PowerIteration { iterations: usize },
    /// Power iteration hit its cap; the row-sum bound was used instead.
    RowSum { power_estimate: f64 },
}

/// Fixed spectral data of a weight profile for a given number of waveforms.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaSpectrum {
    pub weights: WeightProfile,
    /// Spectral radius of the weight Toeplitz matrix.
    pub radius: f64,
    /// Curvature bound 2MP·radius² of the lifted quartic.
    pub curvature: f64,
    pub source: RadiusSource,
}

impl GammaSpectrum {
    pub fn new(weights: &WeightProfile, num_codes: usize) -> Self {
        let (radius, source) = match power_iteration(weights) {
            Ok(e) => (e.value, RadiusSource::PowerIteration { iterations: e.iterations }),
            Err(Error::PowerIteration { estimate, .. }) => (
                gamma_row_sum_bound(weights),
                RadiusSource::RowSum {
                    power_estimate: estimate,
                },
            ),
            Err(e) => unreachable!("power iteration error: {e}"),
        };
        Self::with_radius(weights, num_codes, radius, source)
    }

    pub fn with_radius(weights: &WeightProfile, num_codes: usize, radius: f64, source: RadiusSource) -> Self {
        let p = weights.code_length() as f64;
        Self {
            weights: weights.clone(),
            radius,
            curvature: 2.0 * num_codes as f64 * p * radius * radius,
            source,
        }
    }
}

/// First-row (ρ) and first-column (η) generators of the unscaled block (a, b):
/// η(p) = γ_p²·Σ_i y_a(i+p)·conj(y_b(i)), ρ(p) = γ_p²·Σ_i y_a(i)·conj(y_b(i+p)).
pub fn compute_rho_eta(
    y: &WaveformSet,
    w: &WeightProfile,
    a: usize,
    b: usize,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    check_weights(y, w)?;
    let p = y.code_length();
    let (ya, yb) = (y.column(a), y.column(b));
    let g = w.gamma();
    let zero = Complex64::new(0.0, 0.0);
    let mut rho = vec![zero; p];
    let mut eta = vec![zero; p];
    for &l in w.omega() {
        let g2 = g[l] * g[l];
        let mut up = zero;
        let mut down = zero;
        for i in 0..p - l {
            up += ya[i] * yb[i + l].conj();
            down += ya[i + l] * yb[i].conj();
        }
        rho[l] = up * g2;
        eta[l] = down * g2;
    }
    Ok((rho, eta))
}

fn rho_eta_from_circular(circ: &[Complex64], w: &WeightProfile) -> (Vec<Complex64>, Vec<Complex64>) {
    let p = w.code_length();
    let n = 2 * p;
    let g = w.gamma();
    let zero = Complex64::new(0.0, 0.0);
    let mut rho = vec![zero; p];
    let mut eta = vec![zero; p];
    for &l in w.omega() {
        let g2 = g[l] * g[l];
        eta[l] = circ[l] * g2;
        rho[l] = circ[(n - l) % n] * g2;
    }
    (rho, eta)
}

fn check_weights(y: &WaveformSet, w: &WeightProfile) -> Result<()> {
    if w.code_length() == y.code_length() {
        Ok(())
    } else {
        Err(shape(
            format!("{} weights", y.code_length()),
            format!("{} weights", w.code_length()),
        ))
    }
}

/// Hermitian MP×MP matrix of M² Toeplitz blocks; only blocks (a, b) with
/// a ≤ b are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockToeplitzB {
    num_codes: usize,
    code_length: usize,
    upper: Vec<ToeplitzOperator>,
}

impl BlockToeplitzB {
    pub fn num_codes(&self) -> usize {
        self.num_codes
    }

    pub fn code_length(&self) -> usize {
        self.code_length
    }

    /// Block (a, b), taking the adjoint of the stored block when a > b.
    pub fn block(&self, a: usize, b: usize) -> ToeplitzOperator {
        if a <= b {
            self.upper[upper_index(self.num_codes, a, b)].clone()
        } else {
            self.upper[upper_index(self.num_codes, b, a)].adjoint()
        }
    }

    pub fn stored_block(&self, a: usize, b: usize) -> &ToeplitzOperator {
        &self.upper[upper_index(self.num_codes, a, b)]
    }

    /// ‖B‖_F², with each off-diagonal stored block counted twice.
    pub fn frobenius_sqr(&self) -> f64 {
        let m = self.num_codes;
        let mut s = 0.0;
        for a in 0..m {
            for b in a..m {
                let f = self.stored_block(a, b).frobenius_sqr();
                s += if a == b { f } else { 2.0 * f };
            }
        }
        s
    }

    /// B·y through circulant embeddings.
    pub fn apply(&self, grid: &SpectrumGrid, y: &[Complex64], exec: Exec) -> Result<Vec<Complex64>> {
        let spectra = ColumnSpectra::new(grid, y, exec)?;
        self.apply_spectra(grid, &spectra, exec)
    }

    pub fn apply_spectra(&self, grid: &SpectrumGrid, y: &ColumnSpectra, exec: Exec) -> Result<Vec<Complex64>> {
        let m = self.num_codes;
        if y.num_columns() != m {
            return Err(shape(format!("{m} columns"), y.num_columns()));
        }
        let symbols: Vec<Vec<Complex64>> = map_range(exec, self.upper.len(), |k| {
            self.upper[k].symbol(grid).expect("grid matches blocks")
        });
        let rows = map_range(exec, m, |a| {
            let mut acc = vec![Complex64::new(0.0, 0.0); grid.size()];
            for b in 0..m {
                let ys = y.column(b);
                if a <= b {
                    let s = &symbols[upper_index(m, a, b)];
                    for ((o, s), v) in acc.iter_mut().zip(s).zip(ys) {
                        *o += s * v;
                    }
                } else {
                    let s = &symbols[upper_index(m, b, a)];
                    for ((o, s), v) in acc.iter_mut().zip(s).zip(ys) {
                        *o += s.conj() * v;
                    }
                }
            }
            inverse_truncate(grid, &mut acc)
        });
        Ok(rows.concat())
    }

    /// Row-major dense copy, MP×MP.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let (m, p) = (self.num_codes, self.code_length);
        let n = m * p;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for a in 0..m {
            for b in 0..m {
                let blk = self.block(a, b);
                for i in 0..p {
                    for j in 0..p {
                        out[(a * p + i) * n + b * p + j] = blk.entry(i, j);
                    }
                }
            }
        }
        out
    }
}

/// Position of block (a, b), a ≤ b, in row-major upper-triangle order.
fn upper_index(m: usize, a: usize, b: usize) -> usize {
    debug_assert!(a <= b && b < m);
    a * m - a * a.saturating_sub(1) / 2 + (b - a)
}

/// Builds B with blocks 2P·𝒯(ρ_ab, η_ab).
pub fn assemble_b(grid: &SpectrumGrid, y: &WaveformSet, w: &WeightProfile, exec: Exec) -> Result<BlockToeplitzB> {
    check_weights(y, w)?;
    let spectra = ColumnSpectra::new(grid, y.as_slice(), exec)?;
    Ok(assemble_from_spectra(grid, y, w, &spectra, exec))
}

fn assemble_from_spectra(
    grid: &SpectrumGrid,
    y: &WaveformSet,
    w: &WeightProfile,
    spectra: &ColumnSpectra,
    exec: Exec,
) -> BlockToeplitzB {
    let (m, p) = (y.num_codes(), y.code_length());
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).collect();
    let direct = w.omega().len() as f64 <= 2.0 * (grid.size() as f64).log2();
    let scale = grid.size() as f64;
    let upper = map_range(exec, pairs.len(), |k| {
        let (a, b) = pairs[k];
        let (rho, eta) = if direct {
            compute_rho_eta(y, w, a, b).expect("checked weights")
        } else {
            rho_eta_from_circular(&cross_circular(grid, spectra, a, b), w)
        };
        ToeplitzOperator::new(eta, rho).expect("shared corner").scaled(scale)
    });
    BlockToeplitzB {
        num_codes: m,
        code_length: p,
        upper,
    }
}

/// ‖B − (c/2)·y·y^H‖_F from ‖B‖_F², Re(y^H B y) and ‖y‖² = MP.
pub fn tau_bound(b: &BlockToeplitzB, y: &WaveformSet, by: &[Complex64], curvature: f64) -> f64 {
    let quad: f64 = y.as_slice().iter().zip(by).map(|(u, v)| (u.conj() * v).re).sum();
    let mp = y.len() as f64;
    let sq = b.frobenius_sqr() - curvature * quad + 0.25 * curvature * curvature * mp * mp;
    sq.max(0.0).sqrt()
}

/// One WISL update.
pub fn wisl_step(grid: &SpectrumGrid, y: &WaveformSet, spec: &GammaSpectrum, exec: Exec) -> WaveformSet {
    wisl_step_parts(grid, y, spec, exec).0
}

/// The update together with the shifted vector z and the bound τ.
pub fn wisl_step_parts(
    grid: &SpectrumGrid,
    y: &WaveformSet,
    spec: &GammaSpectrum,
    exec: Exec,
) -> (WaveformSet, Vec<Complex64>, f64) {
    let spectra = ColumnSpectra::new(grid, y.as_slice(), exec).expect("grid matches waveform");
    let b = assemble_from_spectra(grid, y, &spec.weights, &spectra, exec);
    let by = b.apply_spectra(grid, &spectra, exec).expect("block count matches");
    let tau = tau_bound(&b, y, &by, spec.curvature);
    let shift = 0.5 * (tau + y.len() as f64 * spec.curvature);
    let z: Vec<Complex64> = y.as_slice().iter().zip(&by).map(|(u, v)| u * shift - v).collect();
    let next = phase_project(&z, y).expect("same shape");
    (next, z, tau)
}

/// The WISL update as a fixed-point map with its exact objective.
#[derive(Clone, Debug)]
pub struct WislMap {
    grid: SpectrumGrid,
    spectrum: GammaSpectrum,
    exec: Exec,
}

impl WislMap {
    pub fn new(weights: &WeightProfile, num_codes: usize, exec: Exec) -> Self {
        Self {
            grid: SpectrumGrid::new(weights.code_length()),
            spectrum: GammaSpectrum::new(weights, num_codes),
            exec,
        }
    }

    pub fn spectrum(&self) -> &GammaSpectrum {
        &self.spectrum
    }

    pub fn grid(&self) -> &SpectrumGrid {
        &self.grid
    }
}

impl FixedPointMap for WislMap {
    fn step(&self, y: &WaveformSet) -> WaveformSet {
        wisl_step(&self.grid, y, &self.spectrum, self.exec)
    }

    fn objective(&self, y: &WaveformSet) -> f64 {
        wisl_with(&self.grid, y, &self.spectrum.weights, self.exec).expect("checked weights")
    }
}

/// Runs WISL minimization from the seeded random start.
pub fn solve_wisl(cfg: &DesignConfig) -> Result<Solution> {
    cfg.validate()?;
    let start = random_unimodular(cfg.num_codes, cfg.code_length, cfg.seed);
    solve_wisl_from(cfg, start)
}

pub fn solve_wisl_from(cfg: &DesignConfig, start: WaveformSet) -> Result<Solution> {
    let w = cfg
        .weights
        .as_ref()
        .ok_or_else(|| Error::Config("WISL solver needs a weight profile".into()))?;
    let map = WislMap::new(w, cfg.num_codes, cfg.exec);
    iterate(&map, start, cfg.accelerate, cfg.stop_rule, cfg.max_iters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::wisl;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gamma_only(p: usize) -> WeightProfile {
        let mut g = vec![0.0; p];
        g[0] = 1.0;
        WeightProfile::new(g).unwrap()
    }

    #[test]
    fn spectral_bound_examples() {
        assert!((gamma_spectral_bound(&gamma_only(6)).unwrap() - 1.0).abs() < 1e-12);
        assert!((gamma_spectral_bound(&WeightProfile::ones(4)).unwrap() - 4.0).abs() < 1e-9);
        let w = WeightProfile::band(8, 2).unwrap();
        let est = power_iteration(&w).unwrap();
        assert!(est.value >= 1.0);
        assert!(est.residual < 1e-3);
        assert!(gamma_row_sum_bound(&w) >= est.value);
        assert_eq!(gamma_row_sum_bound(&w), 5.0);
    }

    #[test]
    fn zero_profile_has_zero_radius() {
        let w = WeightProfile::new(vec![0.0; 5]).unwrap();
        assert_eq!(gamma_spectral_bound(&w).unwrap(), 0.0);
    }

    #[test]
    fn curvature_scales_with_m_and_p() {
        let s = GammaSpectrum::new(&WeightProfile::ones(4), 3);
        assert!((s.curvature - 2.0 * 3.0 * 4.0 * 16.0).abs() < 1e-6);
        assert!(matches!(s.source, RadiusSource::PowerIteration { .. }));
    }

    #[test]
    fn rho_eta_examples() {
        let y = random_unimodular(2, 6, 3);
        let w = WeightProfile::band(6, 2).unwrap();
        let (rho, eta) = compute_rho_eta(&y, &w, 1, 1).unwrap();
        assert!((rho[0] - c(6.0, 0.0)).norm() < 1e-12 && rho[0] == eta[0]);

        let (rho, eta) = compute_rho_eta(&y, &gamma_only(6), 0, 1).unwrap();
        let dot: Complex64 = y.column(0).iter().zip(y.column(1)).map(|(a, b)| a * b.conj()).sum();
        assert!((rho[0] - dot).norm() < 1e-12);
        assert!(rho[1..].iter().chain(&eta[1..]).all(|z| z.norm() == 0.0));

        // Explicit Z = y_a y_b^H diagonal sums.
        let (rho, eta) = compute_rho_eta(&y, &w, 0, 1).unwrap();
        for p in 0..6 {
            let mut up = c(0.0, 0.0);
            let mut down = c(0.0, 0.0);
            for i in 0..6 - p {
                up += y.get(i, 0) * y.get(i + p, 1).conj();
                down += y.get(i + p, 0) * y.get(i, 1).conj();
            }
            let g2 = if p <= 2 { 1.0 } else { 0.0 };
            assert!((rho[p] - up * g2).norm() < 1e-12);
            assert!((eta[p] - down * g2).norm() < 1e-12);
        }
    }

    #[test]
    fn both_generator_paths_agree() {
        let y = random_unimodular(3, 12, 5);
        let w = WeightProfile::ones(12);
        let grid = SpectrumGrid::new(12);
        let spectra = ColumnSpectra::new(&grid, y.as_slice(), Exec::Sequential).unwrap();
        for a in 0..3 {
            for b in a..3 {
                let (r1, e1) = compute_rho_eta(&y, &w, a, b).unwrap();
                let (r2, e2) = rho_eta_from_circular(&cross_circular(&grid, &spectra, a, b), &w);
                for k in 0..12 {
                    assert!((r1[k] - r2[k]).norm() < 1e-10 && (e1[k] - e2[k]).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn assembled_b_is_hermitian_and_applies_like_dense() {
        for (m, p) in [(1, 4), (2, 5), (3, 8)] {
            let y = random_unimodular(m, p, 11);
            let w = WeightProfile::band(p, 2).unwrap();
            let grid = SpectrumGrid::new(p);
            let b = assemble_b(&grid, &y, &w, Exec::Sequential).unwrap();
            let d = b.to_dense();
            let n = m * p;
            for i in 0..n {
                for j in 0..n {
                    assert!((d[i * n + j] - d[j * n + i].conj()).norm() < 1e-10);
                }
            }
            let fast = b.apply(&grid, y.as_slice(), Exec::Parallel).unwrap();
            for i in 0..n {
                let s: Complex64 = (0..n).map(|j| d[i * n + j] * y.as_slice()[j]).sum();
                assert!((s - fast[i]).norm() < 1e-9 * (1.0 + s.norm()));
            }
            let fro: f64 = d.iter().map(|z| z.norm_sqr()).sum();
            assert!((fro - b.frobenius_sqr()).abs() < 1e-9 * fro);
        }
    }

    #[test]
    fn b_quadratic_form_is_scaled_wisl_energy() {
        // y^H B y = 2P·Σ_ab Σ_l γ_l²|r_ab(l)|² for the expansion point itself.
        let y = random_unimodular(2, 7, 2);
        let w = WeightProfile::band(7, 3).unwrap();
        let grid = SpectrumGrid::new(7);
        let b = assemble_b(&grid, &y, &w, Exec::Sequential).unwrap();
        let by = b.apply(&grid, y.as_slice(), Exec::Sequential).unwrap();
        let quad: f64 = y.as_slice().iter().zip(&by).map(|(u, v)| (u.conj() * v).re).sum();
        let g0 = w.gamma()[0];
        let full = wisl(&y, &w).unwrap() + 2.0 * g0 * g0 * 49.0;
        assert!((quad - 14.0 * full).abs() < 1e-9 * quad);
    }

    #[test]
    fn tau_with_zero_b() {
        let y = random_unimodular(2, 4, 1);
        let w = WeightProfile::new(vec![0.0; 4]).unwrap();
        let grid = SpectrumGrid::new(4);
        let b = assemble_b(&grid, &y, &w, Exec::Sequential).unwrap();
        let by = b.apply(&grid, y.as_slice(), Exec::Sequential).unwrap();
        let tau = tau_bound(&b, &y, &by, 3.0);
        assert!((tau - 1.5 * 8.0).abs() < 1e-12);
    }

    #[test]
    fn tau_matches_dense_frobenius() {
        let y = random_unimodular(2, 4, 9);
        let w = WeightProfile::band(4, 1).unwrap();
        let grid = SpectrumGrid::new(4);
        let spec = GammaSpectrum::new(&w, 2);
        let b = assemble_b(&grid, &y, &w, Exec::Sequential).unwrap();
        let by = b.apply(&grid, y.as_slice(), Exec::Sequential).unwrap();
        let tau = tau_bound(&b, &y, &by, spec.curvature);
        let d = b.to_dense();
        let ys = y.as_slice();
        let n = 8;
        let fro: f64 = (0..n * n)
            .map(|k| (d[k] - ys[k / n] * ys[k % n].conj() * (spec.curvature / 2.0)).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!((tau - fro).abs() < 1e-9 * fro);
    }

    #[test]
    fn step_keeps_unit_modulus_and_descends() {
        let w = WeightProfile::band(16, 3).unwrap();
        let grid = SpectrumGrid::new(16);
        let spec = GammaSpectrum::new(&w, 2);
        let mut y = random_unimodular(2, 16, 4);
        let first = wisl(&y, &w).unwrap();
        for _ in 0..30 {
            let next = wisl_step(&grid, &y, &spec, Exec::Sequential);
            assert!(next.as_slice().iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
            assert!(wisl(&next, &w).unwrap() <= wisl(&y, &w).unwrap() + 1e-9 * first);
            y = next;
        }
    }

    #[test]
    fn lag_zero_only_single_waveform_is_fixed() {
        let y = random_unimodular(1, 9, 6);
        let w = gamma_only(9);
        assert_eq!(wisl(&y, &w).unwrap(), 0.0);
        let out = wisl_step(&SpectrumGrid::new(9), &y, &GammaSpectrum::new(&w, 1), Exec::Sequential);
        assert!(out.distance(&y) < 1e-12);
    }

    #[test]
    fn parallel_step_is_bitwise_equal() {
        let w = WeightProfile::band(32, 5).unwrap();
        let grid = SpectrumGrid::new(32);
        let spec = GammaSpectrum::new(&w, 3);
        let y = random_unimodular(3, 32, 8);
        assert_eq!(
            wisl_step(&grid, &y, &spec, Exec::Sequential),
            wisl_step(&grid, &y, &spec, Exec::Parallel)
        );
    }

    #[test]
    fn solve_needs_weights() {
        let cfg = DesignConfig::isl(2, 8, 0);
        assert!(solve_wisl(&cfg).is_err());
    }
}
