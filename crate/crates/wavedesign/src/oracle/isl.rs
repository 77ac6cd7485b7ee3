//! Dense ISL quantities: the lifting matrix, quartic and lifted objectives,
//! and the per-iteration μ, T, T·Y of the update.

use num_complex::Complex64;

use super::{block_steering, cx, guard, lift, stacked, steering_matrix, vec_of, CMat, CVec, PHI_GUARD};
use crate::error::Result;
use crate::spectra::SpectrumGrid;
use crate::waveform::{phase_project, WaveformSet};

/// Φ = Σ_k vec(A_k A_k^H) vec(A_k A_k^H)^H.
pub fn dense_phi(m: usize, p: usize) -> Result<CMat> {
    guard(m * p, PHI_GUARD)?;
    let n = m * p;
    let mut phi = CMat::zeros(n * n, n * n);
    for k in 1..=2 * p {
        let a = block_steering(m, p, k);
        let d = vec_of(&(&a * a.adjoint()));
        phi += &d * d.adjoint();
    }
    Ok(phi)
}

/// Σ_k (y^H A_k A_k^H y)².
pub fn quartic_isl(y: &WaveformSet) -> Result<f64> {
    let (m, p) = (y.num_codes(), y.code_length());
    guard(m * p, PHI_GUARD)?;
    let yv = stacked(y);
    Ok((1..=2 * p)
        .map(|k| {
            let a = block_steering(m, p, k);
            let s = (a.adjoint() * &yv).norm_squared();
            s * s
        })
        .sum())
}

/// vec(yy^H)^H Φ vec(yy^H).
pub fn quadratic_isl(y: &WaveformSet) -> Result<f64> {
    let phi = dense_phi(y.num_codes(), y.code_length())?;
    let x = lift(&stacked(y));
    Ok(x.dotc(&(&phi * &x)).re)
}

/// ISL recovered from the quartic value.
pub fn isl_from_quartic(quartic: f64, m: usize, p: usize) -> f64 {
    let (m, p) = (m as f64, p as f64);
    (quartic - 2.0 * p * 2.0 * m * p * p + 2.0 * p * p * p * m) / (2.0 * p)
}

/// (1/2P) Σ_k ‖ỹ_k ỹ_k^H − P·I_M‖² with ỹ_k = A_k^H y.
pub fn isl_frequency_form(y: &WaveformSet) -> f64 {
    let (m, p) = (y.num_codes(), y.code_length());
    let yv = stacked(y);
    let target = CMat::identity(m, m) * cx(p as f64);
    let total: f64 = (1..=2 * p)
        .map(|k| {
            let t = block_steering(m, p, k).adjoint() * &yv;
            (&t * t.adjoint() - &target).norm_squared()
        })
        .sum();
    total / (2 * p) as f64
}

/// μ_k = Σ_m |a_k^H y_m|² via the dense steering matrix.
pub fn dense_mu(y: &WaveformSet) -> Vec<f64> {
    let (m, p) = (y.num_codes(), y.code_length());
    let a = steering_matrix(p);
    let ym = CMat::from_column_slice(p, m, y.as_slice());
    let proj = a.adjoint() * ym;
    (0..2 * p).map(|k| proj.row(k).iter().map(|z| z.norm_sqr()).sum()).collect()
}

/// Dense counterparts of one ISL update.
#[derive(Clone, Debug)]
pub struct DenseIslUpdate {
    pub mu: Vec<f64>,
    pub mu_max: f64,
    /// T = Σ_k (½(μ_max + M²P²) − μ_k) a_k a_k^H, P×P.
    pub toeplitz: CMat,
    /// (I_M ⊗ T) y.
    pub ty: CVec,
    pub next: WaveformSet,
}

impl DenseIslUpdate {
    pub fn first_column(&self) -> Vec<Complex64> {
        self.toeplitz.column(0).iter().copied().collect()
    }
}

pub fn dense_isl_update(y: &WaveformSet) -> DenseIslUpdate {
    let (m, p) = (y.num_codes(), y.code_length());
    let mu = dense_mu(y);
    let mu_max = mu.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let shift = 0.5 * (mu_max + (m * m * p * p) as f64);
    let a = steering_matrix(p);
    let mut t = CMat::zeros(p, p);
    for (k, &mk) in mu.iter().enumerate() {
        let col = a.column(k);
        t += (col * col.adjoint()) * cx(shift - mk);
    }
    let ym = CMat::from_column_slice(p, m, y.as_slice());
    let ty = vec_of(&(&t * ym));
    let next = phase_project(ty.as_slice(), y).expect("same shape");
    DenseIslUpdate {
        mu,
        mu_max,
        toeplitz: t,
        ty,
        next,
    }
}

/// W = A(Λ − ½μ_max I)A^H − M²P³ I, the matrix whose Re{y^H W y_k} the
/// single-step update minimizes.
pub fn update_matrix(y_k: &WaveformSet) -> CMat {
    let (m, p) = (y_k.num_codes(), y_k.code_length());
    let mu = dense_mu(y_k);
    let mu_max = mu.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let n = m * p;
    let mut w = CMat::zeros(n, n);
    for (k, &mk) in mu.iter().enumerate() {
        let a = block_steering(m, p, k + 1);
        w += (&a * a.adjoint()) * cx(mk - 0.5 * mu_max);
    }
    w - CMat::identity(n, n) * cx((m * m * p * p * p) as f64)
}

/// Outcome of the exhaustive phase-grid search.
#[derive(Clone, Debug)]
pub struct GridSearch {
    pub points: usize,
    /// Phases of the best grid point, in [0, 2π).
    pub best_phases: Vec<f64>,
    pub best_value: f64,
    /// Phases of the closed-form update.
    pub update_phases: Vec<f64>,
    pub update_value: f64,
    /// Largest circular distance between the two phase vectors.
    pub max_phase_gap: f64,
}

/// Enumerates every phase vector on a `points`-level grid and minimizes
/// Re{y^H W y_k}; compares with the fast single-step update.
pub fn grid_search_update(y_k: &WaveformSet, points: usize) -> Result<GridSearch> {
    let n = y_k.len();
    guard(n, 4)?;
    let w = update_matrix(y_k);
    let c = &w * stacked(y_k);
    let step = std::f64::consts::TAU / points as f64;
    let levels: Vec<Complex64> = (0..points).map(|i| Complex64::from_polar(1.0, i as f64 * step)).collect();
    let value = |y: &[Complex64]| -> f64 { y.iter().zip(c.iter()).map(|(a, b)| (a.conj() * b).re).sum() };

    let mut idx = vec![0usize; n];
    let mut cur = vec![levels[0]; n];
    let mut best = (f64::INFINITY, idx.clone());
    loop {
        let v = value(&cur);
        if v < best.0 {
            best = (v, idx.clone());
        }
        let mut d = 0;
        loop {
            if d == n {
                let best_phases = best.1.iter().map(|&i| i as f64 * step).collect::<Vec<_>>();
                let update = crate::isl::isl_step(&SpectrumGrid::new(y_k.code_length()), y_k, crate::par::Exec::Sequential);
                let update_phases: Vec<f64> = update.as_slice().iter().map(|z| z.arg().rem_euclid(std::f64::consts::TAU)).collect();
                let max_phase_gap = best_phases
                    .iter()
                    .zip(&update_phases)
                    .map(|(a, b)| {
                        let d = (a - b).rem_euclid(std::f64::consts::TAU);
                        d.min(std::f64::consts::TAU - d)
                    })
                    .fold(0.0, f64::max);
                return Ok(GridSearch {
                    points,
                    best_phases,
                    best_value: best.0,
                    update_value: value(update.as_slice()),
                    update_phases,
                    max_phase_gap,
                });
            }
            idx[d] += 1;
            if idx[d] < points {
                cur[d] = levels[idx[d]];
                break;
            }
            idx[d] = 0;
            cur[d] = levels[0];
            d += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::isl;
    use crate::oracle::hermitian_eigenvalues;
    use crate::waveform::random_unimodular;

    #[test]
    fn phi_top_eigenvalue() {
        for (m, p) in [(1, 2), (2, 3), (1, 5), (3, 2)] {
            let ev = hermitian_eigenvalues(&dense_phi(m, p).unwrap());
            let want = 2.0 * (m * p * p) as f64;
            assert!((ev.last().unwrap() - want).abs() < 1e-6 * want, "{m} {p}");
            assert!(ev[0] > -1e-8 * want);
        }
    }

    #[test]
    fn quartic_matches_lifted_form() {
        for (m, p, seed) in [(1, 2, 1), (2, 4, 2), (3, 3, 3)] {
            let y = random_unimodular(m, p, seed);
            let q = quartic_isl(&y).unwrap();
            let l = quadratic_isl(&y).unwrap();
            assert!((q - l).abs() < 1e-9 * q);
            assert!((isl_from_quartic(q, m, p) - isl(&y)).abs() < 1e-8 * isl(&y));
            let floor = 2.0 * (m * m * p * p * p) as f64;
            assert!(q >= floor * (1.0 - 1e-12));
        }
    }

    #[test]
    fn frequency_form_is_isl() {
        let y = random_unimodular(3, 7, 9);
        assert!((isl_frequency_form(&y) - isl(&y)).abs() < 1e-8 * isl(&y));
    }

    #[test]
    fn guard_rejects_large() {
        assert!(dense_phi(4, 4).is_err());
        assert!(quartic_isl(&random_unimodular(2, 7, 1)).is_err());
    }

    #[test]
    fn update_matrix_is_negated_toeplitz() {
        let y = random_unimodular(2, 3, 5);
        let w = update_matrix(&y);
        let t = dense_isl_update(&y).toeplitz;
        let blk = crate::oracle::kron(&CMat::identity(2, 2), &t);
        assert!(crate::oracle::rel_diff(&w, &(-blk)) < 1e-12);
    }

    #[test]
    fn grid_search_small() {
        let y = random_unimodular(1, 3, 11);
        let g = grid_search_update(&y, 16).unwrap();
        assert!(g.update_value <= g.best_value + 1e-9 * g.best_value.abs());
        assert!(g.max_phase_gap <= std::f64::consts::PI / 16.0 + 1e-9);
    }
}
