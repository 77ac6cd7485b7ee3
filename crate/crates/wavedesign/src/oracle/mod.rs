//! Dense reference implementation of every intermediate quantity of both
//! solvers, for small sizes only. Nothing here is used by the fast paths.

mod forms;
mod isl;
mod inequalities;
mod majorant;
pub mod suite;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::spectra::SpectrumGrid;
use crate::waveform::WaveformSet;

pub use forms::{
    dense_b, dense_shifted_vector, dense_wisl_forms, gamma_eigen, gamma_matrix, wisl_frequency_form, DenseForms,
    GammaEigen, SpectralSummary,
};
pub use isl::{
    dense_isl_update, dense_mu, dense_phi, grid_search_update, isl_frequency_form, isl_from_quartic,
    quadratic_isl, quartic_isl, update_matrix, DenseIslUpdate, GridSearch,
};
pub use inequalities::{
    curvature_check, hadamard_check, selection_check, selection_matrix, split_index, CurvatureReport, HadamardReport,
    SelectionReport,
};
pub use majorant::{isl_majorants, wisl_majorants, MajorantValue, MajorantValues};
pub use suite::{run_suite, suite_passed, Check, SuiteOptions};

/// Largest M·P for the M²P²×M²P² ISL lifting matrix.
pub const PHI_GUARD: usize = 12;
/// Largest M·P for the weighted lifting and the dense B.
pub const FORMS_GUARD: usize = 9;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub(crate) fn guard(mp: usize, limit: usize) -> Result<()> {
    if mp <= limit {
        Ok(())
    } else {
        Err(Error::SizeGuard { mp, limit })
    }
}

pub(crate) fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Stacked waveform vector y = vec(Y).
pub fn stacked(y: &WaveformSet) -> CVec {
    CVec::from_column_slice(y.as_slice())
}

/// Ã = [a_1, …, a_2P], P×2P.
pub fn steering_matrix(p: usize) -> CMat {
    let grid = SpectrumGrid::new(p);
    let mut a = CMat::zeros(p, 2 * p);
    for k in 1..=2 * p {
        for (n, v) in grid.steering(k).into_iter().enumerate() {
            a[(n, k - 1)] = v;
        }
    }
    a
}

/// A_k = I_M ⊗ a_k, MP×M, for grid index k = 1..2P.
pub fn block_steering(m: usize, p: usize, k: usize) -> CMat {
    let a = SpectrumGrid::new(p).steering(k);
    let mut out = CMat::zeros(m * p, m);
    for j in 0..m {
        for (n, &v) in a.iter().enumerate() {
            out[(j * p + n, j)] = v;
        }
    }
    out
}

/// Column-major vec of a matrix.
pub fn vec_of(x: &CMat) -> CVec {
    CVec::from_column_slice(x.as_slice())
}

/// vec(y·y^H).
pub fn lift(y: &CVec) -> CVec {
    vec_of(&(y * y.adjoint()))
}

pub(crate) fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub(crate) fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Largest relative entrywise deviation, scaled by the largest magnitude.
pub fn rel_diff(a: &CMat, b: &CMat) -> f64 {
    let scale = a.iter().chain(b.iter()).map(|z| z.norm()).fold(0.0, f64::max);
    let d = a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        d
    } else {
        d / scale
    }
}

pub(crate) fn rel_scalar(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &CMat) -> Vec<f64> {
    let sym = (h + h.adjoint()) * cx(0.5);
    let mut ev: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    ev
}

pub fn is_hermitian(h: &CMat, tol: f64) -> bool {
    rel_diff(h, &h.adjoint()) <= tol
}

/// Re(a^H M b).
pub(crate) fn re_form(a: &CVec, m: &CMat, b: &CVec) -> f64 {
    (a.adjoint() * m * b)[(0, 0)].re
}

/// Matrix with entries uniform on the unit square [−1, 1]².
pub fn random_complex<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// (X + X^H)/2 for a random X; generally indefinite.
pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> CMat {
    let x = random_complex(rng, n, n);
    (&x + x.adjoint()) * cx(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waveform::random_unimodular;

    #[test]
    fn lift_matches_kronecker_identity() {
        let y = stacked(&random_unimodular(2, 3, 1));
        let n = y.len();
        let yt = CMat::from_row_slice(1, n, y.as_slice());
        let rhs = kron(&yt, &identity(n)).adjoint() * &y;
        let lhs = lift(&y);
        assert!(lhs.iter().zip(rhs.iter()).all(|(a, b)| (a - b).norm() < 1e-12));
        assert!((lhs.norm_squared() - 36.0).abs() < 1e-9);
    }

    #[test]
    fn guard_limits() {
        assert!(guard(12, PHI_GUARD).is_ok());
        assert_eq!(guard(13, PHI_GUARD), Err(Error::SizeGuard { mp: 13, limit: 12 }));
    }

    #[test]
    fn block_steering_shape() {
        let a = block_steering(2, 3, 4);
        assert_eq!(a.shape(), (6, 2));
        assert_eq!(a[(3, 0)], cx(0.0));
        assert!((a[(3, 1)] - cx(1.0)).norm() < 1e-15);
    }
}
