//! All four surrogate functions evaluated densely with their constant terms.
//!
//! Each surrogate has the form ½x^H G x + x0^H(½G − Q)x0 + 2Re{x^H(Q − ½G)x0}
//! for f(x) = x^H Q x. `stated` uses the curvature G of the derivation;
//! `full` doubles it, which is what the second-order bound ∇²f = 2Q ⪯ G
//! actually requires.

use super::forms::{dense_b, DenseForms};
use super::isl::{dense_mu, dense_phi};
use super::inequalities::quadratic_majorant;
use super::{block_steering, cx, guard, lift, stacked, CMat, PHI_GUARD};
use crate::error::{shape, Result};
use crate::waveform::WaveformSet;
use crate::wisl::GammaSpectrum;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MajorantValue {
    pub objective: f64,
    pub stated: f64,
    pub full: f64,
}

impl MajorantValue {
    fn new(x: &super::CVec, x0: &super::CVec, q: &CMat, g: &CMat) -> Self {
        Self {
            objective: super::re_form(x, q, x),
            stated: quadratic_majorant(x, x0, q, g),
            full: quadratic_majorant(x, x0, q, &(g * cx(2.0))),
        }
    }

    /// (majorant − objective)/|objective| for the stated and full curvature.
    pub fn gaps(&self) -> (f64, f64) {
        let den = self.objective.abs().max(f64::MIN_POSITIVE);
        ((self.stated - self.objective) / den, (self.full - self.objective) / den)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MajorantValues {
    /// Majorant of the lifted quartic.
    pub lifted: MajorantValue,
    /// Majorant of the quadratic form obtained at the expansion point.
    pub quadratic: MajorantValue,
}

fn check(a: &WaveformSet, b: &WaveformSet) -> Result<()> {
    if a.same_shape(b) {
        Ok(())
    } else {
        Err(shape(
            format!("{}x{}", a.code_length(), a.num_codes()),
            format!("{}x{}", b.code_length(), b.num_codes()),
        ))
    }
}

/// ISL surrogates expanded at `state`, evaluated at `point`.
pub fn isl_majorants(state: &WaveformSet, point: &WaveformSet) -> Result<MajorantValues> {
    check(state, point)?;
    let (m, p) = (state.num_codes(), state.code_length());
    guard(m * p, PHI_GUARD)?;
    let n = m * p;
    let (y0, y) = (stacked(state), stacked(point));

    let phi = dense_phi(m, p)?;
    let top = 2.0 * (m * p * p) as f64;
    let lifted = MajorantValue::new(&lift(&y), &lift(&y0), &phi, &(CMat::identity(n * n, n * n) * cx(top)));

    let mu = dense_mu(state);
    let mu_max = mu.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut q = CMat::zeros(n, n);
    let mut aa = CMat::zeros(n, n);
    for (k, &mk) in mu.iter().enumerate() {
        let a = block_steering(m, p, k + 1);
        let g = &a * a.adjoint();
        q += &g * cx(mk);
        aa += g;
    }
    q -= (&y0 * y0.adjoint()) * cx((m * p * p) as f64);
    let quadratic = MajorantValue::new(&y, &y0, &q, &(aa * cx(mu_max)));
    Ok(MajorantValues { lifted, quadratic })
}

/// WISL surrogates expanded at `state`, evaluated at `point`, using the
/// solver's curvature bound.
pub fn wisl_majorants(
    forms: &DenseForms,
    spectrum: &GammaSpectrum,
    state: &WaveformSet,
    point: &WaveformSet,
) -> Result<MajorantValues> {
    check(state, point)?;
    let n = state.len();
    let (y0, y) = (stacked(state), stacked(point));
    let c = spectrum.curvature;

    let lifted = MajorantValue::new(
        &lift(&y),
        &lift(&y0),
        &forms.phi_tilde,
        &(CMat::identity(n * n, n * n) * cx(c)),
    );

    let (b, _) = dense_b(state, &forms.weights)?;
    let q = b - (&y0 * y0.adjoint()) * cx(0.5 * c);
    let tau = q.norm();
    let quadratic = MajorantValue::new(&y, &y0, &q, &(CMat::identity(n, n) * cx(tau)));
    Ok(MajorantValues { lifted, quadratic })
}
