//! Dense WISL quantities: the weight matrix and its signed factorization, the
//! lifted weighting matrices, and the dense B and shifted vector of one update.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{block_steering, cx, guard, hermitian_eigenvalues, identity, kron, lift, stacked, vec_of, CMat, CVec, FORMS_GUARD};
use crate::error::{shape, Result};
use crate::spectra::SpectrumGrid;
use crate::waveform::{WaveformSet, WeightProfile};

/// Signed eigen-factorization Γ = Σ_k u_k v_k^T with u_k = √|λ_k| q_k and
/// v_k = sign(λ_k) u_k; pairs with |λ_k| below a relative cutoff are dropped.
#[derive(Clone, Debug)]
pub struct GammaEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<DVector<f64>>,
    pub u: Vec<DVector<f64>>,
    pub v: Vec<DVector<f64>>,
    pub signs: Vec<f64>,
}

impl GammaEigen {
    pub fn rank(&self) -> usize {
        self.values.len()
    }

    /// Σ_k u_k v_k^T.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let n = self.u.first().map_or(0, |u| u.len());
        let mut g = DMatrix::zeros(n, n);
        for (u, v) in self.u.iter().zip(&self.v) {
            g += u * v.transpose();
        }
        g
    }
}

/// P×P symmetric Toeplitz weight matrix with entries γ_{|i−j|}.
pub fn gamma_matrix(w: &WeightProfile) -> DMatrix<f64> {
    let g = w.gamma();
    let p = g.len();
    DMatrix::from_fn(p, p, |i, j| g[i.abs_diff(j)])
}

pub fn gamma_eigen(w: &WeightProfile) -> GammaEigen {
    let eig = gamma_matrix(w).symmetric_eigen();
    let top = eig.eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let cutoff = 1e-12 * top.max(1.0);
    let mut out = GammaEigen {
        values: Vec::new(),
        vectors: Vec::new(),
        u: Vec::new(),
        v: Vec::new(),
        signs: Vec::new(),
    };
    for (k, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam.abs() <= cutoff {
            continue;
        }
        let q = eig.eigenvectors.column(k).into_owned();
        let s = lam.signum();
        let u = &q * lam.abs().sqrt();
        out.v.push(&u * s);
        out.u.push(u);
        out.values.push(lam);
        out.vectors.push(q);
        out.signs.push(s);
    }
    out
}

fn complexify(x: &DMatrix<f64>) -> CMat {
    x.map(cx)
}

/// All dense matrices of the lifted WISL objective.
#[derive(Clone, Debug)]
pub struct DenseForms {
    pub num_codes: usize,
    pub code_length: usize,
    pub weights: WeightProfile,
    pub gamma: DMatrix<f64>,
    pub eigen: GammaEigen,
    /// Γ_real and Γ_img for each ordered pair (k, k'), index k·K + k'.
    pub gamma_real: Vec<CMat>,
    pub gamma_img: Vec<CMat>,
    /// Σ_{k,k'} s_k s_k' (vec Γ_real vec Γ_real^H + vec Γ_img vec Γ_img^H).
    pub gamma_bar: CMat,
    /// Σ_p vec(A_p A_p^H) vec(A_p A_p^H)^H.
    pub phi_bar: CMat,
    /// Φ̄ ⊙ Γ̄.
    pub phi_tilde: CMat,
    /// Per-frequency weighted steering matrices (a_p a_p^H) ⊙ Γ, P×P.
    pub weighted_steering: Vec<CMat>,
}

pub fn dense_wisl_forms(m: usize, w: &WeightProfile) -> Result<DenseForms> {
    let p = w.code_length();
    guard(m * p, FORMS_GUARD)?;
    let n = m * p;
    let gamma = gamma_matrix(w);
    let eigen = gamma_eigen(w);
    let k = eigen.rank();
    let im = identity(m);
    let two_j = Complex64::new(0.0, 2.0);

    let mut gamma_real = Vec::with_capacity(k * k);
    let mut gamma_img = Vec::with_capacity(k * k);
    let mut gamma_bar = CMat::zeros(n * n, n * n);
    for a in 0..k {
        for b in 0..k {
            let x = complexify(&(&eigen.u[a] * eigen.v[b].transpose()));
            let xt = x.transpose();
            let re = kron(&im, &((&x + &xt) * cx(0.5)));
            let ii = kron(&im, &((&x - &xt) / two_j));
            let (vr, vi) = (vec_of(&re), vec_of(&ii));
            let s = cx(eigen.signs[a] * eigen.signs[b]);
            gamma_bar += (&vr * vr.adjoint() + &vi * vi.adjoint()) * s;
            gamma_real.push(re);
            gamma_img.push(ii);
        }
    }

    let grid = SpectrumGrid::new(p);
    let gc = complexify(&gamma);
    let mut phi_bar = CMat::zeros(n * n, n * n);
    let mut weighted_steering = Vec::with_capacity(2 * p);
    for q in 1..=2 * p {
        let a = block_steering(m, p, q);
        let d = vec_of(&(&a * a.adjoint()));
        phi_bar += &d * d.adjoint();
        let s = CVec::from_vec(grid.steering(q));
        weighted_steering.push((&s * s.adjoint()).component_mul(&gc));
    }
    let phi_tilde = phi_bar.component_mul(&gamma_bar);
    Ok(DenseForms {
        num_codes: m,
        code_length: p,
        weights: w.clone(),
        gamma,
        eigen,
        gamma_real,
        gamma_img,
        gamma_bar,
        phi_bar,
        phi_tilde,
        weighted_steering,
    })
}

/// (1/2P) Σ_p ‖Y^H ((a_p a_p^H) ⊙ Γ) Y − γ_0 P I‖².
pub fn wisl_frequency_form(y: &WaveformSet, w: &WeightProfile) -> Result<f64> {
    let (m, p) = (y.num_codes(), y.code_length());
    if w.code_length() != p {
        return Err(shape(p, w.code_length()));
    }
    let grid = SpectrumGrid::new(p);
    let gc = complexify(&gamma_matrix(w));
    let ym = CMat::from_column_slice(p, m, y.as_slice());
    let target = CMat::identity(m, m) * cx(w.gamma()[0] * p as f64);
    let total: f64 = (1..=2 * p)
        .map(|q| {
            let s = CVec::from_vec(grid.steering(q));
            let c = (&s * s.adjoint()).component_mul(&gc);
            (ym.adjoint() * c * &ym - &target).norm_squared()
        })
        .sum();
    Ok(total / (2 * p) as f64)
}

impl DenseForms {
    fn check(&self, y: &WaveformSet) -> Result<()> {
        if y.num_codes() == self.num_codes && y.code_length() == self.code_length {
            Ok(())
        } else {
            Err(shape(
                format!("{}x{}", self.code_length, self.num_codes),
                format!("{}x{}", y.code_length(), y.num_codes()),
            ))
        }
    }

    fn ymat(y: &WaveformSet) -> CMat {
        CMat::from_column_slice(y.code_length(), y.num_codes(), y.as_slice())
    }

    /// Σ_p ‖Y^H C_p Y‖² with C_p = (a_p a_p^H) ⊙ Γ.
    pub fn objective_norm(&self, y: &WaveformSet) -> Result<f64> {
        self.check(y)?;
        let ym = Self::ymat(y);
        Ok(self
            .weighted_steering
            .iter()
            .map(|c| (ym.adjoint() * c * &ym).norm_squared())
            .sum())
    }

    /// Σ_p Σ_{k,k'} σ |(v_k' ⊙ a_p)^H S (u_k ⊙ a_p)|² with the P×P matrix
    /// S = Σ_m y_m y_m^H, and σ = s_k s_k' when `signed`, else 1.
    pub fn objective_bilinear(&self, y: &WaveformSet, signed: bool) -> Result<f64> {
        self.check(y)?;
        let p = self.code_length;
        let ym = Self::ymat(y);
        let s = &ym * ym.adjoint();
        let grid = SpectrumGrid::new(p);
        let e = &self.eigen;
        let mut total = 0.0;
        for q in 1..=2 * p {
            let a = CVec::from_vec(grid.steering(q));
            let left: Vec<CVec> = e.v.iter().map(|v| a.component_mul(&v.map(cx))).collect();
            let right: Vec<CVec> = e.u.iter().map(|u| a.component_mul(&u.map(cx))).collect();
            for (k, r) in right.iter().enumerate() {
                let sr = &s * r;
                for (kk, l) in left.iter().enumerate() {
                    let sigma = if signed { e.signs[k] * e.signs[kk] } else { 1.0 };
                    total += sigma * l.dotc(&sr).norm_sqr();
                }
            }
        }
        Ok(total)
    }

    /// Σ_p Σ_{k,k'} s_k s_k' [(y^H(G_p⊙Γ_real)y)² + (y^H(G_p⊙Γ_img)y)²] and the
    /// largest imaginary part seen in the inner forms.
    pub fn objective_real_imag(&self, y: &WaveformSet) -> Result<(f64, f64)> {
        self.check(y)?;
        let (m, p) = (self.num_codes, self.code_length);
        let yv = stacked(y);
        let k = self.eigen.rank();
        let mut total = 0.0;
        let mut worst_imag = 0.0f64;
        for q in 1..=2 * p {
            let a = block_steering(m, p, q);
            let g = &a * a.adjoint();
            for i in 0..k {
                for j in 0..k {
                    let idx = i * k + j;
                    let r = (yv.adjoint() * g.component_mul(&self.gamma_real[idx]) * &yv)[(0, 0)];
                    let t = (yv.adjoint() * g.component_mul(&self.gamma_img[idx]) * &yv)[(0, 0)];
                    worst_imag = worst_imag.max(r.im.abs()).max(t.im.abs());
                    total += self.eigen.signs[i] * self.eigen.signs[j] * (r.re * r.re + t.re * t.re);
                }
            }
        }
        Ok((total, worst_imag))
    }

    /// vec(yy^H)^H Φ̃ vec(yy^H).
    pub fn objective_lifted(&self, y: &WaveformSet) -> Result<f64> {
        self.check(y)?;
        let x = lift(&stacked(y));
        Ok(x.dotc(&(&self.phi_tilde * &x)).re)
    }

    /// Converts any of the objective forms above to the WISL value.
    pub fn wisl_from_form(&self, value: f64) -> f64 {
        let (m, p) = (self.num_codes as f64, self.code_length as f64);
        let g0 = self.weights.gamma()[0];
        (value - 2.0 * g0 * g0 * m * p * p * p) / (2.0 * p)
    }

    /// Σ_p tr{Y^H C_p Y}.
    pub fn trace_sum(&self, y: &WaveformSet) -> Result<f64> {
        self.check(y)?;
        let ym = Self::ymat(y);
        Ok(self
            .weighted_steering
            .iter()
            .map(|c| (ym.adjoint() * c * &ym).trace().re)
            .sum())
    }

    /// Largest eigenvalue of each of Γ̄, Φ̃ and Γ, and the spectral radius of Γ.
    pub fn spectral_summary(&self) -> SpectralSummary {
        let gamma_ev: Vec<f64> = {
            let mut v: Vec<f64> = self.gamma.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
            v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
            v
        };
        let rho = gamma_ev.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        SpectralSummary {
            gamma_bar_max: *hermitian_eigenvalues(&self.gamma_bar).last().expect("nonempty"),
            phi_tilde_max: *hermitian_eigenvalues(&self.phi_tilde).last().expect("nonempty"),
            gamma_max: *gamma_ev.last().expect("nonempty"),
            gamma_radius: rho,
            num_codes: self.num_codes,
        }
    }

    /// Selection-matrix route: Σ_p Σ_{n,n'} [Γ̄]_{n,n'} Ê_v(n) A_p (y^H Ê_u(n') A_p A_p^H
    /// Ê_v(n') y) A_p^H Ê_u(n), evaluated with selection matrices.
    pub fn triple_sum_b(&self, y: &WaveformSet) -> Result<CMat> {
        self.check(y)?;
        let (m, p) = (self.num_codes, self.code_length);
        let n = m * p;
        let yv = stacked(y);
        let mut out = CMat::zeros(n, n);
        let steer: Vec<CMat> = (1..=2 * p)
            .map(|q| {
                let a = block_steering(m, p, q);
                &a * a.adjoint()
            })
            .collect();
        for l in 0..n * n {
            let (u, v) = super::split_index(l + 1, n);
            for l2 in 0..n * n {
                let gb = self.gamma_bar[(l, l2)];
                if gb.norm() == 0.0 {
                    continue;
                }
                let (u2, v2) = super::split_index(l2 + 1, n);
                for g in &steer {
                    // y^H Ê_u' G Ê_v' y picks a single entry of G.
                    let inner = yv[u2 - 1].conj() * g[(u2 - 1, v2 - 1)] * yv[v2 - 1];
                    // Ê_v G Ê_u keeps entry (v, u).
                    out[(v - 1, u - 1)] += gb * inner * g[(v - 1, u - 1)];
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralSummary {
    pub gamma_bar_max: f64,
    pub phi_tilde_max: f64,
    pub gamma_max: f64,
    pub gamma_radius: f64,
    pub num_codes: usize,
}

/// Dense B with blocks B_ab = Σ_p conj(y_a^H C_p y_b)·C_p, together with the
/// 2P·𝒯(ρ, η) blocks rebuilt from super/sub-diagonal sums of y_a y_b^H.
pub fn dense_b(y: &WaveformSet, w: &WeightProfile) -> Result<(CMat, CMat)> {
    let (m, p) = (y.num_codes(), y.code_length());
    guard(m * p, FORMS_GUARD)?;
    if w.code_length() != p {
        return Err(shape(p, w.code_length()));
    }
    let n = m * p;
    let grid = SpectrumGrid::new(p);
    let gc = complexify(&gamma_matrix(w));
    let ym = CMat::from_column_slice(p, m, y.as_slice());
    let mut b = CMat::zeros(n, n);
    for q in 1..=2 * p {
        let s = CVec::from_vec(grid.steering(q));
        let c = (&s * s.adjoint()).component_mul(&gc);
        let wm = ym.adjoint() * &c * &ym;
        for i in 0..m {
            for j in 0..m {
                let mut blk = b.view_mut((i * p, j * p), (p, p));
                blk += &c * wm[(i, j)].conj();
            }
        }
    }

    let g = w.gamma();
    let mut t = CMat::zeros(n, n);
    for i in 0..m {
        for j in 0..m {
            let z = ym.column(i) * ym.column(j).adjoint();
            let diag_sum = |off: isize| -> Complex64 {
                (0..p)
                    .filter_map(|r| {
                        let c = r as isize + off;
                        (0..p as isize).contains(&c).then(|| z[(r, c as usize)])
                    })
                    .sum()
            };
            for r in 0..p {
                for c in 0..p {
                    let lag = r.abs_diff(c);
                    let g2 = g[lag] * g[lag];
                    // Row r, column c: super-diagonal sums above, sub-diagonal below.
                    let v = if c >= r { diag_sum(lag as isize) } else { diag_sum(-(lag as isize)) };
                    t[(i * p + r, j * p + c)] = v * cx(2.0 * p as f64 * g2);
                }
            }
        }
    }
    Ok((b, t))
}

/// ((τ + MP·c)/2·I − B) y with τ = ‖B − (c/2) y y^H‖_F, all dense.
pub fn dense_shifted_vector(b: &CMat, y: &WaveformSet, curvature: f64) -> (CVec, f64) {
    let yv = stacked(y);
    let n = yv.len();
    let q = b - (&yv * yv.adjoint()) * cx(0.5 * curvature);
    let tau = q.norm();
    let z = (CMat::identity(n, n) * cx(0.5 * (tau + n as f64 * curvature)) - b) * &yv;
    (z, tau)
}
