//! Generic matrix inequalities and identities behind both majorants.

use super::{cx, hermitian_eigenvalues, kron, re_form, CMat, CVec};

/// 1-based (column, row) of linear column-major index `n` in an r×r matrix.
pub fn split_index(n: usize, r: usize) -> (usize, usize) {
    ((n - 1) / r + 1, (n - 1) % r + 1)
}

/// N×N matrix with a single one at diagonal position `n` (1-based).
fn single_diagonal(size: usize, n: usize) -> CMat {
    let mut e = CMat::zeros(size, size);
    e[(n - 1, n - 1)] = cx(1.0);
    e
}

/// E = [Ē_1, …, Ē_N], N×N².
pub fn selection_matrix(size: usize) -> CMat {
    let mut e = CMat::zeros(size, size * size);
    for n in 1..=size {
        e.view_mut((0, (n - 1) * size), (size, size))
            .copy_from(&single_diagonal(size, n));
    }
    e
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SelectionReport {
    /// Largest entrywise |F⊙C − E(C⊗F)E^H|.
    pub identity_error: f64,
    /// Whether every Ē_n equals Ê_u(n) ⊗ Ê_v(n); `None` unless √N is integral.
    pub decomposition: Option<bool>,
}

pub fn selection_check(f: &CMat, c: &CMat) -> SelectionReport {
    let size = f.nrows();
    assert!(f.is_square() && c.shape() == f.shape() && size <= 16, "selection check needs equal square inputs, N <= 16");
    let e = selection_matrix(size);
    let rhs = &e * kron(c, f) * e.adjoint();
    let lhs = f.component_mul(c);
    let identity_error = lhs.iter().zip(rhs.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let r = (size as f64).sqrt().round() as usize;
    let decomposition = (r * r == size).then(|| {
        (1..=size).all(|n| {
            let (u, v) = split_index(n, r);
            kron(&single_diagonal(r, u), &single_diagonal(r, v)) == single_diagonal(size, n)
        })
    });
    SelectionReport {
        identity_error,
        decomposition,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HadamardReport {
    /// Smallest eigenvalue of λ_max(H)·D − Σ_k (d_k d_k^H) ⊙ H.
    pub min_eigenvalue: f64,
    /// Spectral norm of H.
    pub scale: f64,
}

impl HadamardReport {
    pub fn holds(&self) -> bool {
        self.min_eigenvalue >= -1e-8 * self.scale
    }
}

pub fn hadamard_check(d: &[CVec], h: &CMat) -> HadamardReport {
    let size = h.nrows();
    assert!(size <= 64, "hadamard check is limited to N <= 64");
    let hev = hermitian_eigenvalues(h);
    let top = *hev.last().expect("nonempty");
    let scale = hev.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let mut lhs = CMat::zeros(size, size);
    let mut diag = vec![0.0; size];
    for dk in d {
        lhs += (dk * dk.adjoint()).component_mul(h);
        for (acc, z) in diag.iter_mut().zip(dk.iter()) {
            *acc += z.norm_sqr();
        }
    }
    let dmat = CMat::from_diagonal(&CVec::from_iterator(size, diag.iter().map(|&x| cx(x))));
    let gap = dmat * cx(top) - lhs;
    HadamardReport {
        min_eigenvalue: hermitian_eigenvalues(&gap)[0],
        scale,
    }
}

/// g(x) = ½x^H G x + x0^H(½G − Q)x0 + 2Re{x^H(Q − ½G)x0}.
pub(crate) fn quadratic_majorant(x: &CVec, x0: &CVec, q: &CMat, g: &CMat) -> f64 {
    let half = g * cx(0.5);
    let d = q - &half;
    re_form(x, &half, x) - re_form(x0, &d, x0) + 2.0 * re_form(x, &d, x0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvatureReport {
    /// min (g − f)/|f| with G = λ_max(2Q)·I, the Hessian bound.
    pub hessian_gap: f64,
    /// min (g − f)/|f| with G = λ_max(Q)·I.
    pub eigen_gap: f64,
    /// max |g − f|/|f| at the expansion point, over both choices.
    pub tangency: f64,
}

/// Samples the majorant of f(x) = x^H Q x at `points` pairs (x0, x).
pub fn curvature_check(q: &CMat, points: &[(CVec, CVec)]) -> CurvatureReport {
    let n = q.nrows();
    let top = *hermitian_eigenvalues(q).last().expect("nonempty");
    let g_hess = CMat::identity(n, n) * cx(2.0 * top);
    let g_eig = CMat::identity(n, n) * cx(top);
    let mut out = CurvatureReport {
        hessian_gap: f64::INFINITY,
        eigen_gap: f64::INFINITY,
        tangency: 0.0,
    };
    for (x0, x) in points {
        let f = re_form(x, q, x);
        let f0 = re_form(x0, q, x0);
        let den = f.abs().max(f64::MIN_POSITIVE);
        out.hessian_gap = out.hessian_gap.min((quadratic_majorant(x, x0, q, &g_hess) - f) / den);
        out.eigen_gap = out.eigen_gap.min((quadratic_majorant(x, x0, q, &g_eig) - f) / den);
        for g in [&g_hess, &g_eig] {
            let t = (quadratic_majorant(x0, x0, q, g) - f0).abs() / f0.abs().max(f64::MIN_POSITIVE);
            out.tangency = out.tangency.max(t);
        }
    }
    out
}
