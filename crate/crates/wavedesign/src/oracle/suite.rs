//! Named equivalence checks between the fast paths and the dense oracle.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::isl::{compute_mu, compute_v, isl_step};
use crate::metrics::{correlations_direct, isl, isl_from, wisl, wisl_from};
use crate::par::Exec;
use crate::spectra::{SpectrumGrid, ToeplitzOperator};
use crate::waveform::{random_unimodular, WaveformSet, WeightProfile};
use crate::wisl::{assemble_b, power_iteration, wisl_step_parts, GammaSpectrum};

#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    /// Lowers both dense size guards to this M·P.
    pub max_size: Option<usize>,
    /// Negates the fast first Toeplitz column before comparison.
    #[doc(hidden)]
    pub flip_v_sign: bool,
}

impl SuiteOptions {
    fn limit(&self, guard: usize) -> usize {
        self.max_size.map_or(guard, |m| m.min(guard))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Informational checks never affect the suite verdict.
    pub gating: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match (self.passed, self.gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "INFO",
        };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

/// True when every gating check passed.
pub fn suite_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed || !c.gating)
}

struct Suite {
    opts: SuiteOptions,
    checks: Vec<Check>,
}

impl Suite {
    fn push(&mut self, name: &'static str, gating: bool, passed: bool, detail: String) {
        self.checks.push(Check {
            name,
            passed,
            gating,
            detail,
        });
    }

    /// Records a max-deviation check; `cases` counts instances actually run.
    fn tol(&mut self, name: &'static str, worst: f64, tol: f64, cases: usize) {
        if cases == 0 {
            self.push(name, true, true, "skipped: no case within size limit".into());
        } else {
            self.push(name, true, worst <= tol, format!("max dev {worst:.3e} (tol {tol:.0e}, {cases} cases)"));
        }
    }
}

pub fn run_suite(opts: &SuiteOptions) -> Vec<Check> {
    let mut s = Suite {
        opts: *opts,
        checks: Vec::new(),
    };
    grid_checks(&mut s);
    isl_checks(&mut s);
    isl_update_checks(&mut s);
    grid_search_check(&mut s);
    wisl_form_checks(&mut s);
    wisl_update_checks(&mut s);
    inequality_checks(&mut s);
    majorant_checks(&mut s);
    s.checks
}

fn vec_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = a.iter().chain(b).map(|z| z.norm()).fold(0.0, f64::max);
    let d = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        d
    } else {
        d / scale
    }
}

fn grid_checks(s: &mut Suite) {
    let mut worst = 0.0f64;
    let ps = [1, 2, 3, 8, 13, 32];
    for &p in &ps {
        let a = steering_matrix(p);
        let gram = &a * a.adjoint();
        worst = worst.max(rel_diff(&gram, &(CMat::identity(p, p) * cx(2.0 * p as f64))));
    }
    s.tol("grid gram identity", worst, 1e-12, ps.len());
}

const PHI_CASES: [(usize, usize); 8] = [(1, 2), (2, 2), (1, 4), (2, 3), (3, 3), (2, 4), (3, 4), (1, 12)];

fn isl_checks(s: &mut Suite) {
    let mut worst_freq = 0.0f64;
    let mut worst_direct = 0.0f64;
    let mut n = 0;
    for (m, p) in [(1, 13), (2, 8), (3, 16), (2, 33), (4, 5)] {
        for seed in 1..=3 {
            let y = random_unimodular(m, p, seed);
            let direct = isl_from(&correlations_direct(&y));
            worst_freq = worst_freq.max(rel_scalar(isl_frequency_form(&y), direct));
            worst_direct = worst_direct.max(rel_scalar(isl(&y), direct));
            n += 1;
        }
    }
    s.tol("isl time vs frequency form", worst_freq, 1e-8, n);
    s.tol("isl fast vs direct sum", worst_direct, 1e-10, n);

    let lim = s.opts.limit(PHI_GUARD);
    let (mut w_quad, mut w_isl, mut w_eig, mut w_lift) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut floor_ok = true;
    let mut psd_ok = true;
    let mut n = 0;
    for (m, p) in PHI_CASES.into_iter().filter(|(m, p)| m * p <= lim) {
        let phi = dense_phi(m, p).expect("guarded");
        let ev = hermitian_eigenvalues(&phi);
        let want = 2.0 * (m * p * p) as f64;
        w_eig = w_eig.max(rel_scalar(*ev.last().expect("nonempty"), want));
        psd_ok &= is_hermitian(&phi, 1e-12) && ev[0] >= -1e-8 * want;
        for seed in 1..=3 {
            let y = random_unimodular(m, p, 10 + seed);
            let q = quartic_isl(&y).expect("guarded");
            let yv = stacked(&y);
            let x = lift(&yv);
            let l = x.dotc(&(&phi * &x)).re;
            w_quad = w_quad.max(rel_scalar(q, l));
            w_isl = w_isl.max(rel_scalar(isl_from_quartic(q, m, p), isl(&y)));
            floor_ok &= q >= 2.0 * (m * m * p * p * p) as f64 * (1.0 - 1e-12);
            let row = CMat::from_row_slice(1, yv.len(), yv.as_slice());
            let alt = kron(&row, &identity(yv.len())).adjoint() * &yv;
            let mp = (m * p) as f64;
            w_lift = w_lift
                .max((&x - alt).norm() / x.norm())
                .max(rel_scalar(x.norm_squared(), mp * mp));
        }
        n += 1;
    }
    s.tol("quartic vs lifted quadratic", w_quad, 1e-9, n);
    s.tol("isl from quartic expansion", w_isl, 1e-8, n);
    s.tol("lifting top eigenvalue 2MP^2", w_eig, 1e-6, n);
    s.tol("lift identities", w_lift, 1e-9, n);
    s.push("lifting hermitian psd", true, psd_ok, format!("{n} sizes"));
    s.push("quartic cauchy-schwarz floor", true, floor_ok, format!("{n} sizes"));
}

fn isl_update_checks(s: &mut Suite) {
    let (mut w_mu, mut w_v, mut w_ty, mut w_next) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let cases = [(1, 2), (2, 4), (3, 5), (2, 9), (1, 16), (2, 7)];
    for &(m, p) in &cases {
        let grid = SpectrumGrid::new(p);
        let y = random_unimodular(m, p, 21);
        let dense = dense_isl_update(&y);
        let mu = compute_mu(&grid, &y, Exec::Sequential);
        w_mu = w_mu.max(
            mu.iter()
                .zip(&dense.mu)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
                / dense.mu_max,
        );
        let mut v = compute_v(&grid, &mu, m).expect("grid-sized");
        if s.opts.flip_v_sign {
            v.iter_mut().for_each(|z| *z = -*z);
        }
        w_v = w_v.max(vec_dev(&v, &dense.first_column()));
        let ty = ToeplitzOperator::hermitian(v)
            .apply(&grid, y.as_slice(), Exec::Sequential)
            .expect("shape");
        w_ty = w_ty.max(vec_dev(&ty, dense.ty.as_slice()));
        let next = if s.opts.flip_v_sign {
            crate::waveform::phase_project(&ty, &y).expect("shape")
        } else {
            isl_step(&grid, &y, Exec::Sequential)
        };
        w_next = w_next.max(vec_dev(next.as_slice(), dense.next.as_slice()));
    }
    s.tol("isl spectrum mu fast vs dense", w_mu, 1e-8, cases.len());
    s.tol("isl toeplitz column fast vs dense", w_v, 1e-8, cases.len());
    s.tol("isl T*Y fast vs dense", w_ty, 1e-8, cases.len());
    s.tol("isl update fast vs dense", w_next, 1e-8, cases.len());
}

fn grid_search_check(s: &mut Suite) {
    if s.opts.limit(usize::MAX) < 3 {
        s.push("exhaustive phase grid M=1 P=3", true, true, "skipped: below size limit".into());
        return;
    }
    let points = 64;
    let mut ok = true;
    let (mut gap, mut excess) = (0.0f64, f64::NEG_INFINITY);
    for seed in 1..=3 {
        let y = random_unimodular(1, 3, 40 + seed);
        let g = grid_search_update(&y, points).expect("tiny case");
        let e = (g.update_value - g.best_value) / g.best_value.abs();
        excess = excess.max(e);
        gap = gap.max(g.max_phase_gap);
        ok &= e <= 1e-12 && g.max_phase_gap <= PI / points as f64 + 1e-12;
    }
    s.push(
        "exhaustive phase grid M=1 P=3",
        true,
        ok,
        format!("64^3 points, 3 seeds; max phase gap {gap:.4} (bound {:.4}), update excess {excess:.2e}", PI / 64.0),
    );
}

struct WislCase {
    m: usize,
    w: WeightProfile,
    label: &'static str,
}

fn wisl_cases(lim: usize) -> Vec<WislCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let random: Vec<f64> = (0..4).map(|_| rng.gen_range(0.0..1.0)).collect();
    let band = |p, b| WeightProfile::band(p, b).expect("band < P");
    let zero_but_first = |p: usize| {
        let mut g = vec![0.0; p];
        g[0] = 1.0;
        WeightProfile::new(g).expect("valid")
    };
    let all = vec![
        WislCase { m: 1, w: band(4, 1), label: "M1 P4 band1" },
        WislCase { m: 2, w: band(4, 1), label: "M2 P4 band1" },
        WislCase { m: 3, w: band(3, 1), label: "M3 P3 band1" },
        WislCase { m: 1, w: band(9, 1), label: "M1 P9 band1" },
        WislCase { m: 1, w: band(8, 2), label: "M1 P8 band2" },
        WislCase { m: 2, w: zero_but_first(4), label: "M2 P4 lag0" },
        WislCase { m: 3, w: zero_but_first(3), label: "M3 P3 lag0" },
        WislCase { m: 1, w: zero_but_first(9), label: "M1 P9 lag0" },
        WislCase { m: 2, w: WeightProfile::ones(4), label: "M2 P4 ones" },
        WislCase { m: 1, w: WeightProfile::new(vec![1.0, 0.0, 1.0, 0.0, 1.0]).expect("valid"), label: "M1 P5 alternating" },
        WislCase { m: 2, w: WeightProfile::new(random).expect("valid"), label: "M2 P4 random" },
    ];
    all.into_iter().filter(|c| c.m * c.w.code_length() <= lim).collect()
}

fn wisl_form_checks(s: &mut Suite) {
    let lim = s.opts.limit(FORMS_GUARD);
    let cases = wisl_cases(lim);
    let (mut w_forms, mut w_imag, mut w_trace, mut w_ones, mut w_fact) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut unsigned = Vec::new();
    let mut spectra = Vec::new();
    let mut psd_ok = true;
    let mut herm_ok = true;
    let mut psd_cases = 0;
    let mut indefinite = Vec::new();
    let mut bar_ok = true;
    let mut curv_ok = true;
    let mut radius_dev = 0.0f64;
    let mut identity_holds = 0;
    let mut ones_cases = 0;
    for c in &cases {
        let forms = dense_wisl_forms(c.m, &c.w).expect("guarded");
        let p = c.w.code_length();
        w_fact = w_fact.max((forms.eigen.reconstruct() - &forms.gamma).abs().max());
        let mut worst_unsigned = 0.0f64;
        for seed in 1..=3 {
            let y = random_unimodular(c.m, p, 50 + seed);
            let direct = wisl_from(&correlations_direct(&y), &c.w);
            let fast = wisl(&y, &c.w).expect("matching weights");
            let lifted = forms.wisl_from_form(forms.objective_lifted(&y).expect("shape"));
            let norm = forms.wisl_from_form(forms.objective_norm(&y).expect("shape"));
            let (ri, imag) = forms.objective_real_imag(&y).expect("shape");
            let signed = forms.wisl_from_form(forms.objective_bilinear(&y, true).expect("shape"));
            let freq = wisl_frequency_form(&y, &c.w).expect("shape");
            // Lag-zero-only single waveforms have a zero objective.
            let den = direct.abs().max(1.0);
            for v in [fast, lifted, norm, forms.wisl_from_form(ri), signed, freq] {
                w_forms = w_forms.max((v - direct).abs() / den);
            }
            w_imag = w_imag.max(imag / ri.abs().max(1.0));
            let lit = forms.wisl_from_form(forms.objective_bilinear(&y, false).expect("shape"));
            worst_unsigned = worst_unsigned.max(rel_scalar(lit, direct));
            let g0 = c.w.gamma()[0];
            let want = 2.0 * g0 * (c.m * p * p) as f64;
            w_trace = w_trace.max(rel_scalar(forms.trace_sum(&y).expect("shape"), want));
            if c.w.is_ones() {
                w_ones = w_ones.max(rel_scalar(freq, isl_frequency_form(&y)));
            }
        }
        if c.w.is_ones() {
            ones_cases += 1;
        }
        if forms.eigen.signs.iter().any(|&x| x < 0.0) {
            unsigned.push(format!("{} {:.2e}", c.label, worst_unsigned));
        }

        let top_bar = hermitian_eigenvalues(&forms.gamma_bar);
        let top_phi = hermitian_eigenvalues(&forms.phi_tilde);
        let scale = top_bar.last().expect("nonempty").abs().max(1.0);
        herm_ok &= is_hermitian(&forms.gamma_bar, 1e-12) && is_hermitian(&forms.phi_tilde, 1e-12);
        let phi_scale = top_phi.last().expect("nonempty").abs().max(1.0);
        let psd = top_bar[0] >= -1e-8 * scale && top_phi[0] >= -1e-8 * phi_scale;
        if forms.eigen.signs.iter().all(|&x| x > 0.0) {
            psd_ok &= psd;
            psd_cases += 1;
        } else {
            indefinite.push(format!("{} min eig {:.3e}/{:.3e}", c.label, top_bar[0] / scale, top_phi[0] / phi_scale));
        }

        let sum = forms.spectral_summary();
        let m_rho2 = c.m as f64 * sum.gamma_radius * sum.gamma_radius;
        bar_ok &= sum.gamma_bar_max <= m_rho2 * (1.0 + 1e-8);
        if rel_scalar(sum.gamma_bar_max, sum.gamma_max * sum.gamma_max) <= 1e-8 {
            identity_holds += 1;
        }
        spectra.push(format!(
            "{}: lmax(Gbar)={:.4} lmax(G)^2={:.4} rho^2={:.4} M*rho^2={:.4}",
            c.label,
            sum.gamma_bar_max,
            sum.gamma_max * sum.gamma_max,
            sum.gamma_radius * sum.gamma_radius,
            m_rho2
        ));

        let spec = GammaSpectrum::new(&c.w, c.m);
        if let Ok(est) = power_iteration(&c.w) {
            radius_dev = radius_dev.max(rel_scalar(est.value, sum.gamma_radius));
        }
        let n2 = forms.phi_tilde.nrows();
        let gap = CMat::identity(n2, n2) * cx(spec.curvature) - &forms.phi_tilde;
        curv_ok &= hermitian_eigenvalues(&gap)[0] >= -1e-8 * spec.curvature;
    }
    let n = cases.len();
    s.tol("wisl direct vs fast vs frequency vs lifted forms", w_forms, 1e-8, n);
    s.tol("wisl inner quadratic forms real", w_imag, 1e-9, n);
    s.tol("wisl trace identity 2*g0*M*P^2", w_trace, 1e-10, n);
    s.tol("wisl all-ones equals isl frequency form", w_ones, 1e-8, ones_cases);
    s.tol("weight matrix signed factorization", w_fact, 1e-12, n);
    s.tol("weight radius power iteration vs dense", radius_dev, 1e-8, n);
    s.push("weighted liftings hermitian", true, herm_ok, format!("{n} cases"));
    s.push("weighted liftings psd for psd weights", true, psd_ok, format!("{psd_cases} cases"));
    s.push(
        "weighted liftings psd for indefinite weights",
        false,
        indefinite.is_empty(),
        if indefinite.is_empty() {
            "no indefinite case".into()
        } else {
            format!("relative min eigenvalue of Gbar/Phi~: {}", indefinite.join(", "))
        },
    );
    s.push("lmax(Gbar) <= M*rho(G)^2", true, bar_ok, spectra.join("; "));
    s.push(
        "lmax(Gbar) = lmax(G)^2",
        false,
        identity_holds == n,
        format!("holds in {identity_holds} of {n} cases"),
    );
    s.push("curvature bound covers lifted weighting", true, curv_ok, format!("{n} cases"));
    s.push(
        "unsigned bilinear sum on indefinite weights",
        false,
        unsigned.is_empty(),
        if unsigned.is_empty() {
            "no indefinite case".into()
        } else {
            format!("deviation without eigenvalue signs: {}", unsigned.join(", "))
        },
    );
}

fn dense_of(b: &crate::wisl::BlockToeplitzB) -> CMat {
    let n = b.num_codes() * b.code_length();
    CMat::from_row_slice(n, n, &b.to_dense())
}

fn wisl_update_checks(s: &mut Suite) {
    let lim = s.opts.limit(FORMS_GUARD);
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    let random = WeightProfile::new((0..4).map(|_| rng.gen_range(0.0..1.0)).collect()).expect("valid");
    let cases: Vec<(usize, WeightProfile)> = vec![
        (2, WeightProfile::band(4, 2).expect("valid")),
        (2, random),
        (3, WeightProfile::band(3, 1).expect("valid")),
        (1, WeightProfile::band(9, 4).expect("valid")),
        (2, WeightProfile::ones(4)),
    ]
    .into_iter()
    .filter(|(m, w)| m * w.code_length() <= lim)
    .collect();
    let (mut w_b, mut w_gen, mut w_z, mut w_tau, mut w_tan, mut w_lit) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut herm = true;
    let mut tau_ok = true;
    for (m, w) in &cases {
        let p = w.code_length();
        let grid = SpectrumGrid::new(p);
        let spec = GammaSpectrum::new(w, *m);
        let forms = dense_wisl_forms(*m, w).expect("guarded");
        for seed in 1..=2 {
            let y = random_unimodular(*m, p, 60 + seed);
            let (b, gen) = dense_b(&y, w).expect("guarded");
            let fast = dense_of(&assemble_b(&grid, &y, w, Exec::Sequential).expect("shape"));
            w_b = w_b.max(rel_diff(&fast, &b));
            w_gen = w_gen.max(rel_diff(&gen, &b));
            herm &= is_hermitian(&b, 1e-10);
            let (_, z, tau) = wisl_step_parts(&grid, &y, &spec, Exec::Sequential);
            let (zd, taud) = dense_shifted_vector(&b, &y, spec.curvature);
            w_z = w_z.max(vec_dev(&z, zd.as_slice()));
            w_tau = w_tau.max(rel_scalar(tau, taud));
            let yv = stacked(&y);
            let n = yv.len();
            let q = &b - (&yv * yv.adjoint()) * cx(0.5 * spec.curvature);
            tau_ok &= taud >= hermitian_eigenvalues(&q).last().expect("nonempty") - 1e-9 * taud;
            let lit = forms.triple_sum_b(&y).expect("guarded");
            let a = yv.dotc(&(&lit * &yv)).re;
            let c = yv.dotc(&(&b * &yv)).re;
            w_tan = w_tan.max(rel_scalar(a, c));
            w_lit = w_lit.max(rel_diff(&lit, &b));
            let _ = n;
        }
    }
    let n = cases.len();
    s.tol("wisl B fast vs dense", w_b, 1e-8, n);
    s.tol("wisl B from super/sub-diagonal sums", w_gen, 1e-10, n);
    s.tol("wisl z fast vs dense", w_z, 1e-8, n);
    s.tol("wisl tau fast vs dense", w_tau, 1e-9, n);
    s.push("wisl B hermitian", true, herm, format!("{n} cases"));
    s.push("wisl tau bounds top eigenvalue", true, tau_ok, format!("{n} cases"));
    s.tol("triple-sum B quadratic form at expansion point", w_tan, 1e-9, n);
    s.push(
        "triple-sum B equals block B entrywise",
        false,
        w_lit <= 1e-8,
        format!("max dev {w_lit:.3e}; same quadratic form at the expansion point, different polarization"),
    );

    if 2 * 4 <= lim {
        let (m, p) = (2, 4);
        let mut data = Vec::new();
        for a in 0..m {
            for n in 0..p {
                data.push(Complex64::from_polar(1.0, std::f64::consts::TAU * (a * n) as f64 / p as f64));
            }
        }
        let y = WaveformSet::from_column_major(p, m, data, 1e-12).expect("unimodular");
        let w = WeightProfile::new(vec![1.0, 0.0, 0.0, 0.0]).expect("valid");
        let (b, _) = dense_b(&y, &w).expect("guarded");
        let worst = b
            .view((0, p), (p, p))
            .iter()
            .chain(b.view((p, 0), (p, p)).iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        s.tol("lag-zero B cross blocks vanish for orthogonal columns", worst, 1e-9, 1);
    } else {
        s.tol("lag-zero B cross blocks vanish for orthogonal columns", 0.0, 1e-9, 0);
    }
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> CVec {
    random_complex(rng, n, 1).column(0).into_owned()
}

fn inequality_checks(s: &mut Suite) {
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    let mut worst = f64::INFINITY;
    let mut ok = true;
    let id = hadamard_check(&[random_vec(&mut rng, 8), random_vec(&mut rng, 8)], &CMat::identity(8, 8));
    ok &= id.holds();
    for i in 0..100 {
        let h = random_hermitian(&mut rng, 8);
        let h = if i % 2 == 0 { h } else { -h };
        let d: Vec<CVec> = (0..3).map(|_| random_vec(&mut rng, 8)).collect();
        let r = hadamard_check(&d, &h);
        ok &= r.holds();
        worst = worst.min(r.min_eigenvalue / r.scale);
    }
    let lim = s.opts.limit(FORMS_GUARD);
    let mut applied = 0;
    for c in wisl_cases(lim.min(8)) {
        let forms = dense_wisl_forms(c.m, &c.w).expect("guarded");
        let p = c.w.code_length();
        let d: Vec<CVec> = (1..=2 * p)
            .map(|q| {
                let a = block_steering(c.m, p, q);
                vec_of(&(&a * a.adjoint()))
            })
            .collect();
        let r = hadamard_check(&d, &forms.gamma_bar);
        ok &= r.holds();
        applied += 1;
    }
    s.push(
        "hadamard psd inequality",
        true,
        ok,
        format!("100 random N=8 K=3 (half negated) + identity + {applied} lifted weightings; min gap/|H| {worst:.3e}"),
    );

    let mut err = 0.0f64;
    let mut decomp = true;
    for n in [3, 4, 9, 16] {
        let f = random_complex(&mut rng, n, n);
        let c = random_complex(&mut rng, n, n);
        let r = selection_check(&f, &c);
        err = err.max(r.identity_error);
        decomp &= r.decomposition.unwrap_or(true);
    }
    let i4 = CMat::identity(4, 4);
    err = err.max(selection_check(&i4, &i4).identity_error);
    decomp &= split_index(1, 2) == (1, 1);
    s.tol("hadamard via selection matrix", err, 1e-12, 5);
    s.push("selection matrix kronecker split", true, decomp, "N = 4, 9, 16".into());

    let a = random_complex(&mut rng, 6, 6);
    let q = &a * a.adjoint();
    let points: Vec<(CVec, CVec)> = (0..200).map(|_| (random_vec(&mut rng, 6), random_vec(&mut rng, 6))).collect();
    let r = curvature_check(&q, &points);
    s.push(
        "quadratic majorant with hessian curvature",
        true,
        r.hessian_gap >= -1e-10 && r.tangency <= 1e-10,
        format!("min gap {:.3e}, tangency {:.1e}", r.hessian_gap, r.tangency),
    );
    s.push(
        "quadratic majorant with top-eigenvalue curvature",
        false,
        r.eigen_gap >= -1e-10,
        format!("min gap {:.3e}; G must dominate the Hessian 2Q, not Q", r.eigen_gap),
    );
}

/// Expansion points and evaluation points: nearby perturbations and
/// independent draws.
fn majorant_points(m: usize, p: usize, seed: u64, count: usize) -> Vec<(WaveformSet, WaveformSet)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let y0 = random_unimodular(m, p, seed * 1000 + i as u64);
            let eps = [1e-3, 1e-1, 1.0, f64::NAN][i % 4];
            let y = if eps.is_nan() {
                random_unimodular(m, p, seed * 1000 + 500 + i as u64)
            } else {
                let ph: Vec<f64> = y0.as_slice().iter().map(|z| z.arg() + eps * rng.gen_range(-1.0..1.0)).collect();
                WaveformSet::from_phases(p, m, &ph).expect("finite phases")
            };
            (y0, y)
        })
        .collect()
}

struct MajorantStats {
    tangency: f64,
    full: f64,
    stated: f64,
}

impl Default for MajorantStats {
    fn default() -> Self {
        Self {
            tangency: 0.0,
            full: f64::INFINITY,
            stated: f64::INFINITY,
        }
    }
}

impl MajorantStats {
    fn add(&mut self, at: MajorantValue, v: MajorantValue) {
        let den = at.objective.abs().max(1.0);
        self.tangency = self
            .tangency
            .max((at.full - at.objective).abs() / den)
            .max((at.stated - at.objective).abs() / den);
        let (st, fu) = v.gaps();
        self.full = self.full.min(fu);
        self.stated = self.stated.min(st);
    }
}

fn report_majorant(s: &mut Suite, full: &'static str, stated: &'static str, st: &MajorantStats, n: usize) {
    if n == 0 {
        s.push(full, true, true, "skipped: no case within size limit".into());
        return;
    }
    s.push(
        full,
        true,
        st.tangency <= 1e-8 && st.full >= -1e-8,
        format!("{n} points; tangency {:.1e}, min gap {:.3e}", st.tangency, st.full),
    );
    s.push(stated, false, st.stated >= -1e-8, format!("min gap {:.3e}", st.stated));
}

fn majorant_checks(s: &mut Suite) {
    let lim = s.opts.limit(PHI_GUARD);
    let mut q4 = MajorantStats::default();
    let mut q2 = MajorantStats::default();
    let mut n = 0;
    for (m, p) in [(1, 3), (1, 4), (2, 3), (1, 6), (2, 4)].into_iter().filter(|(m, p)| m * p <= lim) {
        for (y0, y) in majorant_points(m, p, (m * 10 + p) as u64, 20) {
            let at = isl_majorants(&y0, &y0).expect("guarded");
            let v = isl_majorants(&y0, &y).expect("guarded");
            q4.add(at.lifted, v.lifted);
            q2.add(at.quadratic, v.quadratic);
            n += 1;
        }
    }
    report_majorant(s, "isl lifted majorant", "isl lifted majorant, stated curvature", &q4, n);
    report_majorant(s, "isl quadratic majorant", "isl quadratic majorant, stated curvature", &q2, n);

    let lim = s.opts.limit(FORMS_GUARD);
    let mut l4 = MajorantStats::default();
    let mut l2 = MajorantStats::default();
    let mut n = 0;
    for c in wisl_cases(lim) {
        let forms = dense_wisl_forms(c.m, &c.w).expect("guarded");
        let spec = GammaSpectrum::new(&c.w, c.m);
        for (y0, y) in majorant_points(c.m, c.w.code_length(), 300 + n as u64, 10) {
            let at = wisl_majorants(&forms, &spec, &y0, &y0).expect("guarded");
            let v = wisl_majorants(&forms, &spec, &y0, &y).expect("guarded");
            l4.add(at.lifted, v.lifted);
            l2.add(at.quadratic, v.quadratic);
            n += 1;
        }
    }
    report_majorant(s, "wisl lifted majorant", "wisl lifted majorant, stated curvature", &l4, n);
    report_majorant(s, "wisl quadratic majorant", "wisl quadratic majorant, stated curvature", &l2, n);
}
