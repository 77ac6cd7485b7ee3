use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::Instant;

use wavedesign::accel::SQUAREM_VARIANT;
use wavedesign::metrics::{correlations, isl_from, wisl_from};
use wavedesign::oracle::{run_suite, suite_passed, SuiteOptions};
use wavedesign::par::map_range;
use wavedesign::waveform::{db10, RNG_ALGORITHM};
use wavedesign::{design, DesignConfig, Exec, Solution, Status, StopRule, WeightProfile};

use crate::args::{Algo, BenchArgs, DesignArgs, EvalArgs, ExecKind, SolverArgs, StopKind, VerifyArgs};
use crate::csvio::{self, fmt_f64};
use crate::error::{CliError, CliResult};
use crate::meta::RunMetadata;

/// Solver exit status.
pub const EXIT_CONVERGED: i32 = 0;
pub const EXIT_MAX_ITERS: i32 = 2;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))
}

fn create(path: &Path) -> CliResult<io::BufWriter<fs::File>> {
    fs::File::create(path)
        .map(io::BufWriter::new)
        .map_err(|e| CliError::io(path.display(), e))
}

fn write_to(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> CliResult<()> {
    match path {
        Some(p) => {
            let mut w = create(p)?;
            f(&mut w).and_then(|_| w.flush()).map_err(|e| CliError::io(p.display(), e))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock).map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

fn stop_rule(kind: StopKind, tol: Option<f64>) -> StopRule {
    match kind {
        StopKind::RelObj => StopRule::RelativeObjective(tol.unwrap_or(StopRule::DEFAULT_RELATIVE_TOL)),
        StopKind::Frob => StopRule::FrobeniusDiff(tol.unwrap_or(StopRule::DEFAULT_FROBENIUS_TOL)),
    }
}

fn exec(kind: ExecKind) -> Exec {
    match kind {
        ExecKind::Seq => Exec::Sequential,
        ExecKind::Par => Exec::Parallel,
    }
}

fn exec_label(e: Exec) -> String {
    if e == Exec::Parallel && !Exec::parallel_enabled() {
        "parallel (sequential build)".into()
    } else {
        e.name().into()
    }
}

/// Weight source chosen on the command line, checked against the algorithm.
enum WeightSource {
    None,
    Band(usize),
    File(String, WeightProfile),
}

impl WeightSource {
    fn from_args(s: &SolverArgs) -> CliResult<Self> {
        let src = match (&s.weights, s.weight_band) {
            (Some(path), _) => {
                let w = csvio::parse_weights(&read(path)?, &path.display().to_string())?;
                WeightSource::File(path.display().to_string(), w)
            }
            (None, Some(b)) => WeightSource::Band(b),
            (None, None) => WeightSource::None,
        };
        match (s.algo, &src) {
            (Algo::Isl, WeightSource::None) | (Algo::Wisl, WeightSource::Band(_) | WeightSource::File(..)) => Ok(src),
            (Algo::Isl, _) => Err(CliError::Usage("--algo isl takes no weights; use --algo wisl".into())),
            (Algo::Wisl, _) => Err(CliError::Usage("--algo wisl needs --weights FILE or --weight-band B".into())),
        }
    }

    fn label(&self) -> String {
        match self {
            WeightSource::None => "none".into(),
            WeightSource::Band(b) => format!("band:{b}"),
            WeightSource::File(path, _) => format!("file:{path}"),
        }
    }

    fn profile(&self, length: usize) -> CliResult<Option<WeightProfile>> {
        match self {
            WeightSource::None => Ok(None),
            WeightSource::Band(b) if *b >= length => Err(CliError::Usage(format!(
                "--weight-band {b} must be smaller than the length {length}"
            ))),
            WeightSource::Band(b) => Ok(Some(WeightProfile::band(length, *b)?)),
            WeightSource::File(path, w) if w.code_length() != length => Err(CliError::Usage(format!(
                "{path} holds {} weights but the length is {length}",
                w.code_length()
            ))),
            WeightSource::File(_, w) => Ok(Some(w.clone())),
        }
    }
}

fn config(num_codes: usize, length: usize, seed: u64, s: &SolverArgs, weights: Option<WeightProfile>) -> CliResult<DesignConfig> {
    if num_codes == 0 || length == 0 {
        return Err(CliError::Usage("--waveforms and --length must be positive".into()));
    }
    if s.max_iters == 0 {
        return Err(CliError::Usage("--max-iters must be at least 1".into()));
    }
    if let Some(t) = s.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be positive and finite, got {t}")));
        }
    }
    let cfg = DesignConfig {
        num_codes,
        code_length: length,
        weights,
        seed,
        accelerate: s.accelerate(),
        stop_rule: stop_rule(s.stop, s.tol),
        max_iters: s.max_iters,
        exec: exec(s.exec),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Converged => "converged",
        Status::MaxIterations => "max-iters",
    }
}

pub fn run_metadata(cfg: &DesignConfig, algo: Algo, weights: &str, sol: &Solution, timing: bool) -> RunMetadata {
    let fin = sol.final_objective();
    RunMetadata {
        algorithm: algo.name().into(),
        waveforms: cfg.num_codes,
        length: cfg.code_length,
        seed: cfg.seed,
        accelerate: cfg.accelerate,
        squarem: SQUAREM_VARIANT.into(),
        rng: RNG_ALGORITHM.into(),
        stop: cfg.stop_rule.name().into(),
        tol: cfg.stop_rule.tol(),
        max_iters: cfg.max_iters,
        weights: weights.into(),
        exec: exec_label(cfg.exec),
        status: status_name(sol.status).into(),
        iterations: sol.iterations,
        elapsed_ns: if timing { sol.elapsed_ns } else { 0 },
        final_objective: fin,
        final_objective_db: db10(fin),
    }
}

pub fn cmd_design(a: &DesignArgs) -> CliResult<i32> {
    let weights = WeightSource::from_args(&a.solver)?;
    let cfg = config(a.waveforms, a.length, a.seed, &a.solver, weights.profile(a.length)?)?;
    let sol = design(&cfg)?;
    let timing = !a.no_timing;
    let meta = run_metadata(&cfg, a.solver.algo, &weights.label(), &sol, timing);

    write_to(a.out.as_deref(), |w| csvio::write_waveforms(w, Some(&meta), &sol.waveforms))?;
    if let Some(path) = &a.trace {
        write_to(Some(path), |w| csvio::write_trace(w, Some(&meta), &sol.trace, timing))?;
    }
    eprintln!(
        "{}: {} after {} iterations, objective {} ({:.4} dB)",
        meta.algorithm, meta.status, meta.iterations, meta.final_objective, meta.final_objective_db
    );
    Ok(match sol.status {
        Status::Converged => EXIT_CONVERGED,
        Status::MaxIterations => EXIT_MAX_ITERS,
    })
}

pub fn cmd_eval(a: &EvalArgs) -> CliResult<i32> {
    let name = a.input.display().to_string();
    let (meta, y) = csvio::parse_waveforms(&read(&a.input)?, &name)?;
    let c = correlations(&y);
    let isl = isl_from(&c);
    let mut out = String::new();
    out += &format!("waveforms: {}\nlength: {}\n", y.num_codes(), y.code_length());
    out += &format!("isl: {}\nisl_db: {}\n", fmt_f64(isl), fmt_f64(db10(isl)));
    if let Some(path) = &a.weights {
        let w = csvio::parse_weights(&read(path)?, &path.display().to_string())?;
        if w.code_length() != y.code_length() {
            return Err(CliError::Validation(format!(
                "{} holds {} weights but the waveforms have length {}",
                path.display(),
                w.code_length(),
                y.code_length()
            )));
        }
        let v = wisl_from(&c, &w);
        out += &format!("wisl: {}\nwisl_db: {}\n", fmt_f64(v), fmt_f64(db10(v)));
    }
    if let Some(m) = &meta {
        out += &format!("recorded_{}_db: {}\n", m.algorithm, fmt_f64(m.final_objective_db));
    }
    if let Some(path) = &a.corr {
        write_to(Some(path), |w| csvio::write_correlations(w, None, &c, a.lag_window))?;
    }
    print!("{out}");
    Ok(0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub length: usize,
    pub trials: usize,
    pub min_db: f64,
    pub avg_db: f64,
    pub mean_seconds: f64,
    pub mean_iterations: f64,
    pub converged: usize,
}

pub const BENCH_HEADER: [&str; 7] = [
    "length",
    "trials",
    "min_db",
    "avg_db",
    "mean_seconds",
    "mean_iterations",
    "converged",
];

fn summarize(length: usize, runs: &[Solution], timing: bool) -> BenchRow {
    let n = runs.len() as f64;
    let dbs: Vec<f64> = runs.iter().map(|s| db10(s.final_objective())).collect();
    BenchRow {
        length,
        trials: runs.len(),
        min_db: dbs.iter().copied().fold(f64::INFINITY, f64::min),
        avg_db: dbs.iter().sum::<f64>() / n,
        mean_seconds: if timing {
            runs.iter().map(|s| s.elapsed_ns as f64 * 1e-9).sum::<f64>() / n
        } else {
            0.0
        },
        mean_iterations: runs.iter().map(|s| s.iterations as f64).sum::<f64>() / n,
        converged: runs.iter().filter(|s| s.converged()).count(),
    }
}

pub fn bench_rows(a: &BenchArgs) -> CliResult<Vec<BenchRow>> {
    if a.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let weights = WeightSource::from_args(&a.solver)?;
    let configs = a
        .lengths
        .iter()
        .map(|&p| config(a.waveforms, p, a.seed, &a.solver, weights.profile(p)?))
        .collect::<CliResult<Vec<_>>>()?;
    let trial_exec = if a.concurrent { Exec::Parallel } else { Exec::Sequential };
    let mut rows = Vec::with_capacity(configs.len());
    for cfg in &configs {
        let runs = map_range(trial_exec, a.trials, |t| {
            design(&DesignConfig {
                seed: a.seed.wrapping_add(t as u64),
                ..cfg.clone()
            })
        })
        .into_iter()
        .collect::<wavedesign::Result<Vec<_>>>()?;
        rows.push(summarize(cfg.code_length, &runs, !a.no_timing));
    }
    Ok(rows)
}

pub fn write_bench<W: Write>(mut out: W, a: &BenchArgs, rows: &[BenchRow]) -> io::Result<()> {
    let s = &a.solver;
    let rule = stop_rule(s.stop, s.tol);
    let weights = match (&s.weights, s.weight_band) {
        (Some(p), _) => format!("file:{}", p.display()),
        (None, Some(b)) => format!("band:{b}"),
        (None, None) => "none".into(),
    };
    writeln!(out, "# algorithm: {}", s.algo.name())?;
    writeln!(out, "# waveforms: {}", a.waveforms)?;
    writeln!(out, "# seeds: {}..={}", a.seed, a.seed.wrapping_add(a.trials as u64 - 1))?;
    writeln!(out, "# accelerate: {}", s.accelerate())?;
    writeln!(out, "# squarem: {SQUAREM_VARIANT}")?;
    writeln!(out, "# rng: {RNG_ALGORITHM}")?;
    writeln!(out, "# stop: {}", rule.name())?;
    writeln!(out, "# tol: {:?}", rule.tol())?;
    writeln!(out, "# max_iters: {}", s.max_iters)?;
    writeln!(out, "# weights: {weights}")?;
    writeln!(out, "# exec: {}", exec_label(exec(s.exec)))?;
    writeln!(out, "# concurrent: {}", a.concurrent)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(BENCH_HEADER)?;
    for r in rows {
        w.write_record([
            r.length.to_string(),
            r.trials.to_string(),
            format!("{:.4}", r.min_db),
            format!("{:.4}", r.avg_db),
            format!("{:.6}", r.mean_seconds),
            format!("{:.2}", r.mean_iterations),
            r.converged.to_string(),
        ])?;
    }
    w.flush()
}

pub fn cmd_bench(a: &BenchArgs) -> CliResult<i32> {
    let rows = bench_rows(a)?;
    write_to(a.out.as_deref(), |w| write_bench(w, a, &rows))?;
    Ok(0)
}

pub fn cmd_verify(a: &VerifyArgs) -> CliResult<i32> {
    if a.max_size == Some(0) {
        return Err(CliError::Usage("--max-size must be positive".into()));
    }
    let start = Instant::now();
    let checks = run_suite(&SuiteOptions {
        max_size: a.max_size,
        ..SuiteOptions::default()
    });
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| c.gating && !c.passed).count();
    let passed = suite_passed(&checks);
    println!(
        "{}: {} checks, {failed} failed, {:.2} s",
        if passed { "PASS" } else { "FAIL" },
        checks.len(),
        start.elapsed().as_secs_f64()
    );
    Ok(if passed { 0 } else { 1 })
}
