//! Sequential vs data-parallel execution for the per-iteration kernels and a
//! short solver run. Without the `parallel` feature both arms run sequentially.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use wavedesign::isl::isl_step;
use wavedesign::metrics::correlations_with;
use wavedesign::spectra::SpectrumGrid;
use wavedesign::waveform::random_unimodular;
use wavedesign::wisl::{assemble_b, wisl_step, GammaSpectrum};
use wavedesign::{design, DesignConfig, Exec, StopRule, WeightProfile};

const EXECS: [Exec; 2] = [Exec::Sequential, Exec::Parallel];

fn isl_iteration(c: &mut Criterion) {
    let mut g = c.benchmark_group("isl_step");
    for p in [256, 1024, 4096] {
        let y = random_unimodular(4, p, 1);
        let grid = SpectrumGrid::new(p);
        for exec in EXECS {
            g.bench_with_input(BenchmarkId::new(exec.name(), p), &p, |b, _| b.iter(|| isl_step(&grid, &y, exec)));
        }
    }
    g.finish();
}

fn wisl_iteration(c: &mut Criterion) {
    let mut g = c.benchmark_group("wisl_step");
    for p in [128, 512] {
        let y = random_unimodular(4, p, 1);
        let w = WeightProfile::band(p, 19).unwrap();
        let spec = GammaSpectrum::new(&w, 4);
        let grid = SpectrumGrid::new(p);
        for exec in EXECS {
            g.bench_with_input(BenchmarkId::new(exec.name(), p), &p, |b, _| b.iter(|| wisl_step(&grid, &y, &spec, exec)));
        }
    }
    g.finish();
}

fn kernels(c: &mut Criterion) {
    let (m, p) = (4, 1024);
    let y = random_unimodular(m, p, 2);
    let grid = SpectrumGrid::new(p);
    let w = WeightProfile::band(p, 19).unwrap();
    let mut g = c.benchmark_group("kernels");
    for exec in EXECS {
        g.bench_function(BenchmarkId::new("correlations", exec.name()), |b| b.iter(|| correlations_with(&grid, &y, exec)));
        g.bench_function(BenchmarkId::new("assemble_b", exec.name()), |b| b.iter(|| assemble_b(&grid, &y, &w, exec).unwrap()));
    }
    g.finish();
}

fn short_design(c: &mut Criterion) {
    let mut g = c.benchmark_group("design_50_iters");
    g.sample_size(10);
    for exec in EXECS {
        let cfg = DesignConfig {
            stop_rule: StopRule::RelativeObjective(f64::MIN_POSITIVE),
            max_iters: 50,
            exec,
            ..DesignConfig::isl(4, 1024, 3)
        };
        g.bench_function(exec.name(), |b| b.iter(|| design(&cfg).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, isl_iteration, wisl_iteration, kernels, short_design);
criterion_main!(benches);
