//! Correlations and the ISL / WISL objectives.

use num_complex::Complex64;

use crate::error::{shape, Error, Result};
use crate::par::{map_range, Exec};
use crate::spectra::{ColumnSpectra, SpectrumGrid};
use crate::waveform::{WaveformSet, WeightProfile};

/// Level reported for an exactly zero correlation.
pub const LEVEL_FLOOR_DB: f64 = -400.0;

/// All cross-correlations r_{ab}(l) for lags −(P−1)…(P−1).
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationSet {
    num_codes: usize,
    code_length: usize,
    values: Vec<Complex64>,
}

impl CorrelationSet {
    pub fn num_codes(&self) -> usize {
        self.num_codes
    }

    pub fn code_length(&self) -> usize {
        self.code_length
    }

    fn lags(&self) -> usize {
        2 * self.code_length - 1
    }

    /// r_{ab}(lag) with 0-based waveform indices and |lag| < P.
    pub fn get(&self, a: usize, b: usize, lag: isize) -> Complex64 {
        let p = self.code_length as isize;
        assert!(lag.abs() < p, "lag {lag} out of range");
        self.values[(a * self.num_codes + b) * self.lags() + (lag + p - 1) as usize]
    }

    /// Correlations of the pair (a, b) ordered from lag −(P−1) to P−1.
    pub fn pair(&self, a: usize, b: usize) -> &[Complex64] {
        let n = self.lags();
        let start = (a * self.num_codes + b) * n;
        &self.values[start..start + n]
    }
}

/// Correlations via padded transforms, O(M²P log P).
pub fn correlations(y: &WaveformSet) -> CorrelationSet {
    correlations_with(&SpectrumGrid::new(y.code_length()), y, Exec::Sequential)
}

pub fn correlations_with(grid: &SpectrumGrid, y: &WaveformSet, exec: Exec) -> CorrelationSet {
    let spectra = ColumnSpectra::new(grid, y.as_slice(), exec).expect("grid matches waveform");
    let (m, p) = (y.num_codes(), y.code_length());
    let rows = map_range(exec, m * m, |k| {
        let circ = cross_circular(grid, &spectra, k / m, k % m);
        let n = grid.size();
        (-(p as isize - 1)..p as isize)
            .map(|l| circ[l.rem_euclid(n as isize) as usize])
            .collect::<Vec<_>>()
    });
    CorrelationSet {
        num_codes: m,
        code_length: p,
        values: rows.concat(),
    }
}

/// Circular correlation of padded columns a and b: entry l mod 2P is r_{ab}(l).
pub(crate) fn cross_circular(
    grid: &SpectrumGrid,
    spectra: &ColumnSpectra,
    a: usize,
    b: usize,
) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = spectra
        .column(a)
        .iter()
        .zip(spectra.column(b))
        .map(|(x, y)| x * y.conj())
        .collect();
    grid.idft_in_place(&mut buf);
    let scale = 1.0 / grid.size() as f64;
    buf.iter().map(|z| z * scale).collect()
}

/// Correlations by direct summation, O(M²P²). Reference path for tests.
pub fn correlations_direct(y: &WaveformSet) -> CorrelationSet {
    let (m, p) = (y.num_codes(), y.code_length());
    let mut values = Vec::with_capacity(m * m * (2 * p - 1));
    for a in 0..m {
        for b in 0..m {
            let (ya, yb) = (y.column(a), y.column(b));
            for l in -(p as isize - 1)..p as isize {
                let s: Complex64 = (0..p as isize)
                    .filter(|k| (0..p as isize).contains(&(k - l)))
                    .map(|k| ya[k as usize] * yb[(k - l) as usize].conj())
                    .sum();
                values.push(s);
            }
        }
    }
    CorrelationSet {
        num_codes: m,
        code_length: p,
        values,
    }
}

/// Σ_l w(|l|)·|r_ab(l)|² over a circular correlation buffer.
fn weighted_energy(circ: &[Complex64], p: usize, weight: impl Fn(usize) -> f64) -> f64 {
    let n = 2 * p;
    let mut s = weight(0) * circ[0].norm_sqr();
    for l in 1..p {
        s += weight(l) * (circ[l].norm_sqr() + circ[n - l].norm_sqr());
    }
    s
}

fn objective(grid: &SpectrumGrid, y: &WaveformSet, exec: Exec, weight: impl Fn(usize) -> f64 + Sync) -> f64 {
    let spectra = ColumnSpectra::new(grid, y.as_slice(), exec).expect("grid matches waveform");
    let m = y.num_codes();
    let p = y.code_length();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).collect();
    let parts = map_range(exec, pairs.len(), |k| {
        let (a, b) = pairs[k];
        let circ = cross_circular(grid, &spectra, a, b);
        let e = weighted_energy(&circ, p, &weight);
        if a == b {
            e - weight(0) * circ[0].norm_sqr()
        } else {
            2.0 * e
        }
    });
    parts.into_iter().sum()
}

/// Integrated sidelobe level: auto sidelobes off lag 0 plus all cross terms.
pub fn isl(y: &WaveformSet) -> f64 {
    isl_with(&SpectrumGrid::new(y.code_length()), y, Exec::Sequential)
}

pub fn isl_with(grid: &SpectrumGrid, y: &WaveformSet, exec: Exec) -> f64 {
    objective(grid, y, exec, |_| 1.0)
}

/// Weighted ISL with γ_|l|² weights.
pub fn wisl(y: &WaveformSet, w: &WeightProfile) -> Result<f64> {
    wisl_with(&SpectrumGrid::new(y.code_length()), y, w, Exec::Sequential)
}

pub fn wisl_with(grid: &SpectrumGrid, y: &WaveformSet, w: &WeightProfile, exec: Exec) -> Result<f64> {
    if w.code_length() != y.code_length() {
        return Err(shape(
            format!("{} weights", y.code_length()),
            format!("{} weights", w.code_length()),
        ));
    }
    let g = w.gamma();
    Ok(objective(grid, y, exec, |l| g[l] * g[l]))
}

/// ISL and WISL straight from a correlation set.
pub fn isl_from(c: &CorrelationSet) -> f64 {
    weighted_from(c, |_| 1.0)
}

pub fn wisl_from(c: &CorrelationSet, w: &WeightProfile) -> f64 {
    let g = w.gamma();
    weighted_from(c, |l| g[l] * g[l])
}

fn weighted_from(c: &CorrelationSet, weight: impl Fn(usize) -> f64) -> f64 {
    let (m, p) = (c.num_codes, c.code_length as isize);
    let mut s = 0.0;
    for a in 0..m {
        for b in 0..m {
            for l in -(p - 1)..p {
                if a == b && l == 0 {
                    continue;
                }
                s += weight(l.unsigned_abs()) * c.get(a, b, l).norm_sqr();
            }
        }
    }
    s
}

/// Analytic ISL floor 10·log10(M(M−1)P²) for M ≥ 2.
pub fn isl_bound_db(num_codes: usize, code_length: usize) -> Result<f64> {
    if num_codes < 2 {
        return Err(Error::BoundUndefined(num_codes));
    }
    let (m, p) = (num_codes as f64, code_length as f64);
    Ok(10.0 * (m * (m - 1.0) * p * p).log10())
}

/// 20·log10|z| with the −400 dB floor.
pub fn level_db(z: Complex64) -> f64 {
    let r = z.norm();
    if r > 0.0 {
        (20.0 * r.log10()).max(LEVEL_FLOOR_DB)
    } else {
        LEVEL_FLOOR_DB
    }
}

/// Levels for every entry, in the same layout as [`CorrelationSet::pair`].
pub fn correlation_level_db(c: &CorrelationSet) -> Vec<f64> {
    c.values.iter().map(|&z| level_db(z)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waveform::random_unimodular;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn set(p: usize, m: usize, data: Vec<Complex64>) -> WaveformSet {
        WaveformSet::from_column_major(p, m, data, 1e-12).unwrap()
    }

    #[test]
    fn two_term_correlation() {
        let y = set(2, 1, vec![c(1.0, 0.0); 2]);
        let r = correlations(&y);
        assert!((r.get(0, 0, 0) - c(2.0, 0.0)).norm() < 1e-12);
        assert!((r.get(0, 0, 1) - c(1.0, 0.0)).norm() < 1e-12);
        assert!((r.get(0, 0, -1) - c(1.0, 0.0)).norm() < 1e-12);
        assert!((isl(&y) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn identical_columns() {
        let y1 = random_unimodular(1, 7, 3);
        let mut data = y1.as_slice().to_vec();
        data.extend_from_slice(y1.as_slice());
        let r = correlations(&set(7, 2, data));
        for l in -6..7 {
            assert!((r.get(0, 1, l) - r.get(0, 0, l)).norm() < 1e-12);
        }
    }

    #[test]
    fn fast_matches_direct() {
        let y = random_unimodular(2, 9, 5);
        let (f, d) = (correlations(&y), correlations_direct(&y));
        for (a, b) in f.values.iter().zip(&d.values) {
            assert!((a - b).norm() < 1e-10);
        }
        for a in 0..2 {
            assert!((f.get(a, a, 0) - c(9.0, 0.0)).norm() < 1e-9);
            for b in 0..2 {
                for l in -8..9 {
                    assert!((f.get(a, b, l) - f.get(b, a, -l).conj()).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn two_sample_isl_is_phase_independent() {
        for k in 0..16 {
            let t = k as f64 * 0.4;
            let y = set(2, 1, vec![c(1.0, 0.0), Complex64::from_polar(1.0, t)]);
            assert!((isl(&y) - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn barker13() {
        let b = [1., 1., 1., 1., 1., -1., -1., 1., 1., -1., 1., -1., 1.];
        let y = set(13, 1, b.iter().map(|&x| c(x, 0.0)).collect());
        // Barker sidelobes are 0 or ±1; six nonzero lags on each side.
        assert!((isl(&y) - 12.0).abs() < 1e-9);
        assert!((isl_from(&correlations_direct(&y)) - 12.0).abs() < 1e-12);
    }

    #[test]
    fn wisl_reductions() {
        let y = random_unimodular(2, 11, 8);
        let ones = WeightProfile::ones(11);
        assert!((wisl(&y, &ones).unwrap() - isl(&y)).abs() < 1e-9 * isl(&y));

        let mut g = vec![0.0; 11];
        g[0] = 1.0;
        let w = WeightProfile::new(g).unwrap();
        let r = correlations(&y);
        let want = 2.0 * r.get(0, 1, 0).norm_sqr();
        assert!((wisl(&y, &w).unwrap() - want).abs() < 1e-9);

        let band = WeightProfile::band(11, 3).unwrap();
        let direct = wisl_from(&correlations_direct(&y), &band);
        assert!((wisl(&y, &band).unwrap() - direct).abs() < 1e-10 * direct.max(1.0));
        assert!(wisl(&y, &WeightProfile::ones(10)).is_err());
    }

    #[test]
    fn bound_matches_table_entries() {
        for (p, want) in [(32, 33.11), (128, 45.15), (512, 57.20), (1024, 63.22), (2048, 69.24)] {
            let got = isl_bound_db(2, p).unwrap();
            assert!((got - want).abs() < 0.006, "P={p}: {got}");
        }
        assert!(isl_bound_db(1, 32).is_err());
    }

    #[test]
    fn level_examples() {
        assert!((level_db(c(4096.0, 0.0)) - 72.247).abs() < 1e-3);
        assert_eq!(level_db(c(0.0, 0.0)), LEVEL_FLOOR_DB);
        assert_eq!(level_db(c(1.0, 0.0)), 0.0);
        assert_eq!(level_db(c(1e-300, 0.0)), LEVEL_FLOOR_DB);
    }

    #[test]
    fn parallel_objective_is_bitwise_equal() {
        let y = random_unimodular(4, 64, 2);
        let grid = SpectrumGrid::new(64);
        let a = isl_with(&grid, &y, Exec::Sequential);
        let b = isl_with(&grid, &y, Exec::Parallel);
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
