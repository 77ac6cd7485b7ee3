//! Length-2P transforms on the frequency grid ω_p = 2πp/(2P), p = 1..2P, and
//! Toeplitz products through a 2P-point circulant embedding.
//!
//! Grid index `i` (0-based) stands for frequency p = i + 1, so the last grid
//! point is ω = 2π, i.e. DC.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{shape, Result};
use crate::par::{map_range, Exec};

/// Transform plans for one code length. Plans are immutable and shareable.
#[derive(Clone)]
pub struct SpectrumGrid {
    code_length: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for SpectrumGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectrumGrid")
            .field("code_length", &self.code_length)
            .finish()
    }
}

impl SpectrumGrid {
    pub fn new(code_length: usize) -> Self {
        assert!(code_length >= 1, "code length must be positive");
        let mut planner = FftPlanner::new();
        Self {
            code_length,
            forward: planner.plan_fft_forward(2 * code_length),
            inverse: planner.plan_fft_inverse(2 * code_length),
        }
    }

    pub fn code_length(&self) -> usize {
        self.code_length
    }

    /// Number of grid points, 2P.
    pub fn size(&self) -> usize {
        2 * self.code_length
    }

    /// ω_p for p = 1..2P.
    pub fn frequency(&self, p: usize) -> f64 {
        2.0 * PI * p as f64 / self.size() as f64
    }

    /// Steering vector a_p with a_p(n) = e^{j n ω_p}, n = 0..P−1.
    pub fn steering(&self, p: usize) -> Vec<Complex64> {
        let w = self.frequency(p);
        (0..self.code_length)
            .map(|n| Complex64::from_polar(1.0, w * n as f64))
            .collect()
    }

    /// Unnormalized forward DFT of `x` zero-padded to 2P, in natural bin order.
    pub(crate) fn dft_padded(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut buf = vec![Complex64::new(0.0, 0.0); self.size()];
        buf[..x.len()].copy_from_slice(x);
        self.forward.process(&mut buf);
        buf
    }

    pub(crate) fn dft_in_place(&self, buf: &mut [Complex64]) {
        self.forward.process(buf);
    }

    /// Unnormalized inverse DFT (positive exponent), in place.
    pub(crate) fn idft_in_place(&self, buf: &mut [Complex64]) {
        self.inverse.process(buf);
    }

    /// `[a_p^H x]` for p = 1..2P.
    pub fn forward_grid(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(x.len(), self.code_length)?;
        let bins = self.dft_padded(x);
        let n = self.size();
        Ok((0..n).map(|i| bins[(i + 1) % n]).collect())
    }

    /// `Σ_p a_p s(p)` for a length-2P grid vector `s`.
    pub fn adjoint_grid(&self, s: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.size();
        self.check_len(s.len(), n)?;
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for (i, &v) in s.iter().enumerate() {
            buf[(i + 1) % n] = v;
        }
        self.idft_in_place(&mut buf);
        buf.truncate(self.code_length);
        Ok(buf)
    }

    fn check_len(&self, got: usize, want: usize) -> Result<()> {
        if got == want {
            Ok(())
        } else {
            Err(shape(format!("length {want}"), format!("length {got}")))
        }
    }
}

/// Padded DFTs of every column of a P×M matrix, reused across the products
/// applied to that matrix within one iteration.
#[derive(Clone, Debug)]
pub struct ColumnSpectra {
    pub(crate) columns: Vec<Vec<Complex64>>,
}

impl ColumnSpectra {
    pub fn new(grid: &SpectrumGrid, x: &[Complex64], exec: Exec) -> Result<Self> {
        let p = grid.code_length();
        if !x.len().is_multiple_of(p) || x.is_empty() {
            return Err(shape(format!("a multiple of {p} entries"), x.len()));
        }
        let columns = map_range(exec, x.len() / p, |m| grid.dft_padded(&x[m * p..(m + 1) * p]));
        Ok(Self { columns })
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    /// Natural-order DFT bins of column `m`.
    pub fn column(&self, m: usize) -> &[Complex64] {
        &self.columns[m]
    }
}

/// P×P Toeplitz matrix given by its first column and first row.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzOperator {
    first_col: Vec<Complex64>,
    first_row: Vec<Complex64>,
}

impl ToeplitzOperator {
    pub fn new(first_col: Vec<Complex64>, first_row: Vec<Complex64>) -> Result<Self> {
        if first_col.is_empty() || first_col.len() != first_row.len() {
            return Err(shape(
                format!("two generators of length {}", first_col.len().max(1)),
                format!("lengths {} and {}", first_col.len(), first_row.len()),
            ));
        }
        if first_col[0] != first_row[0] {
            return Err(shape(
                format!("corner {}", first_col[0]),
                format!("corner {}", first_row[0]),
            ));
        }
        Ok(Self {
            first_col,
            first_row,
        })
    }

    /// Hermitian operator with first row equal to the conjugated first column.
    pub fn hermitian(first_col: Vec<Complex64>) -> Self {
        let mut first_row: Vec<Complex64> = first_col.iter().map(|z| z.conj()).collect();
        first_row[0] = first_col[0];
        Self {
            first_col,
            first_row,
        }
    }

    pub fn size(&self) -> usize {
        self.first_col.len()
    }

    pub fn first_col(&self) -> &[Complex64] {
        &self.first_col
    }

    pub fn first_row(&self) -> &[Complex64] {
        &self.first_row
    }

    /// Entry (i, j).
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        if i >= j {
            self.first_col[i - j]
        } else {
            self.first_row[j - i]
        }
    }

    /// Conjugate transpose, again Toeplitz.
    pub fn adjoint(&self) -> Self {
        Self {
            first_col: self.first_row.iter().map(|z| z.conj()).collect(),
            first_row: self.first_col.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scaled(mut self, s: f64) -> Self {
        for z in self.first_col.iter_mut().chain(self.first_row.iter_mut()) {
            *z *= s;
        }
        self
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let n = self.size();
        (0..n * n).map(|k| self.entry(k / n, k % n)).collect()
    }

    /// Squared Frobenius norm, from the generators and diagonal lengths.
    pub fn frobenius_sqr(&self) -> f64 {
        let n = self.size();
        let lower: f64 = (0..n)
            .map(|l| (n - l) as f64 * self.first_col[l].norm_sqr())
            .sum();
        let upper: f64 = (1..n)
            .map(|l| (n - l) as f64 * self.first_row[l].norm_sqr())
            .sum();
        lower + upper
    }

    /// First column of the 2P circulant: [first_col; 0; reverse(first_row[1..])].
    pub fn circulant_column(&self) -> Vec<Complex64> {
        let n = self.size();
        let mut c = Vec::with_capacity(2 * n);
        c.extend_from_slice(&self.first_col);
        c.push(Complex64::new(0.0, 0.0));
        c.extend(self.first_row[1..].iter().rev());
        c
    }

    /// DFT of the circulant embedding; multiply against padded column DFTs.
    pub fn symbol(&self, grid: &SpectrumGrid) -> Result<Vec<Complex64>> {
        grid.check_len(self.size(), grid.code_length())?;
        let mut c = self.circulant_column();
        grid.dft_in_place(&mut c);
        Ok(c)
    }

    /// Product with a P×M column-major matrix via circulant embedding.
    pub fn apply(&self, grid: &SpectrumGrid, x: &[Complex64], exec: Exec) -> Result<Vec<Complex64>> {
        let spectra = ColumnSpectra::new(grid, x, exec)?;
        self.apply_spectra(grid, &spectra, exec)
    }

    /// Product with a matrix whose padded column DFTs are already known.
    pub fn apply_spectra(
        &self,
        grid: &SpectrumGrid,
        x: &ColumnSpectra,
        exec: Exec,
    ) -> Result<Vec<Complex64>> {
        let symbol = self.symbol(grid)?;
        let cols = map_range(exec, x.num_columns(), |m| {
            let mut buf: Vec<Complex64> =
                symbol.iter().zip(x.column(m)).map(|(a, b)| a * b).collect();
            inverse_truncate(grid, &mut buf)
        });
        Ok(cols.concat())
    }

    /// Plain O(P²M) product, for cross-checks.
    pub fn apply_dense(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.size();
        if !x.len().is_multiple_of(n) {
            return Err(shape(format!("a multiple of {n} entries"), x.len()));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); x.len()];
        for (col, dst) in x.chunks_exact(n).zip(out.chunks_exact_mut(n)) {
            for (i, d) in dst.iter_mut().enumerate() {
                *d = (0..n).map(|j| self.entry(i, j) * col[j]).sum();
            }
        }
        Ok(out)
    }
}

/// Inverse DFT of a 2P spectrum, scaled by 1/(2P), keeping the first P samples.
pub(crate) fn inverse_truncate(grid: &SpectrumGrid, buf: &mut Vec<Complex64>) -> Vec<Complex64> {
    grid.idft_in_place(buf);
    let scale = 1.0 / grid.size() as f64;
    buf.truncate(grid.code_length());
    buf.iter().map(|z| z * scale).collect()
}
