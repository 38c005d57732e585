//! Minimal sparse complex matrices for the Fock-space oracle.
//!
//! Row-major lists of (column, value) pairs, sorted by column. Ladder
//! operators have at most one entry per column, so everything the oracle
//! needs (sums, products, adjoints, restrictions) stays small at the
//! dimensions this crate works at.

use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m.rows[i].push((i, Complex64::new(1.0, 0.0)));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// Accumulate `value` at `(row, col)`.
    pub fn insert(&mut self, row: usize, col: usize, value: Complex64) {
        if value == Complex64::new(0.0, 0.0) {
            return;
        }
        let r = &mut self.rows[row];
        match r.binary_search_by_key(&col, |&(c, _)| c) {
            Ok(pos) => r[pos].1 += value,
            Err(pos) => r.insert(pos, (col, value)),
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.rows[row]
            .binary_search_by_key(&col, |&(c, _)| c)
            .map(|pos| self.rows[row][pos].1)
            .unwrap_or_else(|_| Complex64::new(0.0, 0.0))
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        let mut out = self.clone();
        for row in &mut out.rows {
            for (_, v) in row.iter_mut() {
                *v *= s;
            }
        }
        out
    }

    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (i, row) in rhs.rows.iter().enumerate() {
            for &(j, v) in row {
                out.insert(i, j, v);
            }
        }
        out
    }

    pub fn sub(&self, rhs: &CMatrix) -> CMatrix {
        self.add(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Matrix product using a dense scratch row.
    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let dim = self.dim;
        let mut out = CMatrix::zeros(dim);
        let mut acc = vec![Complex64::new(0.0, 0.0); dim];
        let mut seen = vec![false; dim];
        let mut touched: Vec<usize> = Vec::new();
        for i in 0..dim {
            for &(k, v) in &self.rows[i] {
                for &(j, w) in &rhs.rows[k] {
                    if !seen[j] {
                        seen[j] = true;
                        touched.push(j);
                    }
                    acc[j] += v * w;
                }
            }
            touched.sort_unstable();
            let row: Vec<(usize, Complex64)> = touched
                .iter()
                .map(|&j| (j, acc[j]))
                .filter(|&(_, v)| v != Complex64::new(0.0, 0.0))
                .collect();
            for &j in &touched {
                acc[j] = Complex64::new(0.0, 0.0);
                seen[j] = false;
            }
            touched.clear();
            out.rows[i] = row;
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                out.insert(j, i, v.conj());
            }
        }
        out
    }

    /// `D M D` for a diagonal matrix of real weights.
    pub fn diag_conjugate(&self, weights: &[f64]) -> CMatrix {
        assert_eq!(weights.len(), self.dim);
        let mut out = self.clone();
        for (i, row) in out.rows.iter_mut().enumerate() {
            for (j, v) in row.iter_mut() {
                *v *= weights[i] * weights[*j];
            }
        }
        out
    }

    pub fn apply(&self, vec: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(vec.len(), self.dim);
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                out[i] += v * vec[j];
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.rows
            .iter()
            .flatten()
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// Restrict to the subspace spanned by `indices` (must be sorted).
    pub fn restrict(&self, indices: &[usize]) -> CMatrix {
        let mut lookup = vec![usize::MAX; self.dim];
        for (new, &old) in indices.iter().enumerate() {
            lookup[old] = new;
        }
        let mut out = CMatrix::zeros(indices.len());
        for (new_i, &old_i) in indices.iter().enumerate() {
            for &(j, v) in &self.rows[old_i] {
                if lookup[j] != usize::MAX {
                    out.rows[new_i].push((lookup[j], v));
                }
            }
        }
        out
    }

    /// Largest entry magnitude of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &CMatrix) -> f64 {
        self.sub(rhs).max_abs()
    }
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
