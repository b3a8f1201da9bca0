//! Dense kernels shared by every solver.
//!
//! Matrices are row-major `f64`. All reductions sum left to right so that a
//! given input always produces the same bits, which the benchmark harness
//! relies on for reproducible CSV output.

mod io;
mod lsq;

pub use io::{read_matrix, read_matrix_bin, read_matrix_csv, read_vector, write_matrix_bin, write_matrix_csv, write_vector, MAGIC};
pub use lsq::{restricted_lsq, spectral_norm_sq, LsqSettings};

use crate::error::{check_len, Error, Result};

/// Dense row-major matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(format!(
                "matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        check_len("matrix data", rows * cols, data.len())?;
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite matrix entry at ({}, {})",
                pos / cols,
                pos % cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for row in rows {
            check_len("matrix row", ncols, row.len())?;
            data.extend_from_slice(row);
        }
        Self::new(rows.len(), ncols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Multiplies every entry by `factor`.
    pub fn scaled(mut self, factor: f64) -> Self {
        self.data.iter_mut().for_each(|v| *v *= factor);
        self
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = vec![0.0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.get(i, j);
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Gram matrix `AᵀA` (cols × cols).
    pub fn gram(&self) -> Matrix {
        let n = self.cols;
        let mut data = vec![0.0; n * n];
        for i in 0..self.rows {
            let row = self.row(i);
            for (a, &ra) in row.iter().enumerate() {
                if ra == 0.0 {
                    continue;
                }
                let out = &mut data[a * n..(a + 1) * n];
                for (o, &rb) in out.iter_mut().zip(row) {
                    *o += ra * rb;
                }
            }
        }
        Matrix {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Column submatrix `A[:, S]`, row-major, columns in the order of `support`.
    pub fn select_columns(&self, support: &IndexSet) -> Matrix {
        let s = support.len();
        let mut data = Vec::with_capacity(self.rows * s.max(1));
        for i in 0..self.rows {
            let row = self.row(i);
            data.extend(support.iter().map(|j| row[j]));
        }
        Matrix {
            rows: self.rows,
            cols: s,
            data,
        }
    }

    /// `A x` without a length check.
    pub(crate) fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// `Aᵀ y` without a length check. Accumulates rows in index order.
    pub(crate) fn mul_t_vec(&self, y: &[f64]) -> Vec<f64> {
        debug_assert_eq!(y.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for (i, &yi) in y.iter().enumerate() {
            if yi == 0.0 {
                continue;
            }
            axpy(yi, self.row(i), &mut out);
        }
        out
    }

    /// `A x` for a vector that is zero outside `support`.
    pub(crate) fn mul_sparse(&self, x: &[f64], support: &[usize]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                support.iter().fold(0.0, |acc, &j| acc + row[j] * x[j])
            })
            .collect()
    }
}

/// Sorted set of distinct column indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Builds a set from arbitrary indices, sorting and removing duplicates.
    pub fn from_unsorted(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Self(indices)
    }

    /// Indices of the nonzero entries of `x`.
    pub fn support_of(x: &[f64]) -> Self {
        Self(
            x.iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(i, _)| i)
                .collect(),
        )
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.0.binary_search(&idx).is_ok()
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x < y {
                        out.push(x);
                        a.next();
                    } else if y < x {
                        out.push(y);
                        b.next();
                    } else {
                        out.push(x);
                        a.next();
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    out.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        IndexSet(out)
    }

    pub(crate) fn max_index(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_unsorted(iter.into_iter().collect())
    }
}

/// Dense product `A x`.
pub fn mat_vec(a: &Matrix, x: &[f64]) -> Result<Vec<f64>> {
    check_len("mat_vec", a.cols, x.len())?;
    Ok(a.mul_vec(x))
}

/// Dense product `Aᵀ y`.
pub fn mat_t_vec(a: &Matrix, y: &[f64]) -> Result<Vec<f64>> {
    check_len("mat_t_vec", a.rows, y.len())?;
    Ok(a.mul_t_vec(y))
}

/// ℓp norm for `p >= 1`; `f64::INFINITY` gives the max magnitude.
pub fn lp_norm(x: &[f64], p: f64) -> f64 {
    if p == f64::INFINITY {
        norm_inf(x)
    } else if p == 1.0 {
        norm1(x)
    } else if p == 2.0 {
        norm2(x)
    } else {
        assert!(p >= 1.0, "lp_norm needs p >= 1, got {p}");
        x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc + x * y)
}

#[inline]
pub fn norm1(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |acc, v| acc + v.abs())
}

#[inline]
pub fn norm2(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

#[inline]
pub fn norm_inf(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |acc: f64, v| acc.max(v.abs()))
}

/// Number of nonzero entries.
pub fn l0(x: &[f64]) -> usize {
    x.iter().filter(|v| **v != 0.0).count()
}

/// `y += a * x`
#[inline]
pub fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn distance2(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0, |acc, (x, y)| acc + (x - y) * (x - y))
        .sqrt()
}

/// Index of the largest-magnitude entry, lowest index on ties.
pub fn argmax_abs(x: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in x.iter().enumerate() {
        let m = v.abs();
        if best.is_none_or(|(_, b)| m > b) {
            best = Some((i, m));
        }
    }
    best.map(|(i, _)| i)
}

/// Residual `A x − f`.
pub(crate) fn residual(a: &Matrix, x: &[f64], f: &[f64]) -> Vec<f64> {
    let mut r = a.mul_vec(x);
    r.iter_mut().zip(f).for_each(|(ri, fi)| *ri -= fi);
    r
}
