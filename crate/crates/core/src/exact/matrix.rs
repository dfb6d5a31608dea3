//! Dense integer and polynomial matrices.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};

use super::num::ExactInt;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![ExactInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ExactInt::one();
        }
        m
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows<T: Into<ExactInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[ExactInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<ExactInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<ExactInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &ExactInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// `col[dst] += k * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &ExactInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -&self[(i, j)];
        }
    }

    pub fn to_poly_matrix(&self) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = Poly::constant(self[(i, j)].clone().into());
            }
        }
        m
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = ExactInt;
    fn index(&self, (i, j): (usize, usize)) -> &ExactInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ExactInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Matrix of polynomials with row and column labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            row_labels: (1..=rows).map(|i| format!("r{i}")).collect(),
            col_labels: (1..=cols).map(|j| format!("c{j}")).collect(),
            data: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn labeled(row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        let (rows, cols) = (row_labels.len(), col_labels.len());
        PolyMatrix {
            rows,
            cols,
            row_labels,
            col_labels,
            data: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        let mut m = PolyMatrix::zeros(rows.len(), cols);
        m.data = rows.into_iter().flatten().collect();
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Poly)> + '_ {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, p)| ((k / self.cols, k % self.cols), p))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            data: self.data.iter().map(f).collect(),
            ..self.clone()
        }
    }

    /// Exact determinant by Laplace expansion over column subsets.
    ///
    /// Minors on the first `k` rows are memoized by their column set, so the
    /// cost is `O(2^m * m)` polynomial products rather than `m!`. Zero
    /// entries and zero minors are skipped.
    pub fn det(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let m = self.rows;
        if m == 0 {
            return Err(Error::EmptyMatrix);
        }
        if m > 63 {
            return Err(Error::MatrixTooLarge(m));
        }
        let mut layer: HashMap<u64, Poly> = HashMap::from([(0u64, Poly::one())]);
        for k in 0..m {
            // Deterministic traversal keeps the accumulation order fixed.
            let mut prev: Vec<(u64, Poly)> = layer.into_iter().collect();
            prev.sort_unstable_by_key(|(mask, _)| *mask);
            let mut next: HashMap<u64, Poly> = HashMap::new();
            for (mask, minor) in &prev {
                for j in 0..m {
                    let bit = 1u64 << j;
                    let entry = &self[(k, j)];
                    if mask & bit != 0 || entry.is_zero() {
                        continue;
                    }
                    let pos = (mask & (bit - 1)).count_ones() as usize;
                    let mut contrib = entry * minor;
                    if (k + pos) % 2 == 1 {
                        contrib = -contrib;
                    }
                    *next.entry(mask | bit).or_default() += &contrib;
                }
            }
            next.retain(|_, p| !p.is_zero());
            layer = next;
        }
        Ok(layer.remove(&((1u64 << m) - 1)).unwrap_or_default())
    }
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = Poly;
    fn index(&self, (i, j): (usize, usize)) -> &Poly {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Poly {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for PolyMatrix {
    /// Row-major, one entry per line: `row_label col_label: poly`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                writeln!(f, "{} {}: {}", self.row_labels[i], self.col_labels[j], self[(i, j)])?;
            }
        }
        Ok(())
    }
}
