use std::ops::{Index, IndexMut};

use super::LinalgError;

/// Dense row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// Outcome of rank-revealing elimination.
#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    pub rank: usize,
    /// Absolute pivot threshold that was applied.
    pub threshold: f64,
    /// Smallest pivot accepted into the rank.
    pub min_accepted_pivot: f64,
    /// Largest remaining entry when elimination stopped (0 at full rank).
    pub max_rejected_pivot: f64,
    /// Some pivot lies within a factor 10 of the threshold.
    pub ambiguous: bool,
    /// Unit kernel vector when rank < cols.
    pub kernel: Option<Vec<f64>>,
}

impl RankReport {
    pub fn is_deficient(&self, cols: usize) -> bool {
        self.rank < cols
    }
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RealMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RealMatrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn matmul(&self, other: &RealMatrix) -> Result<RealMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch);
        }
        let mut out = RealMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &RealMatrix) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch);
        }
        self.data.iter_mut().zip(&other.data).for_each(|(a, b)| *a += b);
        Ok(())
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch);
        }
        Ok((0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum()).collect())
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &RealMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Gaussian elimination with complete pivoting. Pivots at or below
    /// `rel_threshold·‖M‖∞` end the elimination; pivots within a factor 10 of
    /// the threshold on either side flag the result as ambiguous.
    pub fn rank_report(&self, rel_threshold: f64) -> RankReport {
        let (m, n) = (self.rows, self.cols);
        let threshold = rel_threshold * self.inf_norm();
        let mut a = self.data.clone();
        let mut col_perm: Vec<usize> = (0..n).collect();
        let mut rank = 0;
        let mut min_accepted = f64::INFINITY;
        let mut max_rejected = 0.0;
        let steps = m.min(n);
        for k in 0..steps {
            let (mut pr, mut pc, mut best) = (k, k, -1.0);
            for r in k..m {
                for c in k..n {
                    let v = a[r * n + c].abs();
                    if v > best {
                        best = v;
                        pr = r;
                        pc = c;
                    }
                }
            }
            if best <= threshold || best == 0.0 {
                max_rejected = best.max(0.0);
                break;
            }
            if pr != k {
                for c in 0..n {
                    a.swap(k * n + c, pr * n + c);
                }
            }
            if pc != k {
                for r in 0..m {
                    a.swap(r * n + k, r * n + pc);
                }
                col_perm.swap(k, pc);
            }
            let piv = a[k * n + k];
            for r in k + 1..m {
                let f = a[r * n + k] / piv;
                a[r * n + k] = 0.0;
                if f == 0.0 {
                    continue;
                }
                for c in k + 1..n {
                    a[r * n + c] -= f * a[k * n + c];
                }
            }
            min_accepted = min_accepted.min(best);
            rank += 1;
        }
        if rank == steps && steps < n {
            // Wide matrix: remaining columns are free.
            max_rejected = 0.0;
        }
        let ambiguous = (rank > 0 && min_accepted < 10.0 * threshold)
            || (max_rejected > 0.0 && max_rejected > threshold / 10.0);
        let kernel = if rank < n {
            // Free variable at permuted column `rank`; back-substitute the pivots.
            let mut xp = vec![0.0; n];
            xp[rank] = 1.0;
            for i in (0..rank).rev() {
                let mut s = a[i * n + rank];
                for j in i + 1..rank {
                    s += a[i * n + j] * xp[j];
                }
                xp[i] = -s / a[i * n + i];
            }
            let mut x = vec![0.0; n];
            for (k, &c) in col_perm.iter().enumerate() {
                x[c] = xp[k];
            }
            let nrm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            x.iter_mut().for_each(|v| *v /= nrm);
            Some(x)
        } else {
            None
        };
        RankReport {
            rank,
            threshold,
            min_accepted_pivot: if rank == 0 { 0.0 } else { min_accepted },
            max_rejected_pivot: max_rejected,
            ambiguous,
            kernel,
        }
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}
