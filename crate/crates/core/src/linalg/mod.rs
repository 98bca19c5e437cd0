//! Quaternion matrices and the two ways of handing them to real/complex
//! linear algebra: the complex adjoint `χ_A = [[A1, A2], [-conj(A2), conj(A1)]]`
//! for `A = A1 + A2·j`, and the 4n×4n realification of one-sided actions.

mod complex;
mod eigen;
mod real;

use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use thiserror::Error;

use crate::quat::{Quaternion, StandardEigenvalue};

pub use complex::{ComplexLu, ComplexMatrix};
pub use eigen::{eig_complex, eigenvector, MAX_EIG_DIM};
pub use real::{RankReport, RealMatrix};

/// Relative pivot threshold below which `χ_A` is declared singular.
pub const SINGULAR_PIVOT_TOL: f64 = 1e-12;
/// Relative tolerance for matching conjugate eigenvalue pairs of `χ_A`.
pub const PAIRING_TOL: f64 = 1e-6;
/// Relative pivot threshold for rank decisions on realified operators.
pub const RANK_PIVOT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is not square")]
    NonSquare,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("QR iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("conjugate pairing failed: distance {distance:e} exceeds tolerance {tol:e}")]
    PairingFailure { distance: f64, tol: f64 },
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    TooLarge { dim: usize, max: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("matrix has no entries")]
    Empty,
}

/// Dense row-major quaternion matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QuaternionMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::Empty);
        }
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch);
        }
        Ok(QuaternionMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QuaternionMatrix { rows, cols, data: vec![Quaternion::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(Quaternion::ONE, n)
    }

    /// `q·I_n`.
    pub fn scalar(q: Quaternion, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = q;
        }
        m
    }

    pub fn from_diag(d: &[Quaternion]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QuaternionMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(LinalgError::Empty);
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch);
        }
        Ok(QuaternionMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Real matrix given by rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self, LinalgError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Quaternion::real(v)).collect()).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<Quaternion>> {
        self.data.chunks(self.cols).map(<[Quaternion]>::to_vec).collect()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn matmul(&self, other: &QuaternionMatrix) -> Result<QuaternionMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch);
        }
        let mut out = QuaternionMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// `A·y` for a column vector `y`.
    pub fn mul_vec(&self, y: &[Quaternion]) -> Result<Vec<Quaternion>, LinalgError> {
        if y.len() != self.cols {
            return Err(LinalgError::DimensionMismatch);
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).fold(Quaternion::ZERO, |acc, j| acc + self[(i, j)] * y[j]))
            .collect())
    }

    pub fn add(&self, other: &QuaternionMatrix) -> Result<QuaternionMatrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch);
        }
        Ok(QuaternionMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| *a + *b).collect(),
        })
    }

    pub fn neg(&self) -> QuaternionMatrix {
        QuaternionMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -*a).collect() }
    }

    /// `A^*`, the conjugate transpose.
    pub fn adjoint(&self) -> QuaternionMatrix {
        QuaternionMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &QuaternionMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (*a - *b).norm()).fold(0.0, f64::max)
    }

    /// Every entry has modulus at most `tol`.
    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|q| q.norm() <= tol)
    }

    /// Every entry below the diagonal has modulus at most `tol`.
    pub fn is_upper_triangular(&self, tol: f64) -> bool {
        (0..self.rows).all(|r| (0..self.cols.min(r)).all(|c| self[(r, c)].norm() <= tol))
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> QuaternionMatrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        QuaternionMatrix::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)])
    }

    /// `(A1, A2)` with `A = A1 + A2·j`.
    pub fn complex_parts(&self) -> (ComplexMatrix, ComplexMatrix) {
        let a1 = ComplexMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].complex_pair().0);
        let a2 = ComplexMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].complex_pair().1);
        (a1, a2)
    }

    /// Inverse of [`complex_adjoint`]: reads `A1`, `A2` off the top block row.
    pub fn from_complex_adjoint(m: &ComplexMatrix) -> Result<QuaternionMatrix, LinalgError> {
        if !m.rows().is_multiple_of(2) || !m.cols().is_multiple_of(2) {
            return Err(LinalgError::DimensionMismatch);
        }
        let (r, c) = (m.rows() / 2, m.cols() / 2);
        Ok(QuaternionMatrix::from_fn(r, c, |i, j| Quaternion::from_complex_pair(m[(i, j)], m[(i, c + j)])))
    }
}

impl Index<(usize, usize)> for QuaternionMatrix {
    type Output = Quaternion;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QuaternionMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

// ── quaternion column vectors ───────────────────────────────────────────

/// Euclidean norm of a quaternion vector.
pub fn vec_norm(y: &[Quaternion]) -> f64 {
    y.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
}

/// `v^* u`.
pub fn inner(u: &[Quaternion], v: &[Quaternion]) -> Quaternion {
    v.iter().zip(u).fold(Quaternion::ZERO, |acc, (a, b)| acc + a.conj() * *b)
}

/// `y·q` (scalar acting on the right).
pub fn vec_mul_right(y: &[Quaternion], q: Quaternion) -> Vec<Quaternion> {
    y.iter().map(|&v| v * q).collect()
}

/// Stacks `(w, x, y, z)` of each entry.
pub fn vec_to_real(y: &[Quaternion]) -> Vec<f64> {
    y.iter().flat_map(|q| q.to_array()).collect()
}

pub fn vec_from_real(v: &[f64]) -> Vec<Quaternion> {
    v.chunks_exact(4).map(|c| Quaternion::new(c[0], c[1], c[2], c[3])).collect()
}

/// Quaternion vector `y1 - conj(y2)·j` from a `χ`-eigenvector `[y1; y2]`.
pub fn vec_from_adjoint(v: &[Complex64]) -> Vec<Quaternion> {
    let n = v.len() / 2;
    (0..n).map(|k| Quaternion::from_complex_pair(v[k], -v[n + k].conj())).collect()
}

// ── complex adjoint and realification ───────────────────────────────────

/// `χ_A = [[A1, A2], [-conj(A2), conj(A1)]]`.
pub fn complex_adjoint(a: &QuaternionMatrix) -> Result<ComplexMatrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NonSquare);
    }
    Ok(complex_adjoint_rect(a))
}

/// Same block layout for rectangular input (used for companion blocks).
pub(crate) fn complex_adjoint_rect(a: &QuaternionMatrix) -> ComplexMatrix {
    let (r, c) = (a.rows(), a.cols());
    ComplexMatrix::from_fn(2 * r, 2 * c, |i, j| {
        let (c1, c2) = a[(i % r, j % c)].complex_pair();
        match (i < r, j < c) {
            (true, true) => c1,
            (true, false) => c2,
            (false, true) => -c2.conj(),
            (false, false) => c1.conj(),
        }
    })
}

/// 4×4 matrix of `p ↦ q·p`.
pub fn left_mul_matrix(q: Quaternion) -> [[f64; 4]; 4] {
    let Quaternion { w, x, y, z } = q;
    [[w, -x, -y, -z], [x, w, -z, y], [y, z, w, -x], [z, -y, x, w]]
}

/// 4×4 matrix of `p ↦ p·q`.
pub fn right_mul_matrix(q: Quaternion) -> [[f64; 4]; 4] {
    let Quaternion { w, x, y, z } = q;
    [[w, -x, -y, -z], [x, w, z, -y], [y, -z, w, x], [z, y, -x, w]]
}

/// 4n×4n real matrix `L` with `vec4(A·y) = L·vec4(y)`.
pub fn real_rep_left(a: &QuaternionMatrix) -> Result<RealMatrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NonSquare);
    }
    let n = a.rows();
    let mut out = RealMatrix::zeros(4 * n, 4 * n);
    for r in 0..n {
        for c in 0..n {
            let blk = left_mul_matrix(a[(r, c)]);
            for (i, row) in blk.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    out[(4 * r + i, 4 * c + j)] = v;
                }
            }
        }
    }
    Ok(out)
}

/// 4n×4n block-diagonal real matrix `R` with `vec4(y·q) = R·vec4(y)`.
pub fn real_rep_right_scalar(q: Quaternion, n: usize) -> RealMatrix {
    let blk = right_mul_matrix(q);
    let mut out = RealMatrix::zeros(4 * n, 4 * n);
    for b in 0..n {
        for (i, row) in blk.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                out[(4 * b + i, 4 * b + j)] = v;
            }
        }
    }
    out
}

// ── spectra ─────────────────────────────────────────────────────────────

/// Groups a conjugate-closed list of complex numbers into pairs `{λ, conj(λ)}`
/// and returns one standard representative (`im >= 0`) per pair.
///
/// Each representative averages its pair, which also cancels the symmetric
/// splitting of double real roots.
pub fn pair_conjugates(values: &[Complex64], tol: f64) -> Result<Vec<StandardEigenvalue>, LinalgError> {
    if !values.len().is_multiple_of(2) {
        return Err(LinalgError::PairingFailure { distance: f64::INFINITY, tol });
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].im.total_cmp(&values[a].im));
    let mut used = vec![false; values.len()];
    let mut out = Vec::with_capacity(values.len() / 2);
    for &i in &order {
        if used[i] {
            continue;
        }
        used[i] = true;
        let target = values[i].conj();
        let mut best: Option<(usize, f64)> = None;
        for (j, v) in values.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (v - target).norm();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        let (j, d) = best.ok_or(LinalgError::PairingFailure { distance: f64::INFINITY, tol })?;
        if d > tol {
            return Err(LinalgError::PairingFailure { distance: d, tol });
        }
        used[j] = true;
        let a = values[i];
        let b = values[j];
        out.push(StandardEigenvalue::new(0.5 * (a.re + b.re), 0.5 * (a.im.abs() + b.im.abs())));
    }
    sort_standard(&mut out);
    Ok(out)
}

/// Orders by modulus, then real part.
pub fn sort_standard(v: &mut [StandardEigenvalue]) {
    v.sort_by(|a, b| a.modulus().total_cmp(&b.modulus()).then(a.re.total_cmp(&b.re)));
}

/// The `n` standard right eigenvalues of `A`.
pub fn right_eigenvalues(a: &QuaternionMatrix) -> Result<Vec<StandardEigenvalue>, LinalgError> {
    let chi = complex_adjoint(a)?;
    let eigs = eig_complex(&chi)?;
    let tol = PAIRING_TOL * a.frobenius_norm();
    pair_conjugates(&eigs, tol)
}

/// Spectral norm `‖A‖ = ‖χ_A‖`, from the largest eigenvalue of `χ_A^* χ_A`.
pub fn spectral_norm(a: &QuaternionMatrix) -> Result<f64, LinalgError> {
    let chi = complex_adjoint_rect(a);
    spectral_norm_complex(&chi)
}

/// Largest singular value of a complex matrix.
pub fn spectral_norm_complex(m: &ComplexMatrix) -> Result<f64, LinalgError> {
    let f = m.frobenius_norm();
    if f == 0.0 {
        return Ok(0.0);
    }
    // Scale to avoid overflow in the Gram matrix.
    let scaled = m.scale(Complex64::new(1.0 / f, 0.0));
    let gram = scaled.conj_transpose().matmul(&scaled)?;
    let top = eig_complex(&gram)?.into_iter().map(|v| v.re).fold(0.0, f64::max);
    Ok(f * top.max(0.0).sqrt())
}

/// `A^{-1}` via LU of `χ_A`; `Singular` when a pivot falls below `1e-12·‖A‖`.
pub fn inverse(a: &QuaternionMatrix) -> Result<QuaternionMatrix, LinalgError> {
    let chi = complex_adjoint(a)?;
    let lu = ComplexLu::factor(&chi)?;
    if lu.min_pivot() <= SINGULAR_PIVOT_TOL * a.frobenius_norm() {
        return Err(LinalgError::Singular);
    }
    QuaternionMatrix::from_complex_adjoint(&lu.inverse())
}

/// `true` when [`inverse`] would succeed.
pub fn is_invertible(a: &QuaternionMatrix) -> bool {
    match complex_adjoint(a).and_then(|chi| ComplexLu::factor(&chi)) {
        Ok(lu) => lu.min_pivot() > SINGULAR_PIVOT_TOL * a.frobenius_norm(),
        Err(_) => false,
    }
}
