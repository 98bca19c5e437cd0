//! Right quaternion matrix polynomials `P(λ) = Σ A_i λ^i` with the
//! indeterminate acting on the right: `μ` is an eigenvalue when
//! `Σ A_i y μ^i = 0` for some nonzero `y`.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{
    self, complex_adjoint, eig_complex, eigenvector, inverse, pair_conjugates, real_rep_left,
    real_rep_right_scalar, vec_from_adjoint, vec_mul_right, vec_norm, ComplexMatrix, LinalgError,
    QuaternionMatrix, RankReport, RealMatrix, PAIRING_TOL, RANK_PIVOT_TOL,
};
use crate::quat::{Quaternion, StandardEigenvalue};

/// Relative residual accepted for recovered polynomial eigenpairs.
pub const POLYEIG_RESIDUAL_TOL: f64 = 1e-7;
/// Relative size below which a division remainder counts as zero.
pub const REMAINDER_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("polynomial has no coefficients")]
    Empty,
    #[error("coefficients do not share one square size")]
    DimensionMismatch,
    #[error("leading coefficient is zero")]
    ZeroLeading,
    #[error("leading coefficient is singular")]
    SingularLeadingCoefficient,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("characteristic coefficient {k} has imaginary part {imag:e}")]
    NonRealCoefficient { k: usize, imag: f64 },
    #[error("eigenpair residual {residual:e} exceeds bound {bound:e} at {value}")]
    ResidualFailure { value: StandardEigenvalue, residual: f64, bound: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Three-valued answer for decisions that can land in a numerical dead band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

/// `Σ A_i λ^i` with all `A_i` of one size `n×n` and `A_m ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPolynomial {
    coeffs: Vec<QuaternionMatrix>,
}

impl MatrixPolynomial {
    /// Coefficients in ascending order `A_0, …, A_m`.
    pub fn new(coeffs: Vec<QuaternionMatrix>) -> Result<Self, PolyError> {
        let first = coeffs.first().ok_or(PolyError::Empty)?;
        let n = first.rows();
        if coeffs.iter().any(|a| a.rows() != n || a.cols() != n) {
            return Err(PolyError::DimensionMismatch);
        }
        if coeffs.last().is_some_and(|a| a.is_zero(0.0)) {
            return Err(PolyError::ZeroLeading);
        }
        Ok(MatrixPolynomial { coeffs })
    }

    /// Drops trailing zero coefficients first; `None` if nothing nonzero remains.
    pub fn trimmed(mut coeffs: Vec<QuaternionMatrix>) -> Option<Self> {
        while coeffs.last().is_some_and(|a| a.is_zero(0.0)) {
            coeffs.pop();
        }
        MatrixPolynomial::new(coeffs).ok()
    }

    /// `A_1 λ + A_0`.
    pub fn linear(a1: QuaternionMatrix, a0: QuaternionMatrix) -> Result<Self, PolyError> {
        MatrixPolynomial::new(vec![a0, a1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Matrix size `n`.
    pub fn size(&self) -> usize {
        self.coeffs[0].rows()
    }

    pub fn coeffs(&self) -> &[QuaternionMatrix] {
        &self.coeffs
    }

    pub fn leading(&self) -> &QuaternionMatrix {
        self.coeffs.last().expect("nonempty")
    }

    pub fn constant(&self) -> &QuaternionMatrix {
        &self.coeffs[0]
    }

    /// All coefficients upper triangular (entries below the diagonal ≤ `tol`).
    pub fn is_upper_triangular(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|a| a.is_upper_triangular(tol))
    }

    /// Block upper triangular with diagonal block sizes `partition`.
    pub fn is_block_upper_triangular(&self, partition: &[usize], tol: f64) -> bool {
        if partition.iter().sum::<usize>() != self.size() || partition.contains(&0) {
            return false;
        }
        let starts = block_starts(partition);
        self.coeffs.iter().all(|a| {
            starts.iter().enumerate().all(|(bi, &(r0, rl))| {
                starts[..bi].iter().all(|&(c0, cl)| a.submatrix(r0, c0, rl, cl).is_zero(tol))
            })
        })
    }

    /// Diagonal block `P_kk` of size `len` starting at `start`, trailing zero
    /// coefficients removed; `None` if the block is identically zero.
    pub fn diagonal_block(&self, start: usize, len: usize) -> Option<MatrixPolynomial> {
        MatrixPolynomial::trimmed(self.coeffs.iter().map(|a| a.submatrix(start, start, len, len)).collect())
    }

    /// Sum of coefficient Frobenius norms weighted by `|μ|^i`.
    pub fn magnitude_at(&self, mu_abs: f64) -> f64 {
        let mut p = 1.0;
        let mut s = 0.0;
        for a in &self.coeffs {
            s += a.frobenius_norm() * p;
            p *= mu_abs;
        }
        s
    }

    /// Scalar polynomial `Σ (z^* A_i y) λ^i`; `None` when every coefficient vanishes.
    pub fn sandwich(&self, z: &[Quaternion], y: &[Quaternion]) -> Result<Option<ScalarQPolynomial>, PolyError> {
        let mut cs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            cs.push(linalg::inner(&a.mul_vec(y)?, z));
        }
        Ok(ScalarQPolynomial::trimmed(cs, 0.0))
    }
}

pub(crate) fn block_starts(partition: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(partition.len());
    let mut s = 0;
    for &len in partition {
        out.push((s, len));
        s += len;
    }
    out
}

/// `Σ A_i y μ^i`, powers of `μ` applied on the right.
pub fn evaluate_action(p: &MatrixPolynomial, y: &[Quaternion], mu: Quaternion) -> Result<Vec<Quaternion>, PolyError> {
    if y.len() != p.size() {
        return Err(PolyError::DimensionMismatch);
    }
    let mut acc = vec![Quaternion::ZERO; p.size()];
    let mut pow = Quaternion::ONE;
    for a in p.coeffs() {
        let ay = a.mul_vec(y)?;
        for (s, v) in acc.iter_mut().zip(ay) {
            *s += v * pow;
        }
        pow *= mu;
    }
    Ok(acc)
}

/// Complex matrix polynomial `Σ M_i λ^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrixPolynomial {
    pub coeffs: Vec<ComplexMatrix>,
}

impl ComplexMatrixPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `Σ M_i v λ^i` for complex `λ`.
    pub fn apply(&self, v: &[Complex64], lambda: Complex64) -> Result<Vec<Complex64>, LinalgError> {
        let mut acc = vec![Complex64::new(0.0, 0.0); v.len()];
        let mut pow = Complex64::new(1.0, 0.0);
        for m in &self.coeffs {
            for (s, t) in acc.iter_mut().zip(m.mul_vec(v)?) {
                *s += t * pow;
            }
            pow *= lambda;
        }
        Ok(acc)
    }
}

/// `P_χ(λ) = Σ χ_{A_i} λ^i`.
pub fn adjoint_polynomial(p: &MatrixPolynomial) -> ComplexMatrixPolynomial {
    ComplexMatrixPolynomial {
        coeffs: p.coeffs().iter().map(|a| complex_adjoint(a).expect("square coefficients")).collect(),
    }
}

/// Block companion matrix of the monic normalization `A_m^{-1} A_i`.
pub fn companion(p: &MatrixPolynomial) -> Result<QuaternionMatrix, PolyError> {
    let inv_lead = match inverse(p.leading()) {
        Ok(m) => m,
        Err(LinalgError::Singular) => return Err(PolyError::SingularLeadingCoefficient),
        Err(e) => return Err(e.into()),
    };
    let (n, m) = (p.size(), p.degree());
    if m == 0 {
        return Err(PolyError::ZeroLeading);
    }
    let mut c = QuaternionMatrix::zeros(n * m, n * m);
    for blk in 0..m.saturating_sub(1) {
        for i in 0..n {
            c[(blk * n + i, (blk + 1) * n + i)] = Quaternion::ONE;
        }
    }
    for (blk, a) in p.coeffs()[..m].iter().enumerate() {
        let normalized = inv_lead.matmul(a)?;
        for r in 0..n {
            for col in 0..n {
                c[((m - 1) * n + r, blk * n + col)] = -normalized[(r, col)];
            }
        }
    }
    Ok(c)
}

/// Standard eigenvalue together with a verified eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: StandardEigenvalue,
    pub vector: Vec<Quaternion>,
    pub residual: f64,
    pub bound: f64,
}

/// The `m·n` standard eigenvalues of `P`, sorted by modulus then real part.
pub fn polyeig(p: &MatrixPolynomial) -> Result<Vec<StandardEigenvalue>, PolyError> {
    Ok(polyeig_pairs(p)?.into_iter().map(|e| e.value).collect())
}

/// [`polyeig`] with the recovered eigenvector and residual of each value.
///
/// The eigenvector comes from the `χ`-eigenvector `[v1; v2]` of the
/// companion through `x = v1 - conj(v2)·j`; its leading block is `y`.
pub fn polyeig_pairs(p: &MatrixPolynomial) -> Result<Vec<EigenPair>, PolyError> {
    let c = companion(p)?;
    let chi = complex_adjoint(&c)?;
    let eigs = eig_complex(&chi)?;
    let c_norm = c.frobenius_norm();
    let values = pair_conjugates(&eigs, PAIRING_TOL * c_norm.max(1.0))?;
    let n = p.size();
    let mut out = Vec::with_capacity(values.len());
    for value in values {
        let v = eigenvector(&chi, value.to_complex())?;
        let x = vec_from_adjoint(&v);
        let mut y = x[..n].to_vec();
        let ny = vec_norm(&y);
        if ny > 0.0 {
            y.iter_mut().for_each(|q| *q = q.scale(1.0 / ny));
        }
        let mu = value.to_quaternion();
        let residual = vec_norm(&evaluate_action(p, &y, mu)?);
        // Relative to the coefficients at |μ|, plus the residual an eigenvalue
        // error of size ‖C‖ can cause (matters when μ ≈ 0 and A_0 ≈ 0).
        let slope: f64 = (0..p.degree()).map(|i| mu.norm().powi(i as i32)).sum();
        let scale = p.magnitude_at(mu.norm()) + p.leading().frobenius_norm() * c_norm * slope;
        let bound = POLYEIG_RESIDUAL_TOL * scale * vec_norm(&y);
        if ny == 0.0 || residual > bound {
            return Err(PolyError::ResidualFailure { value, residual, bound });
        }
        out.push(EigenPair { value, vector: y, residual, bound });
    }
    Ok(out)
}

/// `A_0 λ^m + A_1 λ^{m-1} + … + A_m`.
pub fn reversal(p: &MatrixPolynomial) -> Result<MatrixPolynomial, PolyError> {
    let mut c = p.coeffs().to_vec();
    c.reverse();
    MatrixPolynomial::new(c)
}

/// The real 4n×4n operator `y ↦ Σ A_i y μ^i`.
pub fn realified_operator(p: &MatrixPolynomial, mu: Quaternion) -> Result<RealMatrix, PolyError> {
    let n = p.size();
    let mut op = RealMatrix::zeros(4 * n, 4 * n);
    let mut pow = Quaternion::ONE;
    for a in p.coeffs() {
        op.add_assign(&real_rep_left(a)?.matmul(&real_rep_right_scalar(pow, n))?)?;
        pow *= mu;
    }
    Ok(op)
}

/// Rank report of the realified operator at `μ`.
pub fn eigen_oracle_report(p: &MatrixPolynomial, mu: Quaternion) -> Result<RankReport, PolyError> {
    Ok(realified_operator(p, mu)?.rank_report(RANK_PIVOT_TOL))
}

pub(crate) fn answer_from_rank(rep: &RankReport, dim: usize) -> Answer {
    match (rep.rank < dim, rep.ambiguous) {
        (_, true) => Answer::Unknown,
        (true, false) => Answer::Yes,
        (false, false) => Answer::No,
    }
}

/// Independent brute-force eigenvalue test: `μ` is an eigenvalue iff the
/// realified operator `Σ L(A_i) R(μ^i)` is rank-deficient.
pub fn is_eigenvalue_oracle(p: &MatrixPolynomial, mu: Quaternion) -> Answer {
    match eigen_oracle_report(p, mu) {
        Ok(rep) => answer_from_rank(&rep, 4 * p.size()),
        Err(_) => Answer::Unknown,
    }
}

/// Unit kernel vector of the realified operator at `μ`, if it is singular.
pub fn oracle_kernel_vector(p: &MatrixPolynomial, mu: Quaternion) -> Option<Vec<Quaternion>> {
    let rep = eigen_oracle_report(p, mu).ok()?;
    rep.kernel.map(|k| canonical_witness(p, mu, linalg::vec_from_real(&k)))
}

/// Rotates a kernel vector by a unit right scalar so that its largest entry
/// is real, when that keeps it in the kernel (it does whenever the scalar
/// commutes with `μ`).
pub(crate) fn canonical_witness(p: &MatrixPolynomial, mu: Quaternion, y: Vec<Quaternion>) -> Vec<Quaternion> {
    canonicalize(y, |cand| evaluate_action(p, cand, mu).map(|r| vec_norm(&r)).unwrap_or(f64::INFINITY))
}

pub(crate) fn canonicalize(y: Vec<Quaternion>, residual: impl Fn(&[Quaternion]) -> f64) -> Vec<Quaternion> {
    let Some(big) = y.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())) else {
        return y;
    };
    if big.norm() == 0.0 {
        return y;
    }
    let s = big.conj().scale(1.0 / big.norm());
    let cand = vec_mul_right(&y, s);
    let base = residual(&y);
    let tol = 1e-12_f64.max(10.0 * base);
    let mut cand = if residual(&cand) <= tol { cand } else { y };
    // Flush rounding noise so witnesses print cleanly.
    for q in cand.iter_mut() {
        for c in [&mut q.w, &mut q.x, &mut q.y, &mut q.z] {
            if c.abs() < 1e-15 {
                *c = 0.0;
            }
        }
    }
    cand
}

// ── scalar quaternion polynomials ───────────────────────────────────────

/// `p(λ) = Σ a_i λ^i` with quaternion coefficients and `a_m ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarQPolynomial {
    coeffs: Vec<Quaternion>,
}

impl ScalarQPolynomial {
    pub fn new(coeffs: Vec<Quaternion>) -> Result<Self, PolyError> {
        match coeffs.last() {
            None => Err(PolyError::Empty),
            Some(a) if a.is_zero() => Err(PolyError::ZeroLeading),
            Some(_) => Ok(ScalarQPolynomial { coeffs }),
        }
    }

    /// Drops leading coefficients with modulus ≤ `tol·Σ|a_i|`; `None` if all vanish.
    pub fn trimmed(mut coeffs: Vec<Quaternion>, tol: f64) -> Option<Self> {
        let scale: f64 = coeffs.iter().map(|a| a.norm()).sum();
        if scale == 0.0 {
            return None;
        }
        while coeffs.last().is_some_and(|a| a.norm() <= tol * scale) {
            coeffs.pop();
        }
        ScalarQPolynomial::new(coeffs).ok()
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        (self.coeffs[self.degree()] - Quaternion::ONE).norm() <= 1e-12
    }

    /// `Σ a_i λ^i`.
    pub fn eval(&self, lambda: Quaternion) -> Quaternion {
        let mut acc = Quaternion::ZERO;
        let mut pow = Quaternion::ONE;
        for &a in &self.coeffs {
            acc += a * pow;
            pow *= lambda;
        }
        acc
    }

    /// `a_m^{-1} p`, which has the same zeros.
    pub fn monic(&self) -> ScalarQPolynomial {
        let inv = self.coeffs[self.degree()].inv().expect("nonzero leading coefficient");
        let mut coeffs: Vec<Quaternion> = self.coeffs.iter().map(|&a| inv * a).collect();
        *coeffs.last_mut().expect("nonempty") = Quaternion::ONE;
        ScalarQPolynomial { coeffs }
    }

    /// Scale `Σ |a_i| max(1, ρ)^i` used for relative residuals at modulus `ρ`.
    pub fn magnitude_at(&self, rho: f64) -> f64 {
        let r = rho.max(1.0);
        let mut p = 1.0;
        let mut s = 0.0;
        for a in &self.coeffs {
            s += a.norm() * p;
            p *= r;
        }
        s
    }

    /// Right division by a real polynomial `d` (ascending, monic), returning
    /// the remainder's coefficients (degree < deg d).
    pub fn remainder_by_real(&self, d: &[f64]) -> Vec<Quaternion> {
        let dd = d.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            r.resize(dd, Quaternion::ZERO);
            return r;
        }
        for top in (dd..r.len()).rev() {
            let lead = r[top];
            if lead.is_zero() {
                continue;
            }
            for (k, &dk) in d.iter().enumerate() {
                let idx = top - dd + k;
                r[idx] -= lead.scale(dk);
            }
        }
        r.truncate(dd);
        r
    }

    /// Same polynomial as a 1×1 [`MatrixPolynomial`].
    pub fn to_matrix_polynomial(&self) -> MatrixPolynomial {
        MatrixPolynomial::new(self.coeffs.iter().map(|&a| QuaternionMatrix::scalar(a, 1)).collect())
            .expect("nonzero leading coefficient")
    }
}

/// Real coefficients `c_k = Σ_{i+j=k} a_i conj(a_j)`, `k = 0..2m`, of the
/// characteristic polynomial of a monic scalar quaternion polynomial.
pub fn scalar_char_poly(p: &ScalarQPolynomial) -> Result<Vec<f64>, PolyError> {
    if !p.is_monic() {
        return Err(PolyError::NotMonic);
    }
    char_poly_unchecked(p.coeffs())
}

fn char_poly_unchecked(a: &[Quaternion]) -> Result<Vec<f64>, PolyError> {
    let m = a.len() - 1;
    let scale: f64 = a.iter().map(|q| q.norm_sqr()).sum();
    let mut out = Vec::with_capacity(2 * m + 1);
    for k in 0..=2 * m {
        let mut s = Quaternion::ZERO;
        for i in k.saturating_sub(m)..=k.min(m) {
            s += a[i] * a[k - i].conj();
        }
        let imag = s.vector_norm();
        if imag > 1e-10 * scale {
            return Err(PolyError::NonRealCoefficient { k, imag });
        }
        out.push(s.w);
    }
    Ok(out)
}

/// Complex roots of a real polynomial (ascending coefficients), with multiplicity.
pub fn real_poly_roots(coeffs: &[f64]) -> Result<Vec<Complex64>, LinalgError> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|v| *v == 0.0) {
        c.pop();
    }
    if c.len() <= 1 {
        return Ok(Vec::new());
    }
    let d = c.len() - 1;
    let lead = c[d];
    let m = ComplexMatrix::from_fn(d, d, |r, col| {
        if r + 1 < d {
            Complex64::new(if col == r + 1 { 1.0 } else { 0.0 }, 0.0)
        } else {
            Complex64::new(-c[col] / lead, 0.0)
        }
    });
    eig_complex(&m)
}

/// A zero set of a scalar quaternion polynomial inside one similarity class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarZero {
    /// The unique zero in its class.
    Isolated(Quaternion),
    /// Every member of the class is a zero.
    Spherical(StandardEigenvalue),
}

impl ScalarZero {
    /// A concrete zero: the point itself, or the class representative.
    pub fn representative(&self) -> Quaternion {
        match *self {
            ScalarZero::Isolated(q) => q,
            ScalarZero::Spherical(e) => e.to_quaternion(),
        }
    }

    pub fn class(&self) -> StandardEigenvalue {
        match *self {
            ScalarZero::Isolated(q) => crate::quat::standardize(q),
            ScalarZero::Spherical(e) => e,
        }
    }
}

/// All zeros of `p`, one entry per similarity class that meets the zero set.
pub fn scalar_zeros(p: &ScalarQPolynomial) -> Result<Vec<ScalarZero>, PolyError> {
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    let q = p.monic();
    if q.degree() == 1 {
        return Ok(vec![ScalarZero::Isolated(-q.coeffs()[0])]);
    }
    let chr = char_poly_unchecked(q.coeffs())?;
    let roots = real_poly_roots(&chr)?;
    // Repeated roots of the characteristic polynomial spread by roughly
    // eps^(1/k). Cluster loosely first and split clusters that fail to verify.
    let mut out = Vec::new();
    zeros_from_clusters(&q, &roots, 0, &mut out);
    out.sort_by(|a, b| {
        let (x, y) = (a.representative(), b.representative());
        x.norm().total_cmp(&y.norm()).then(x.w.total_cmp(&y.w))
    });
    out.dedup_by(|a, b| a.representative().distance(b.representative()) <= 1e-6 * (1.0 + b.representative().norm()));
    Ok(out)
}

const CLUSTER_LEVELS: [f64; 3] = [1e-2, 1e-4, PAIRING_TOL];

fn zeros_from_clusters(q: &ScalarQPolynomial, roots: &[Complex64], level: usize, out: &mut Vec<ScalarZero>) {
    let rel = CLUSTER_LEVELS[level];
    for members in clusters(roots, rel) {
        let c = members.iter().sum::<Complex64>() / members.len() as f64;
        let tol = rel * (1.0 + c.norm());
        if c.im < -tol {
            continue;
        }
        let class = StandardEigenvalue::new(c.re, if c.im.abs() <= tol { 0.0 } else { c.im });
        match zero_in_class(q, class) {
            Some(z) => out.push(z),
            None if level + 1 < CLUSTER_LEVELS.len() && members.len() > 1 => {
                zeros_from_clusters(q, &members, level + 1, out)
            }
            None => {}
        }
    }
}

/// Single-linkage clusters of complex points.
fn clusters(points: &[Complex64], rel: f64) -> Vec<Vec<Complex64>> {
    let n = points.len();
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            let tol = rel * (1.0 + points[i].norm().max(points[j].norm()));
            if (points[i] - points[j]).norm() <= tol && label[i] != label[j] {
                let (keep, drop) = (label[i].min(label[j]), label[i].max(label[j]));
                label.iter_mut().filter(|l| **l == drop).for_each(|l| *l = keep);
            }
        }
    }
    (0..n)
        .map(|l| (0..n).filter(|&i| label[i] == l).map(|i| points[i]).collect::<Vec<_>>())
        .filter(|m| !m.is_empty())
        .collect()
}

/// The zero set of monic `q` inside `class`, from the remainder `α + βλ` of
/// right division by the class's real quadratic.
fn zero_in_class(q: &ScalarQPolynomial, class: StandardEigenvalue) -> Option<ScalarZero> {
    let rho = class.modulus();
    let tiny = REMAINDER_TOL * q.magnitude_at(rho);
    if class.im == 0.0 {
        let x = Quaternion::real(class.re);
        return (q.eval(x).norm() <= tiny).then_some(ScalarZero::Isolated(x));
    }
    let d = [class.re * class.re + class.im * class.im, -2.0 * class.re, 1.0];
    let rem = q.remainder_by_real(&d);
    let (alpha, beta) = (rem[0], rem[1]);
    if beta.norm() * rho.max(1.0) <= tiny {
        return (alpha.norm() <= tiny).then_some(ScalarZero::Spherical(class));
    }
    let z = -(beta.inv().ok()? * alpha);
    let zt = REMAINDER_TOL * q.magnitude_at(z.norm());
    (q.eval(z).norm() <= zt.max(tiny)).then_some(ScalarZero::Isolated(z))
}
