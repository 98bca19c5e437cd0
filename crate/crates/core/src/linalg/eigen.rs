//! Dense complex eigensolver: balancing, Householder reduction to upper
//! Hessenberg form, then single-shift QR sweeps with Wilkinson shifts and
//! deflation on small subdiagonal entries.

use num_complex::Complex64;

use super::complex::{ComplexLu, ComplexMatrix};
use super::LinalgError;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Largest dimension accepted by [`eig_complex`].
pub const MAX_EIG_DIM: usize = 512;

/// All eigenvalues of a square complex matrix, with multiplicity.
///
/// Fails with [`LinalgError::NoConvergence`] after `30·dim` QR sweeps.
pub fn eig_complex(m: &ComplexMatrix) -> Result<Vec<Complex64>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NonSquare);
    }
    let n = m.rows();
    if n > MAX_EIG_DIM {
        return Err(LinalgError::TooLarge { dim: n, max: MAX_EIG_DIM });
    }
    if m.as_slice().iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(LinalgError::NonFinite);
    }
    let mut h = m.clone();
    balance(&mut h);
    hessenberg(&mut h);
    hessenberg_qr(h)
}

/// Parlett–Reinsch diagonal scaling by powers of two; leaves the spectrum unchanged.
fn balance(a: &mut ComplexMatrix) {
    const RADIX: f64 = 2.0;
    let n = a.rows();
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    let mut sweeps = 0;
    while !done && sweeps < 100 {
        done = true;
        sweeps += 1;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].l1_norm();
                    r += a[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut g = r / RADIX;
            let mut f = 1.0;
            let s = c + r;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let inv_f = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= inv_f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// In-place unitary similarity to upper Hessenberg form.
fn hessenberg(a: &mut ComplexMatrix) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    let mut v = vec![ZERO; n];
    for k in 0..n - 2 {
        let mut alpha_sq = 0.0;
        for r in k + 1..n {
            alpha_sq += a[(r, k)].norm_sqr();
        }
        let xnorm = alpha_sq.sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        v.fill(ZERO);
        v[k + 1] = x0 - alpha;
        for r in k + 2..n {
            v[r] = a[(r, k)];
        }
        let vnorm_sq: f64 = v[k + 1..].iter().map(|c| c.norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sq;
        // Left: A <- (I - beta v v*) A on rows k+1.., columns k..
        for c in k..n {
            let mut s = ZERO;
            for r in k + 1..n {
                s += v[r].conj() * a[(r, c)];
            }
            s *= beta;
            for r in k + 1..n {
                let t = v[r] * s;
                a[(r, c)] -= t;
            }
        }
        // Right: A <- A (I - beta v v*) on columns k+1.., all rows
        for r in 0..n {
            let mut s = ZERO;
            for c in k + 1..n {
                s += a[(r, c)] * v[c];
            }
            s *= beta;
            for c in k + 1..n {
                let t = s * v[c].conj();
                a[(r, c)] -= t;
            }
        }
        a[(k + 1, k)] = alpha;
        for r in k + 2..n {
            a[(r, k)] = ZERO;
        }
    }
}

/// Givens rotation `[[c, s], [-conj(s), c]]` zeroing `b` in `(a, b)`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, ZERO);
    }
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let norm = an.hypot(bn);
    let c = an / norm;
    let s = (a / an) * b.conj() / norm;
    (c, s)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let m1 = mean + disc;
    let m2 = mean - disc;
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

fn hessenberg_qr(mut h: ComplexMatrix) -> Result<Vec<Complex64>, LinalgError> {
    let n = h.rows();
    let mut eigs = Vec::with_capacity(n);
    if n == 0 {
        return Ok(eigs);
    }
    let norm = h.frobenius_norm();
    let max_sweeps = 30 * n.max(1);
    let mut total = 0usize;
    let mut iter = 0usize;
    let mut hi = n - 1;
    let mut rots: Vec<(f64, Complex64)> = Vec::with_capacity(n);
    loop {
        if hi == 0 {
            eigs.push(h[(0, 0)]);
            break;
        }
        // Locate the start of the active unreduced block.
        let mut l = hi;
        while l > 0 {
            let mut tst = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if tst == 0.0 {
                tst = norm;
            }
            if h[(l, l - 1)].norm() <= f64::EPSILON * tst || h[(l, l - 1)].norm() < f64::MIN_POSITIVE {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            eigs.push(h[(hi, hi)]);
            hi -= 1;
            iter = 0;
            continue;
        }
        if total >= max_sweeps {
            return Err(LinalgError::NoConvergence { sweeps: total });
        }
        iter += 1;
        total += 1;
        let shift = if iter.is_multiple_of(10) {
            // Exceptional shift to break cycling.
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        for k in l..=hi {
            h[(k, k)] -= shift;
        }
        rots.clear();
        for k in l..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for col in k..=hi {
                let x = h[(k, col)];
                let y = h[(k + 1, col)];
                h[(k, col)] = x * c + s * y;
                h[(k + 1, col)] = -s.conj() * x + y * c;
            }
            h[(k + 1, k)] = ZERO;
            rots.push((c, s));
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let k = l + idx;
            let top = (k + 2).min(hi);
            for row in l..=top {
                let x = h[(row, k)];
                let y = h[(row, k + 1)];
                h[(row, k)] = x * c + y * s.conj();
                h[(row, k + 1)] = -x * s + y * c;
            }
        }
        for k in l..=hi {
            h[(k, k)] += shift;
        }
    }
    Ok(eigs)
}

/// Unit eigenvector for an (approximate) eigenvalue `lambda` of `m` by
/// inverse iteration with a slightly perturbed shift.
pub fn eigenvector(m: &ComplexMatrix, lambda: Complex64) -> Result<Vec<Complex64>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NonSquare);
    }
    let n = m.rows();
    if m.frobenius_norm() == 0.0 && lambda.norm() == 0.0 {
        // Every vector is an eigenvector of the zero matrix.
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        if n > 0 {
            e[0] = Complex64::new(1.0, 0.0);
        }
        return Ok(e);
    }
    let scale = m.frobenius_norm().max(lambda.norm()).max(f64::MIN_POSITIVE);
    let delta = Complex64::new(1.0, 0.5) * (f64::EPSILON * 16.0 * scale);
    let lu = ComplexLu::factor(&m.shifted(lambda + delta))?;
    let floor = f64::EPSILON * scale;
    // Deterministic, generic start vector.
    let mut x: Vec<Complex64> = (0..n)
        .map(|k| Complex64::new(1.0 + 0.37 * k as f64, 0.21 * ((k * 7 + 3) % 11) as f64))
        .collect();
    normalize(&mut x);
    for _ in 0..3 {
        let mut y = lu.solve_with_floor(&x, floor);
        if y.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        normalize(&mut y);
        x = y;
    }
    Ok(x)
}

fn normalize(v: &mut [Complex64]) {
    let n: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|c| *c /= n);
    }
}
