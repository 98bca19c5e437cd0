//! Quaternion scalars and the geometry of their similarity classes.
//!
//! Two quaternions are similar exactly when they share the real part and the
//! modulus of the vector part, so each similarity class is either a single
//! real point or a 2-sphere `re + im·u` with `u` ranging over the unit pure
//! imaginary quaternions. [`StandardEigenvalue`] stores the class by its
//! complex representative `re + im·i`, `im >= 0`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance used by [`similar`].
pub const SIMILARITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum QuatError {
    #[error("division by a zero quaternion")]
    ZeroDivision,
}

/// Real quaternion `w + xi + yj + zk`, serialized as `[w, x, y, z]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<[f64; 4]> for Quaternion {
    fn from(c: [f64; 4]) -> Self {
        Quaternion::new(c[0], c[1], c[2], c[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.to_array()
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl From<Complex64> for Quaternion {
    fn from(c: Complex64) -> Self {
        Quaternion::new(c.re, c.im, 0.0, 0.0)
    }
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion { w: 0.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const ONE: Quaternion = Quaternion { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const I: Quaternion = Quaternion { w: 0.0, x: 1.0, y: 0.0, z: 0.0 };
    pub const J: Quaternion = Quaternion { w: 0.0, x: 0.0, y: 1.0, z: 0.0 };
    pub const K: Quaternion = Quaternion { w: 0.0, x: 0.0, y: 0.0, z: 1.0 };

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Quaternion { w, x: 0.0, y: 0.0, z: 0.0 }
    }

    /// Builds `c1 + c2·j` from two complex numbers.
    ///
    /// With `c1 = a + bi` and `c2 = c + di` this is `a + bi + cj + dk`.
    #[inline]
    pub fn from_complex_pair(c1: Complex64, c2: Complex64) -> Self {
        Quaternion::new(c1.re, c1.im, c2.re, c2.im)
    }

    /// Splits `q = c1 + c2·j` into `(c1, c2)`.
    #[inline]
    pub fn complex_pair(self) -> (Complex64, Complex64) {
        (Complex64::new(self.w, self.x), Complex64::new(self.y, self.z))
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Modulus `|q|`.
    #[inline]
    pub fn norm(self) -> f64 {
        let m = self.w.abs().max(self.x.abs()).max(self.y.abs()).max(self.z.abs());
        if m == 0.0 || !m.is_finite() {
            return m;
        }
        let (w, x, y, z) = (self.w / m, self.x / m, self.y / m, self.z / m);
        m * (w * w + x * x + y * y + z * z).sqrt()
    }

    /// Modulus of the vector part `xi + yj + zk`.
    #[inline]
    pub fn vector_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    #[inline]
    pub fn vector_part(self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.w == 0.0 && self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Multiplicative inverse `conj(q) / |q|²`.
    pub fn inv(self) -> Result<Self, QuatError> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(QuatError::ZeroDivision);
        }
        // Scale first so that |q|² cannot underflow.
        let c = self.conj().scale(1.0 / n);
        Ok(c.scale(1.0 / n))
    }

    /// `self^k` for `k >= 0`.
    pub fn powi(self, k: usize) -> Self {
        let mut acc = Quaternion::ONE;
        let mut base = self;
        let mut e = k;
        // Powers of a single quaternion commute, so square-and-multiply is safe.
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Distance to `other` in the Euclidean metric of R⁴.
    #[inline]
    pub fn distance(self, other: Quaternion) -> f64 {
        (self - other).norm()
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        let p = self;
        Quaternion::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
        )
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, q: Quaternion) {
        *self = *self * q;
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, s: f64) -> Quaternion {
        self.scale(1.0 / s)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.w, self.x, self.y, self.z)
    }
}

/// Complex representative `re + im·i` (`im >= 0`) of a similarity class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardEigenvalue {
    pub re: f64,
    pub im: f64,
}

impl StandardEigenvalue {
    /// Panics in debug builds if `im` is negative.
    pub fn new(re: f64, im: f64) -> Self {
        debug_assert!(im >= 0.0, "standard eigenvalue with negative imaginary part");
        StandardEigenvalue { re, im: im.max(0.0) }
    }

    /// Class representative of a complex number (the sign of `im` is dropped).
    pub fn from_complex(c: Complex64) -> Self {
        StandardEigenvalue { re: c.re, im: c.im.abs() }
    }

    pub fn modulus(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn to_quaternion(self) -> Quaternion {
        Quaternion::new(self.re, self.im, 0.0, 0.0)
    }

    /// The class member `re + im·u` in direction `u` (normalized; `i` if `u` is zero).
    pub fn member_along(self, u: Quaternion) -> Quaternion {
        let v = u.vector_part();
        let n = v.norm();
        let dir = if n > 0.0 { v.scale(1.0 / n) } else { Quaternion::I };
        Quaternion::real(self.re) + dir.scale(self.im)
    }

    /// Largest distance from `p` to a member of the class.
    pub fn farthest_distance(self, p: Quaternion) -> f64 {
        (p.w - self.re).hypot(p.vector_norm() + self.im)
    }
}

impl fmt::Display for StandardEigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

/// Hamilton product, as a free function.
#[inline]
pub fn mul(p: Quaternion, q: Quaternion) -> Quaternion {
    p * q
}

/// Multiplicative inverse.
#[inline]
pub fn inv(q: Quaternion) -> Result<Quaternion, QuatError> {
    q.inv()
}

/// Standard representative `(Re q, |vec q|)` of the similarity class of `q`.
pub fn standardize(q: Quaternion) -> StandardEigenvalue {
    StandardEigenvalue { re: q.w, im: q.vector_norm() }
}

/// `true` when `p` and `q` lie in the same similarity class.
pub fn similar(p: Quaternion, q: Quaternion) -> bool {
    let a = standardize(p);
    let b = standardize(q);
    (a.re - b.re).abs() <= SIMILARITY_TOL && (a.im - b.im).abs() <= SIMILARITY_TOL
}

/// Euclidean distance from `p` to the similarity class of `e`.
///
/// Minimizing `|p - (re + im·u)|` over unit pure imaginary `u` aligns `u`
/// with the vector part of `p`, leaving `√((Re p − re)² + (|vec p| − im)²)`.
pub fn class_distance(e: StandardEigenvalue, p: Quaternion) -> f64 {
    (p.w - e.re).hypot(p.vector_norm() - e.im)
}

/// The member of the class of `e` nearest to `p`.
pub fn nearest_class_member(e: StandardEigenvalue, p: Quaternion) -> Quaternion {
    e.member_along(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn random_q(rng: &mut ChaCha8Rng) -> Quaternion {
        q(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        )
    }

    fn random_unit_pure(rng: &mut ChaCha8Rng) -> Quaternion {
        loop {
            let v = q(0.0, rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let n = v.norm();
            if n > 1e-3 && n <= 1.0 {
                return v.scale(1.0 / n);
            }
        }
    }

    #[test]
    fn multiplication_table() {
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        assert_eq!(i * j, k);
        assert_eq!(j * i, -k);
        assert_eq!(j * k, i);
        assert_eq!(k * j, -i);
        assert_eq!(k * i, j);
        assert_eq!(i * k, -j);
        for u in [i, j, k] {
            assert_eq!(u * u, -Quaternion::ONE);
        }
        assert_eq!(i * j * k, -Quaternion::ONE);
    }

    #[test]
    fn mul_examples() {
        let p = q(1.7, -0.3, 2.0, 0.5);
        assert_eq!(p * Quaternion::ONE, p);
        assert_eq!((Quaternion::ONE + Quaternion::I) * (Quaternion::ONE + Quaternion::J), q(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inv(Quaternion::I).unwrap(), -Quaternion::I);
        assert_eq!(inv(Quaternion::real(2.0)).unwrap(), Quaternion::real(0.5));
        let r = inv(q(1.0, 1.0, 1.0, 1.0)).unwrap();
        assert!(close(r, q(0.25, -0.25, -0.25, -0.25), 1e-15));
        assert_eq!(inv(Quaternion::ZERO), Err(QuatError::ZeroDivision));
        assert_eq!(inv(q(1e-301, 0.0, 0.0, 0.0)), Err(QuatError::ZeroDivision));
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(Quaternion::J), StandardEigenvalue::new(0.0, 1.0));
        assert_eq!(standardize(Quaternion::real(3.0)), StandardEigenvalue::new(3.0, 0.0));
        let e = standardize(q(1.0, 2.0, 2.0, 1.0));
        assert!((e.re - 1.0).abs() < 1e-15 && (e.im - 3.0).abs() < 1e-15);
    }

    #[test]
    fn conjugating_by_i_plus_j_maps_i_to_j() {
        let s = Quaternion::I + Quaternion::J;
        let t = s.inv().unwrap() * Quaternion::I * s;
        assert!(close(t, Quaternion::J, 1e-15));
    }

    #[test]
    fn similar_examples() {
        assert!(similar(Quaternion::I, Quaternion::J));
        assert!(!similar(Quaternion::ONE, -Quaternion::ONE));
        assert!(similar(Quaternion::K, -Quaternion::K));
    }

    #[test]
    fn class_distance_examples() {
        assert_eq!(class_distance(standardize(Quaternion::I), Quaternion::J), 0.0);
        assert_eq!(class_distance(StandardEigenvalue::new(1.0, 0.0), Quaternion::ZERO), 1.0);
        let d = class_distance(StandardEigenvalue::new(0.5, 0.5), Quaternion::real(2.0));
        assert!((d - 1.581_138_830_084_19).abs() < 1e-12);
    }

    // Brute-force minimization over the class sphere: the closed form must
    // never exceed the sampled minimum and must be approached by it.
    #[test]
    fn class_distance_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let e = StandardEigenvalue::new(rng.random_range(-2.0..2.0), rng.random_range(0.0..2.0));
            let p = random_q(&mut rng);
            let closed = class_distance(e, p);
            let mut best = f64::INFINITY;
            for _ in 0..1000 {
                let u = random_unit_pure(&mut rng);
                best = best.min(p.distance(Quaternion::real(e.re) + u.scale(e.im)));
            }
            assert!(closed <= best + 1e-12, "closed form {closed} above sample min {best}");
            assert!(best - closed < 0.1 * (1.0 + e.im), "sample min {best} far from {closed}");
            // The minimizer itself attains the closed form.
            let m = nearest_class_member(e, p);
            assert!((p.distance(m) - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn similarity_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let p = random_q(&mut rng);
            let r = random_q(&mut rng);
            let s = random_q(&mut rng);
            let t = s.inv().unwrap() * p * s;
            let (a, b) = (standardize(p), standardize(t));
            assert!((a.re - b.re).abs() < 1e-9 && (a.im - b.im).abs() < 1e-9);
            assert!(class_distance(standardize(p), t) < 1e-9);
            assert!(similar(p, t));
            assert_eq!(similar(p, r), class_distance(standardize(p), r) <= 1e-9);
            assert!(((p * r).norm() - p.norm() * r.norm()).abs() <= 1e-12 * p.norm() * r.norm());
            let c = p.conj() * p;
            assert!((c.w - p.norm_sqr()).abs() <= 1e-14 * p.norm_sqr());
            assert!(c.vector_norm() <= 1e-14 * p.norm_sqr());
            // Members sampled from the class sphere are at distance zero.
            let e = standardize(p);
            let u = random_unit_pure(&mut rng);
            assert!(class_distance(e, Quaternion::real(e.re) + u.scale(e.im)) < 1e-12);
        }
    }

    #[test]
    fn serde_as_four_array() {
        let v = serde_json::to_string(&q(1.0, -2.0, 0.5, 0.0)).unwrap();
        assert_eq!(v, "[1.0,-2.0,0.5,0.0]");
        let back: Quaternion = serde_json::from_str("[0, 0, 1, 0]").unwrap();
        assert_eq!(back, Quaternion::J);
    }

    #[test]
    fn complex_pair_roundtrip() {
        let p = q(1.0, 2.0, 3.0, 4.0);
        let (c1, c2) = p.complex_pair();
        assert_eq!(Quaternion::from_complex_pair(c1, c2), p);
        // c1 + c2 j really is the Hamilton product.
        assert_eq!(Quaternion::from(c1) + Quaternion::from(c2) * Quaternion::J, p);
    }

    #[test]
    fn powers() {
        let p = q(0.3, 1.1, -0.4, 0.9);
        let mut acc = Quaternion::ONE;
        for k in 0..7 {
            assert!(close(p.powi(k), acc, 1e-12));
            acc *= p;
        }
    }
}
