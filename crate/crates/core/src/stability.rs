//! Regions of ℍ, stability and hyperstability verdicts, eigenvalue annulus
//! bounds and numerical-range sampling.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, inner, is_invertible, spectral_norm, vec_mul_right, vec_norm, QuaternionMatrix};
use crate::matpoly::{
    evaluate_action, is_eigenvalue_oracle, oracle_kernel_vector, polyeig_pairs, reversal, scalar_zeros, Answer,
    MatrixPolynomial, PolyError, ScalarQPolynomial, ScalarZero,
};
use crate::quat::{class_distance, standardize, Quaternion, StandardEigenvalue};

/// Width of the band around region boundaries where verdicts become UNKNOWN.
pub const BOUNDARY_BAND: f64 = 1e-9;
/// Points of a finite region match within this relative distance.
pub const POINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegionError {
    #[error("radius must be positive and finite, got {0}")]
    BadRadius(f64),
    #[error("annulus needs 0 ≤ inner ≤ outer, got inner {inner} and outer {outer}")]
    BadAnnulus { inner: f64, outer: f64 },
    #[error("finite set needs at least one point")]
    EmptySet,
    #[error("region data is not finite")]
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StabilityError {
    #[error("coefficient {0} is singular")]
    SingularCoefficient(usize),
    #[error("coefficients have no sign change")]
    NoSignChange,
    #[error("coefficients have {0} sign changes, expected one")]
    MultipleSignChanges(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A subset of ℍ.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    /// `|q - c| < r`
    OpenBall { center: Quaternion, radius: f64 },
    /// `|q - c| ≤ r`
    ClosedBall { center: Quaternion, radius: f64 },
    /// `|q - c| > r`
    ComplementClosedBall { center: Quaternion, radius: f64 },
    /// `inner ≤ |q - c| ≤ outer`
    Annulus { center: Quaternion, inner: f64, outer: f64 },
    FiniteSet(Vec<Quaternion>),
}

fn check_radius(r: f64) -> Result<(), RegionError> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(RegionError::BadRadius(r))
    }
}

fn check_center(c: Quaternion) -> Result<(), RegionError> {
    if c.is_finite() {
        Ok(())
    } else {
        Err(RegionError::NonFinite)
    }
}

impl Region {
    pub fn open_ball(center: Quaternion, radius: f64) -> Result<Region, RegionError> {
        check_center(center)?;
        check_radius(radius)?;
        Ok(Region::OpenBall { center, radius })
    }

    pub fn closed_ball(center: Quaternion, radius: f64) -> Result<Region, RegionError> {
        check_center(center)?;
        check_radius(radius)?;
        Ok(Region::ClosedBall { center, radius })
    }

    pub fn complement_closed_ball(center: Quaternion, radius: f64) -> Result<Region, RegionError> {
        check_center(center)?;
        check_radius(radius)?;
        Ok(Region::ComplementClosedBall { center, radius })
    }

    pub fn annulus(center: Quaternion, inner: f64, outer: f64) -> Result<Region, RegionError> {
        check_center(center)?;
        if !(inner >= 0.0 && inner <= outer && outer.is_finite()) {
            return Err(RegionError::BadAnnulus { inner, outer });
        }
        Ok(Region::Annulus { center, inner, outer })
    }

    pub fn finite_set(points: Vec<Quaternion>) -> Result<Region, RegionError> {
        if points.is_empty() {
            return Err(RegionError::EmptySet);
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(RegionError::NonFinite);
        }
        Ok(Region::FiniteSet(points))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Region::OpenBall { .. } => "open_ball",
            Region::ClosedBall { .. } => "closed_ball",
            Region::ComplementClosedBall { .. } => "complement_closed_ball",
            Region::Annulus { .. } => "annulus",
            Region::FiniteSet(_) => "finite_set",
        }
    }

    pub fn center(&self) -> Option<Quaternion> {
        match *self {
            Region::OpenBall { center, .. }
            | Region::ClosedBall { center, .. }
            | Region::ComplementClosedBall { center, .. }
            | Region::Annulus { center, .. } => Some(center),
            Region::FiniteSet(_) => None,
        }
    }

    /// Exact membership.
    pub fn contains(&self, q: Quaternion) -> bool {
        match self {
            Region::OpenBall { center, radius } => q.distance(*center) < *radius,
            Region::ClosedBall { center, radius } => q.distance(*center) <= *radius,
            Region::ComplementClosedBall { center, radius } => q.distance(*center) > *radius,
            Region::Annulus { center, inner, outer } => {
                let d = q.distance(*center);
                *inner <= d && d <= *outer
            }
            Region::FiniteSet(points) => points.contains(&q),
        }
    }

    /// Membership of a computed point, UNKNOWN within [`BOUNDARY_BAND`] of the boundary.
    pub fn contains_approx(&self, q: Quaternion) -> Answer {
        let inside = |d: f64, r: f64| {
            let band = BOUNDARY_BAND * r.max(1.0);
            if d < r - band {
                Answer::Yes
            } else if d > r + band {
                Answer::No
            } else {
                Answer::Unknown
            }
        };
        match self {
            Region::OpenBall { center, radius } | Region::ClosedBall { center, radius } => {
                inside(q.distance(*center), *radius)
            }
            Region::ComplementClosedBall { center, radius } => negate(inside(q.distance(*center), *radius)),
            Region::Annulus { center, inner, outer } => {
                let d = q.distance(*center);
                let ok_outer = inside(d, *outer);
                let ok_inner = if *inner == 0.0 { Answer::Yes } else { negate(inside(d, *inner)) };
                both(ok_outer, ok_inner)
            }
            Region::FiniteSet(points) => {
                if points.iter().any(|p| p.distance(q) <= POINT_TOL * (1.0 + p.norm())) {
                    Answer::Yes
                } else {
                    Answer::No
                }
            }
        }
    }

    /// Whether the similarity class of `e` meets the region, from the
    /// nearest and farthest class distances to the center.
    pub fn meets_class(&self, e: StandardEigenvalue) -> Answer {
        let gt = |a: f64, b: f64| {
            let band = BOUNDARY_BAND * b.max(1.0);
            if a > b + band {
                Answer::Yes
            } else if a < b - band {
                Answer::No
            } else {
                Answer::Unknown
            }
        };
        match self {
            Region::OpenBall { center, radius } | Region::ClosedBall { center, radius } => {
                gt(*radius, class_distance(e, *center))
            }
            Region::ComplementClosedBall { center, radius } => gt(e.farthest_distance(*center), *radius),
            Region::Annulus { center, inner, outer } => {
                let reach_in = gt(*outer, class_distance(e, *center));
                let reach_out = if *inner == 0.0 { Answer::Yes } else { gt(e.farthest_distance(*center), *inner) };
                both(reach_in, reach_out)
            }
            Region::FiniteSet(points) => {
                let d = points.iter().map(|p| class_distance(e, *p) / (1.0 + p.norm())).fold(f64::INFINITY, f64::min);
                if d <= POINT_TOL {
                    Answer::Yes
                } else {
                    Answer::No
                }
            }
        }
    }

    /// A member of the class of `e` inside the region, chosen away from the
    /// boundary when the class meets it.
    pub fn class_witness(&self, e: StandardEigenvalue) -> Quaternion {
        match self {
            Region::OpenBall { center, .. } | Region::ClosedBall { center, .. } => e.member_along(*center),
            Region::ComplementClosedBall { center, .. } => e.member_along(-*center),
            Region::Annulus { center, inner, outer } => {
                let lo = class_distance(e, *center).max(*inner);
                let hi = e.farthest_distance(*center).min(*outer);
                member_at_distance(e, *center, 0.5 * (lo + hi))
            }
            Region::FiniteSet(points) => points
                .iter()
                .copied()
                .min_by(|a, b| class_distance(e, *a).total_cmp(&class_distance(e, *b)))
                .expect("nonempty set"),
        }
    }

    /// Some point of the region.
    pub fn sample_point(&self) -> Quaternion {
        match self {
            Region::OpenBall { center, .. } | Region::ClosedBall { center, .. } => *center,
            Region::ComplementClosedBall { center, radius } => *center + Quaternion::real(2.0 * radius),
            Region::Annulus { center, inner, outer } => *center + Quaternion::real(0.5 * (inner + outer)),
            Region::FiniteSet(points) => points[0],
        }
    }

    /// `true` when the closed ball `|q| ≤ s` lies inside the region.
    pub fn contains_origin_ball(&self, s: f64) -> bool {
        let slack = 1e-12 * s.max(1.0);
        match self {
            Region::OpenBall { center, radius } => center.norm() + s < *radius,
            Region::ClosedBall { center, radius } => center.norm() + s <= *radius + slack,
            Region::Annulus { center, inner, outer } => *inner == 0.0 && center.norm() + s <= *outer + slack,
            Region::ComplementClosedBall { .. } => false,
            Region::FiniteSet(_) => false,
        }
    }

    /// Deterministic probe points inside the region.
    pub fn probe_points(&self) -> Vec<Quaternion> {
        let dirs = [
            Quaternion::ONE,
            -Quaternion::ONE,
            Quaternion::I,
            -Quaternion::I,
            Quaternion::J,
            -Quaternion::J,
            Quaternion::K,
            -Quaternion::K,
            Quaternion::new(0.5, 0.5, 0.5, 0.5),
            Quaternion::new(-0.5, 0.5, -0.5, 0.5),
        ];
        let shell = |c: Quaternion, radii: &[f64]| {
            let mut out = vec![c];
            for &r in radii {
                out.extend(dirs.iter().map(|&d| c + d.scale(r)));
            }
            out
        };
        match self {
            Region::OpenBall { center, radius } | Region::ClosedBall { center, radius } => {
                shell(*center, &[0.25 * radius, 0.5 * radius, 0.75 * radius])
            }
            Region::ComplementClosedBall { center, radius } => {
                let mut v = shell(*center, &[1.5 * radius, 2.0 * radius, 4.0 * radius]);
                v.remove(0);
                v
            }
            Region::Annulus { center, inner, outer } => {
                let radii: Vec<f64> = [0.1, 0.5, 0.9].iter().map(|t| inner + t * (outer - inner)).collect();
                let mut v = shell(*center, &radii);
                v.remove(0);
                v
            }
            Region::FiniteSet(points) => points.clone(),
        }
    }
}

fn negate(a: Answer) -> Answer {
    match a {
        Answer::Yes => Answer::No,
        Answer::No => Answer::Yes,
        Answer::Unknown => Answer::Unknown,
    }
}

fn both(a: Answer, b: Answer) -> Answer {
    match (a, b) {
        (Answer::No, _) | (_, Answer::No) => Answer::No,
        (Answer::Yes, Answer::Yes) => Answer::Yes,
        _ => Answer::Unknown,
    }
}

/// A member of the class of `e` at distance `t` from `p`, clamped to the
/// attainable range.
fn member_at_distance(e: StandardEigenvalue, p: Quaternion, t: f64) -> Quaternion {
    let v = p.vector_part();
    let vn = v.norm();
    if e.im == 0.0 || vn == 0.0 {
        return e.member_along(v);
    }
    let a = v.scale(1.0 / vn);
    let b = perpendicular(a);
    let dr = p.w - e.re;
    let cos = ((dr * dr + vn * vn + e.im * e.im - t * t) / (2.0 * e.im * vn)).clamp(-1.0, 1.0);
    let sin = (1.0 - cos * cos).max(0.0).sqrt();
    Quaternion::real(e.re) + (a.scale(cos) + b.scale(sin)).scale(e.im)
}

/// A unit pure quaternion orthogonal to the unit pure quaternion `a`.
fn perpendicular(a: Quaternion) -> Quaternion {
    let trial = if a.x.abs() < 0.9 { Quaternion::I } else { Quaternion::J };
    let p = trial - a.scale(a.x * trial.x + a.y * trial.y + a.z * trial.z);
    p.scale(1.0 / p.norm())
}

/// Unit `s` with `s⁻¹·(re + im·i)·s = w` for `w` in that class.
fn similarity_to(w: Quaternion) -> Quaternion {
    let v = w.vector_part();
    let n = v.norm();
    if n == 0.0 {
        return Quaternion::ONE;
    }
    let u = v.scale(1.0 / n);
    // s rotates u onto i under q ↦ s q s̄, so s̄ i s = u.
    let s = Quaternion::ONE - Quaternion::I * u;
    if s.norm() < 1e-8 {
        return Quaternion::J;
    }
    s.scale(1.0 / s.norm())
}

// ── verdicts ────────────────────────────────────────────────────────────

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StabilityStatus {
    Stable,
    NotStable,
    Unknown,
}

impl fmt::Display for StabilityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilityStatus::Stable => "STABLE",
            StabilityStatus::NotStable => "NOT_STABLE",
            StabilityStatus::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    pub certificate: String,
    /// Eigenvalue inside the region (NOT_STABLE only).
    pub witness: Option<Quaternion>,
    /// Nonzero `y` with `Σ A_i y μ^i = 0` for the witness `μ`.
    pub eigenvector: Option<Vec<Quaternion>>,
}

impl StabilityVerdict {
    fn stable(cert: &str) -> Self {
        StabilityVerdict { status: StabilityStatus::Stable, certificate: cert.into(), witness: None, eigenvector: None }
    }

    fn unknown(cert: impl Into<String>) -> Self {
        StabilityVerdict { status: StabilityStatus::Unknown, certificate: cert.into(), witness: None, eigenvector: None }
    }

    fn not_stable(cert: &str, mu: Quaternion, y: Option<Vec<Quaternion>>) -> Self {
        StabilityVerdict { status: StabilityStatus::NotStable, certificate: cert.into(), witness: Some(mu), eigenvector: y }
    }
}

/// Decides whether `P` has a right eigenvalue in `region`.
///
/// With `A_m` invertible the eigenvalue set is the union of the classes of
/// the standard eigenvalues, so ball-type regions are decided by class
/// geometry. Finite sets are decided point by point with the realified
/// oracle. Every NOT_STABLE witness is re-checked by that oracle.
pub fn check_stability(p: &MatrixPolynomial, region: &Region) -> StabilityVerdict {
    if p.degree() == 0 {
        return constant_stability(p, region);
    }
    if let Region::FiniteSet(points) = region {
        return probe_stability(p, points, "oracle-probe");
    }
    if !is_invertible(p.leading()) {
        return singular_leading_stability(p, region);
    }
    let pairs = match polyeig_pairs(p) {
        Ok(v) => v,
        Err(e) => return StabilityVerdict::unknown(format!("eigensolver-failure: {e}")),
    };
    let mut undecided = false;
    for pair in &pairs {
        match region.meets_class(pair.value) {
            Answer::No => {}
            Answer::Unknown => undecided = true,
            Answer::Yes => {
                let w = region.class_witness(pair.value);
                if is_eigenvalue_oracle(p, w) == Answer::Yes {
                    let y = vec_mul_right(&pair.vector, similarity_to(w));
                    return StabilityVerdict::not_stable("class-geometry", w, Some(y));
                }
                undecided = true;
            }
        }
    }
    if undecided {
        StabilityVerdict::unknown("class-geometry: boundary dead band")
    } else {
        StabilityVerdict::stable("class-geometry")
    }
}

fn constant_stability(p: &MatrixPolynomial, region: &Region) -> StabilityVerdict {
    let mu = region.sample_point();
    match is_eigenvalue_oracle(p, mu) {
        Answer::Yes => StabilityVerdict::not_stable("constant-polynomial", mu, oracle_kernel_vector(p, mu)),
        Answer::No => StabilityVerdict::stable("constant-polynomial"),
        Answer::Unknown => StabilityVerdict::unknown("constant-polynomial: rank dead band"),
    }
}

fn probe_stability(p: &MatrixPolynomial, points: &[Quaternion], cert: &str) -> StabilityVerdict {
    let mut undecided = false;
    for &mu in points {
        match is_eigenvalue_oracle(p, mu) {
            Answer::Yes => return StabilityVerdict::not_stable(cert, mu, oracle_kernel_vector(p, mu)),
            Answer::Unknown => undecided = true,
            Answer::No => {}
        }
    }
    if undecided {
        StabilityVerdict::unknown(format!("{cert}: rank dead band"))
    } else {
        StabilityVerdict::stable(cert)
    }
}

/// Singular `A_m`: eigenvalues may be missing from any linearization, so
/// only negative answers are certified.
fn singular_leading_stability(p: &MatrixPolynomial, region: &Region) -> StabilityVerdict {
    if region.contains_approx(Quaternion::ZERO) == Answer::Yes && is_eigenvalue_oracle(p, Quaternion::ZERO) == Answer::Yes {
        return StabilityVerdict::not_stable("zero-eigenvalue", Quaternion::ZERO, oracle_kernel_vector(p, Quaternion::ZERO));
    }
    // Nonzero eigenvalues are inverses of eigenvalues of the reversal.
    if let Ok(rev) = reversal(p) {
        if is_invertible(rev.leading()) {
            if let Ok(pairs) = polyeig_pairs(&rev) {
                for pair in pairs {
                    let m = pair.value.modulus();
                    if m <= 1e-6 {
                        continue;
                    }
                    let e = StandardEigenvalue::new(pair.value.re / (m * m), pair.value.im / (m * m));
                    if region.meets_class(e) == Answer::Yes {
                        let w = region.class_witness(e);
                        if is_eigenvalue_oracle(p, w) == Answer::Yes {
                            return StabilityVerdict::not_stable("reversal-candidate", w, oracle_kernel_vector(p, w));
                        }
                    }
                }
            }
        }
    }
    let v = probe_stability(p, &region.probe_points(), "singular-leading-probes");
    if v.status == StabilityStatus::NotStable {
        return v;
    }
    StabilityVerdict::unknown("singular-leading-probes: no eigenvalue found, none certified absent")
}

// ── eigenvalue annulus ──────────────────────────────────────────────────

/// Bounds `r ≤ |μ| ≤ R` for every right eigenvalue of `P`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnulusBounds {
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
}

/// `r` is the positive root of `‖A_m‖z^m + … + ‖A_1‖z − ‖A_0⁻¹‖⁻¹` and `R`
/// the positive root of `‖A_m⁻¹‖⁻¹z^m − ‖A_{m−1}‖z^{m−1} − … − ‖A_0‖`, all
/// norms spectral.
pub fn eigenvalue_annulus(p: &MatrixPolynomial) -> Result<AnnulusBounds, StabilityError> {
    let m = p.degree();
    if m == 0 {
        return Err(StabilityError::Poly(PolyError::ZeroLeading));
    }
    let inv_norm = |idx: usize| -> Result<f64, StabilityError> {
        let inv = linalg::inverse(&p.coeffs()[idx]).map_err(|_| StabilityError::SingularCoefficient(idx))?;
        Ok(spectral_norm(&inv).map_err(PolyError::from)?)
    };
    let norms: Vec<f64> =
        p.coeffs().iter().map(spectral_norm).collect::<Result<_, _>>().map_err(PolyError::from)?;
    let a0_inv = inv_norm(0)?;
    let am_inv = inv_norm(m)?;
    let mut l = norms.clone();
    l[0] = -1.0 / a0_inv;
    let mut u: Vec<f64> = norms.iter().map(|v| -v).collect();
    u[m] = 1.0 / am_inv;
    Ok(AnnulusBounds { r: unique_positive_root(&l)?, big_r: unique_positive_root(&u)? })
}

fn poly_eval(c: &[f64], z: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * z + v)
}

/// The positive root of a real polynomial (ascending coefficients) whose
/// coefficient sequence changes sign exactly once.
pub fn unique_positive_root(coeffs: &[f64]) -> Result<f64, StabilityError> {
    let c: Vec<f64> = coeffs.iter().copied().skip_while(|v| *v == 0.0).collect();
    let nz: Vec<f64> = c.iter().copied().filter(|v| *v != 0.0).collect();
    let changes = nz.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
    match changes {
        0 => return Err(StabilityError::NoSignChange),
        1 => {}
        k => return Err(StabilityError::MultipleSignChanges(k)),
    }
    let low_sign = nz[0].signum();
    let mut lo = 0.0;
    let mut hi = 1.0;
    while poly_eval(&c, hi).signum() == low_sign {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(StabilityError::NoSignChange);
        }
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = poly_eval(&c, mid);
        if v == 0.0 {
            return Ok(mid);
        }
        if v.signum() == low_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

// ── numerical range ─────────────────────────────────────────────────────

/// One sampled point of the numerical range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RangePoint {
    pub point: Quaternion,
    /// The whole similarity class of `point` lies in the range.
    pub spherical: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct NumericalRangeSample {
    pub points: Vec<RangePoint>,
    /// Samples whose coefficients `y^*A_i y` all vanished.
    pub degenerate: usize,
}

pub(crate) fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform unit vector in ℍⁿ.
pub fn random_unit_vector(rng: &mut impl Rng, n: usize) -> Vec<Quaternion> {
    loop {
        let v: Vec<Quaternion> = (0..n)
            .map(|_| {
                Quaternion::new(
                    rng.sample(StandardNormal),
                    rng.sample(StandardNormal),
                    rng.sample(StandardNormal),
                    rng.sample(StandardNormal),
                )
            })
            .collect();
        let nv = vec_norm(&v);
        if nv > 1e-12 {
            return v.into_iter().map(|q| q.scale(1.0 / nv)).collect();
        }
    }
}

/// Inner approximation of the numerical range: zeros of `Σ (y^*A_i y) λ^i`
/// over seeded random unit `y`. Sample `k` uses its own stream, so the
/// output does not depend on how the loop is split.
pub fn sample_numerical_range(p: &MatrixPolynomial, samples: usize, seed: u64) -> NumericalRangeSample {
    let mut out = NumericalRangeSample::default();
    for k in 0..samples {
        let y = random_unit_vector(&mut sample_rng(seed, k as u64), p.size());
        let coeffs: Vec<Quaternion> = match p.coeffs().iter().map(|a| a.mul_vec(&y).map(|v| inner(&v, &y))).collect() {
            Ok(c) => c,
            Err(_) => continue,
        };
        let Some(poly) = ScalarQPolynomial::trimmed(coeffs, 1e-12) else {
            out.degenerate += 1;
            continue;
        };
        if let Ok(zeros) = scalar_zeros(&poly) {
            out.points.extend(zeros.into_iter().map(|z| match z {
                ScalarZero::Isolated(q) => RangePoint { point: q, spherical: false },
                ScalarZero::Spherical(e) => RangePoint { point: e.to_quaternion(), spherical: true },
            }));
        }
    }
    out
}

// ── hyperstability ──────────────────────────────────────────────────────

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HyperStatus {
    Hyperstable,
    NotHyperstableSampled,
    Unknown,
}

impl fmt::Display for HyperStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HyperStatus::Hyperstable => "HYPERSTABLE",
            HyperStatus::NotHyperstableSampled => "NOT_HYPERSTABLE_SAMPLED",
            HyperStatus::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HyperVerdict {
    pub status: HyperStatus,
    pub certificate: String,
    /// `y` for which no `z` works uniformly (negative case).
    pub witness: Option<Vec<Quaternion>>,
    /// Eigenvalue inside the region when the negative case comes from instability.
    pub eigenvalue: Option<Quaternion>,
}

impl HyperVerdict {
    fn new(status: HyperStatus, cert: impl Into<String>) -> Self {
        HyperVerdict { status, certificate: cert.into(), witness: None, eigenvalue: None }
    }
}

/// Knobs for [`check_hyperstability_with`].
#[derive(Debug, Clone, PartialEq)]
pub struct HyperOptions {
    /// Diagonal block sizes of a block upper triangular `P`.
    pub blocks: Option<Vec<usize>>,
    pub y_samples: usize,
    pub z_samples: usize,
    pub range_samples: usize,
    pub seed: u64,
}

impl Default for HyperOptions {
    fn default() -> Self {
        HyperOptions { blocks: None, y_samples: 64, z_samples: 64, range_samples: 200, seed: 42 }
    }
}

pub fn check_hyperstability(p: &MatrixPolynomial, region: &Region) -> HyperVerdict {
    check_hyperstability_with(p, region, &HyperOptions::default())
}

/// Certificate ladder; the first rung that applies decides.
///
/// 1. `n = 1`: hyperstable iff stable.
/// 2. upper triangular with `A_m = I`: hyperstable iff stable.
/// 3. declared block partition: hyperstable if every diagonal block is.
/// 4. a `y` for which no `z` works (exact quadratic certificate or sampling).
/// 5. otherwise UNKNOWN, with sampled numerical-range evidence.
///
/// A NOT_STABLE result anywhere gives a negative answer, since
/// hyperstability implies stability.
pub fn check_hyperstability_with(p: &MatrixPolynomial, region: &Region, opts: &HyperOptions) -> HyperVerdict {
    let stab = check_stability(p, region);
    if stab.status == StabilityStatus::NotStable {
        let mut v = HyperVerdict::new(HyperStatus::NotHyperstableSampled, "instability-witness");
        v.witness = stab.eigenvector.clone();
        v.eigenvalue = stab.witness;
        return v;
    }
    let n = p.size();
    let leading_is_identity = p.leading().max_abs_diff(&QuaternionMatrix::identity(n)) <= 1e-12;
    for (applies, cert) in [(n == 1, "scalar-equivalence"), (p.is_upper_triangular(0.0) && leading_is_identity, "triangular-equivalence")] {
        if applies {
            return match stab.status {
                StabilityStatus::Stable => HyperVerdict::new(HyperStatus::Hyperstable, cert),
                _ => HyperVerdict::new(HyperStatus::Unknown, format!("{cert}: stability undecided ({})", stab.certificate)),
            };
        }
    }
    if let Some(blocks) = &opts.blocks {
        if blocks.len() > 1 && p.is_block_upper_triangular(blocks, 0.0) {
            let mut start = 0;
            let mut all = true;
            for &len in blocks {
                let sub = p.diagonal_block(start, len);
                start += len;
                let ok = sub.is_some_and(|b| {
                    let sub_opts = HyperOptions { blocks: None, ..opts.clone() };
                    check_hyperstability_with(&b, region, &sub_opts).status == HyperStatus::Hyperstable
                });
                if !ok {
                    all = false;
                    break;
                }
            }
            if all {
                return HyperVerdict::new(HyperStatus::Hyperstable, "block-composition");
            }
        }
    }
    if let Some(w) = not_hyperstable_search(p, region, opts.y_samples, opts.z_samples, opts.seed) {
        let mut v = HyperVerdict::new(HyperStatus::NotHyperstableSampled, w.certificate.tag());
        v.witness = Some(w.y);
        return v;
    }
    let nr = sample_numerical_range(p, opts.range_samples, opts.seed);
    let hits = nr.points.iter().filter(|pt| region_meets_point(region, pt) == Answer::Yes).count();
    HyperVerdict::new(
        HyperStatus::Unknown,
        format!(
            "no-certificate; stability {}; sampled numerical range: {hits} of {} points in region",
            stab.status,
            nr.points.len()
        ),
    )
}

fn region_meets_point(region: &Region, pt: &RangePoint) -> Answer {
    if pt.spherical {
        region.meets_class(standardize(pt.point))
    } else {
        region.contains_approx(pt.point)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchCertificate {
    /// `A_0 y = A_2 y q` with the ball `|λ| ≤ √|q|` inside the region: every
    /// `z^*P(λ)y` is `c(λ² + bλ + q)` or linear through 0, and the zero
    /// moduli multiply to `|q|`.
    QuadraticProductOfRoots,
    /// Every sampled `z` in the span of `{A_i y}` gave a zero in the region.
    Sampled,
}

impl SearchCertificate {
    pub fn tag(self) -> &'static str {
        match self {
            SearchCertificate::QuadraticProductOfRoots => "quadratic-product-of-roots",
            SearchCertificate::Sampled => "sampled-counterexample",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchWitness {
    pub y: Vec<Quaternion>,
    pub certificate: SearchCertificate,
}

/// Looks for `y` such that `z^*P(λ)y` has a zero in the region for every
/// `z`. Candidates are the images of the standard basis of `ℂ^{2n}` under
/// `[v1; v2] ↦ v1 - conj(v2)·j`, followed by `y_samples` seeded random unit
/// vectors.
pub fn not_hyperstable_search(
    p: &MatrixPolynomial,
    region: &Region,
    y_samples: usize,
    z_samples: usize,
    seed: u64,
) -> Option<SearchWitness> {
    let n = p.size();
    let mut candidates: Vec<Vec<Quaternion>> = Vec::with_capacity(2 * n + y_samples);
    for half in [Quaternion::ONE, -Quaternion::J] {
        for k in 0..n {
            let mut y = vec![Quaternion::ZERO; n];
            y[k] = half;
            candidates.push(y);
        }
    }
    for s in 0..y_samples {
        candidates.push(random_unit_vector(&mut sample_rng(seed, s as u64), n));
    }
    for (idx, y) in candidates.into_iter().enumerate() {
        let images: Vec<Vec<Quaternion>> = match p.coeffs().iter().map(|a| a.mul_vec(&y)).collect() {
            Ok(v) => v,
            Err(_) => return None,
        };
        if quadratic_certificate(&images, region) {
            return Some(SearchWitness { y, certificate: SearchCertificate::QuadraticProductOfRoots });
        }
        let seed_z = seed ^ 0x9e37_79b9_7f4a_7c15_u64.wrapping_mul(idx as u64 + 1);
        if every_z_has_zero(&images, region, z_samples, seed_z) {
            return Some(SearchWitness { y, certificate: SearchCertificate::Sampled });
        }
    }
    None
}

fn quadratic_certificate(images: &[Vec<Quaternion>], region: &Region) -> bool {
    if images.len() != 3 {
        return false;
    }
    let (a0y, a2y) = (&images[0], &images[2]);
    let n2 = vec_norm(a2y);
    if n2 == 0.0 {
        return false;
    }
    let q = inner(a0y, a2y).scale(1.0 / (n2 * n2));
    let resid: f64 = vec_norm(&a0y.iter().zip(a2y).map(|(u, v)| *u - *v * q).collect::<Vec<_>>());
    resid <= 1e-12 * (vec_norm(a0y) + n2) && region.contains_origin_ball(q.norm().sqrt())
}

/// Orthonormal basis of the right ℍ-span of `vs`.
fn span_basis(vs: &[Vec<Quaternion>]) -> Vec<Vec<Quaternion>> {
    let mut basis: Vec<Vec<Quaternion>> = Vec::new();
    for v in vs {
        let nv = vec_norm(v);
        if nv == 0.0 {
            continue;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &basis {
                let c = inner(&w, u);
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= *ui * c;
                }
            }
        }
        let nw = vec_norm(&w);
        if nw > 1e-10 * nv {
            basis.push(w.into_iter().map(|q| q.scale(1.0 / nw)).collect());
        }
    }
    basis
}

fn every_z_has_zero(images: &[Vec<Quaternion>], region: &Region, z_samples: usize, seed: u64) -> bool {
    let basis = span_basis(images);
    if basis.is_empty() {
        // P(λ)y ≡ 0: every z gives the zero polynomial.
        return true;
    }
    let d = basis.len();
    let mut coeff_sets: Vec<Vec<Quaternion>> = Vec::new();
    for a in 0..d {
        let mut c = vec![Quaternion::ZERO; d];
        c[a] = Quaternion::ONE;
        coeff_sets.push(c);
        for b in a + 1..d {
            for unit in [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K] {
                let mut c = vec![Quaternion::ZERO; d];
                c[a] = Quaternion::ONE.scale(std::f64::consts::FRAC_1_SQRT_2);
                c[b] = unit.scale(std::f64::consts::FRAC_1_SQRT_2);
                coeff_sets.push(c);
            }
        }
    }
    for s in 0..z_samples {
        coeff_sets.push(random_unit_vector(&mut sample_rng(seed, s as u64), d));
    }
    coeff_sets.iter().all(|c| {
        let n = basis[0].len();
        let z: Vec<Quaternion> =
            (0..n).map(|r| basis.iter().zip(c).fold(Quaternion::ZERO, |acc, (u, ck)| acc + u[r] * *ck)).collect();
        let coeffs: Vec<Quaternion> = images.iter().map(|v| inner(v, &z)).collect();
        match ScalarQPolynomial::trimmed(coeffs, 1e-12) {
            None => true,
            Some(poly) => scalar_has_zero_in(&poly, region),
        }
    })
}

fn scalar_has_zero_in(poly: &ScalarQPolynomial, region: &Region) -> bool {
    match scalar_zeros(poly) {
        Ok(zeros) => zeros.iter().any(|z| match *z {
            ScalarZero::Isolated(q) => region.contains_approx(q) == Answer::Yes,
            ScalarZero::Spherical(e) => region.meets_class(e) == Answer::Yes,
        }),
        Err(_) => false,
    }
}

/// Residual `‖Σ A_i y μ^i‖` of a claimed eigenpair.
pub fn eigenpair_residual(p: &MatrixPolynomial, y: &[Quaternion], mu: Quaternion) -> Option<f64> {
    evaluate_action(p, y, mu).ok().map(|r| vec_norm(&r))
}
