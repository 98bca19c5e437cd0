#![allow(dead_code)]

use qstab::linalg::{complex_adjoint, inverse, is_invertible, spectral_norm, vec_norm};
use qstab::matpoly::{evaluate_action, is_eigenvalue_oracle, polyeig, polyeig_pairs, realified_operator, reversal};
use qstab::multivar::check_stability_multi;
use qstab::stability::{
    check_hyperstability_with, check_stability, eigenvalue_annulus, random_unit_vector, HyperOptions,
};
use qstab::{
    Answer, HyperStatus, MatrixPolynomial, MultiPolynomial, Quaternion, QuaternionMatrix, Region, StabilityStatus,
    StandardEigenvalue, Word,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub const TRIALS: usize = 60;

pub fn data(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_quat(rng: &mut impl Rng) -> Quaternion {
    Quaternion::new(rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn rand_matrix(rng: &mut impl Rng, n: usize) -> QuaternionMatrix {
    QuaternionMatrix::from_fn(n, n, |_, _| rand_quat(rng))
}

pub fn rand_poly(rng: &mut impl Rng, n: usize, m: usize) -> MatrixPolynomial {
    MatrixPolynomial::new((0..=m).map(|_| rand_matrix(rng, n)).collect()).unwrap()
}

pub fn rand_unit(rng: &mut impl Rng) -> Quaternion {
    let q = rand_quat(rng);
    q / q.norm()
}

/// Random member of the class of `e`.
pub fn rand_member(rng: &mut impl Rng, e: StandardEigenvalue) -> Quaternion {
    let s = rand_unit(rng);
    s.conj() * e.to_quaternion() * s
}

/// Nearest distance from `p` to the class `{re + im·u : |u| = 1, u pure}`.
fn near(e: StandardEigenvalue, p: Quaternion) -> f64 {
    let vec = (p.x * p.x + p.y * p.y + p.z * p.z).sqrt();
    ((p.w - e.re).powi(2) + (vec - e.im).powi(2)).sqrt()
}

fn far(e: StandardEigenvalue, p: Quaternion) -> f64 {
    let vec = (p.x * p.x + p.y * p.y + p.z * p.z).sqrt();
    ((p.w - e.re).powi(2) + (vec + e.im).powi(2)).sqrt()
}

fn action_residual(p: &MatrixPolynomial, y: &[Quaternion], mu: Quaternion) -> f64 {
    let scale: f64 = p.coeffs().iter().enumerate().map(|(i, a)| a.frobenius_norm() * mu.norm().powi(i as i32)).sum();
    vec_norm(&evaluate_action(p, y, mu).unwrap()) / (scale * vec_norm(y))
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        match $cond {
            true => {}
            false => return Err(format!($($fmt)*)),
        }
    };
}

pub type PropResult = Result<usize, String>;

/// χ(AB) = χ(A)χ(B) and χ(A + B) = χ(A) + χ(B).
pub fn chi_homomorphism(seed: u64) -> PropResult {
    let mut r = rng(seed);
    for t in 0..TRIALS {
        let n = 1 + t % 4;
        let (a, b) = (rand_matrix(&mut r, n), rand_matrix(&mut r, n));
        let (ca, cb) = (complex_adjoint(&a).unwrap(), complex_adjoint(&b).unwrap());
        let prod = complex_adjoint(&a.matmul(&b).unwrap()).unwrap();
        let err = prod.max_abs_diff(&ca.matmul(&cb).unwrap());
        ensure!(err <= 1e-12 * (1.0 + a.frobenius_norm() * b.frobenius_norm()), "trial {t}: product error {err:e}");
        let sum = complex_adjoint(&a.add(&b).unwrap()).unwrap();
        ensure!(sum.max_abs_diff(&ca.add(&cb).unwrap()) <= 1e-14, "trial {t}: sum mismatch");
    }
    Ok(TRIALS)
}

/// max column norm ≤ ‖A‖₂ ≤ ‖A‖_F and ‖Ay‖ ≤ ‖A‖₂‖y‖.
pub fn spectral_norm_bounds(seed: u64) -> PropResult {
    let mut r = rng(seed);
    for t in 0..TRIALS {
        let n = 1 + t % 4;
        let a = rand_matrix(&mut r, n);
        let s = spectral_norm(&a).unwrap();
        let f = a.frobenius_norm();
        ensure!(s <= f * (1.0 + 1e-12), "trial {t}: ‖A‖₂ = {s} > ‖A‖_F = {f}");
        ensure!(s >= f / (n as f64).sqrt() * (1.0 - 1e-12), "trial {t}: ‖A‖₂ too small");
        for c in 0..n {
            let mut e = vec![Quaternion::ZERO; n];
            e[c] = Quaternion::ONE;
            ensure!(vec_norm(&a.mul_vec(&e).unwrap()) <= s * (1.0 + 1e-10), "trial {t}: column {c} exceeds norm");
        }
        for _ in 0..10 {
            let y = random_unit_vector(&mut r, n);
            ensure!(vec_norm(&a.mul_vec(&y).unwrap()) <= s * (1.0 + 1e-10), "trial {t}: ‖Ay‖ > ‖A‖₂");
        }
    }
    Ok(TRIALS)
}

/// 0 is a right eigenvalue exactly when A_0 is singular.
pub fn zero_eigenvalue(seed: u64) -> PropResult {
    let mut r = rng(seed);
    for t in 0..TRIALS {
        let (n, m) = (1 + t % 3, 1 + (t / 3) % 3);
        let mut coeffs = rand_poly(&mut r, n, m).coeffs().to_vec();
        let singular = t % 2 == 0;
        if singular {
            // Column c becomes column d times q, so e_c - e_d q is in the kernel.
            let a0 = coeffs[0].clone();
            let q = rand_quat(&mut r);
            let (c, d) = (0, n - 1);
            coeffs[0] = QuaternionMatrix::from_fn(n, n, |i, j| {
                if j == c {
                    if n == 1 { Quaternion::ZERO } else { a0[(i, d)] * q }
                } else {
                    a0[(i, j)]
                }
            });
        }
        let p = MatrixPolynomial::new(coeffs).unwrap();
        ensure!(is_invertible(p.constant()) != singular, "trial {t}: invertibility of A_0 misjudged");
        let want = if singular { Answer::Yes } else { Answer::No };
        ensure!(is_eigenvalue_oracle(&p, Quaternion::ZERO) == want, "trial {t}: oracle at 0 disagrees");
        let min = polyeig(&p).unwrap().iter().map(|e| e.modulus()).fold(f64::INFINITY, f64::min);
        ensure!((min < 1e-8) == singular, "trial {t}: smallest eigenvalue modulus {min:e}");
    }
    Ok(TRIALS)
}

/// Eigenvalue moduli of rev P are the reciprocals of those of P.
pub fn reversal_reciprocal(seed: u64) -> PropResult {
    let mut r = rng(seed);
    for t in 0..TRIALS {
        let p = rand_poly(&mut r, 1 + t % 3, 1 + (t / 3) % 3);
        let mut a: Vec<f64> = polyeig(&p).unwrap().iter().map(|e| e.modulus()).collect();
        let mut b: Vec<f64> = polyeig(&reversal(&p).unwrap()).unwrap().iter().map(|e| 1.0 / e.modulus()).collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        for (x, y) in a.iter().zip(&b) {
            ensure!((x - y).abs() <= 1e-7 * x.max(1.0), "trial {t}: modulus {x} vs reciprocal {y}");
        }
    }
    Ok(TRIALS)
}

/// Ball verdicts depend only on the class of the center.
pub fn conjugate_center(seed: u64) -> PropResult {
    let mut r = rng(seed);
    for t in 0..TRIALS {
        let p = rand_poly(&mut r, 2, 1 + t % 2);
        let c = rand_quat(&mut r);
        let radius = r.random_range(0.2..2.5);
        let s = rand_unit(&mut r);
        for c2 in [c.conj(), s.conj() * c * s] {
            let regions = [
                (Region::open_ball(c, radius).unwrap(), Region::open_ball(c2, radius).unwrap()),
                (Region::closed_ball(c, radius).unwrap(), Region::closed_ball(c2, radius).unwrap()),
                (Region::complement_closed_ball(c, radius).unwrap(), Region::complement_closed_ball(c2, radius).unwrap()),
            ];
            for (a, b) in &regions {
                let (va, vb) = (check_stability(&p, a), check_stability(&p, b));
                ensure!(va.status == vb.status, "trial {t}: {} gives {} vs {}", a.kind(), va.status, vb.status);
            }
        }
    }
    Ok(TRIALS)
}

/// The realified oracle says Yes on every class member of a computed
/// eigenvalue and No at points away from all classes.
pub fn oracle_equivalence(seed: u64) -> PropResult {
    let mut r = rng(seed);
    let mut negatives = 0;
    for t in 0..TRIALS {
        let p = rand_poly(&mut r, 1 + t % 2, 1 + (t / 2) % 2);
        let eigs = polyeig(&p).unwrap();
        for &e in &eigs {
            for mu in [e.to_quaternion(), rand_member(&mut r, e)] {
                ensure!(is_eigenvalue_oracle(&p, mu) == Answer::Yes, "trial {t}: oracle misses {mu}");
            }
        }
        let mut found = 0;
        while found < 20 {
            let mu = rand_quat(&mut r);
            if eigs.iter().all(|&e| near(e, mu) > 1e-2) {
                ensure!(is_eigenvalue_oracle(&p, mu) == Answer::No, "trial {t}: oracle accepts non-eigenvalue {mu}");
                found += 1;
            }
        }
        negatives += found;
    }
    ensure!(negatives >= 20 * TRIALS, "too few non-eigenvalues checked");
    Ok(TRIALS)
}

/// Every eigenvalue lies in the computed annulus.
pub fn annulus_soundness(seed: u64) -> PropResult {
    let mut r = rng(seed);
    for t in 0..TRIALS {
        let p = rand_poly(&mut r, 1 + t % 3, 1 + (t / 3) % 3);
        let b = eigenvalue_annulus(&p).unwrap();
        ensure!(0.0 < b.r && b.r <= b.big_r * (1.0 + 1e-12), "trial {t}: bad annulus {b:?}");
        for e in polyeig(&p).unwrap() {
            let m = e.modulus();
            ensure!(m >= b.r * (1.0 - 1e-9) && m <= b.big_r * (1.0 + 1e-9), "trial {t}: |μ| = {m} outside {b:?}");
        }
    }
    Ok(TRIALS)
}

fn check_witness(p: &MatrixPolynomial, region: &Region, v: &qstab::StabilityVerdict) -> Result<(), String> {
    let w = v.witness.ok_or("NOT_STABLE without witness")?;
    ensure!(region.contains_approx(w) != Answer::No, "witness {w} outside the region");
    ensure!(is_eigenvalue_oracle(p, w) == Answer::Yes, "oracle rejects witness {w}");
    let y = v.eigenvector.as_ref().ok_or("NOT_STABLE without eigenvector")?;
    let res = action_residual(p, y, w);
    ensure!(res <= 1e-8, "eigenvector residual {res:e}");
    Ok(())
}

/// Open and closed balls: NOT_STABLE iff some class comes within the radius.
pub fn ball_transfer(seed: u64) -> PropResult {
    let mut r = rng(seed);
    let mut decided = 0;
    for t in 0..TRIALS {
        let p = rand_poly(&mut r, 1 + t % 2, 1 + (t / 2) % 2);
        let c = rand_quat(&mut r);
        let radius = r.random_range(0.1..3.0);
        let d = polyeig(&p).unwrap().iter().map(|&e| near(e, c)).fold(f64::INFINITY, f64::min);
        if (d - radius).abs() < 1e-6 {
            continue;
        }
        for region in [Region::open_ball(c, radius).unwrap(), Region::closed_ball(c, radius).unwrap()] {
            let v = check_stability(&p, &region);
            let want = if d < radius { StabilityStatus::NotStable } else { StabilityStatus::Stable };
            ensure!(v.status == want, "trial {t}: {} got {}, nearest class at {d}, radius {radius}", region.kind(), v.status);
            if want == StabilityStatus::NotStable {
                check_witness(&p, &region, &v).map_err(|e| format!("trial {t}: {e}"))?;
            }
            decided += 1;
        }
    }
    ensure!(decided >= TRIALS, "only {decided} decided cases");
    Ok(TRIALS)
}

/// Complement of a closed ball: NOT_STABLE iff some class reaches beyond the radius.
pub fn complement_transfer(seed: u64) -> PropResult {
    let mut r = rng(seed);
    let mut hits = [0usize; 2];
    for t in 0..TRIALS {
        let p = rand_poly(&mut r, 1 + t % 2, 1 + (t / 2) % 2);
        let c = rand_quat(&mut r);
        let radius = r.random_range(0.5..4.0);
        let d = polyeig(&p).unwrap().iter().map(|&e| far(e, c)).fold(0.0, f64::max);
        if (d - radius).abs() < 1e-6 {
            continue;
        }
        let region = Region::complement_closed_ball(c, radius).unwrap();
        let v = check_stability(&p, &region);
        let want = if d > radius { StabilityStatus::NotStable } else { StabilityStatus::Stable };
        ensure!(v.status == want, "trial {t}: got {}, farthest class point at {d}, radius {radius}", v.status);
        if want == StabilityStatus::NotStable {
            check_witness(&p, &region, &v).map_err(|e| format!("trial {t}: {e}"))?;
            hits[0] += 1;
        } else {
            hits[1] += 1;
        }
    }
    ensure!(hits[0] > 0 && hits[1] > 0, "one-sided sample {hits:?}");
    Ok(TRIALS)
}

/// Finite sets: NOT_STABLE iff some point is similar to a computed eigenvalue.
pub fn finite_set_equivalence(seed: u64) -> PropResult {
    let mut r = rng(seed);
    for t in 0..TRIALS {
        let p = rand_poly(&mut r, 1 + t % 2, 1 + (t / 2) % 2);
        let eigs = polyeig(&p).unwrap();
        let mut points: Vec<Quaternion> = (0..3).map(|_| rand_quat(&mut r)).collect();
        if t % 2 == 0 {
            let e = eigs[t % eigs.len()];
            points.insert(1, rand_member(&mut r, e));
        }
        let expect_hit = points.iter().any(|&q| eigs.iter().any(|&e| near(e, q) < 1e-7));
        if !expect_hit && points.iter().any(|&q| eigs.iter().any(|&e| near(e, q) < 1e-3)) {
            continue;
        }
        let region = Region::finite_set(points).unwrap();
        let v = check_stability(&p, &region);
        let want = if expect_hit { StabilityStatus::NotStable } else { StabilityStatus::Stable };
        ensure!(v.status == want, "trial {t}: got {}", v.status);
        if expect_hit {
            check_witness(&p, &region, &v).map_err(|e| format!("trial {t}: {e}"))?;
        }
    }
    Ok(TRIALS)
}

/// A HYPERSTABLE verdict is never paired with an eigenvalue in the region.
pub fn hyperstable_implies_stable(seed: u64) -> PropResult {
    let mut r = rng(seed);
    let opts = HyperOptions { y_samples: 8, z_samples: 8, range_samples: 20, ..HyperOptions::default() };
    let mut positives = 0;
    for t in 0..TRIALS {
        let p = match t % 3 {
            0 => rand_poly(&mut r, 1, 1 + t % 2),
            1 => {
                // Upper triangular with A_m = I.
                let n = 2;
                let a0 = QuaternionMatrix::from_fn(n, n, |i, j| if i <= j { rand_quat(&mut r) } else { Quaternion::ZERO });
                MatrixPolynomial::linear(QuaternionMatrix::identity(n), a0).unwrap()
            }
            _ => rand_poly(&mut r, 2, 1),
        };
        let omega = match t % 4 {
            0 => Region::open_ball(rand_quat(&mut r), r.random_range(0.1..2.0)).unwrap(),
            1 => Region::complement_closed_ball(Quaternion::ZERO, r.random_range(1.0..6.0)).unwrap(),
            2 => Region::annulus(Quaternion::ZERO, 0.1, r.random_range(0.2..1.5)).unwrap(),
            _ => Region::finite_set((0..4).map(|_| rand_quat(&mut r)).collect()).unwrap(),
        };
        let h = check_hyperstability_with(&p, &omega, &opts);
        if h.status == HyperStatus::Hyperstable {
            positives += 1;
            let s = check_stability(&p, &omega);
            ensure!(s.status == StabilityStatus::Stable, "trial {t}: HYPERSTABLE ({}) but {}", h.certificate, s.status);
        }
        if h.status == HyperStatus::NotHyperstableSampled && h.certificate == "instability-witness" {
            ensure!(check_stability(&p, &omega).status == StabilityStatus::NotStable, "trial {t}: instability witness without instability");
        }
    }
    ensure!(positives >= 5, "only {positives} HYPERSTABLE cases");
    Ok(TRIALS)
}

/// On the diagonal λ_1 = λ_2 = μ a two-variable polynomial is the univariate
/// polynomial with coefficients summed by word length.
pub fn diagonal_restriction(seed: u64) -> PropResult {
    let mut r = rng(seed);
    let words = [vec![], vec![1], vec![2], vec![1, 2], vec![2, 1], vec![1, 1], vec![2, 2]];
    for t in 0..TRIALS {
        let n = 1 + t % 2;
        let mut terms: Vec<(Word, QuaternionMatrix)> = Vec::new();
        for w in &words {
            if w.is_empty() || r.random_bool(0.7) {
                terms.push((Word::new(w), rand_matrix(&mut r, n)));
            }
        }
        let multi = MultiPolynomial::new(2, terms.clone()).unwrap();
        let mut diag = vec![QuaternionMatrix::zeros(n, n); 3];
        for (w, a) in &terms {
            diag[w.len()] = diag[w.len()].add(a).unwrap();
        }
        let Some(uni) = MatrixPolynomial::trimmed(diag) else { continue };
        let mut points: Vec<Quaternion> = (0..3).map(|_| rand_quat(&mut r)).collect();
        if t % 2 == 0 && uni.degree() > 0 && is_invertible(uni.leading()) {
            let e = polyeig(&uni).unwrap()[0];
            points.push(rand_member(&mut r, e));
        }
        for &mu in &points {
            let a = multi.realified(&[mu, mu]).unwrap();
            let b = realified_operator(&uni, mu).unwrap();
            ensure!(a.max_abs_diff(&b) <= 1e-12 * (1.0 + b.inf_norm()), "trial {t}: diagonal operator mismatch at {mu}");
        }
        let omega = Region::finite_set(points).unwrap();
        let mv = check_stability_multi(&multi, &omega).unwrap();
        if mv.status == StabilityStatus::Stable {
            let uv = check_stability(&uni, &omega);
            ensure!(uv.status == StabilityStatus::Stable, "trial {t}: two-variable STABLE but diagonal {}", uv.status);
        }
        if let (Some(tuple), Some(y)) = (&mv.tuple, &mv.vector) {
            let res = vec_norm(&qstab::multivar::eval_action_multi(&multi, y, tuple).unwrap());
            ensure!(res <= 1e-8 * (1.0 + multi.terms().len() as f64 * 10.0), "trial {t}: multivariate witness residual {res:e}");
        }
    }
    Ok(TRIALS)
}

/// Sanity check that the helper inverse used by the monic normalization is a true inverse.
pub fn inverse_roundtrip(seed: u64) -> PropResult {
    let mut r = rng(seed);
    for t in 0..TRIALS {
        let n = 1 + t % 4;
        let a = rand_matrix(&mut r, n);
        let ai = inverse(&a).unwrap();
        let err = a.matmul(&ai).unwrap().max_abs_diff(&QuaternionMatrix::identity(n));
        ensure!(err <= 1e-9, "trial {t}: A·A⁻¹ off by {err:e}");
    }
    Ok(TRIALS)
}

/// Every eigenpair returned by the solver satisfies its own residual bound.
pub fn eigenpair_residuals(seed: u64) -> PropResult {
    let mut r = rng(seed);
    for t in 0..TRIALS {
        let p = rand_poly(&mut r, 1 + t % 3, 1 + (t / 3) % 3);
        for pair in polyeig_pairs(&p).unwrap() {
            let res = action_residual(&p, &pair.vector, pair.value.to_quaternion());
            ensure!(res <= 1e-9, "trial {t}: residual {res:e} at {:?}", pair.value);
        }
    }
    Ok(TRIALS)
}

pub type Property = (&'static str, fn(u64) -> PropResult);

pub const PROPERTIES: &[Property] = &[
    ("adjoint homomorphism", chi_homomorphism),
    ("spectral norm bounds", spectral_norm_bounds),
    ("inverse roundtrip", inverse_roundtrip),
    ("zero eigenvalue iff singular constant term", zero_eigenvalue),
    ("reversal gives reciprocal moduli", reversal_reciprocal),
    ("ball verdict invariant under center similarity", conjugate_center),
    ("oracle agrees with linearization", oracle_equivalence),
    ("eigenpair residuals", eigenpair_residuals),
    ("annulus soundness", annulus_soundness),
    ("ball transfer", ball_transfer),
    ("complement transfer", complement_transfer),
    ("finite set stability", finite_set_equivalence),
    ("hyperstable implies stable", hyperstable_implies_stable),
    ("diagonal restriction", diagonal_restriction),
];
