//! Seeded inner approximation of the numerical range.

use qstab::stability::sample_numerical_range;
use qstab::{MatrixPolynomial, QuaternionMatrix};

fn main() {
    // Iλ - diag(1, 0): the range is the real interval [0, 1].
    let a0 = QuaternionMatrix::from_real_rows(&[&[-1.0, 0.0], &[0.0, 0.0]]).unwrap();
    let p = MatrixPolynomial::linear(QuaternionMatrix::identity(2), a0).unwrap();
    let nr = sample_numerical_range(&p, 500, 42);
    let (lo, hi) = nr.points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), pt| {
        (lo.min(pt.point.w), hi.max(pt.point.w))
    });
    let max_vec = nr.points.iter().map(|pt| pt.point.vector_norm()).fold(0.0, f64::max);
    println!("{} points, real parts in [{lo:.6}, {hi:.6}], largest vector part {max_vec:.1e}", nr.points.len());
    println!("degenerate samples: {}", nr.degenerate);
}
