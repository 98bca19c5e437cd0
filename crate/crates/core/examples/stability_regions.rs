//! Stability with respect to balls, annuli, complements and finite sets.

use qstab::stability::check_stability;
use qstab::{MatrixPolynomial, Quaternion, QuaternionMatrix, Region};

fn main() {
    // Iλ + jI: every eigenvalue is similar to i.
    let p = MatrixPolynomial::linear(QuaternionMatrix::identity(2), QuaternionMatrix::scalar(Quaternion::J, 2)).unwrap();
    let regions = [
        Region::open_ball(Quaternion::J, 1.0).unwrap(),
        Region::closed_ball(Quaternion::real(2.0), 0.5).unwrap(),
        Region::annulus(Quaternion::ZERO, 0.9, 1.1).unwrap(),
        Region::complement_closed_ball(Quaternion::ZERO, 2.0).unwrap(),
        // Complex points near j; none lies in the class of i.
        Region::finite_set((0..8).map(|t| Quaternion::new(0.1 * t as f64, 0.05 * t as f64, 0.0, 0.0)).collect()).unwrap(),
    ];
    for r in &regions {
        let v = check_stability(&p, r);
        match v.witness {
            Some(w) => println!("{:<24} {} via {} (witness {w})", r.kind(), v.status, v.certificate),
            None => println!("{:<24} {} via {}", r.kind(), v.status, v.certificate),
        }
    }
}
