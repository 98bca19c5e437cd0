//! Right eigenvalues of a quaternion matrix through its complex adjoint.

use qstab::linalg::{complex_adjoint, right_eigenvalues, spectral_norm};
use qstab::{Quaternion, QuaternionMatrix};

fn main() {
    let a = QuaternionMatrix::from_rows(vec![
        vec![Quaternion::new(1.0, 1.0, 0.0, 0.0), Quaternion::J],
        vec![Quaternion::K, Quaternion::new(0.0, 0.0, 0.0, 2.0)],
    ])
    .unwrap();
    let chi = complex_adjoint(&a).unwrap();
    println!("χ_A is {}×{}", chi.rows(), chi.cols());

    for e in right_eigenvalues(&a).unwrap() {
        println!("standard eigenvalue {e}   |μ| = {:.6}", e.modulus());
    }
    println!("‖A‖₂ = {:.6}", spectral_norm(&a).unwrap());
}
