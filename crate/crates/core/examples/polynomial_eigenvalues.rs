//! Polynomial eigenvalues by companion linearization, checked against the
//! realified rank oracle.

use qstab::matpoly::{is_eigenvalue_oracle, polyeig_pairs};
use qstab::{MatrixPolynomial, Quaternion, QuaternionMatrix};

fn main() {
    // P(λ) = Iλ² + diag(i, j)λ + I
    let i2 = QuaternionMatrix::identity(2);
    let a1 = QuaternionMatrix::from_diag(&[Quaternion::I, Quaternion::J]);
    let p = MatrixPolynomial::new(vec![i2.clone(), a1, i2]).unwrap();

    for pair in polyeig_pairs(&p).unwrap() {
        let mu = pair.value.to_quaternion();
        println!(
            "μ = {:<28} |μ| = {:.10}  residual {:.1e}  oracle {:?}",
            pair.value.to_string(),
            pair.value.modulus(),
            pair.residual,
            is_eigenvalue_oracle(&p, mu)
        );
    }
    println!("0.5 is an eigenvalue: {:?}", is_eigenvalue_oracle(&p, Quaternion::real(0.5)));
}
