//! Two-variable polynomials over finite Ω² and the hyperstability rules
//! derived from them.

use qstab::multivar::{
    check_stability_multi, derive_hyperstability_cubic, derive_hyperstability_quadratic, CubicLeading, QuadraticForm,
};
use qstab::{MultiPolynomial, Quaternion, QuaternionMatrix, Region, Word};

fn main() {
    let id = QuaternionMatrix::identity(2);
    let e11 = QuaternionMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();

    // Iλ₁λ₂ + diag(1,0)λ₂λ₁ + Iλ₁ + I
    let p = MultiPolynomial::new(
        2,
        vec![
            (Word::new(&[1, 2]), id.clone()),
            (Word::new(&[2, 1]), e11),
            (Word::new(&[1]), id.clone()),
            (Word::new(&[]), id.clone()),
        ],
    )
    .unwrap();
    let omega = Region::finite_set(vec![Quaternion::real(-0.5), Quaternion::real(0.5)]).unwrap();
    let v = check_stability_multi(&p, &omega).unwrap();
    let show = |qs: &[Quaternion]| qs.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", ");
    println!(
        "mixed-order polynomial: {} at ({}), y = [{}]",
        v.status,
        show(v.tuple.as_deref().unwrap_or(&[])),
        show(v.vector.as_deref().unwrap_or(&[]))
    );

    let omega = Region::finite_set(vec![Quaternion::real(0.5), Quaternion::real(-2.0), Quaternion::I, Quaternion::K]).unwrap();
    let zero = QuaternionMatrix::zeros(2, 2);
    let v = derive_hyperstability_quadratic(&id, &id, &zero, &omega, QuadraticForm::II).unwrap();
    println!("Iλ² + Iλ over Ω: {} ({})", v.status, v.certificate);

    let one = QuaternionMatrix::identity(1);
    let omega = Region::finite_set(vec![Quaternion::real(-1.0)]).unwrap();
    let v = derive_hyperstability_cubic(&one, &one, &one, &one, &omega, CubicLeading::Literal).unwrap();
    println!("scalar cubic over {{-1}}: {} ({})", v.status, v.certificate);
}
