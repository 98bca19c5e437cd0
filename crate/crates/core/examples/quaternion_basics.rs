//! Hamilton products, inverses and similarity classes.

use qstab::quat::{class_distance, nearest_class_member, similar, standardize};
use qstab::Quaternion;

fn main() {
    let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
    println!("i·j = {}   j·i = {}", i * j, j * i);
    println!("i² = j² = k² = ijk = {}", i * j * k);

    let q = Quaternion::new(1.0, 2.0, -2.0, 1.0);
    let inv = q.inv().expect("nonzero");
    println!("q = {q}\nq⁻¹ = {inv}\nq·q⁻¹ = {}", q * inv);

    // Every quaternion is similar to a complex number with nonnegative imaginary part.
    let e = standardize(q);
    println!("standard representative of q: {e}");
    let s = Quaternion::new(0.3, -1.0, 0.5, 2.0);
    let conj = s.inv().unwrap() * q * s;
    println!("s⁻¹qs = {conj}, similar to q: {}", similar(conj, q));

    let p = Quaternion::new(0.5, 0.0, 1.0, 0.0);
    let e = standardize(Quaternion::I);
    println!(
        "distance from {p} to the class of i: {:.6} (nearest member {})",
        class_distance(e, p),
        nearest_class_member(e, p)
    );
}
