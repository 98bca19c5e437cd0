//! Annulus r ≤ |μ| ≤ R containing every right eigenvalue.

use qstab::io::load_polynomial;
use qstab::matpoly::polyeig;
use qstab::stability::eigenvalue_annulus;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/golden.json");
    let p = load_polynomial(path.as_ref()).unwrap().polynomial;
    let b = eigenvalue_annulus(&p).unwrap();
    println!("r = {:.10}, R = {:.10}", b.r, b.big_r);

    let moduli: Vec<f64> = polyeig(&p).unwrap().iter().map(|e| e.modulus()).collect();
    println!("eigenvalue moduli: {moduli:.10?}");
    assert!(moduli.iter().all(|m| *m >= b.r - 1e-9 && *m <= b.big_r + 1e-9));
}
