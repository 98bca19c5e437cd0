//! The hyperstability certificate ladder.

use qstab::io::{load_polynomial, load_region};
use qstab::stability::{check_hyperstability_with, HyperOptions};

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn main() {
    let cases = [
        ("shifted_projector.json", "region_probe_set.json"),
        ("block_triangular.json", "region_probe_set.json"),
        ("singular_leading.json", "region_unit_ball.json"),
        ("j_shift.json", "region_ball_j.json"),
        ("golden.json", "region_annulus.json"),
    ];
    for (poly, region) in cases {
        let input = load_polynomial(data(poly).as_ref()).unwrap();
        let omega = load_region(data(region).as_ref(), false).unwrap();
        let opts = HyperOptions { blocks: input.blocks.clone(), ..HyperOptions::default() };
        let v = check_hyperstability_with(&input.polynomial, &omega, &opts);
        println!("{poly:<24} {region:<24} {} ({})", v.status, v.certificate);
        if let Some(y) = v.witness {
            let shown: Vec<String> = y.iter().map(|q| q.to_string()).collect();
            println!("    witness y = [{}]", shown.join(", "));
        }
    }
}
