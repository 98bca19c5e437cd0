mod common;

use common::*;
use proptest::prelude::*;
use qstab::quat::{similar, standardize};
use qstab::Quaternion;

macro_rules! seeded {
    ($($name:ident => $f:ident, $seed:expr;)*) => {
        $(
            #[test]
            fn $name() {
                let trials = $f($seed).unwrap_or_else(|e| panic!("{e}"));
                assert!(trials >= 50);
            }
        )*
    };
}

seeded! {
    adjoint_is_a_homomorphism => chi_homomorphism, 1;
    spectral_norm_is_bracketed => spectral_norm_bounds, 2;
    inverse_roundtrips => inverse_roundtrip, 3;
    zero_is_an_eigenvalue_iff_constant_term_singular => zero_eigenvalue, 4;
    reversal_inverts_moduli => reversal_reciprocal, 5;
    ball_verdicts_ignore_center_similarity => conjugate_center, 6;
    oracle_matches_linearization => oracle_equivalence, 7;
    eigenpairs_have_small_residuals => eigenpair_residuals, 8;
    annulus_contains_every_eigenvalue => annulus_soundness, 9;
    balls_follow_class_distance => ball_transfer, 10;
    complements_follow_far_class_distance => complement_transfer, 11;
    finite_sets_follow_class_membership => finite_set_equivalence, 12;
    hyperstable_means_stable => hyperstable_implies_stable, 13;
    diagonal_of_two_variable_polynomial => diagonal_restriction, 14;
}

fn quat() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-5.0f64..5.0).prop_map(Quaternion::from)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn product_is_associative(a in quat(), b in quat(), c in quat()) {
        let d = ((a * b) * c).distance(a * (b * c));
        prop_assert!(d <= 1e-12 * (1.0 + a.norm() * b.norm() * c.norm()));
    }

    #[test]
    fn norm_is_multiplicative(a in quat(), b in quat()) {
        prop_assert!(((a * b).norm() - a.norm() * b.norm()).abs() <= 1e-12 * (1.0 + a.norm() * b.norm()));
    }

    #[test]
    fn conjugates_share_a_class(a in quat(), s in quat()) {
        prop_assume!(s.norm() > 1e-3);
        let b = s.inv().unwrap() * a * s;
        prop_assert!(similar(a, b));
        let (ea, eb) = (standardize(a), standardize(b));
        prop_assert!((ea.re - eb.re).abs() <= 1e-9 * (1.0 + a.norm()));
        prop_assert!((ea.im - eb.im).abs() <= 1e-9 * (1.0 + a.norm()));
    }
}
