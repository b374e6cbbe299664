//! Property tests for the algebraic invariants: exact identities that must
//! hold on arbitrary valid inputs, not just the worked examples.

use proptest::prelude::*;

use qregions::chars::mu_of_generator;
use qregions::forms::{coleman_correspond, FormFieldLink, QuadForm};
use qregions::ideals::{canonical_generator, is_canonical, Ideal};
use qregions::regions::angle_in_window;
use qregions::sieve::{gcd_i128, is_prime_u64};
use qregions::{QuadraticField, QuadraticInt};

fn valid_coords(d: i64) -> impl Strategy<Value = QuadraticInt> {
    let delta = QuadraticField::new(d).unwrap().discriminant as i128;
    (-2000i128..=2000, -2000i128..=2000).prop_map(move |(a, v)| {
        // u ≡ vΔ (mod 2)
        let u = 2 * a + (v * delta).rem_euclid(2);
        QuadraticInt::new(u, v)
    })
}

proptest! {
    #[test]
    fn norm_is_multiplicative(
        a in valid_coords(-5),
        b in valid_coords(-5),
    ) {
        let f = QuadraticField::new(-5).unwrap();
        let ab = f.mul(&a, &b).unwrap();
        prop_assert_eq!(f.norm(&ab).unwrap(), f.norm(&a).unwrap() * f.norm(&b).unwrap());
    }

    #[test]
    fn embeddings_multiply_to_norm(a in valid_coords(13)) {
        let f = QuadraticField::new(13).unwrap();
        let n = f.norm(&a).unwrap();
        prop_assume!(n != 0);
        let (s1, s2) = f.embed_real(&a);
        let err = (s1 * s2 - n as f64).abs();
        prop_assert!(err <= 1e-9 * (n.unsigned_abs() as f64).max(1.0));
    }

    #[test]
    fn principal_ideal_contains_generator_and_has_its_norm(a in valid_coords(2)) {
        let f = QuadraticField::new(2).unwrap();
        prop_assume!(!a.is_zero());
        let n = f.norm(&a).unwrap();
        prop_assume!(n != 0);
        let ideal = Ideal::principal(&f, &a).unwrap();
        prop_assert!(ideal.contains(&f, &a));
        prop_assert_eq!(ideal.norm(), n.abs());
    }

    #[test]
    fn canonical_generator_is_idempotent_and_canonical(a in valid_coords(3)) {
        let f = QuadraticField::new(3).unwrap();
        prop_assume!(!a.is_zero());
        prop_assume!(f.norm(&a).unwrap() != 0);
        let c = canonical_generator(&f, &a).unwrap();
        prop_assert!(is_canonical(&f, &c).unwrap());
        prop_assert_eq!(canonical_generator(&f, &c).unwrap(), c);
        // same ideal
        prop_assert_eq!(Ideal::principal(&f, &a).unwrap(), Ideal::principal(&f, &c).unwrap());
    }

    #[test]
    fn mu_is_invariant_under_negation(a in valid_coords(-7)) {
        let f = QuadraticField::new(-7).unwrap();
        prop_assume!(!a.is_zero());
        let m1 = mu_of_generator(&f, &a).unwrap();
        let m2 = mu_of_generator(&f, &f.neg(&a)).unwrap();
        prop_assert!((m1.value - m2.value).norm() < 1e-10);
    }

    #[test]
    fn correspondence_norm_is_exact(m in -400i64..400, n in -400i64..400) {
        for form in [QuadForm::new(1, 0, 1), QuadForm::new(1, 0, -2)] {
            let link = FormFieldLink::new(form).unwrap();
            if gcd_i128(m as i128, n as i128) != 1 {
                continue;
            }
            let q = form.eval(m, n);
            if q <= 1 || q > u32::MAX as i128 || !is_prime_u64(q as u64) {
                continue;
            }
            let pid = coleman_correspond(&link, m, n).unwrap();
            prop_assert_eq!(pid.norm(), q);
        }
    }

    #[test]
    fn angular_windows_partition_the_circle(
        angle in 0.0..std::f64::consts::TAU,
        phi0 in 0.0..std::f64::consts::TAU,
        phi in 0.01..std::f64::consts::TAU - 0.01,
    ) {
        let in_first = angle_in_window(angle, phi0, phi);
        let in_second = angle_in_window(angle, phi0 + phi, std::f64::consts::TAU - phi);
        prop_assert!(in_first ^ in_second, "exactly one window must contain the angle");
    }
}
