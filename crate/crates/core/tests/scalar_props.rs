use ns_core::scalar::{Interval, Scalar, Sign};
use proptest::prelude::*;

fn frac() -> impl Strategy<Value = Scalar> {
    (-60i64..=60, 1i64..=24).prop_map(|(p, q)| Scalar::frac(p, q))
}

/// `a + b√d` with a shared radicand, so that arithmetic stays exact.
fn quad(d: u64) -> impl Strategy<Value = Scalar> {
    (frac(), frac()).prop_map(move |(a, b)| &a + &(&b * &Scalar::sqrt_of(d)))
}

fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    prop_oneof![Just(2u64), Just(3), Just(5)].prop_flat_map(|d| (quad(d), quad(d), quad(d)))
}

/// Point inside `[mid − rad, mid + rad]` together with the interval.
fn ball_and_point() -> impl Strategy<Value = (Interval, f64)> {
    (-50.0f64..50.0, 0.0f64..2.0, -1.0f64..=1.0).prop_map(|(m, r, t)| (Interval::new(m, r), m + t * r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn field_axioms((x, y, z) in triple()) {
        prop_assert!(x.is_exact() && y.is_exact() && z.is_exact());
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &x, Scalar::zero());
        prop_assert_eq!(&x * &Scalar::one(), x.clone());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.recip().unwrap(), Scalar::one());
            prop_assert_eq!(&(&y * &x).checked_div(&x).unwrap(), &y);
        } else {
            prop_assert!(x.recip().is_err());
        }
    }

    #[test]
    fn conjugation_is_a_field_automorphism((x, y, _) in triple()) {
        prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        prop_assert_eq!(x.conjugate().conjugate(), x.clone());
        // x·x̄ is the norm, which is rational
        prop_assert!((&x * &x.conjugate()).radicand().is_none());
    }

    #[test]
    fn exact_sign_agrees_with_floating((x, y, _) in triple()) {
        let v = &x - &y;
        let f = v.to_f64();
        let s = v.certify_sign();
        if f.abs() > 1e-9 {
            prop_assert_eq!(s, if f > 0.0 { Sign::Positive } else { Sign::Negative });
        }
        prop_assert_ne!(s, Sign::Undecided);
        prop_assert_eq!(s == Sign::Zero, v.is_zero());
    }

    #[test]
    fn text_round_trip((x, _, _) in triple()) {
        let back: Scalar = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn interval_arithmetic_encloses_points((a, x) in ball_and_point(), (b, y) in ball_and_point()) {
        prop_assert!(a.contains(x) && b.contains(y));
        prop_assert!((a + b).contains(x + y));
        prop_assert!((a - b).contains(x - y));
        prop_assert!((a * b).contains(x * y));
        prop_assert!((-a).contains(-x));
        if let Some(r) = a.recip() {
            prop_assert!(r.contains(1.0 / x));
        } else {
            prop_assert!(a.contains_zero());
        }
        if let Some(s) = a.abs().sqrt() {
            prop_assert!(s.contains(x.abs().sqrt()));
        }
    }

    #[test]
    fn balls_enclose_exact_values((x, y, _) in triple()) {
        let bx = Scalar::Ball(x.to_interval());
        let by = Scalar::Ball(y.to_interval());
        prop_assert!(!bx.is_exact());
        prop_assert!((&bx * &by).to_interval().contains((&x * &y).to_f64()));
        prop_assert!((&bx + &by).to_interval().contains((&x + &y).to_f64()));
        prop_assert!((&x * &y).approx_eq(&(&bx * &by)));
    }
}
