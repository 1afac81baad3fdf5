use ns_core::algebra::Element;
use ns_core::catalog::{build, NsType};
use ns_core::scalar::Scalar;
use proptest::prelude::*;

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-12i64..=12, 1i64..=8), 8)
}

fn element(t: NsType, c: &[(i64, i64)]) -> Element {
    let e = build(t).unwrap();
    let v = c.iter().take(e.n()).map(|&(p, q)| Scalar::frac(p, q)).collect();
    e.spec().element(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn commutative_and_frobenius(u in coeffs(), v in coeffs(), w in coeffs()) {
        for t in NsType::ALL {
            let (u, v, w) = (element(t, &u), element(t, &v), element(t, &w));
            prop_assert_eq!(u.product(&v).unwrap(), v.product(&u).unwrap());
            let lhs = u.product(&v).unwrap().inner(&w).unwrap();
            let rhs = u.inner(&v.product(&w).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs, "{}", t);
            // the identity is a unit
            let id = build(t).unwrap().identity();
            prop_assert_eq!(id.product(&u).unwrap(), u);
        }
    }
}

proptest! {
    // M2′ on at least 1000 pairs per algebra
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn norton_inequality(u in coeffs(), v in coeffs(), mode in 0u8..8, c in (-6i64..=6, 1i64..=4), d in (-6i64..=6, 1i64..=4)) {
        for t in NsType::ALL {
            let u = element(t, &u);
            // one pair in eight lies in the span of u and id, where equality must hold
            let v = if mode == 0 {
                let id = build(t).unwrap().identity();
                u.scale(&Scalar::frac(c.0, c.1)).try_add(&id.scale(&Scalar::frac(d.0, d.1))).unwrap()
            } else {
                element(t, &v)
            };
            let r = u.check_norton(&v).unwrap();
            prop_assert!(r.holds, "{}: defect {}", t, r.defect);
            prop_assert_eq!(r.equality, r.adjoints_commute, "{}: equality {} but commute {}", t, r.equality, r.adjoints_commute);
            if mode == 0 {
                prop_assert!(r.equality);
            }
        }
    }
}

#[test]
fn norton_on_basis_pairs() {
    for t in NsType::ALL {
        let e = build(t).unwrap();
        let spec = e.spec();
        for i in 0..e.n() {
            for j in 0..e.n() {
                let r = spec.basis(i).check_norton(&spec.basis(j)).unwrap();
                assert!(r.consistent(), "{t} {} {}", spec.label(i), spec.label(j));
            }
        }
    }
}
