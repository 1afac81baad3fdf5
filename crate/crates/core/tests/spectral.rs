use ns_core::catalog::{build, NsType};
use ns_core::spectral::{complement_spectrum_check, is_semisimple, is_trivial_maximal, parse_spectrum, spectrum};

fn check(t: NsType, expr: &str, expected: &str) {
    let e = build(t).unwrap();
    let x = e.parse(expr).unwrap();
    let s = spectrum(&x).unwrap();
    assert!(s.matches(&parse_spectrum(expected).unwrap()), "{t} {expr}: got {}", s.display());
}

#[test]
fn axis_rows() {
    check(NsType::A2, "a_t", "{0, 1, 1/4}");
    check(NsType::A3, "a_t", "{0, 1, 1/4, 1/32}");
    check(NsType::C3, "a_t", "{0, 1, 1/32}");
    check(NsType::A4, "a_t", "{0, 0, 1, 1/4, 1/32}");
    check(NsType::A5, "a_t", "{0, 0, 1, 1/4, 1/32, 1/32}");
    check(NsType::A6, "a_t", "{0,0,0,1,1/4,1/4,1/32,1/32}");
}

#[test]
fn extra_vector_rows() {
    check(NsType::A3, "u_r", "{0, 1, 1/3, 1/3}");
    check(NsType::A4, "v_r", "{0, 1, 1/2, 3/8, 3/8}");
    check(NsType::B4, "a_r2", "{0, 0, 1, 1/4, 1/4}");
    check(NsType::A6, "a_r3", "{0,0,0,0,1,1/4,1/4,1/4}");
    check(NsType::A6, "u_r2", "{0,0,0,1,1/3,1/3,1/3,1/3}");
    check(NsType::A6, "a_r3 + u_r2", "{0,1,1,1/4,1/3,1/3,7/12,7/12}");
}

#[test]
fn closed_form_rows() {
    check(NsType::A3, "2/9*(4*a_t + 4*a_g + a_gm1) - 1/4*u_r", "{0, 1, 1/3, 13/16}");
    check(
        NsType::A4,
        "2/7*(2 - sqrt(2))*(a_t + a_g) + 2/7*(2 + sqrt(2))*(a_gm1 + a_g2) - 2/7*v_r",
        "{0, 1, 1/14, 5/14, 6/7}",
    );
    // The printed y_4B carries the spectrum listed for the complement row;
    // the pair {y_4B, id − y_4B} is reproduced as a whole.
    let y4b = "4/11*(1 + sqrt(2))*(a_t + a_g) + 4/11*(1 - sqrt(2))*(a_gm1 + a_g2) + 5/11*a_r2";
    let e = build(NsType::B4).unwrap();
    assert_eq!(e.parse(y4b).unwrap().is_idempotent(), ns_core::algebra::Idempotency::ExactTrue);
    check(NsType::B4, y4b, "{0, 1, 10/11, 1/22, 13/22}");
    check(NsType::B4, &format!("id - ({y4b})"), "{0, 1, 1/11, 21/22, 9/22}");
}

#[test]
fn identity_and_complements() {
    let e = build(NsType::A2).unwrap();
    let id = e.identity();
    assert_eq!(spectrum(&id).unwrap().mult1, 3);
    assert!(is_semisimple(&id).unwrap());
    for t in NsType::ALL {
        let e = build(t).unwrap();
        for &a in &e.axes {
            let x = e.spec().basis(a);
            assert!(complement_spectrum_check(&x).unwrap(), "{t}");
        }
    }
    let e2 = build(NsType::A2).unwrap();
    assert!(is_trivial_maximal(&e2.basis("a_t").unwrap()).unwrap());
    let e4 = build(NsType::A4).unwrap();
    assert!(!is_trivial_maximal(&e4.basis("a_t").unwrap()).unwrap());
}

#[test]
fn non_semisimple_custom_algebra() {
    use ns_core::algebra::AlgebraSpec;
    use ns_core::linalg::Matrix;
    use ns_core::scalar::Scalar;
    use std::sync::Arc;
    // b0·b0 = b1, everything else zero: ad_{b0} is a nilpotent Jordan block
    let z = || vec![Scalar::zero(); 2];
    let table = vec![vec![Scalar::zero(), Scalar::one()], z(), z(), z()];
    let gram = Matrix::from_rows(vec![vec![Scalar::zero(), Scalar::zero()], vec![Scalar::zero(), Scalar::zero()]]);
    let spec = Arc::new(AlgebraSpec::new("custom", vec!["b0".into(), "b1".into()], table, gram).unwrap());
    assert!(!is_semisimple(&spec.basis(0)).unwrap());
}
