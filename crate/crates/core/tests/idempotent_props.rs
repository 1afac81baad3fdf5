//! Invariants over every certified idempotent of every type.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use ns_core::algebra::{Element, Idempotency};
use ns_core::automorphism::generators;
use ns_core::catalog::{build, NsType};
use ns_core::idempotent::family::family_4a;
use ns_core::idempotent::search::SearchConfig;
use ns_core::idempotent::{enumerate, IdempotentSet};
use ns_core::scalar::{Scalar, Sign};
use ns_core::spectral::{complement_matches, spectrum, SpectrumReport};
use proptest::prelude::*;

fn sets() -> &'static Vec<IdempotentSet> {
    static SETS: OnceLock<Vec<IdempotentSet>> = OnceLock::new();
    SETS.get_or_init(|| {
        NsType::ALL.iter().map(|&t| enumerate(&build(t).unwrap(), "multistart-newton", &SearchConfig::default()).unwrap()).collect()
    })
}

fn same_multiset(a: &SpectrumReport, b: &SpectrumReport) -> bool {
    let mut rest = b.multiset();
    a.multiset().iter().all(|x| match rest.iter().position(|y| y.approx_eq(x)) {
        Some(p) => {
            rest.swap_remove(p);
            true
        }
        None => false,
    }) && rest.is_empty()
}

/// Some coordinate is certified nonzero.
fn certified_nonzero(x: &Element) -> bool {
    x.coeffs().iter().any(|c| matches!(c.certify_sign(), Sign::Positive | Sign::Negative))
}

#[test]
fn orthogonality_equivalences() {
    let mut pairs = 0;
    for set in sets() {
        let id = build(set.type_tag).unwrap().identity();
        let xs: Vec<&Element> = set.records.iter().map(|r| &r.element).filter(|x| !x.is_zero()).collect();
        for (i, x) in xs.iter().enumerate() {
            for y in &xs[i + 1..] {
                pairs += 1;
                let inner = x.inner(y).unwrap().certify_sign();
                let prod = x.product(y).unwrap();
                let sum = x.try_add(y).unwrap();
                if x.is_exact() && y.is_exact() {
                    let (a, b) = (inner == Sign::Zero, prod.is_zero());
                    let c = sum.is_idempotent() == Idempotency::ExactTrue;
                    assert!(a == b && b == c, "{}: ({x}, {y}) orthogonal {a}, product zero {b}, sum idempotent {c}", set.type_tag);
                } else if inner == Sign::Undecided {
                    // balls: only a complementary pair may leave the inner product undecided
                    assert!(ns_core::automorphism::same_point(y, &id.try_sub(x).unwrap()), "{}: undecided pair", set.type_tag);
                } else {
                    assert_ne!(inner, Sign::Zero);
                    assert!(certified_nonzero(&prod), "{}: nonzero inner product but product not certified nonzero", set.type_tag);
                    assert!(certified_nonzero(&sum.idempotency_residual()), "{}: sum not certified non-idempotent", set.type_tag);
                }
            }
        }
    }
    assert!(pairs > 20_000);
}

#[test]
fn complement_spectrum_law() {
    for set in sets() {
        let id = build(set.type_tag).unwrap().identity();
        for r in &set.records {
            let c = set.index_of(&id.try_sub(&r.element).unwrap()).expect("records are closed under complement");
            assert!(complement_matches(&r.spectrum, &set.records[c].spectrum), "{} {}", set.type_tag, r.label());
        }
    }
}

#[test]
fn spectrum_constant_on_orbits() {
    for set in sets() {
        let entry = build(set.type_tag).unwrap();
        for class in &set.orbits.classes {
            let rep = &set.records[class[0]].spectrum;
            for &i in class {
                assert!(same_multiset(rep, &set.records[i].spectrum), "{} class of {}", set.type_tag, set.records[class[0]].label());
            }
        }
        // images under the generators, with spectra computed afresh
        for (name, g) in generators(&entry).unwrap() {
            for r in &set.records {
                let s = spectrum(&g.apply(&r.element).unwrap()).unwrap();
                assert!(same_multiset(&r.spectrum, &s), "{} {name}({})", set.type_tag, r.label());
            }
        }
    }
}

#[test]
fn every_idempotent_is_semisimple() {
    for set in sets() {
        assert!(set.records.iter().all(|r| r.spectrum.semisimple), "{}", set.type_tag);
    }
}

/// `h(λ)` and `h̄(λ)` evaluated directly in floating point.
fn h_float(l: f64) -> (f64, f64) {
    let s = (-15.0 * l * l + 6.0 * l + 9.0).sqrt();
    ((17.0 - 5.0 * l - 5.0 * s) / 32.0, (17.0 - 5.0 * l + 5.0 * s) / 32.0)
}

/// Real eigenvalues of the adjoint, by an independent floating solver.
fn float_eigenvalues(x: &Element) -> Vec<f64> {
    let n = x.algebra().dim();
    let m = x.adjoint_matrix().to_f64();
    let m = DMatrix::from_fn(n, n, |i, j| m[(i, j)]);
    let mut ev: Vec<f64> = m
        .complex_eigenvalues()
        .iter()
        .map(|z| {
            assert!(z.im.abs() < 1e-9);
            z.re
        })
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn close_multisets(mut a: Vec<f64>, mut b: Vec<f64>, tol: f64) -> bool {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.len() == b.len() && a.iter().zip(&b).all(|(p, q)| (p - q).abs() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn family_spectra((p, q) in (1i64..=400).prop_map(|k| (k - 150, 250))) {
        // λ = (k − 150)/250 sweeps [−3/5, 1]
        let entry = build(NsType::A4).unwrap();
        let lambda = Scalar::frac(p, q);
        let y = family_4a(&entry, &lambda).unwrap();
        let (h, hb) = h_float(p as f64 / q as f64);
        let want = vec![0.0, 1.0, 0.5, h, hb];
        let s = spectrum(&y).unwrap();
        let got: Vec<f64> = s.multiset().iter().map(Scalar::to_f64).collect();
        prop_assert!(close_multisets(got.clone(), want.clone(), 1e-10), "λ = {}: {:?} vs {:?}", lambda, got, want);
        prop_assert!(close_multisets(float_eigenvalues(&y), want, 1e-10));
        prop_assert_eq!(y.length(), Scalar::int(2));
    }
}
