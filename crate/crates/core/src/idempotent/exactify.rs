//! Recognising certified floating roots as exact idempotents.
//!
//! A root with rational coordinates is recovered coordinatewise by continued
//! fractions. A root with coordinates in ℚ(√d) is recovered together with its
//! Galois conjugate, which is again an idempotent because the structure
//! constants are rational: `(x + x̄)/2` and `(x − x̄)/(2√d)` are rational.
//! Every candidate is accepted only after an exact idempotency check.

use std::sync::Arc;

use crate::algebra::{AlgebraSpec, Element, Idempotency};
use crate::scalar::{Rational, Scalar};
use crate::spectral::{rationalize, MAX_DENOMINATOR, RADICANDS};

/// Tolerance between a floating coordinate and its reconstructed exact value.
pub const MATCH_TOL: f64 = 1e-9;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= MATCH_TOL * a.abs().max(1.0)
}

/// Bound on `|x − p/q|·q` for a genuine rational. A truncated continued
/// fraction of an irrational leaves `|x − p/q|·q ≈ 1/q_next ≥ 10⁻⁶`, so this
/// rejects nearly every false candidate before any exact arithmetic.
const SCALED_TOL: f64 = 1e-8;

fn rat_of(x: f64) -> Option<Rational> {
    let q = rationalize(x, MAX_DENOMINATOR)?;
    let qf = num_traits::ToPrimitive::to_f64(&q)?;
    let den = num_traits::ToPrimitive::to_f64(q.denom())?;
    (close(qf, x) && (qf - x).abs() * den <= SCALED_TOL * x.abs().max(1.0)).then_some(q)
}

fn accept(spec: &Arc<AlgebraSpec>, coeffs: Vec<Scalar>, x: &[f64]) -> Option<Element> {
    let e = spec.element(coeffs).ok()?;
    if !e.to_f64().iter().zip(x).all(|(a, b)| close(*a, *b)) {
        return None;
    }
    (e.is_idempotent() == Idempotency::ExactTrue).then_some(e)
}

/// Exact idempotent with rational coordinates close to `x`.
pub fn exactify_rational(spec: &Arc<AlgebraSpec>, x: &[f64]) -> Option<Element> {
    let coeffs = x.iter().map(|&c| rat_of(c).map(Scalar::Rat)).collect::<Option<Vec<_>>>()?;
    accept(spec, coeffs, x)
}

/// Exact conjugate pair in ℚ(√d) close to `(x, z)`.
pub fn exactify_pair(spec: &Arc<AlgebraSpec>, x: &[f64], z: &[f64], d: u64) -> Option<(Element, Element)> {
    let sd = (d as f64).sqrt();
    let root = Scalar::sqrt_of(d);
    let mut coeffs = Vec::with_capacity(x.len());
    for (&u, &v) in x.iter().zip(z) {
        let a = rat_of(0.5 * (u + v))?;
        let b = rat_of((u - v) / (2.0 * sd))?;
        coeffs.push(&Scalar::Rat(a) + &(&Scalar::Rat(b) * &root));
    }
    let e = accept(spec, coeffs, x)?;
    let c = e.conjugate();
    c.to_f64().iter().zip(z).all(|(a, b)| close(*a, *b)).then_some((e, c))
}

/// Exact forms for as many roots as possible (`None` where none was found).
pub fn exactify_all(spec: &Arc<AlgebraSpec>, roots: &[Vec<f64>]) -> Vec<Option<Element>> {
    use rayon::prelude::*;
    let mut out: Vec<Option<Element>> = roots.par_iter().map(|x| exactify_rational(spec, x)).collect();
    for i in 0..roots.len() {
        if out[i].is_some() {
            continue;
        }
        'pair: for j in 0..roots.len() {
            if j == i || out[j].is_some() {
                continue;
            }
            for d in RADICANDS {
                if let Some((e, c)) = exactify_pair(spec, &roots[i], &roots[j], d) {
                    out[i] = Some(e);
                    out[j] = Some(c);
                    break 'pair;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, NsType};

    #[test]
    fn recovers_rational_and_quadratic_roots() {
        let e = build(NsType::A3).unwrap();
        let y = e.parse("2/9*(4*a_t + 4*a_g + a_gm1) - 1/4*u_r").unwrap();
        assert_eq!(exactify_rational(e.spec(), &y.to_f64()).unwrap(), y);
        let e = build(NsType::A4).unwrap();
        let y = e.parse("2/7*(2 - sqrt(2))*(a_t + a_g) + 2/7*(2 + sqrt(2))*(a_gm1 + a_g2) - 2/7*v_r").unwrap();
        let (a, b) = exactify_pair(e.spec(), &y.to_f64(), &y.conjugate().to_f64(), 2).unwrap();
        assert_eq!(a, y);
        assert_eq!(b, y.conjugate());
        assert!(exactify_rational(e.spec(), &y.to_f64()).is_none());
    }
}
