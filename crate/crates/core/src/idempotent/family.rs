//! The one-parameter family of idempotents of 4A and curve detection by
//! pseudo-arclength continuation.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::newton::{jacobian, max_norm, residual};
use crate::algebra::{AlgebraSpec, Element};
use crate::catalog::{CatalogEntry, NsType};
use crate::error::{Error, Result};
use crate::scalar::{Interval, Rational, Scalar, Sign};
use crate::spectral::spectrum;

/// `−15λ² + 6λ + 9`.
pub fn radicand(lambda: &Scalar) -> Scalar {
    let l2 = lambda * lambda;
    &(&(&Scalar::int(-15) * &l2) + &(&Scalar::int(6) * lambda)) + &Scalar::int(9)
}

/// `√r` for `r ≥ 0`: exact for rational `r` (in ℚ or ℚ(√d)), a ball otherwise.
pub fn sqrt_scalar(r: &Scalar) -> Result<Scalar> {
    match r.certify_sign() {
        Sign::Negative => return Err(Error::OutOfRange(format!("square root of negative {r}"))),
        Sign::Zero => return Ok(Scalar::zero()),
        _ => {}
    }
    match r {
        Scalar::Rat(q) => {
            let pq: BigInt = q.numer() * q.denom();
            let pq = pq.to_u64().ok_or_else(|| Error::OutOfRange(format!("radicand {q} too large")))?;
            let den = Scalar::Rat(Rational::from_integer(q.denom().clone()));
            Scalar::sqrt_of(pq).checked_div(&den)
        }
        other => {
            let i = other.to_interval();
            let lo = i.inf().max(0.0);
            let s = Interval::from_inf_sup(lo, i.sup()).sqrt().ok_or_else(|| Error::Undecided("sqrt".into()))?;
            Ok(Scalar::Ball(s))
        }
    }
}

/// `f(λ) = (1 − λ)/2 − √(−15λ²+6λ+9)/6` and its conjugate `f̄(λ)`.
pub fn f_pair(lambda: &Scalar) -> Result<(Scalar, Scalar)> {
    let s = sqrt_scalar(&radicand(lambda))?;
    let half = &(&Scalar::one() - lambda) * &Scalar::frac(1, 2);
    let t = &s * &Scalar::frac(1, 6);
    Ok((&half - &t, &half + &t))
}

/// `h(λ) = (17 − 5λ − 5√(…))/32` and `h̄(λ)`.
pub fn h_pair(lambda: &Scalar) -> Result<(Scalar, Scalar)> {
    let s = sqrt_scalar(&radicand(lambda))?;
    let base = &Scalar::int(17) - &(&Scalar::int(5) * lambda);
    let t = &Scalar::int(5) * &s;
    let k = Scalar::frac(1, 32);
    Ok((&(&base - &t) * &k, &(&base + &t) * &k))
}

fn check_4a(entry: &CatalogEntry) -> Result<()> {
    if entry.tag != NsType::A4 {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

fn in_range(lambda: &Scalar) -> Result<()> {
    let lo = lambda - &Scalar::frac(-3, 5);
    let hi = &Scalar::one() - lambda;
    for s in [lo.certify_sign(), hi.certify_sign()] {
        if s == Sign::Negative {
            return Err(Error::OutOfRange(format!("λ = {lambda} outside [−3/5, 1]")));
        }
    }
    Ok(())
}

/// `f(λ)(a_t + a_{g_2}) + f̄(λ)(a_g + a_{g_{-1}}) + λ·v_ρ`.
pub fn family_4a(entry: &CatalogEntry, lambda: &Scalar) -> Result<Element> {
    check_4a(entry)?;
    in_range(lambda)?;
    let (f, fb) = f_pair(lambda)?;
    let b = |l: &str| entry.basis(l);
    let x = (&b("a_t")? + &b("a_g2")?).scale(&f);
    let y = (&b("a_g")? + &b("a_gm1")?).scale(&fb);
    Ok(&(&x + &y) + &b("v_r")?.scale(lambda))
}

/// The other sign of the square root (the image under `φ_4A`).
pub fn family_4a_conjugate_branch(entry: &CatalogEntry, lambda: &Scalar) -> Result<Element> {
    check_4a(entry)?;
    in_range(lambda)?;
    let (f, fb) = f_pair(lambda)?;
    let b = |l: &str| entry.basis(l);
    let x = (&b("a_t")? + &b("a_g2")?).scale(&fb);
    let y = (&b("a_g")? + &b("a_gm1")?).scale(&f);
    Ok(&(&x + &y) + &b("v_r")?.scale(lambda))
}

/// A numerically traced solution curve.
#[derive(Debug, Clone)]
pub struct Trace {
    pub points: Vec<Vec<f64>>,
    pub closed: bool,
    pub step: f64,
}

#[derive(Debug, Clone)]
pub struct FamilyDescriptor {
    pub type_tag: NsType,
    /// Exact parameter range (zeros of the radicand).
    pub lambda_min: Scalar,
    pub lambda_max: Scalar,
    /// Common length of all members.
    pub length: Scalar,
    /// Parameters where 0 or 1 is a repeated eigenvalue, with `(d, mult1)`.
    pub exceptional: Vec<(Scalar, usize, usize)>,
    /// Range of the `v_ρ` coefficient over the traced curve.
    pub traced_lambda: (f64, f64),
    pub traced_points: usize,
    pub closed: bool,
    /// Largest distance of a traced point from the closed form.
    pub max_deviation: f64,
}

fn smallest_right_singular(j: &DMatrix<f64>) -> (f64, DVector<f64>) {
    let n = j.ncols();
    let svd = j.clone().svd(false, true);
    let vt = svd.v_t.unwrap();
    let (k, s) = svd.singular_values.iter().enumerate().fold((0, f64::INFINITY), |m, (i, &s)| if s < m.1 { (i, s) } else { m });
    (s, DVector::from_fn(n, |i, _| vt[(k, i)]))
}

/// Corrector: Gauss–Newton on `F(y) = 0, t·(y − x) = h`.
fn correct(spec: &AlgebraSpec, x: &[f64], t: &DVector<f64>, h: f64) -> Option<Vec<f64>> {
    let n = x.len();
    let mut y: Vec<f64> = (0..n).map(|i| x[i] + h * t[i]).collect();
    for _ in 0..30 {
        let f = residual(spec, &y);
        let c = (0..n).map(|i| t[i] * (y[i] - x[i])).sum::<f64>() - h;
        if max_norm(&f) < 1e-13 && c.abs() < 1e-13 {
            return Some(y);
        }
        let j = jacobian(spec, &y);
        let a = DMatrix::from_fn(n + 1, n, |r, col| if r < n { j[(r, col)] } else { t[col] });
        let mut b = DVector::from_column_slice(&f);
        b = b.insert_row(n, c);
        let dy = a.svd(true, true).solve(&b, 1e-14).ok()?;
        for i in 0..n {
            y[i] -= dy[i];
        }
    }
    (max_norm(&residual(spec, &y)) < 1e-11).then_some(y)
}

/// Traces the solution curve through a singular root; `None` if the root is
/// isolated (no rank drop or the continuation collapses to the point).
pub fn detect_family(spec: &AlgebraSpec, seed: &[f64]) -> Option<Trace> {
    let step = 0.02;
    let (s0, mut t) = smallest_right_singular(&jacobian(spec, seed));
    if s0 > 1e-6 {
        return None;
    }
    let mut points = vec![seed.to_vec()];
    let mut x = seed.to_vec();
    let mut closed = false;
    for k in 0..5000 {
        let mut h = step;
        let y = loop {
            if let Some(y) = correct(spec, &x, &t, h) {
                break Some(y);
            }
            h *= 0.5;
            if h < 1e-6 {
                break None;
            }
        };
        let y = y?;
        let (s, mut tn) = smallest_right_singular(&jacobian(spec, &y));
        if s > 1e-6 {
            return None;
        }
        if tn.dot(&t) < 0.0 {
            tn = -tn;
        }
        let back = y.iter().zip(seed).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        points.push(y.clone());
        x = y;
        t = tn;
        if k > 5 && back < 1.5 * step {
            closed = true;
            break;
        }
    }
    (points.len() > 10).then_some(Trace { points, closed, step })
}

/// Parameters in `[−3/5, 1]` at which `h` or `h̄` equals 0 or 1, confirmed by
/// the exact spectrum of the family member.
pub fn exceptional_lambdas(entry: &CatalogEntry) -> Result<Vec<(Scalar, usize, usize)>> {
    check_4a(entry)?;
    let mut out: Vec<(Scalar, usize, usize)> = Vec::new();
    for tau in [0i64, 1] {
        // (17 − 32τ − 5λ)² = 25(−15λ² + 6λ + 9)  ⇔  400λ² + (−10c − 150)λ + (c² − 225) = 0
        let c = Rational::from_integer((17 - 32 * tau).into());
        let a2 = Rational::from_integer(400.into());
        let a1 = -(Rational::from_integer(10.into()) * &c) - Rational::from_integer(150.into());
        let a0 = &c * &c - Rational::from_integer(225.into());
        for lam in rational_quadratic_roots(&a2, &a1, &a0) {
            let l = Scalar::Rat(lam);
            if in_range(&l).is_err() {
                continue;
            }
            let (h, hb) = h_pair(&l)?;
            let t = Scalar::int(tau);
            if h != t && hb != t {
                continue; // spurious root of the squared equation
            }
            let s = spectrum(&family_4a(entry, &l)?)?;
            if (s.d > 1 || s.mult1 > 1) && !out.iter().any(|(m, _, _)| m == &l) {
                out.push((l, s.d, s.mult1));
            }
        }
    }
    out.sort_by(|a, b| a.0.to_f64().total_cmp(&b.0.to_f64()));
    Ok(out)
}

/// Rational roots of `a x² + b x + c` (empty if irrational or none).
fn rational_quadratic_roots(a: &Rational, b: &Rational, c: &Rational) -> Vec<Rational> {
    let disc = b * b - Rational::from_integer(4.into()) * a * c;
    if disc.is_negative() {
        return vec![];
    }
    let s = match sqrt_scalar(&Scalar::Rat(disc)) {
        Ok(Scalar::Rat(s)) => s,
        _ => return vec![],
    };
    let two_a = Rational::from_integer(2.into()) * a;
    let mut r = vec![(-b + &s) / &two_a];
    if !s.is_zero() {
        r.push((-b - &s) / &two_a);
    }
    r
}

/// Matches a traced curve against the closed form, returning the full descriptor.
pub fn describe_family(entry: &CatalogEntry, trace: &Trace) -> Result<FamilyDescriptor> {
    check_4a(entry)?;
    let iv = entry.spec().index_of("v_ρ").ok_or_else(|| Error::UnknownLabel("v_ρ".into()))?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut dev = 0.0f64;
    for p in &trace.points {
        lo = lo.min(p[iv]);
        hi = hi.max(p[iv]);
        let [a, b] = family_4a_f64(entry, p[iv])?;
        let d = |q: &[f64]| q.iter().zip(p).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
        dev = dev.max(d(&a).min(d(&b)));
    }
    let length = family_4a(entry, &Scalar::frac(1, 3))?.length();
    Ok(FamilyDescriptor {
        type_tag: NsType::A4,
        lambda_min: Scalar::frac(-3, 5),
        lambda_max: Scalar::one(),
        length,
        exceptional: exceptional_lambdas(entry)?,
        traced_lambda: (lo, hi),
        traced_points: trace.points.len(),
        closed: trace.closed,
        max_deviation: dev,
    })
}

/// Both branches of the family at a floating parameter (clamped to the range).
pub fn family_4a_f64(entry: &CatalogEntry, lambda: f64) -> Result<[Vec<f64>; 2]> {
    check_4a(entry)?;
    let l = lambda.clamp(-0.6, 1.0);
    let s = (-15.0 * l * l + 6.0 * l + 9.0).max(0.0).sqrt() / 6.0;
    let (f, fb) = ((1.0 - l) / 2.0 - s, (1.0 - l) / 2.0 + s);
    let v = |lbl: &str| entry.basis(lbl).map(|e| e.to_f64());
    let (p, q, w) = (
        v("a_t")?.iter().zip(v("a_g2")?).map(|(a, b)| a + b).collect::<Vec<_>>(),
        v("a_g")?.iter().zip(v("a_gm1")?).map(|(a, b)| a + b).collect::<Vec<_>>(),
        v("v_r")?,
    );
    let member = |c1: f64, c2: f64| (0..p.len()).map(|i| c1 * p[i] + c2 * q[i] + l * w[i]).collect();
    Ok([member(f, fb), member(fb, f)])
}

/// Whether `x` lies on the family (either branch), judged by its `v_ρ` coefficient.
/// Near the curve Newton converges only linearly, so the distance allowed is `√tol`.
pub fn on_family(entry: &CatalogEntry, x: &[f64], tol: f64) -> bool {
    if entry.tag != NsType::A4 {
        return false;
    }
    let Some(iv) = entry.spec().index_of("v_ρ") else { return false };
    let l = x[iv];
    if !(-0.6 - tol..=1.0 + tol).contains(&l) {
        return false;
    }
    let Ok(branches) = family_4a_f64(entry, l) else { return false };
    branches.iter().any(|y| y.iter().zip(x).all(|(a, b)| (a - b).abs() < tol.sqrt().max(tol)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build;

    #[test]
    fn closed_form_members() {
        let e = build(NsType::A4).unwrap();
        assert_eq!(family_4a(&e, &Scalar::one()).unwrap(), e.basis("v_r").unwrap());
        assert_eq!(family_4a(&e, &Scalar::zero()).unwrap(), e.parse("a_g + a_gm1").unwrap());
        assert_eq!(family_4a(&e, &Scalar::frac(2, 5)).unwrap(), e.parse("id - a_t - a_g2").unwrap());
        assert!(matches!(family_4a(&e, &Scalar::int(2)), Err(Error::OutOfRange(_))));
        for k in -5..=9 {
            let l = Scalar::frac(k, 10);
            let y = family_4a(&e, &l).unwrap();
            assert_eq!(y.is_idempotent(), crate::algebra::Idempotency::ExactTrue, "λ = {l}");
            assert_eq!(y.length(), Scalar::int(2));
        }
    }
}
