//! Spectra of adjoint transformations.
//!
//! Exact elements go through the exact characteristic polynomial: numeric
//! root estimates are turned into candidates in ℚ or ℚ(√d) and kept only if
//! they are exact roots; anything left is isolated by an exact sign change.
//! Ball elements are handled by Gershgorin discs of `V⁻¹·ad·V`, where `V` is
//! a floating-point eigenvector matrix inverted exactly over ℚ.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{char_poly, Poly};
use crate::scalar::{Interval, Rational, Scalar, Sign};

/// Largest denominator tried when recognising a floating root as exact.
pub const MAX_DENOMINATOR: i64 = 1_000_000;
/// Radicands always tried for quadratic conjugate pairs (those occurring in
/// the matrix are tried as well).
pub const RADICANDS: [u64; 3] = [2, 3, 5];

#[derive(Debug, Clone)]
pub struct Eigen {
    pub value: Scalar,
    /// Multiplicity as a root of the characteristic polynomial.
    pub algebraic: usize,
    /// Dimension of the eigenspace, when it could be computed exactly.
    pub geometric: Option<usize>,
    /// Exact eigenspace basis (empty for certified-interval eigenvalues).
    pub basis: Vec<Element>,
}

#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub n: usize,
    /// Distinct eigenvalues, sorted by value.
    pub eigenvalues: Vec<Eigen>,
    pub semisimple: bool,
    /// Multiplicity of the eigenvalue 0.
    pub d: usize,
    /// Multiplicity of the eigenvalue 1.
    pub mult1: usize,
}

impl SpectrumReport {
    /// Eigenvalues repeated by multiplicity: zeros, ones, then the rest ascending.
    pub fn multiset(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.n);
        let key = |v: &Scalar| {
            if v.is_exact() && v.is_zero() {
                0
            } else if v.is_exact() && v.is_one() {
                1
            } else {
                2
            }
        };
        let mut ev: Vec<&Eigen> = self.eigenvalues.iter().collect();
        ev.sort_by(|a, b| key(&a.value).cmp(&key(&b.value)).then(cmp_f64(&a.value, &b.value)));
        for e in ev {
            out.extend(std::iter::repeat_n(e.value.clone(), e.algebraic));
        }
        out
    }

    pub fn is_exact(&self) -> bool {
        self.eigenvalues.iter().all(|e| e.value.is_exact())
    }

    /// Exact multiset equality with `expected` (order irrelevant).
    pub fn matches(&self, expected: &[Scalar]) -> bool {
        let mut got = self.multiset();
        if got.len() != expected.len() {
            return false;
        }
        for e in expected {
            match got.iter().position(|g| g.is_exact() && g == e) {
                Some(p) => {
                    got.swap_remove(p);
                }
                None => return false,
            }
        }
        true
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self
            .multiset()
            .iter()
            .map(|v| match v {
                Scalar::Ball(b) => format!("{:.6}", b.mid),
                v => short(v),
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// `p/q` printed as `p` when `q = 1`.
fn short(v: &Scalar) -> String {
    match v.as_rational() {
        Some(q) if q.is_integer() => q.numer().to_string(),
        _ => v.to_string(),
    }
}

fn cmp_f64(a: &Scalar, b: &Scalar) -> Ordering {
    a.to_f64().total_cmp(&b.to_f64())
}

/// Best rational approximation with denominator at most `max_den`.
pub fn rationalize(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-12 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(Rational::new((h1 as i64).into(), (k1 as i64).into()))
}

fn sign_at(p: &Poly, x: &Rational) -> Sign {
    p.eval(&Scalar::Rat(x.clone())).certify_sign()
}

/// Exact candidates for the real roots of a squarefree `q`.
struct RootSet {
    exact: Vec<Scalar>,
    /// Isolating intervals `(lo, hi)` of the remaining real roots.
    isolated: Vec<(Rational, Rational)>,
}

fn find_roots(q: &Poly, radicands: &[u64]) -> Result<RootSet> {
    let deg = q.degree().unwrap_or(0);
    let approx = q.complex_roots();
    let mut exact: Vec<Scalar> = Vec::new();
    let mut rest: Vec<f64> = Vec::new();
    let scale = approx.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    for z in &approx {
        if z.im.abs() > 1e-6 * scale {
            return Err(Error::Undecided(format!("non-real eigenvalue estimate {z}")));
        }
        let cand = rationalize(z.re, MAX_DENOMINATOR).map(Scalar::Rat);
        match cand {
            Some(c) if !exact.contains(&c) && q.eval(&c).is_zero() => exact.push(c),
            _ => rest.push(z.re),
        }
    }
    // conjugate pairs a ± b√d
    let mut used = vec![false; rest.len()];
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if used[i] || used[j] {
                continue;
            }
            for &d in radicands {
                let a = rationalize(0.5 * (rest[i] + rest[j]), MAX_DENOMINATOR);
                let b = rationalize((rest[i] - rest[j]) / (2.0 * (d as f64).sqrt()), MAX_DENOMINATOR);
                let (Some(a), Some(b)) = (a, b) else { continue };
                if b.is_zero() {
                    continue;
                }
                let r1 = &Scalar::Rat(a.clone()) + &(&Scalar::Rat(b.clone()) * &Scalar::sqrt_of(d));
                if q.eval(&r1).is_zero() && q.eval(&r1.conjugate()).is_zero() {
                    exact.push(r1.clone());
                    exact.push(r1.conjugate());
                    used[i] = true;
                    used[j] = true;
                    break;
                }
            }
        }
    }
    let rest: Vec<f64> = rest.iter().zip(&used).filter(|(_, u)| !**u).map(|(r, _)| *r).collect();
    let mut isolated = Vec::new();
    let points: Vec<f64> = exact.iter().map(Scalar::to_f64).chain(rest.iter().copied()).collect();
    for &r in &rest {
        let gap = points.iter().filter(|&&p| p != r).map(|p| (p - r).abs()).fold(f64::INFINITY, f64::min);
        let mut eps = (1e-9 * r.abs().max(1.0)).min(0.25 * gap);
        let mut ok = false;
        for _ in 0..8 {
            let lo = Rational::from_float(r - eps).unwrap();
            let hi = Rational::from_float(r + eps).unwrap();
            let (sl, sh) = (sign_at(q, &lo), sign_at(q, &hi));
            if matches!((sl, sh), (Sign::Negative, Sign::Positive) | (Sign::Positive, Sign::Negative)) {
                isolated.push((lo, hi));
                ok = true;
                break;
            }
            eps *= 4.0;
            if eps >= 0.5 * gap {
                break;
            }
        }
        if !ok {
            return Err(Error::Undecided(format!("could not isolate eigenvalue near {r}")));
        }
    }
    if exact.len() + isolated.len() != deg {
        return Err(Error::Undecided("eigenvalue count does not match the degree".into()));
    }
    Ok(RootSet { exact, isolated })
}

/// Multiplicity of the root isolated in `(lo, hi)` as a root of `p`.
fn isolated_multiplicity(p: &Poly, lo: &Rational, hi: &Rational) -> Result<usize> {
    let mut pk = p.clone();
    let mut m = 0;
    while pk.degree().unwrap_or(0) > 0 {
        let s = pk.squarefree_part()?;
        let (sl, sh) = (sign_at(&s, lo), sign_at(&s, hi));
        if sl != sh && sl != Sign::Zero && sh != Sign::Zero {
            m += 1;
        } else {
            break;
        }
        pk = pk.exact_div(&s)?;
    }
    Ok(m)
}

/// Spectrum of an exact square matrix, with eigenspaces as elements of `x`'s algebra.
fn exact_spectrum(x: &Element, m: &Matrix) -> Result<SpectrumReport> {
    let n = m.rows();
    let p = char_poly(m)?;
    let q = p.squarefree_part()?;
    let semisimple = q.eval_matrix(m).is_zero();
    let mut radicands = RADICANDS.to_vec();
    for i in 0..n {
        for j in 0..n {
            if let Some(d) = m[(i, j)].radicand() {
                if !radicands.contains(&d) {
                    radicands.push(d);
                }
            }
        }
    }
    let roots = find_roots(&q, &radicands)?;
    let mut eigenvalues = Vec::new();
    for r in roots.exact {
        let algebraic = p.root_multiplicity(&r)?;
        let ns = m.shift(&r).nullspace()?;
        let basis = ns.into_iter().map(|v| x.algebra().element(v)).collect::<Result<Vec<_>>>()?;
        eigenvalues.push(Eigen { value: r, algebraic, geometric: Some(basis.len()), basis });
    }
    for (lo, hi) in roots.isolated {
        let algebraic = isolated_multiplicity(&p, &lo, &hi)?;
        let (l, h) = (lo.to_f64().unwrap(), hi.to_f64().unwrap());
        let value = Scalar::Ball(Interval::from_inf_sup(l, h));
        eigenvalues.push(Eigen { value, algebraic, geometric: semisimple.then_some(algebraic), basis: vec![] });
    }
    finish(n, eigenvalues, semisimple)
}

fn finish(n: usize, mut eigenvalues: Vec<Eigen>, semisimple: bool) -> Result<SpectrumReport> {
    eigenvalues.sort_by(|a, b| cmp_f64(&a.value, &b.value));
    let total: usize = eigenvalues.iter().map(|e| e.algebraic).sum();
    if total != n {
        return Err(Error::Undecided(format!("multiplicities sum to {total}, expected {n}")));
    }
    let mult = |target: &Scalar| {
        eigenvalues.iter().filter(|e| e.value.is_exact() && &e.value == target).map(|e| e.algebraic).sum()
    };
    let d = mult(&Scalar::zero());
    let mult1 = mult(&Scalar::one());
    Ok(SpectrumReport { n, eigenvalues, semisimple, d, mult1 })
}

fn rational_matrix(m: &DMatrix<f64>) -> Matrix {
    Matrix::from_rows(
        (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| Scalar::Rat(Rational::from_float(m[(i, j)]).unwrap())).collect())
            .collect(),
    )
}

/// Certified spectrum of a ball element that is a certified idempotent.
///
/// Gershgorin discs of `V⁻¹·ad_x·V` are made disjoint; since `ad_x` is
/// self-adjoint for the positive definite form, each disc holds exactly one
/// real eigenvalue. The eigenvalues 1 (eigenvector `x`) and 0 (eigenvector
/// `id − x`) are known to occur, so a disc containing one of them holds it
/// exactly.
fn ball_spectrum(x: &Element) -> Result<SpectrumReport> {
    let spec = x.algebra();
    let n = spec.dim();
    let a = x.adjoint_matrix();
    let ai: Vec<Vec<Interval>> = (0..n).map(|i| (0..n).map(|j| a[(i, j)].to_interval()).collect()).collect();
    let amid = DMatrix::from_fn(n, n, |i, j| ai[i][j].mid);
    let g = spec.gram().to_f64();
    let chol = nalgebra::Cholesky::new(g).ok_or_else(|| Error::Certification("Gram matrix is not positive definite".into()))?;
    let l = chol.l();
    let lt_inv = l.transpose().try_inverse().ok_or_else(|| Error::Certification("singular Cholesky factor".into()))?;
    let s = l.transpose() * &amid * &lt_inv;
    let s = (&s + s.transpose()) * 0.5;
    let eig = nalgebra::SymmetricEigen::new(s);
    let v = lt_inv * eig.eigenvectors;
    let vq = rational_matrix(&v);
    let vinv = {
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|j| {
                let mut e = vec![Scalar::zero(); n];
                e[j] = Scalar::one();
                vq.solve(&e)
            })
            .collect::<Result<_>>()?;
        Matrix::from_columns(&cols)
    };
    let bmid = vinv.mul(&rational_matrix(&amid)).mul(&vq);
    // |V⁻¹| · |ΔA| · |V|
    let abs_f = |m: &Matrix| DMatrix::from_fn(n, n, |i, j| m[(i, j)].to_interval().mag());
    let delta = DMatrix::from_fn(n, n, |i, j| {
        let iv = ai[i][j];
        iv.rad + (iv.mid - amid[(i, j)]).abs()
    });
    let pert = abs_f(&vinv) * delta * abs_f(&vq);
    let mut discs = Vec::with_capacity(n);
    for i in 0..n {
        let c = bmid[(i, i)].to_interval();
        let mut r = c.rad;
        for j in 0..n {
            if j != i {
                r += bmid[(i, j)].to_interval().mag();
            }
            r += pert[(i, j)];
        }
        discs.push(Interval::new(c.mid, r * (1.0 + 1e-9) + 1e-300));
    }
    for i in 0..n {
        for j in i + 1..n {
            if discs[i].intersects(&discs[j]) {
                return Err(Error::Undecided(format!(
                    "eigenvalue enclosures {} and {} overlap; refine the idempotent",
                    discs[i], discs[j]
                )));
            }
        }
    }
    let idempotent = x.is_idempotent() == crate::algebra::Idempotency::CertifiedTrue;
    let eigenvalues = discs
        .into_iter()
        .map(|b| {
            let value = if idempotent && b.contains(0.0) {
                Scalar::zero()
            } else if idempotent && b.contains(1.0) {
                Scalar::one()
            } else {
                Scalar::Ball(b)
            };
            Eigen { value, algebraic: 1, geometric: Some(1), basis: vec![] }
        })
        .collect();
    finish(n, eigenvalues, true)
}

/// Spectrum of `ad_x`.
pub fn spectrum(x: &Element) -> Result<SpectrumReport> {
    if x.is_exact() {
        exact_spectrum(x, &x.adjoint_matrix())
    } else {
        ball_spectrum(x)
    }
}

/// Exact characteristic polynomial of `ad_x`.
pub fn adjoint_char_poly(x: &Element) -> Result<Poly> {
    if !x.is_exact() {
        return Err(Error::Undecided("characteristic polynomial of an interval element".into()));
    }
    char_poly(&x.adjoint_matrix())
}

/// `ad_x` is diagonalisable: its minimal polynomial is squarefree.
pub fn is_semisimple(x: &Element) -> Result<bool> {
    if !x.is_exact() {
        return Ok(spectrum(x)?.semisimple);
    }
    let m = x.adjoint_matrix();
    let q = char_poly(&m)?.squarefree_part()?;
    Ok(q.eval_matrix(&m).is_zero())
}

/// 1 is a simple eigenvalue.
pub fn is_indecomposable(x: &Element) -> Result<bool> {
    Ok(spectrum(x)?.mult1 == 1)
}

/// 0 and 1 both simple, i.e. `⟨⟨x, id − x⟩⟩` is maximal associative.
pub fn is_trivial_maximal(x: &Element) -> Result<bool> {
    let s = spectrum(x)?;
    Ok(s.d == 1 && s.mult1 == 1)
}

/// `spectrum(id − x) = {1 − μ}` with multiplicities.
pub fn complement_spectrum_check(x: &Element) -> Result<bool> {
    let id = x.algebra().identity()?;
    let sx = spectrum(x)?;
    let sc = spectrum(&id.try_sub(x)?)?;
    Ok(complement_matches(&sx, &sc))
}

/// Whether `sc` is the reflection `μ ↦ 1 − μ` of `sx`.
pub fn complement_matches(sx: &SpectrumReport, sc: &SpectrumReport) -> bool {
    let one = Scalar::one();
    let mut want: Vec<Scalar> = sx.multiset().iter().map(|m| &one - m).collect();
    let got = sc.multiset();
    if got.len() != want.len() {
        return false;
    }
    for g in &got {
        match want.iter().position(|w| w.approx_eq(g)) {
            Some(p) => {
                want.swap_remove(p);
            }
            None => return false,
        }
    }
    true
}

/// Trace identity `Σ μ = tr(ad_x)`, exact for exact spectra.
pub fn trace_identity(x: &Element, s: &SpectrumReport) -> bool {
    let tr = x.adjoint_matrix().trace();
    let sum = s.multiset().iter().fold(Scalar::zero(), |acc, v| &acc + v);
    if s.is_exact() && x.is_exact() {
        sum == tr
    } else {
        sum.approx_eq(&tr)
    }
}

/// Parses a spectrum written as `{0, 1, 1/4}` or `0 1 1/4`.
pub fn parse_spectrum(s: &str) -> Result<Vec<Scalar>> {
    s.trim()
        .trim_start_matches('{')
        .trim_end_matches('}')
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Scalar>())
        .collect()
}

/// Ball eigenvalues certified strictly inside `(0, 1)`.
pub fn interior_certified(s: &SpectrumReport) -> usize {
    s.eigenvalues
        .iter()
        .filter(|e| {
            let i = e.value.to_interval();
            i.inf() > 0.0 && i.sup() < 1.0
        })
        .map(|e| e.algebraic)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationalize_small_fractions() {
        assert_eq!(rationalize(0.03125, 1000).unwrap(), crate::scalar::rat(1, 32));
        assert_eq!(rationalize(73.0 / 224.0, MAX_DENOMINATOR).unwrap(), crate::scalar::rat(73, 224));
        assert_eq!(rationalize(-3.0 / 160.0, MAX_DENOMINATOR).unwrap(), crate::scalar::rat(-3, 160));
    }

    #[test]
    fn parse_spectrum_forms() {
        let v = parse_spectrum("{0, 1, 1/4, 1/32}").unwrap();
        assert_eq!(v, vec![Scalar::zero(), Scalar::one(), Scalar::frac(1, 4), Scalar::frac(1, 32)]);
    }
}
