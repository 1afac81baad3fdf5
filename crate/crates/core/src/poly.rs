//! Univariate polynomials over exact scalars.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Coefficients from the constant term upwards, no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_exact() && c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::new(vec![c])
    }

    /// `x − root`.
    pub fn linear(root: &Scalar) -> Poly {
        Poly::new(vec![-root, Scalar::one()])
    }

    pub fn x() -> Poly {
        Poly::new(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Scalar::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero { exact: true })?;
        let lead_inv = d.leading().unwrap().recip()?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = &rem[rem.len() - 1] * &lead_inv;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&f * c);
            }
            quo[k] = f;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((Poly::new(quo), Poly::new(rem)))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Linear("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Result<Poly> {
        match self.leading() {
            None => Ok(Poly::zero()),
            Some(l) => Ok(self.scale(&l.recip()?)),
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::int(i as i64))
                .collect(),
        )
    }

    pub fn gcd(&self, o: &Poly) -> Result<Poly> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn squarefree_part(&self) -> Result<Poly> {
        let g = self.gcd(&self.derivative())?;
        self.exact_div(&g)?.monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&Matrix::identity(n).scale(c));
        }
        acc
    }

    /// Multiplicity of `root` as a zero.
    pub fn root_multiplicity(&self, root: &Scalar) -> Result<usize> {
        let lin = Poly::linear(root);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let (q, r) = p.div_rem(&lin)?;
            if !r.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        Ok(k)
    }

    /// All complex roots in `f64` by Aberth–Ehrlich iteration.
    pub fn complex_roots(&self) -> Vec<num_complex::Complex64> {
        use num_complex::Complex64 as C;
        let Some(deg) = self.degree() else { return vec![] };
        if deg == 0 {
            return vec![];
        }
        let c: Vec<f64> = self.coeffs.iter().map(Scalar::to_f64).collect();
        let lead = c[deg];
        let a: Vec<f64> = c.iter().map(|x| x / lead).collect();
        let bound = 1.0 + a[..deg].iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let mut z: Vec<C> = (0..deg)
            .map(|k| C::from_polar(0.5 * bound, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64))
            .collect();
        let ev = |x: C| -> (C, C) {
            let mut p = C::new(0.0, 0.0);
            let mut dp = C::new(0.0, 0.0);
            for coef in a.iter().rev() {
                dp = dp * x + p;
                p = p * x + C::new(*coef, 0.0);
            }
            (p, dp)
        };
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for i in 0..deg {
                let (p, dp) = ev(z[i]);
                if p.norm() == 0.0 {
                    continue;
                }
                let ratio = p / dp;
                let s: C = (0..deg).filter(|&j| j != i).map(|j| C::new(1.0, 0.0) / (z[i] - z[j])).sum();
                let w = ratio / (C::new(1.0, 0.0) - ratio * s);
                z[i] -= w;
                moved = moved.max(w.norm());
            }
            if moved < 1e-15 {
                break;
            }
        }
        z
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `det(x·I − m)` by Bareiss elimination over the polynomial ring.
///
/// The pivots are leading principal minors of `x·I − m`, monic of positive
/// degree, so no pivoting is needed and every division is exact.
pub fn char_poly(m: &Matrix) -> Result<Poly> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Ok(Poly::constant(Scalar::one()));
    }
    let mut a: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -&m[(i, j)];
                    if i == j {
                        Poly::new(vec![c, Scalar::one()])
                    } else {
                        Poly::constant(c)
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = Poly::constant(Scalar::one());
    for k in 0..n - 1 {
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(a[n - 1][n - 1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| Scalar::int(x)).collect())
    }

    #[test]
    fn char_poly_of_identity_and_zero() {
        assert_eq!(char_poly(&Matrix::identity(3)).unwrap(), p(&[-1, 3, -3, 1]));
        assert_eq!(char_poly(&Matrix::zeros(4, 4)).unwrap(), p(&[0, 0, 0, 0, 1]));
    }

    #[test]
    fn char_poly_matches_faddeev_leverrier() {
        // independent route: c_{n-k} = -tr(A M_k)/k
        let a = Matrix::from_rows(vec![
            vec![Scalar::frac(1, 2), Scalar::int(2), Scalar::zero()],
            vec![Scalar::int(-1), Scalar::frac(3, 4), Scalar::int(5)],
            vec![Scalar::int(2), Scalar::zero(), Scalar::frac(-1, 3)],
        ]);
        let n = 3;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut mk = Matrix::zeros(n, n);
        for k in 1..=n {
            mk = a.mul(&mk).add(&Matrix::identity(n).scale(&coeffs[n - k + 1]));
            let t = a.mul(&mk).trace();
            coeffs[n - k] = -&t.checked_div(&Scalar::int(k as i64)).unwrap();
        }
        assert_eq!(char_poly(&a).unwrap(), Poly::new(coeffs));
    }

    #[test]
    fn squarefree_and_multiplicity() {
        // (x-1)^2 (x+2)
        let f = p(&[2, -3, 0, 1]);
        assert_eq!(f.squarefree_part().unwrap(), p(&[-2, 1, 1]));
        assert_eq!(f.root_multiplicity(&Scalar::one()).unwrap(), 2);
        assert_eq!(f.root_multiplicity(&Scalar::int(-2)).unwrap(), 1);
        assert_eq!(f.root_multiplicity(&Scalar::int(3)).unwrap(), 0);
    }

    #[test]
    fn aberth_roots() {
        let f = p(&[-6, 11, -6, 1]);
        let mut r: Vec<f64> = f.complex_roots().iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        for (x, y) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
