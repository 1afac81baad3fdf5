//! The coefficient tower: exact rationals, exact real quadratic fields and
//! certified `f64` balls.
//!
//! Arithmetic between two exact values with the same radicand stays exact.
//! Anything else (two different radicands, or any ball operand) is carried
//! out on enclosing balls.

mod interval;
mod quad;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

pub use interval::Interval;
pub use quad::{is_squarefree, QuadExt};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub(crate) fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
    Undecided,
}

impl Sign {
    pub(crate) fn from_ordering(o: std::cmp::Ordering) -> Sign {
        match o {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Scalar {
    Rat(Rational),
    Quad(QuadExt),
    Ball(Interval),
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rat(Rational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rat(Rational::one())
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::Rat(rat(n, 1))
    }

    pub fn frac(p: i64, q: i64) -> Scalar {
        Scalar::Rat(rat(p, q))
    }

    pub fn sqrt_of(d: u64) -> Scalar {
        // split d = s²·f with f squarefree
        let mut s = 1u64;
        let mut f = 1u64;
        let mut m = d;
        let mut p = 2u64;
        while p * p <= m {
            while m.is_multiple_of(p * p) {
                m /= p * p;
                s *= p;
            }
            if m.is_multiple_of(p) {
                m /= p;
                f *= p;
            }
            p += 1;
        }
        f *= m;
        if f == 1 {
            Scalar::int(s as i64)
        } else {
            Scalar::Quad(QuadExt::new(Rational::zero(), rat(s as i64, 1), f))
        }
    }

    pub fn ball(mid: f64, rad: f64) -> Scalar {
        Scalar::Ball(Interval::new(mid, rad))
    }

    /// Collapse `a + 0·sqrt(d)` to a rational.
    pub fn normalized(self) -> Scalar {
        match self {
            Scalar::Quad(q) if q.is_rational() => Scalar::Rat(q.a),
            s => s,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Ball(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Quad(q) => q.a.is_zero() && q.b.is_zero(),
            Scalar::Ball(b) => b.mid == 0.0 && b.rad == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(q) => Some(q),
            _ => None,
        }
    }

    pub fn radicand(&self) -> Option<u64> {
        match self {
            Scalar::Quad(q) => Some(q.d),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rat(q) => q.to_f64().unwrap_or(f64::NAN),
            Scalar::Quad(q) => q.to_f64(),
            Scalar::Ball(b) => b.mid,
        }
    }

    pub fn to_interval(&self) -> Interval {
        match self {
            Scalar::Rat(q) => Interval::from_rational(q),
            Scalar::Quad(q) => {
                Interval::from_rational(&q.a)
                    + Interval::from_rational(&q.b) * Interval::sqrt_of(q.d)
            }
            Scalar::Ball(b) => *b,
        }
    }

    pub fn certify_sign(&self) -> Sign {
        match self {
            Scalar::Rat(q) => {
                if q.is_positive() {
                    Sign::Positive
                } else if q.is_negative() {
                    Sign::Negative
                } else {
                    Sign::Zero
                }
            }
            Scalar::Quad(q) => q.sign(),
            Scalar::Ball(b) => {
                if b.contains_zero() {
                    Sign::Undecided
                } else if b.mid > 0.0 {
                    Sign::Positive
                } else {
                    Sign::Negative
                }
            }
        }
    }

    /// Galois conjugate; rationals and balls are fixed.
    pub fn conjugate(&self) -> Scalar {
        match self {
            Scalar::Quad(q) => Scalar::Quad(q.conjugate()),
            s => s.clone(),
        }
    }

    pub fn recip(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(q) => {
                if q.is_zero() {
                    Err(Error::DivisionByZero { exact: true })
                } else {
                    Ok(Scalar::Rat(q.recip()))
                }
            }
            Scalar::Quad(q) => {
                q.recip().map(Scalar::Quad).ok_or(Error::DivisionByZero { exact: true })
            }
            Scalar::Ball(b) => b.recip().map(Scalar::Ball).ok_or(Error::DivisionByZero { exact: false }),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.recip()?)
    }

    pub fn abs(&self) -> Scalar {
        match self.certify_sign() {
            Sign::Negative => -self,
            Sign::Undecided => match self {
                Scalar::Ball(b) => Scalar::Ball(b.abs()),
                _ => unreachable!(),
            },
            _ => self.clone(),
        }
    }

    /// Exact equality of exact values; balls compare by overlap.
    pub fn approx_eq(&self, other: &Scalar) -> bool {
        if self.is_exact() && other.is_exact() {
            self == other
        } else {
            self.to_interval().intersects(&other.to_interval())
        }
    }

    fn binop(
        &self,
        other: &Scalar,
        fr: impl Fn(&Rational, &Rational) -> Rational,
        fq: impl Fn(&QuadExt, &QuadExt) -> QuadExt,
        fi: impl Fn(Interval, Interval) -> Interval,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(fr(a, b)),
            (Scalar::Quad(a), Scalar::Quad(b)) if a.d == b.d => Scalar::Quad(fq(a, b)).normalized(),
            (Scalar::Quad(a), Scalar::Rat(b)) => {
                Scalar::Quad(fq(a, &QuadExt { a: b.clone(), b: Rational::zero(), d: a.d })).normalized()
            }
            (Scalar::Rat(a), Scalar::Quad(b)) => {
                Scalar::Quad(fq(&QuadExt { a: a.clone(), b: Rational::zero(), d: b.d }, b)).normalized()
            }
            (x, y) => Scalar::Ball(fi(x.to_interval(), y.to_interval())),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Quad(a), Scalar::Quad(b)) => a == b,
            (Scalar::Ball(a), Scalar::Ball(b)) => a == b,
            // normalized forms never mix Rat and Quad with b = 0
            (Scalar::Rat(a), Scalar::Quad(b)) | (Scalar::Quad(b), Scalar::Rat(a)) => {
                b.b.is_zero() && &b.a == a
            }
            _ => false,
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        self.binop(o, |a, b| a + b, |a, b| a.add(b), |a, b| a + b)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        self.binop(o, |a, b| a - b, |a, b| a.sub(b), |a, b| a - b)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if (self.is_exact() && self.is_zero()) || (o.is_exact() && o.is_zero()) {
            return Scalar::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        self.binop(o, |a, b| a * b, |a, b| a.mul(b), |a, b| a * b)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(q) => Scalar::Rat(-q.clone()),
            Scalar::Quad(q) => Scalar::Quad(q.neg()),
            Scalar::Ball(b) => Scalar::Ball(-*b),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Scalar {
        Scalar::Rat(q)
    }
}

impl From<QuadExt> for Scalar {
    fn from(q: QuadExt) -> Scalar {
        Scalar::Quad(q).normalized()
    }
}

impl From<Interval> for Scalar {
    fn from(b: Interval) -> Scalar {
        Scalar::Ball(b)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => write!(f, "{}", fmt_rational(q)),
            Scalar::Quad(q) => write!(f, "{q}"),
            Scalar::Ball(b) => write!(f, "{b}"),
        }
    }
}

/// Scalar-only name resolution: no names are defined.
struct NoNames;

impl crate::expr::Context for NoNames {
    fn dim(&self) -> usize {
        0
    }

    fn lookup(&self, name: &str) -> Result<crate::expr::Value> {
        Err(Error::Parse(format!("unexpected name `{name}` in a scalar")))
    }
}



/// Parses rational arithmetic with `sqrt(d)`, e.g. `4/7-2/7*sqrt(2)` or `-3`.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        crate::expr::parse(s, &NoNames)?.into_scalar()
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Ball(b) => {
                let mut m = ser.serialize_map(Some(2))?;
                m.serialize_entry("mid", &b.mid)?;
                m.serialize_entry("rad", &b.rad)?;
                m.end()
            }
            s => ser.serialize_str(&s.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Scalar, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Ball { mid: f64, rad: f64 },
        }
        match Repr::deserialize(de)? {
            Repr::Text(s) => s.parse().map_err(de::Error::custom),
            Repr::Ball { mid, rad } => {
                if rad.is_nan() || rad < 0.0 {
                    return Err(de::Error::custom("ball radius must be a non-negative number"));
                }
                Ok(Scalar::Ball(Interval::new(mid, rad)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn rational_product() {
        assert_eq!(&Scalar::frac(1, 2) * &Scalar::frac(1, 4), Scalar::frac(1, 8));
    }

    #[test]
    fn quadratic_norm() {
        let x = q("5/1+4/1*sqrt(3)");
        assert_eq!(&x * &x.conjugate(), Scalar::int(-23));
    }

    #[test]
    fn conjugates() {
        assert_eq!(q("16/7+1/1*sqrt(5)").conjugate(), q("16/7-1/1*sqrt(5)"));
        assert_eq!(q("1+1*sqrt(3)").conjugate(), q("1-1*sqrt(3)"));
        assert_eq!(Scalar::frac(3, 4).conjugate(), Scalar::frac(3, 4));
    }

    #[test]
    fn signs() {
        assert_eq!(Scalar::frac(13, 256).certify_sign(), Sign::Positive);
        let one = Scalar::one();
        let r3 = Scalar::sqrt_of(3);
        let x = &(&(&one - &r3) + &r3) - &one;
        assert_eq!(x, Scalar::zero());
        assert_eq!(x.certify_sign(), Sign::Zero);
        assert_eq!(Scalar::ball(1e-12, 1e-10).certify_sign(), Sign::Undecided);
    }

    #[test]
    fn division_errors_distinguish_zero_kinds() {
        let one = Scalar::one();
        assert!(matches!(one.checked_div(&Scalar::zero()), Err(Error::DivisionByZero { exact: true })));
        assert!(matches!(
            one.checked_div(&Scalar::ball(0.0, 1e-3)),
            Err(Error::DivisionByZero { exact: false })
        ));
    }

    #[test]
    fn mixed_radicands_promote_to_balls() {
        let s = &Scalar::sqrt_of(2) + &Scalar::sqrt_of(3);
        assert!(matches!(s, Scalar::Ball(_)));
        assert!(s.to_interval().contains(2f64.sqrt() + 3f64.sqrt()));
    }

    #[test]
    fn sqrt_of_splits_squares() {
        assert_eq!(Scalar::sqrt_of(9), Scalar::int(3));
        assert_eq!(Scalar::sqrt_of(12), q("0/1+2/1*sqrt(3)"));
    }

    #[test]
    fn text_forms() {
        for s in ["3/8", "-1/2+3/4*sqrt(5)", "2/7-1/7*sqrt(2)", "0", "-4", "sqrt(2)", "-2/3*sqrt(3)"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("7"), Scalar::int(7));
        assert!("1/0".parse::<Scalar>().is_err());
        assert_eq!(q("1+sqrt(4)"), Scalar::int(3));
        assert!("1+a_t".parse::<Scalar>().is_err());
    }

    #[test]
    fn json_forms() {
        let v = serde_json::to_string(&Scalar::ball(0.5, 1e-10)).unwrap();
        assert_eq!(v, r#"{"mid":0.5,"rad":1e-10}"#);
        let back: Scalar = serde_json::from_str(&v).unwrap();
        assert_eq!(back, Scalar::ball(0.5, 1e-10));
        let e: Scalar = serde_json::from_str(r#""1/3-2/5*sqrt(3)""#).unwrap();
        assert_eq!(e, q("1/3-2/5*sqrt(3)"));
    }
}
