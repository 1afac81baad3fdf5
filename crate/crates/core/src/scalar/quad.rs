use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{Rational, Sign};

/// `a + b·sqrt(d)` with `d > 1` squarefree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
    pub d: u64,
}

pub fn is_squarefree(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut p = 2u64;
    let mut m = d;
    while p * p <= m {
        if m.is_multiple_of(p * p) {
            return false;
        }
        if m.is_multiple_of(p) {
            m /= p;
        }
        p += 1;
    }
    true
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        assert!(is_squarefree(d), "radicand {d} is not a squarefree integer > 1");
        QuadExt { a, b, d }
    }

    pub fn sqrt(d: u64) -> Self {
        QuadExt::new(Rational::zero(), Rational::one(), d)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conjugate(&self) -> QuadExt {
        QuadExt { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(self.d.into()) * &self.b * &self.b
    }

    fn same_field(&self, other: &QuadExt) {
        assert_eq!(self.d, other.d, "mixed radicands must be promoted by the caller");
    }

    pub fn add(&self, o: &QuadExt) -> QuadExt {
        self.same_field(o);
        QuadExt { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d }
    }

    pub fn sub(&self, o: &QuadExt) -> QuadExt {
        self.same_field(o);
        QuadExt { a: &self.a - &o.a, b: &self.b - &o.b, d: self.d }
    }

    pub fn mul(&self, o: &QuadExt) -> QuadExt {
        self.same_field(o);
        let d = Rational::from_integer(self.d.into());
        QuadExt {
            a: &self.a * &o.a + d * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d,
        }
    }

    pub fn scale(&self, q: &Rational) -> QuadExt {
        QuadExt { a: &self.a * q, b: &self.b * q, d: self.d }
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt { a: -self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Inverse, `None` for zero.
    pub fn recip(&self) -> Option<QuadExt> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadExt { a: &self.a / &n, b: -(&self.b / &n), d: self.d })
    }

    /// Sign by comparing `a²` against `d·b²` when the parts disagree.
    pub fn sign(&self) -> Sign {
        let sa = rsign(&self.a);
        let sb = rsign(&self.b);
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => Sign::from_ordering(s),
            (x, y) if x == y => Sign::from_ordering(x),
            (x, y) => {
                let a2 = &self.a * &self.a;
                let db2 = Rational::from_integer(self.d.into()) * &self.b * &self.b;
                if a2 > db2 {
                    Sign::from_ordering(x)
                } else {
                    Sign::from_ordering(y)
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap() + self.b.to_f64().unwrap() * (self.d as f64).sqrt()
    }
}

fn rsign(q: &Rational) -> Ordering {
    if q.is_positive() {
        Ordering::Greater
    } else if q.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.b.abs();
        let b = if b.is_one() { format!("sqrt({})", self.d) } else { format!("{}*sqrt({})", super::fmt_rational(&b), self.d) };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{b}"),
            (true, true) => write!(f, "-{b}"),
            (false, false) => write!(f, "{}+{b}", super::fmt_rational(&self.a)),
            (false, true) => write!(f, "{}-{b}", super::fmt_rational(&self.a)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn squarefree_radicands() {
        assert!(is_squarefree(2) && is_squarefree(3) && is_squarefree(5) && is_squarefree(15));
        assert!(!is_squarefree(4) && !is_squarefree(12) && !is_squarefree(1));
    }

    #[test]
    fn conjugate_product_is_norm() {
        let x = QuadExt::new(rat(5, 1), rat(4, 1), 3);
        let p = x.mul(&x.conjugate());
        assert_eq!(p.a, rat(-23, 1));
        assert!(p.b.is_zero());
    }

    #[test]
    fn sign_cases() {
        assert_eq!(QuadExt::new(rat(1, 1), rat(-1, 1), 3).sign(), Sign::Negative);
        assert_eq!(QuadExt::new(rat(2, 1), rat(-1, 1), 3).sign(), Sign::Positive);
        assert_eq!(QuadExt::new(rat(-7, 5), rat(1, 1), 2).sign(), Sign::Positive);
        assert_eq!(QuadExt::new(rat(0, 1), rat(0, 1), 2).sign(), Sign::Zero);
    }
}
