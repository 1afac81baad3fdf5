//! Midpoint-radius balls over `f64` with outward rounding.
//!
//! Every operation returns a ball that encloses the exact result of the same
//! operation applied to any points of the operand balls. Rounding slack is
//! added explicitly instead of switching the FPU rounding mode.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::ToPrimitive;

use super::Rational;

const EPS: f64 = f64::EPSILON;
/// Smallest positive normal, absorbs underflow in products.
const TINY: f64 = f64::MIN_POSITIVE;

/// Bound an already-computed non-negative radius upwards.
#[inline]
fn up(x: f64) -> f64 {
    x * (1.0 + 4.0 * EPS) + TINY
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub mid: f64,
    pub rad: f64,
}

impl Interval {
    pub fn new(mid: f64, rad: f64) -> Self {
        assert!(rad >= 0.0 && rad.is_finite(), "interval radius must be finite and >= 0");
        Interval { mid, rad }
    }

    pub fn point(x: f64) -> Self {
        Interval { mid: x, rad: 0.0 }
    }

    pub const ZERO: Interval = Interval { mid: 0.0, rad: 0.0 };

    pub fn from_inf_sup(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        let mid = 0.5 * lo + 0.5 * hi;
        let rad = (hi - mid).max(mid - lo);
        Interval { mid, rad: up(rad) }
    }

    /// Enclosure of an exact rational.
    pub fn from_rational(q: &Rational) -> Self {
        let v = q.to_f64().unwrap_or(f64::NAN);
        assert!(v.is_finite(), "rational out of f64 range");
        // num-rational's conversion is within a couple of ulps of the true value.
        Interval { mid: v, rad: up(2.0 * EPS * v.abs()) }
    }

    /// Enclosure of sqrt(d) for a non-negative integer d.
    pub fn sqrt_of(d: u64) -> Self {
        let s = (d as f64).sqrt();
        Interval { mid: s, rad: up(2.0 * EPS * s) }
    }

    pub fn inf(&self) -> f64 {
        let lo = self.mid - self.rad;
        lo - up(EPS * lo.abs())
    }

    pub fn sup(&self) -> f64 {
        let hi = self.mid + self.rad;
        hi + up(EPS * hi.abs())
    }

    pub fn mag(&self) -> f64 {
        up(self.mid.abs() + self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    pub fn contains(&self, x: f64) -> bool {
        (self.mid - x).abs() <= self.rad
    }

    /// Whether `other` lies in the interior of `self`.
    pub fn strictly_contains(&self, other: &Interval) -> bool {
        self.inf() < other.inf() && other.sup() < self.sup()
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        (self.mid - other.mid).abs() <= up(self.rad + other.rad)
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::from_inf_sup(self.inf().min(other.inf()), self.sup().max(other.sup()))
    }

    pub fn inflate(&self, r: f64) -> Interval {
        Interval { mid: self.mid, rad: up(self.rad + r) }
    }

    pub fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        let (lo, hi) = (self.inf(), self.sup());
        let (a, b) = (1.0 / hi, 1.0 / lo);
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        Some(Interval::from_inf_sup(a - up(EPS * a.abs()), b + up(EPS * b.abs())))
    }

    pub fn sqrt(&self) -> Option<Interval> {
        let lo = self.inf().max(0.0);
        if self.sup() < 0.0 {
            return None;
        }
        let a = lo.sqrt();
        let b = self.sup().sqrt();
        Some(Interval::from_inf_sup(a - up(EPS * a), b + up(EPS * b)))
    }

    pub fn abs(&self) -> Interval {
        if self.contains_zero() {
            Interval::from_inf_sup(0.0, self.sup().abs().max(self.inf().abs()))
        } else if self.mid < 0.0 {
            -*self
        } else {
            *self
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        let mid = self.mid + o.mid;
        Interval { mid, rad: up(self.rad + o.rad + EPS * mid.abs()) }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        self + (-o)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { mid: -self.mid, rad: self.rad }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let mid = self.mid * o.mid;
        let rad = self.mid.abs() * o.rad + self.rad * o.mid.abs() + self.rad * o.rad;
        Interval { mid, rad: up(rad + EPS * mid.abs()) }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12}±{:.1e}", self.mid, self.rad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_of_two_balls() {
        let a = Interval::new(0.1186003432, 1e-10);
        let b = Interval::new(0.1168990567, 1e-10);
        let s = a + b;
        assert!(s.rad <= 2.1e-10);
        assert!(s.contains(0.1186003432 + 0.1168990567));
    }

    #[test]
    fn recip_excludes_zero_balls() {
        assert!(Interval::new(1e-12, 1e-10).recip().is_none());
        let r = Interval::point(4.0).recip().unwrap();
        assert!(r.contains(0.25));
    }

    #[test]
    fn strict_containment() {
        let big = Interval::new(0.0, 1.0);
        assert!(big.strictly_contains(&Interval::new(0.5, 0.1)));
        assert!(!big.strictly_contains(&Interval::new(0.5, 0.6)));
    }
}
