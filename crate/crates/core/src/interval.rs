//! Outward-rounded real and rectangular complex interval arithmetic.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::ToPrimitive;

use crate::gaussian::GaussianRational;
use crate::mixedpoly::MixedPolynomial;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "empty interval");
        Self { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    /// Smallest float interval guaranteed to contain `x`.
    pub fn enclose(x: f64) -> Self {
        Self { lo: x.next_down(), hi: x.next_up() }
    }

    fn rounded(lo: f64, hi: f64) -> Self {
        Self { lo: lo.next_down(), hi: hi.next_up() }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0.0 && self.hi >= 0.0
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn sqr(&self) -> Self {
        if self.contains_zero() {
            Self::new(0.0, (self.mag() * self.mag()).next_up())
        } else {
            let a = self.lo * self.lo;
            let b = self.hi * self.hi;
            Self::rounded(a.min(b), a.max(b)).clamp_nonneg()
        }
    }

    fn clamp_nonneg(self) -> Self {
        Self { lo: self.lo.max(0.0), hi: self.hi }
    }

    /// `self ⊆ interior(other)`.
    pub fn strictly_inside(&self, other: &Self) -> bool {
        self.lo > other.lo && self.hi < other.hi
    }
}

impl Add for Interval {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::rounded(self.lo + r.lo, self.hi + r.hi)
    }
}

impl Sub for Interval {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::rounded(self.lo - r.hi, self.hi - r.lo)
    }
}

impl Neg for Interval {
    type Output = Self;
    fn neg(self) -> Self {
        Self { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Interval {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let c = [self.lo * r.lo, self.lo * r.hi, self.hi * r.lo, self.hi * r.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::rounded(lo, hi)
    }
}

/// Rectangle `re × i·im` in the complex plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CInterval {
    pub re: Interval,
    pub im: Interval,
}

impl CInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        Self { re, im }
    }

    pub fn point(re: f64, im: f64) -> Self {
        Self { re: Interval::point(re), im: Interval::point(im) }
    }

    pub fn enclose_gaussian(c: &GaussianRational) -> Self {
        let f = |x: &num_rational::BigRational| {
            let v = x.to_f64().unwrap_or(f64::NAN);
            if v.is_finite() && num_rational::BigRational::from_float(v).as_ref() == Some(x) {
                Interval::point(v)
            } else {
                Interval::enclose(v)
            }
        };
        Self { re: f(&c.re), im: f(&c.im) }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re, im: -self.im }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn powu(&self, e: u32) -> Self {
        let mut acc = Self::point(1.0, 0.0);
        for _ in 0..e {
            acc = acc * *self;
        }
        acc
    }
}

impl Add for CInterval {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self { re: self.re + r.re, im: self.im + r.im }
    }
}

impl Sub for CInterval {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self { re: self.re - r.re, im: self.im - r.im }
    }
}

impl Mul for CInterval {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        Self { re: self.re * r.re - self.im * r.im, im: self.re * r.im + self.im * r.re }
    }
}

/// Interval enclosure of a mixed polynomial over a box of complex intervals.
pub fn eval_mixed(p: &MixedPolynomial, point: &[CInterval]) -> CInterval {
    let mut acc = CInterval::point(0.0, 0.0);
    for t in p.terms() {
        let mut v = CInterval::enclose_gaussian(&t.coeff);
        for j in 0..p.n() {
            if t.nu[j] > 0 {
                v = v * point[j].powu(t.nu[j]);
            }
            if t.mu[j] > 0 {
                v = v * point[j].conj().powu(t.mu[j]);
            }
        }
        acc = acc + v;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixedpoly::parse;

    #[test]
    fn enclosures_contain_values() {
        let x = Interval::new(-1.0, 2.0);
        let y = Interval::new(3.0, 4.0);
        let p = x * y;
        assert!(p.lo <= -4.0 && p.hi >= 8.0);
        assert!(x.sqr().lo == 0.0 && x.sqr().hi >= 4.0);
        let third = CInterval::enclose_gaussian(&GaussianRational::from_ratio(1, 3));
        assert!(third.re.lo < 1.0 / 3.0 + 1e-17 && third.re.hi > 1.0 / 3.0 - 1e-17);
    }

    #[test]
    fn mixed_evaluation() {
        let p = parse("z1^2*bar(z1) - 1/1000", 1).unwrap();
        let b = CInterval::new(Interval::new(0.09, 0.11), Interval::new(-0.01, 0.01));
        assert!(eval_mixed(&p, &[b]).contains_zero());
        let far = CInterval::new(Interval::new(0.3, 0.4), Interval::new(0.3, 0.4));
        assert!(!eval_mixed(&p, &[far]).contains_zero());
    }
}
