//! Minimal algebraic traits shared by the exact matrix code.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::gaussian::GaussianRational;

/// A commutative ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// The image of an integer under `ℤ → R`.
    fn from_i64(k: i64) -> Self {
        let base = Self::one();
        let mut acc = Self::zero();
        let mut pow = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.add_ref(&pow);
            }
            e >>= 1;
            if e > 0 {
                pow = pow.add_ref(&pow);
            }
        }
        if k < 0 {
            acc.neg_ref()
        } else {
            acc
        }
    }

    fn pow_u(&self, exp: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// Rings in which exact quotients can be computed when they exist.
pub trait IntegralDomain: Ring {
    /// `self / rhs` when `rhs` divides `self`, `None` otherwise.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
}

/// Fields: every nonzero element is invertible.
pub trait Field: IntegralDomain {
    fn inv(&self) -> Option<Self>;
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl IntegralDomain for GaussianRational {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs)
    }
}

impl Field for GaussianRational {
    fn inv(&self) -> Option<Self> {
        GaussianRational::inv(self)
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl IntegralDomain for BigRational {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}
