//! Rational exponents for generalized power series.
//!
//! Values of the valuation live in an ordered abelian subgroup of Q; an
//! `Exponent` is an arbitrary-precision rational, always reduced, with
//! positive denominator. The rational order is the group order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(BigRational);

impl Exponent {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "exponent denominator must be nonzero");
        Exponent(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Self {
        Exponent(BigRational::from(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Exponent(BigRational::zero())
    }

    pub fn one() -> Self {
        Exponent(BigRational::one())
    }

    pub fn from_ratio(r: BigRational) -> Self {
        Exponent(r)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Denominator as u64; exponents in this artifact never exceed that.
    pub fn denom_u64(&self) -> u64 {
        use num_traits::ToPrimitive;
        self.0.denom().to_u64().expect("exponent denominator overflow")
    }

    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        Exponent(&self.0 * BigRational::from(BigInt::from(k)))
    }

    pub fn div_int(&self, k: i64) -> Self {
        assert!(k != 0);
        Exponent(&self.0 / BigRational::from(BigInt::from(k)))
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Exponent> for &'a Exponent {
    type Output = Exponent;
    fn add(self, rhs: &'a Exponent) -> Exponent {
        Exponent(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Exponent> for Exponent {
    fn add_assign(&mut self, rhs: &Exponent) {
        self.0 += &rhs.0;
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a Exponent> for &'a Exponent {
    type Output = Exponent;
    fn sub(self, rhs: &'a Exponent) -> Exponent {
        Exponent(&self.0 - &rhs.0)
    }
}

impl Mul<i64> for &Exponent {
    type Output = Exponent;
    fn mul(self, rhs: i64) -> Exponent {
        self.scale_int(rhs)
    }
}

impl Div<i64> for &Exponent {
    type Output = Exponent;
    fn div(self, rhs: i64) -> Exponent {
        self.div_int(rhs)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

impl Neg for &Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-&self.0)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_ordered() {
        let a = Exponent::new(2, 4);
        assert_eq!(a, Exponent::new(1, 2));
        assert_eq!(a.denom_u64(), 2);
        assert!(Exponent::new(-1, 2) < Exponent::zero());
        assert!(Exponent::new(1, 3) < Exponent::new(1, 2));
    }

    #[test]
    fn negative_denominator_normalizes() {
        let a = Exponent::new(1, -2);
        assert!(a.is_negative());
        assert_eq!(a, Exponent::new(-1, 2));
    }

    #[test]
    fn display_round_trip_forms() {
        assert_eq!(Exponent::new(-1, 2).to_string(), "-1/2");
        assert_eq!(Exponent::from_int(3).to_string(), "3");
    }
}
