use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{RingDescriptor, Scalar};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// An element of ℚ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        Rational(BigRational::new(num, den))
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational(BigRational::zero())
    }
    fn one_like(&self) -> Self {
        Rational(BigRational::one())
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Scalar for Rational {
    type Ctx = ();

    fn ctx(&self) {}

    fn descriptor(_: &()) -> RingDescriptor {
        RingDescriptor::Rational
    }

    fn zero(_: &()) -> Self {
        Rational(BigRational::zero())
    }

    fn from_int(_: &(), n: &BigInt) -> Self {
        Rational(BigRational::from_integer(n.clone()))
    }

    fn is_unit(&self) -> bool {
        !self.0.is_zero()
    }

    fn is_nilpotent(&self) -> bool {
        self.0.is_zero()
    }

    fn nil_index(_: &()) -> u32 {
        1
    }

    fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            Err(Error::NotAUnit(self.to_string()))
        } else {
            Ok(Rational(self.0.recip()))
        }
    }

    fn from_ratio(_: &(), num: &BigInt, den: &BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NotAUnit("0".into()));
        }
        Ok(Rational(BigRational::new(num.clone(), den.clone())))
    }
}

impl Rational {
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_halves_and_thirds() {
        assert_eq!(Rational::new(1, 2).add(&Rational::new(1, 3)), Rational::new(5, 6));
    }

    #[test]
    fn zero_is_not_a_unit() {
        let z = Rational::zero(&());
        assert!(!z.is_unit());
        assert!(matches!(z.inv(), Err(Error::NotAUnit(_))));
        assert_eq!(Rational::new(-3, 4).inv().unwrap(), Rational::new(-4, 3));
    }

    #[test]
    fn renders_reduced() {
        assert_eq!(Rational::new(4, -6).to_string(), "-2/3");
        assert_eq!(Rational::integer(7).to_string(), "7");
    }
}
