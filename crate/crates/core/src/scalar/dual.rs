use std::fmt;

use num_bigint::BigInt;

use super::{needs_parens, RingDescriptor, Scalar};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// `re + eps·ε` with ε² = 0.
#[derive(Clone, PartialEq, Eq)]
pub struct Dual<S: Scalar> {
    pub re: S,
    pub eps: S,
}

impl<S: Scalar> Dual<S> {
    pub fn new(re: S, eps: S) -> Self {
        Dual { re, eps }
    }
}

impl<S: Scalar> fmt::Display for Dual<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.eps.to_string();
        let (neg, body) = match e.strip_prefix('-') {
            Some(b) => (true, b.to_string()),
            None => (false, e),
        };
        let body = if needs_parens(&body) { format!("({body})") } else { body };
        let eterm = if body == "1" { "e".to_string() } else { format!("{body}*e") };
        match (self.re.is_zero(), self.eps.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}{eterm}", if neg { "-" } else { "" }),
            (false, false) => write!(f, "{} {} {eterm}", self.re, if neg { "-" } else { "+" }),
        }
    }
}

impl<S: Scalar> fmt::Debug for Dual<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> Ring for Dual<S> {
    fn zero_like(&self) -> Self {
        Dual { re: self.re.zero_like(), eps: self.re.zero_like() }
    }
    fn one_like(&self) -> Self {
        Dual { re: self.re.one_like(), eps: self.re.zero_like() }
    }
    fn add(&self, rhs: &Self) -> Self {
        Dual { re: self.re.add(&rhs.re), eps: self.eps.add(&rhs.eps) }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Dual {
            re: self.re.mul(&rhs.re),
            eps: self.re.mul(&rhs.eps).add(&self.eps.mul(&rhs.re)),
        }
    }
    fn neg(&self) -> Self {
        Dual { re: self.re.neg(), eps: self.eps.neg() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl<S: Scalar> Scalar for Dual<S> {
    type Ctx = S::Ctx;

    fn ctx(&self) -> S::Ctx {
        self.re.ctx()
    }

    fn descriptor(ctx: &S::Ctx) -> RingDescriptor {
        RingDescriptor::DualNumbers(Box::new(S::descriptor(ctx)))
    }

    fn zero(ctx: &S::Ctx) -> Self {
        Dual { re: S::zero(ctx), eps: S::zero(ctx) }
    }

    fn from_int(ctx: &S::Ctx, n: &BigInt) -> Self {
        Dual { re: S::from_int(ctx, n), eps: S::zero(ctx) }
    }

    fn is_unit(&self) -> bool {
        self.re.is_unit()
    }

    fn is_nilpotent(&self) -> bool {
        self.re.is_nilpotent()
    }

    fn nil_index(ctx: &S::Ctx) -> u32 {
        2 * S::nil_index(ctx)
    }

    fn inv(&self) -> Result<Self> {
        if !self.re.is_unit() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let x = self.re.inv()?;
        let eps = self.eps.mul(&x).mul(&x).neg();
        Ok(Dual { re: x, eps })
    }

    fn epsilon(ctx: &S::Ctx) -> Option<Self> {
        Some(Dual { re: S::zero(ctx), eps: S::one(ctx) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn eps() -> Dual<Rational> {
        Dual::epsilon(&()).unwrap()
    }

    #[test]
    fn epsilon_squares_to_zero() {
        assert!(eps().mul(&eps()).is_zero());
        assert!(!eps().is_unit());
        assert!(eps().is_nilpotent());
    }

    #[test]
    fn inverse_of_one_plus_epsilon() {
        let x = Dual::one(&()).add(&eps());
        assert_eq!(x.inv().unwrap(), Dual::one(&()).sub(&eps()));
        assert!(eps().inv().is_err());
    }

    #[test]
    fn renders() {
        let x = Dual::new(Rational::new(1, 2), Rational::integer(-3));
        assert_eq!(x.to_string(), "1/2 - 3*e");
        assert_eq!(eps().to_string(), "e");
        assert_eq!(eps().neg().to_string(), "-e");
    }
}
