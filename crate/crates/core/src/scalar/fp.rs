use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{mismatch, RingDescriptor, Scalar};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// A prime that fits in a machine word, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeModulus(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue class modulo a word-sized prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: PrimeModulus,
}

impl Fp {
    pub fn new(value: i64, modulus: PrimeModulus) -> Self {
        let p = modulus.get() as i128;
        let v = (value as i128).rem_euclid(p) as u64;
        Fp { value: v, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    fn same(&self, rhs: &Self) {
        if self.modulus != rhs.modulus {
            panic!("{}", mismatch::<Fp>(&self.modulus, &rhs.modulus));
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus.get())
    }
}

/// Residues render as their least non-negative representative.
impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        Fp { value: 1 % self.modulus.get(), modulus: self.modulus }
    }
    fn add(&self, rhs: &Self) -> Self {
        self.same(rhs);
        let p = self.modulus.get() as u128;
        let v = (self.value as u128 + rhs.value as u128) % p;
        Fp { value: v as u64, modulus: self.modulus }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.same(rhs);
        let p = self.modulus.get() as u128;
        let v = (self.value as u128 * rhs.value as u128) % p;
        Fp { value: v as u64, modulus: self.modulus }
    }
    fn neg(&self) -> Self {
        let p = self.modulus.get();
        Fp { value: (p - self.value) % p, modulus: self.modulus }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl Scalar for Fp {
    type Ctx = PrimeModulus;

    fn ctx(&self) -> PrimeModulus {
        self.modulus
    }

    fn descriptor(ctx: &PrimeModulus) -> RingDescriptor {
        RingDescriptor::PrimeField(ctx.get())
    }

    fn zero(ctx: &PrimeModulus) -> Self {
        Fp { value: 0, modulus: *ctx }
    }

    fn from_int(ctx: &PrimeModulus, n: &BigInt) -> Self {
        let p = BigInt::from(ctx.get());
        let v = n.mod_floor(&p).to_u64().expect("residue fits in u64");
        Fp { value: v, modulus: *ctx }
    }

    fn is_unit(&self) -> bool {
        self.value != 0
    }

    fn is_nilpotent(&self) -> bool {
        self.value == 0
    }

    fn nil_index(_: &PrimeModulus) -> u32 {
        1
    }

    fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::NotAUnit(format!("0 mod {}", self.modulus.get())));
        }
        // Fermat: x^(p-2)
        Ok(Ring::pow(self, self.modulus.get() - 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7(v: i64) -> Fp {
        Fp::new(v, PrimeModulus::new(7).unwrap())
    }

    #[test]
    fn inverse_of_three_mod_seven() {
        assert_eq!(f7(3).inv().unwrap(), f7(5));
        assert!(f7(0).inv().is_err());
    }

    #[test]
    fn negative_values_reduce() {
        assert_eq!(f7(-1), f7(6));
        assert_eq!(Fp::from_i64(&PrimeModulus::new(7).unwrap(), -15), f7(6));
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(PrimeModulus::new(15), Err(Error::NotPrime(15)));
        assert!(PrimeModulus::new(1).is_err());
        assert!(PrimeModulus::new(2).is_ok());
    }

    #[test]
    fn mixed_moduli_are_reported() {
        let a = f7(1);
        let b = Fp::new(1, PrimeModulus::new(5).unwrap());
        assert!(matches!(a.try_add(&b), Err(Error::DescriptorMismatch(_, _))));
    }
}
