//! Exact base rings: ℚ, 𝔽_p, the rational function field 𝔽_p(a) and the dual
//! numbers k[ε].
//!
//! Every ring here is local with a nilpotent maximal ideal (fields have the
//! zero ideal), so each element is either a unit or nilpotent. Series
//! inversion relies on that dichotomy.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Ring;

mod dual;
mod fp;
mod ratfunc;
mod rational;

pub use dual::Dual;
pub use fp::{Fp, PrimeModulus};
pub use ratfunc::RatFunc;
pub use rational::Rational;

/// Which base ring a value lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingDescriptor {
    Rational,
    PrimeField(u64),
    RationalFunction { base: Box<RingDescriptor>, var: String },
    DualNumbers(Box<RingDescriptor>),
}

impl RingDescriptor {
    pub fn prime_field(p: u64) -> Result<Self> {
        PrimeModulus::new(p).map(|m| RingDescriptor::PrimeField(m.get()))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            RingDescriptor::Rational => 0,
            RingDescriptor::PrimeField(p) => *p,
            RingDescriptor::RationalFunction { base, .. } | RingDescriptor::DualNumbers(base) => {
                base.characteristic()
            }
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, RingDescriptor::DualNumbers(_))
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Rational => write!(f, "q"),
            RingDescriptor::PrimeField(p) => write!(f, "fp:{p}"),
            RingDescriptor::RationalFunction { base, var } => write!(f, "{base}({var})"),
            RingDescriptor::DualNumbers(base) => write!(f, "dual:{base}"),
        }
    }
}

/// Parses the CLI spellings `q`, `fp:<p>`, `fp:<p>(a)` and `dual:q`.
impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadDescriptor(s.to_string());
        if s == "q" {
            return Ok(RingDescriptor::Rational);
        }
        if s == "dual:q" {
            return Ok(RingDescriptor::DualNumbers(Box::new(RingDescriptor::Rational)));
        }
        let rest = s.strip_prefix("fp:").ok_or_else(bad)?;
        let (digits, transcendental) = match rest.strip_suffix("(a)") {
            Some(d) => (d, true),
            None => (rest, false),
        };
        let p: u64 = digits.parse().map_err(|_| bad())?;
        let base = RingDescriptor::prime_field(p)?;
        Ok(if transcendental {
            RingDescriptor::RationalFunction { base: Box::new(base), var: "a".into() }
        } else {
            base
        })
    }
}

/// An element of one of the exact base rings.
///
/// `Ctx` is whatever runtime data identifies the ring (the prime modulus for
/// 𝔽_p, nothing for ℚ). Two elements may be combined only if their contexts
/// agree.
pub trait Scalar: Ring + Eq + fmt::Display + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn descriptor(ctx: &Self::Ctx) -> RingDescriptor;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: &BigInt) -> Self;
    fn is_unit(&self) -> bool;
    fn is_nilpotent(&self) -> bool;
    /// Smallest k with `x^k = 0` for every nilpotent x (1 for fields).
    fn nil_index(ctx: &Self::Ctx) -> u32;
    fn inv(&self) -> Result<Self>;

    /// The transcendental `a` of 𝔽_p(a), if this ring has one.
    fn transcendental(_ctx: &Self::Ctx) -> Option<Self> {
        None
    }

    /// The infinitesimal ε of k[ε], if this ring has one.
    fn epsilon(_ctx: &Self::Ctx) -> Option<Self> {
        None
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_int(ctx, &BigInt::one())
    }

    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_int(ctx, &BigInt::from(n))
    }

    /// `num/den`, failing when `den` is not invertible in the ring.
    fn from_ratio(ctx: &Self::Ctx, num: &BigInt, den: &BigInt) -> Result<Self> {
        let d = Self::from_int(ctx, den).inv()?;
        Ok(Self::from_int(ctx, num).mul(&d))
    }

    fn characteristic(&self) -> u64 {
        Self::descriptor(&self.ctx()).characteristic()
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ctx() == other.ctx() {
            Ok(())
        } else {
            Err(mismatch::<Self>(&self.ctx(), &other.ctx()))
        }
    }

    fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add(other))
    }

    fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul(other))
    }
}

pub(crate) fn mismatch<S: Scalar>(a: &S::Ctx, b: &S::Ctx) -> Error {
    Error::DescriptorMismatch(S::descriptor(a).to_string(), S::descriptor(b).to_string())
}

/// Whether a rendered coefficient must be parenthesised before `*t^k`.
pub(crate) fn needs_parens(rendered: &str) -> bool {
    let body = rendered.strip_prefix('-').unwrap_or(rendered);
    body.contains(" + ") || body.contains(" - ") || body.contains('/') && body.contains('(')
}
