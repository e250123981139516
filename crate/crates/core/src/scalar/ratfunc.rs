use std::fmt;

use num_bigint::BigInt;

use super::{RingDescriptor, Scalar};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// An element of the rational function field F(a) over a base field F, kept as
/// a reduced fraction with monic denominator so that equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc<F: Scalar> {
    ctx: F::Ctx,
    /// Coefficients in ascending degree, no trailing zeros.
    num: Vec<F>,
    /// Monic, no trailing zeros, never empty.
    den: Vec<F>,
}

type Dense<F> = Vec<F>;

fn trim<F: Scalar>(mut p: Dense<F>) -> Dense<F> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn padd<F: Scalar>(a: &[F], b: &[F]) -> Dense<F> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(out)
}

fn pmul<F: Scalar>(ctx: &F::Ctx, a: &[F], b: &[F]) -> Dense<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(ctx); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(out)
}

fn pscale<F: Scalar>(a: &[F], c: &F) -> Dense<F> {
    trim(a.iter().map(|x| x.mul(c)).collect())
}

/// Euclidean division over the field F.
fn pdivrem<F: Scalar>(ctx: &F::Ctx, a: &[F], b: &[F]) -> (Dense<F>, Dense<F>) {
    let lead_inv = b.last().expect("division by zero polynomial").inv().expect("field coefficient");
    let mut rem: Dense<F> = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quo = vec![F::zero(ctx); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap().mul(&lead_inv);
        for (i, y) in b.iter().enumerate() {
            rem[shift + i] = rem[shift + i].sub(&c.mul(y));
        }
        quo[shift] = c;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quo), rem)
}

fn monic<F: Scalar>(p: Dense<F>) -> Dense<F> {
    match p.last() {
        Some(l) => {
            let li = l.inv().expect("field coefficient");
            pscale(&p, &li)
        }
        None => p,
    }
}

fn pgcd<F: Scalar>(ctx: &F::Ctx, a: &[F], b: &[F]) -> Dense<F> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let (_, r) = pdivrem(ctx, &x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

impl<F: Scalar> RatFunc<F> {
    fn reduced(ctx: F::Ctx, num: Dense<F>, den: Dense<F>) -> Self {
        let num = trim(num);
        let den = trim(den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return RatFunc { num, den: vec![F::one(&ctx)], ctx };
        }
        let g = pgcd(&ctx, &num, &den);
        let (mut n, _) = pdivrem(&ctx, &num, &g);
        let (mut d, _) = pdivrem(&ctx, &den, &g);
        let li = d.last().unwrap().inv().expect("field coefficient");
        n = pscale(&n, &li);
        d = pscale(&d, &li);
        RatFunc { ctx, num: n, den: d }
    }

    pub fn constant(c: F) -> Self {
        let ctx = c.ctx();
        Self::reduced(ctx.clone(), vec![c], vec![F::one(&ctx)])
    }

    /// The polynomial with the given ascending coefficients.
    pub fn polynomial(ctx: &F::Ctx, coeffs: Vec<F>) -> Self {
        Self::reduced(ctx.clone(), coeffs, vec![F::one(ctx)])
    }

    pub fn numerator(&self) -> &[F] {
        &self.num
    }

    pub fn denominator(&self) -> &[F] {
        &self.den
    }

    fn same(&self, rhs: &Self) {
        if self.ctx != rhs.ctx {
            panic!("{}", super::mismatch::<Self>(&self.ctx, &rhs.ctx));
        }
    }
}

fn render_dense<F: Scalar>(p: &[F]) -> String {
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (k, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let (neg, body) = match s.strip_prefix('-') {
            Some(b) => (true, b.to_string()),
            None => (false, s),
        };
        let mono = match k {
            0 => String::new(),
            1 => "a".to_string(),
            _ => format!("a^{k}"),
        };
        let term = if mono.is_empty() {
            body
        } else if body == "1" {
            mono
        } else {
            format!("{body}*{mono}")
        };
        parts.push((neg, term));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, term)) in parts.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => out.push_str(&term),
            (0, true) => {
                out.push('-');
                out.push_str(&term)
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&term)
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&term)
            }
        }
    }
    out
}

impl<F: Scalar> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = render_dense(&self.num);
        if self.den.len() == 1 {
            return write!(f, "{n}");
        }
        let d = render_dense(&self.den);
        let wrap = |s: String, multi: bool| if multi { format!("({s})") } else { s };
        let n_multi = self.num.iter().filter(|c| !c.is_zero()).count() > 1;
        let d_multi = self.den.iter().filter(|c| !c.is_zero()).count() > 1 || d.contains('*');
        write!(f, "{}/{}", wrap(n, n_multi), wrap(d, d_multi))
    }
}

impl<F: Scalar> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Scalar> Ring for RatFunc<F> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.ctx)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.ctx)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.same(rhs);
        if self.den == rhs.den {
            return Self::reduced(self.ctx.clone(), padd(&self.num, &rhs.num), self.den.clone());
        }
        let n = padd(&pmul(&self.ctx, &self.num, &rhs.den), &pmul(&self.ctx, &rhs.num, &self.den));
        Self::reduced(self.ctx.clone(), n, pmul(&self.ctx, &self.den, &rhs.den))
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.same(rhs);
        Self::reduced(
            self.ctx.clone(),
            pmul(&self.ctx, &self.num, &rhs.num),
            pmul(&self.ctx, &self.den, &rhs.den),
        )
    }
    fn neg(&self) -> Self {
        RatFunc {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|c| c.neg()).collect(),
            den: self.den.clone(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

impl<F: Scalar> Scalar for RatFunc<F> {
    type Ctx = F::Ctx;

    fn ctx(&self) -> F::Ctx {
        self.ctx.clone()
    }

    fn descriptor(ctx: &F::Ctx) -> RingDescriptor {
        RingDescriptor::RationalFunction { base: Box::new(F::descriptor(ctx)), var: "a".into() }
    }

    fn zero(ctx: &F::Ctx) -> Self {
        RatFunc { ctx: ctx.clone(), num: Vec::new(), den: vec![F::one(ctx)] }
    }

    fn from_int(ctx: &F::Ctx, n: &BigInt) -> Self {
        Self::reduced(ctx.clone(), vec![F::from_int(ctx, n)], vec![F::one(ctx)])
    }

    fn is_unit(&self) -> bool {
        !self.num.is_empty()
    }

    fn is_nilpotent(&self) -> bool {
        self.num.is_empty()
    }

    fn nil_index(_: &F::Ctx) -> u32 {
        1
    }

    fn inv(&self) -> Result<Self> {
        if self.num.is_empty() {
            return Err(Error::NotAUnit("0".into()));
        }
        Ok(Self::reduced(self.ctx.clone(), self.den.clone(), self.num.clone()))
    }

    fn transcendental(ctx: &F::Ctx) -> Option<Self> {
        Some(Self::polynomial(ctx, vec![F::zero(ctx), F::one(ctx)]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, PrimeModulus};

    fn ctx() -> PrimeModulus {
        PrimeModulus::new(5).unwrap()
    }

    fn a() -> RatFunc<Fp> {
        RatFunc::transcendental(&ctx()).unwrap()
    }

    #[test]
    fn transcendental_is_a_unit() {
        assert!(a().is_unit());
        assert_eq!(a().mul(&a().inv().unwrap()), RatFunc::one(&ctx()));
    }

    #[test]
    fn fractions_reduce() {
        let one = RatFunc::<Fp>::one(&ctx());
        let x = a().add(&one);
        // (a^2 - 1)/(a + 1) = a - 1
        let q = a().mul(&a()).sub(&one).mul(&x.inv().unwrap());
        assert_eq!(q, a().sub(&one));
        assert_eq!(q.to_string(), "4 + a");
    }

    #[test]
    fn renders_fractions() {
        let one = RatFunc::<Fp>::one(&ctx());
        let q = one.mul(&a().add(&one).inv().unwrap());
        assert_eq!(q.to_string(), "1/(1 + a)");
        assert_eq!(a().inv().unwrap().to_string(), "1/a");
    }

    #[test]
    fn characteristic_is_the_base() {
        assert_eq!(a().characteristic(), 5);
        assert_eq!(RatFunc::<Fp>::descriptor(&ctx()).to_string(), "fp:5(a)");
    }
}
