//! Sparse polynomials over a [`Scalar`] ring in the auxiliary variables u,
//! v1, v2, λ (Laurent), λ1, λ2 (Laurent), X and the generic jet
//! coefficients a1, a2, … (a1 Laurent).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalar::{needs_parens, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U,
    V1,
    V2,
    Lambda,
    Lambda1,
    Lambda2,
    X,
    /// Generic jet coefficient a_i.
    Jet(u16),
}

impl Var {
    /// Variables that may carry negative exponents.
    pub fn is_laurent(self) -> bool {
        matches!(self, Var::Lambda | Var::Lambda1 | Var::Lambda2 | Var::Jet(1))
    }

    pub fn name(self) -> String {
        match self {
            Var::U => "u".into(),
            Var::V1 => "v1".into(),
            Var::V2 => "v2".into(),
            Var::Lambda => "l".into(),
            Var::Lambda1 => "l1".into(),
            Var::Lambda2 => "l2".into(),
            Var::X => "x".into(),
            Var::Jet(i) => format!("a{i}"),
        }
    }
}

/// A power product; exponents are nonzero and variables sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, i32); 2]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, e: i32) -> Self {
        let mut m = Monomial::one();
        if e != 0 {
            m.0.push((v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| *e as i64).sum()
    }

    pub fn factors(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out: SmallVec<[(Var, i32); 2]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &rhs.0);
        while i < a.len() || j < b.len() {
            let pick = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match pick {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial(out)
    }

    /// Inverse, defined when only Laurent variables occur.
    pub fn inverse(&self) -> Option<Self> {
        if self.0.iter().all(|(v, _)| v.is_laurent()) {
            Some(Monomial(self.0.iter().map(|(v, e)| (*v, -e)).collect()))
        } else {
            None
        }
    }

    fn render(&self) -> String {
        self.0
            .iter()
            .map(|(v, e)| if *e == 1 { v.name() } else { format!("{}^{e}", v.name()) })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Graded order: total degree first, then the monomial with the larger
/// exponent in the earliest variable comes first (`v1^2 < v1*v2 < v2^2`).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (0, 0);
            loop {
                let (va, ea) = match a.get(i) {
                    Some(x) => *x,
                    None => (Var::Jet(u16::MAX), 0),
                };
                let (vb, eb) = match b.get(j) {
                    Some(x) => *x,
                    None => (Var::Jet(u16::MAX), 0),
                };
                if i >= a.len() && j >= b.len() {
                    return Ordering::Equal;
                }
                match va.cmp(&vb) {
                    Ordering::Equal => {
                        if ea != eb {
                            return eb.cmp(&ea);
                        }
                        i += 1;
                        j += 1;
                    }
                    // `a` has the earlier variable, `b` has exponent 0 there.
                    Ordering::Less => return 0.cmp(&ea),
                    Ordering::Greater => return eb.cmp(&0),
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in the auxiliary variables, zero coefficients never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct AuxPoly<S: Scalar> {
    ctx: S::Ctx,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> AuxPoly<S> {
    pub fn zero(ctx: &S::Ctx) -> Self {
        AuxPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &S::Ctx) -> Self {
        Self::constant(S::one(ctx))
    }

    pub fn constant(c: S) -> Self {
        let mut p = Self::zero(&c.ctx());
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(ctx: &S::Ctx, v: Var) -> Self {
        Self::term(S::one(ctx), Monomial::var(v, 1))
    }

    pub fn term(c: S, m: Monomial) -> Self {
        let mut p = Self::zero(&c.ctx());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(|| S::zero(&self.ctx))
    }

    /// The coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero(&self.ctx)),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.0.iter().map(|(v, _)| *v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) != 0)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map_coeffs(|x| x.mul(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&S) -> S) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        AuxPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn same(&self, rhs: &Self) {
        if self.ctx != rhs.ctx {
            panic!("{}", crate::scalar::mismatch::<S>(&self.ctx, &rhs.ctx));
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if self.ctx != rhs.ctx {
            return Err(crate::scalar::mismatch::<S>(&self.ctx, &rhs.ctx));
        }
        Ok(self.add(rhs))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.ctx != rhs.ctx {
            return Err(crate::scalar::mismatch::<S>(&self.ctx, &rhs.ctx));
        }
        Ok(self.mul(rhs))
    }

    /// Whether every coefficient is nilpotent.
    pub fn is_nilpotent(&self) -> bool {
        self.terms.values().all(|c| c.is_nilpotent())
    }

    /// Splits a unit as `c·m·(1 + n)` with `c` a unit scalar, `m` an
    /// invertible monomial and `n` nilpotent.
    fn unit_split(&self) -> Option<(S, Monomial)> {
        let mut units = self.terms.iter().filter(|(_, c)| c.is_unit());
        let (m, c) = units.next()?;
        if units.next().is_some() {
            return None;
        }
        m.inverse()?;
        Some((c.clone(), m.clone()))
    }

    pub fn is_unit(&self) -> bool {
        self.unit_split().is_some()
    }

    pub fn inverse(&self) -> Result<Self> {
        let (c, m) = self.unit_split().ok_or_else(|| Error::NotAUnit(self.to_string()))?;
        let lead_inv = Self::term(c.inv()?, m.inverse().expect("checked"));
        let n = self.mul(&lead_inv).sub(&Self::one(&self.ctx));
        // (1 + n)^-1 = Σ (-n)^i, finite since n is nilpotent.
        let mut acc = Self::one(&self.ctx);
        let mut power = Self::one(&self.ctx);
        let neg_n = n.neg();
        for _ in 1..S::nil_index(&self.ctx).max(1) {
            power = power.mul(&neg_n);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.mul(&lead_inv))
    }

    /// `p^e` for integer `e`, negative powers via [`AuxPoly::inverse`].
    pub fn pow_i(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(Ring::pow(self, e as u64))
        } else {
            Ok(Ring::pow(&self.inverse()?, e.unsigned_abs()))
        }
    }

    /// Ring homomorphism sending each listed variable to a polynomial;
    /// unlisted variables are fixed. Images of Laurent variables must be unit
    /// monomials `c·m`.
    pub fn substitute(&self, assignments: &BTreeMap<Var, AuxPoly<S>>) -> Result<Self> {
        for (v, img) in assignments {
            if v.is_laurent() && self.mentions(*v) {
                let ok = img.terms.len() == 1 && img.unit_split().is_some();
                if !ok {
                    return Err(Error::NonUnitLambdaImage(format!("{} -> {img}", v.name())));
                }
            }
        }
        let mut cache: BTreeMap<(Var, i32), AuxPoly<S>> = BTreeMap::new();
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut fixed = Monomial::one();
            let mut prod = Self::constant(c.clone());
            for &(v, e) in m.factors() {
                match assignments.get(&v) {
                    None => fixed = fixed.mul(&Monomial::var(v, e)),
                    Some(img) => {
                        let pw = match cache.get(&(v, e)) {
                            Some(p) => p.clone(),
                            None => {
                                let p = img.pow_i(e as i64)?;
                                cache.insert((v, e), p.clone());
                                p
                            }
                        };
                        prod = prod.mul(&pw);
                    }
                }
            }
            out = out.add(&prod.mul_monomial(&fixed));
        }
        Ok(out)
    }

    pub fn substitute_var(&self, v: Var, img: &AuxPoly<S>) -> Result<Self> {
        self.substitute(&BTreeMap::from([(v, img.clone())]))
    }

    /// Evaluation at scalar values; every occurring variable must be assigned.
    pub fn specialize_scalar(&self, assignments: &BTreeMap<Var, S>) -> Result<S> {
        let mut acc = S::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut x = c.clone();
            for &(v, e) in m.factors() {
                let val = assignments
                    .get(&v)
                    .ok_or_else(|| Error::InvalidSubstitution(format!("no value for {}", v.name())))?;
                let pw = if e >= 0 {
                    Ring::pow(val, e as u64)
                } else {
                    if !val.is_unit() {
                        return Err(Error::NonUnitLambdaImage(format!("{} -> {val}", v.name())));
                    }
                    Ring::pow(&val.inv()?, e.unsigned_abs() as u64)
                };
                x = x.mul(&pw);
            }
            acc = acc.add(&x);
        }
        Ok(acc)
    }

    /// Largest exponent of `v`, or `None` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }
}

impl<S: Scalar> fmt::Display for AuxPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, body) = if needs_parens(&s) {
                (false, format!("({s})"))
            } else {
                match s.strip_prefix('-') {
                    Some(b) => (true, b.to_string()),
                    None => (false, s),
                }
            };
            let term = if m.is_one() {
                body
            } else if body == "1" {
                m.render()
            } else {
                format!("{body}*{}", m.render())
            };
            match (i, neg) {
                (0, false) => write!(f, "{term}")?,
                (0, true) => write!(f, "-{term}")?,
                (_, false) => write!(f, " + {term}")?,
                (_, true) => write!(f, " - {term}")?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for AuxPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> Ring for AuxPoly<S> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.ctx)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.ctx)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.same(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.same(rhs);
        let mut out = Self::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Dual, Fp, PrimeModulus, Rational};

    type P = AuxPoly<Rational>;

    fn u() -> P {
        P::var(&(), Var::U)
    }
    fn q(n: i64) -> P {
        P::constant(Rational::integer(n))
    }

    #[test]
    fn one_plus_u_times_one_minus_u() {
        let p = q(1).add(&u()).mul(&q(1).sub(&u()));
        assert_eq!(p.to_string(), "1 - u^2");
    }

    #[test]
    fn lambda_times_inverse() {
        let l = P::var(&(), Var::Lambda);
        assert_eq!(l.mul(&l.inverse().unwrap()), q(1));
        assert_eq!(l.pow_i(-2).unwrap().to_string(), "l^-2");
    }

    #[test]
    fn freshmans_dream_in_char_two() {
        let ctx = PrimeModulus::new(2).unwrap();
        let s = AuxPoly::<Fp>::var(&ctx, Var::V1).add(&AuxPoly::var(&ctx, Var::V2));
        assert_eq!(Ring::pow(&s, 2).to_string(), "v1^2 + v2^2");
    }

    #[test]
    fn graded_order_rendering() {
        let p = q(1).sub(&u().scale(&Rational::integer(3))).add(&u().mul(&u()));
        assert_eq!(p.to_string(), "1 - 3*u + u^2");
        let s = P::var(&(), Var::V1).add(&P::var(&(), Var::V2));
        assert_eq!(Ring::pow(&s, 2).to_string(), "v1^2 + 2*v1*v2 + v2^2");
    }

    #[test]
    fn substitute_examples() {
        let s = P::var(&(), Var::V1).add(&P::var(&(), Var::V2));
        let p = u().mul(&u()).substitute_var(Var::U, &s).unwrap();
        assert_eq!(p.to_string(), "v1^2 + 2*v1*v2 + v2^2");

        let l12 = P::var(&(), Var::Lambda1).mul(&P::var(&(), Var::Lambda2));
        let ld = P::var(&(), Var::Lambda).pow_i(3).unwrap();
        assert_eq!(ld.substitute_var(Var::Lambda, &l12).unwrap().to_string(), "l1^3*l2^3");

        assert!(u().substitute_var(Var::U, &q(0)).unwrap().is_zero());
    }

    #[test]
    fn laurent_image_must_be_unit_monomial() {
        let l = P::var(&(), Var::Lambda);
        let bad = q(1).add(&u());
        assert!(matches!(l.substitute_var(Var::Lambda, &bad), Err(Error::NonUnitLambdaImage(_))));
        assert!(matches!(l.substitute_var(Var::Lambda, &q(0)), Err(Error::NonUnitLambdaImage(_))));
    }

    #[test]
    fn specialize_examples() {
        let one_minus_u = q(1).sub(&u());
        let at = |v: Var, x: i64| BTreeMap::from([(v, Rational::integer(x))]);
        assert!(one_minus_u.specialize_scalar(&at(Var::U, 1)).unwrap().is_zero());
        let l3 = P::var(&(), Var::Lambda).pow_i(3).unwrap();
        assert_eq!(l3.specialize_scalar(&at(Var::Lambda, 2)).unwrap(), Rational::integer(8));
        let du = u().scale(&Rational::integer(-3));
        assert_eq!(du.specialize_scalar(&at(Var::U, 1)).unwrap(), Rational::integer(-3));
        let linv = P::var(&(), Var::Lambda).pow_i(-1).unwrap();
        assert!(linv.specialize_scalar(&at(Var::Lambda, 0)).is_err());
    }

    #[test]
    fn nilpotent_perturbation_inverts() {
        let eps = Dual::<Rational>::epsilon(&()).unwrap();
        let l = AuxPoly::<Dual<Rational>>::var(&(), Var::Lambda);
        let p = l.add(&AuxPoly::term(eps, Monomial::var(Var::U, 1)));
        let inv = p.inverse().unwrap();
        assert_eq!(p.mul(&inv), AuxPoly::one(&()));
        assert!(!AuxPoly::<Dual<Rational>>::var(&(), Var::U).is_unit());
    }

    #[test]
    fn difference_with_itself_is_structurally_zero() {
        let p = q(2).add(&u()).mul(&P::var(&(), Var::Lambda).pow_i(-1).unwrap());
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.sub(&p), P::zero(&()));
    }
}
