//! Truncated Puiseux series in t^(1/n) with [`AuxPoly`] coefficients and an
//! explicit precision, plus the substitutions t ↦ t(1+u t^r), t ↦ λt and
//! t ↦ t^d.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{AuxPoly, Monomial, Var};
use crate::ring::Ring;
use crate::scalar::Scalar;

/// Exponents of t are rationals with machine-word numerator and denominator.
pub type Exp = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    /// All omitted coefficients are zero.
    Exact,
    /// Coefficients at exponents ≥ the bound are unknown.
    Finite(Exp),
}

impl Precision {
    pub fn min(self, other: Precision) -> Precision {
        match (self, other) {
            (Precision::Exact, p) | (p, Precision::Exact) => p,
            (Precision::Finite(a), Precision::Finite(b)) => Precision::Finite(a.min(b)),
        }
    }

    pub fn bound(self) -> Option<Exp> {
        match self {
            Precision::Exact => None,
            Precision::Finite(p) => Some(p),
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Exact => write!(f, "exact"),
            Precision::Finite(p) => write!(f, "O({})", render_t_pow(*p)),
        }
    }
}

/// `1`, `t`, `t^k` or `t^(p/q)`.
pub(crate) fn render_t_pow(e: Exp) -> String {
    if e.is_zero() {
        "1".into()
    } else if e.is_one() {
        "t".into()
    } else {
        format!("t^{}", render_exp(e))
    }
}

pub(crate) fn render_exp(e: Exp) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

/// A series `Σ c_k t^(k/denom)`, known below `prec` (in units of 1/denom).
#[derive(Clone)]
pub struct Series<S: Scalar> {
    ctx: S::Ctx,
    denom: i64,
    terms: BTreeMap<i64, AuxPoly<S>>,
    prec: Option<i64>,
}

fn to_units(e: Exp, denom: i64) -> Option<i64> {
    let x = e * Exp::from_integer(denom);
    x.is_integer().then(|| x.to_integer())
}

fn ceil_units(e: Exp, denom: i64) -> i64 {
    (e * Exp::from_integer(denom)).ceil().to_integer()
}

impl<S: Scalar> Series<S> {
    pub fn zero(ctx: &S::Ctx) -> Self {
        Series { ctx: ctx.clone(), denom: 1, terms: BTreeMap::new(), prec: None }
    }

    /// The unknown series O(t^p).
    pub fn big_o(ctx: &S::Ctx, p: Exp) -> Self {
        let denom = *p.denom();
        Series { ctx: ctx.clone(), denom, terms: BTreeMap::new(), prec: Some(*p.numer()) }
    }

    pub fn one(ctx: &S::Ctx) -> Self {
        Self::constant(AuxPoly::one(ctx))
    }

    pub fn scalar(c: S) -> Self {
        Self::constant(AuxPoly::constant(c))
    }

    pub fn constant(c: AuxPoly<S>) -> Self {
        Self::monomial(c, Exp::zero())
    }

    pub fn monomial(c: AuxPoly<S>, e: Exp) -> Self {
        let mut s = Series { ctx: c.ctx().clone(), denom: *e.denom(), terms: BTreeMap::new(), prec: None };
        if !c.is_zero() {
            s.terms.insert(*e.numer(), c);
        }
        s
    }

    pub fn t_pow(ctx: &S::Ctx, e: Exp) -> Self {
        Self::monomial(AuxPoly::one(ctx), e)
    }

    pub fn from_terms(
        ctx: &S::Ctx,
        terms: impl IntoIterator<Item = (Exp, AuxPoly<S>)>,
        prec: Precision,
    ) -> Self {
        let terms: Vec<(Exp, AuxPoly<S>)> = terms.into_iter().collect();
        let mut denom = prec.bound().map_or(1, |p| *p.denom());
        for (e, _) in &terms {
            denom = denom.lcm(e.denom());
        }
        let mut out = Series { ctx: ctx.clone(), denom, terms: BTreeMap::new(), prec: None };
        out.prec = prec.bound().map(|p| to_units(p, denom).expect("aligned"));
        for (e, c) in terms {
            let k = to_units(e, denom).expect("aligned");
            out.add_at(k, c);
        }
        out.normalized()
    }

    pub fn from_scalars(ctx: &S::Ctx, terms: impl IntoIterator<Item = (Exp, S)>, prec: Precision) -> Self {
        Self::from_terms(ctx, terms.into_iter().map(|(e, c)| (e, AuxPoly::constant(c))), prec)
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn precision(&self) -> Precision {
        match self.prec {
            None => Precision::Exact,
            Some(p) => Precision::Finite(Exp::new(p, self.denom)),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exp, &AuxPoly<S>)> + '_ {
        self.terms.iter().map(move |(k, c)| (Exp::new(*k, self.denom), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_at(&mut self, k: i64, c: AuxPoly<S>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    fn normalized(mut self) -> Self {
        if let Some(p) = self.prec {
            self.terms.retain(|k, _| *k < p);
        }
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    /// Re-express over a denominator that is a multiple of the current one.
    fn with_denom(&self, denom: i64) -> Self {
        if denom == self.denom {
            return self.clone();
        }
        let f = denom / self.denom;
        assert_eq!(f * self.denom, denom, "denominator must be a multiple");
        Series {
            ctx: self.ctx.clone(),
            denom,
            terms: self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect(),
            prec: self.prec.map(|p| p * f),
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

    /// Forget everything at exponents ≥ `p`.
    pub fn truncate(&self, p: Exp) -> Self {
        let denom = self.denom.lcm(p.denom());
        let mut out = self.with_denom(denom);
        let pk = to_units(p, denom).expect("aligned");
        out.prec = Some(out.prec.map_or(pk, |q| q.min(pk)));
        out.normalized()
    }

    pub fn with_precision(&self, p: Precision) -> Self {
        match p {
            Precision::Exact => self.clone(),
            Precision::Finite(b) => self.truncate(b),
        }
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn gauge(&self) -> Result<Exp> {
        match (self.terms.keys().next(), self.prec) {
            (Some(k), _) => Ok(Exp::new(*k, self.denom)),
            (None, None) => Err(Error::ZeroSeries),
            (None, Some(p)) => Err(Error::InsufficientPrecision {
                needed: Exp::new(p + 1, self.denom),
                available: Exp::new(p, self.denom),
            }),
        }
    }

    /// A lower bound for the valuation: the first known term, or the
    /// precision when nothing is known; `None` for the exact zero.
    pub fn valuation_bound(&self) -> Option<Exp> {
        match (self.terms.keys().next(), self.prec) {
            (Some(k), _) => Some(Exp::new(*k, self.denom)),
            (None, Some(p)) => Some(Exp::new(p, self.denom)),
            (None, None) => None,
        }
    }

    fn check_known(&self, e: Exp) -> Result<()> {
        if let Some(p) = self.prec {
            let pe = Exp::new(p, self.denom);
            if e >= pe {
                return Err(Error::InsufficientPrecision { needed: e, available: pe });
            }
        }
        Ok(())
    }

    /// Coefficient of t^e.
    pub fn coeff(&self, e: Exp) -> Result<AuxPoly<S>> {
        self.check_known(e)?;
        Ok(match to_units(e, self.denom) {
            Some(k) => self.terms.get(&k).cloned().unwrap_or_else(|| AuxPoly::zero(&self.ctx)),
            None => AuxPoly::zero(&self.ctx),
        })
    }

    /// The coefficient of t^0, after checking that no negative exponent occurs.
    pub fn specialize_t0(&self) -> Result<AuxPoly<S>> {
        if let Some(e) = self.min_negative_exponent() {
            return Err(Error::NegativeExponentPresent(e));
        }
        self.coeff(Exp::zero())
    }

    pub fn min_negative_exponent(&self) -> Option<Exp> {
        self.terms.keys().next().filter(|k| **k < 0).map(|k| Exp::new(*k, self.denom))
    }

    /// Whether the series lies in A[[t^(1/n)]]; undecidable if only
    /// coefficients at exponents below 0 could be missing.
    pub fn is_integral(&self) -> Result<bool> {
        if self.min_negative_exponent().is_some() {
            return Ok(false);
        }
        match self.prec {
            Some(p) if p <= 0 => Err(Error::InsufficientPrecision {
                needed: Exp::new(1, self.denom),
                available: Exp::new(p, self.denom),
            }),
            _ => Ok(true),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&AuxPoly<S>) -> Result<AuxPoly<S>>) -> Result<Self> {
        let mut out = Series { terms: BTreeMap::new(), ..self.clone() };
        for (k, c) in &self.terms {
            out.add_at(*k, f(c)?);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &AuxPoly<S>) -> Self {
        let mut out = Series { terms: BTreeMap::new(), ..self.clone() };
        for (k, x) in &self.terms {
            out.add_at(*k, x.mul(c));
        }
        out
    }

    /// Multiply by t^e.
    pub fn shift(&self, e: Exp) -> Self {
        let denom = self.denom.lcm(e.denom());
        let s = self.with_denom(denom);
        let de = to_units(e, denom).expect("aligned");
        Series {
            ctx: s.ctx,
            denom,
            terms: s.terms.into_iter().map(|(k, c)| (k + de, c)).collect(),
            prec: s.prec.map(|p| p + de),
        }
    }

    /// Whether the two series agree at every exponent below `e`.
    pub fn agrees_below(&self, other: &Self, e: Exp) -> Result<bool> {
        let d = self.sub(other);
        for (x, _) in d.terms() {
            if x < e {
                return Ok(false);
            }
        }
        if let Some(p) = d.prec {
            let pe = Exp::new(p, d.denom);
            if pe < e {
                return Err(Error::InsufficientPrecision { needed: e, available: pe });
            }
        }
        Ok(true)
    }

    /// Multiplicative inverse, correct below `target` (or exact when the
    /// inverse is a finite sum).
    pub fn invert(&self, target: Exp) -> Result<Self> {
        let ctx = self.ctx.clone();
        let lead = self.terms.iter().find(|(_, c)| !c.is_nilpotent());
        let (k0, c0) = match lead {
            Some((k, c)) => (*k, c.clone()),
            None => {
                return match self.prec {
                    Some(p) => Err(Error::InsufficientPrecision {
                        needed: Exp::new(p + 1, self.denom),
                        available: Exp::new(p, self.denom),
                    }),
                    None if self.terms.is_empty() => Err(Error::ZeroSeries),
                    None => Err(Error::NonUnitLeadingCoefficient(self.to_string())),
                };
            }
        };
        if !c0.is_unit() {
            return Err(Error::NonUnitLeadingCoefficient(c0.to_string()));
        }
        let n = self.denom;
        let mut unit_part = Series { terms: BTreeMap::new(), ..self.clone() };
        let mut nil_part = Series { terms: BTreeMap::new(), prec: None, ..self.clone() };
        for (k, c) in &self.terms {
            if *k < k0 {
                nil_part.terms.insert(*k, c.clone());
            } else {
                unit_part.terms.insert(*k, c.clone());
            }
        }
        let v_u = Exp::new(k0, n);
        if nil_part.terms.is_empty() {
            return unit_part.invert_unit_leading(&c0, target);
        }
        let v_n = nil_part.valuation_bound().expect("nonempty");
        let depth = S::nil_index(&ctx).max(1) as i64;
        let inner_target = target + Exp::from_integer(depth - 1) * (v_u - v_n);
        let u_inv = unit_part.invert_unit_leading(&c0, inner_target)?;
        let x = nil_part.mul(&u_inv).neg();
        let mut acc = Series::one(&ctx);
        let mut power = Series::one(&ctx);
        for _ in 1..depth {
            power = power.mul(&x);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        let out = u_inv.mul(&acc);
        Ok(if out.is_exact() { out } else { out.truncate(target) })
    }

    /// Inverse of a series whose first coefficient is a unit.
    fn invert_unit_leading(&self, c0: &AuxPoly<S>, target: Exp) -> Result<Self> {
        let n = self.denom;
        let (&k0, _) = self.terms.iter().next().expect("nonempty");
        let c0_inv = c0.inverse()?;
        // h = t^-v c0^-1 f - 1, with positive valuation.
        let h: BTreeMap<i64, AuxPoly<S>> = self
            .terms
            .iter()
            .filter(|(k, _)| **k != k0)
            .map(|(k, c)| (k - k0, c.mul(&c0_inv)))
            .collect();
        // (1+h)^-1 is known below P - v, hence f^-1 below P - 2v.
        let from_input = self.prec.map(|p| p - 2 * k0);
        let want = ceil_units(target, n) + k0;
        let limit = match from_input {
            Some(p) => (p + k0).min(want),
            None => want,
        };
        // b_j for j < limit_rel where t^-v b has exponent j - v < target.
        let len = limit.max(0);
        let h_span = h.keys().next_back().copied().unwrap_or(0);
        let mut exact = self.prec.is_none();
        // Exact inputs get a few extra terms so a polynomial inverse is recognised.
        let run = if exact { len.max(2 * h_span + 2) } else { len };
        let mut b: Vec<AuxPoly<S>> = Vec::with_capacity(run as usize);
        let mut zero_run = 0i64;
        let mut stopped_early = false;
        for j in 0..run {
            let bj = if j == 0 {
                AuxPoly::one(&self.ctx)
            } else {
                let mut acc = AuxPoly::zero(&self.ctx);
                for (i, hi) in h.range(1..=j) {
                    let prev = &b[(j - i) as usize];
                    if !prev.is_zero() {
                        acc = acc.add(&hi.mul(prev));
                    }
                }
                acc.neg()
            };
            zero_run = if bj.is_zero() { zero_run + 1 } else { 0 };
            b.push(bj);
            if exact && j > 0 && zero_run >= h_span.max(1) {
                stopped_early = true;
                break;
            }
        }
        if !stopped_early {
            exact = false;
        }
        let mut out = Series { ctx: self.ctx.clone(), denom: n, terms: BTreeMap::new(), prec: None };
        for (j, bj) in b.into_iter().enumerate() {
            out.add_at(j as i64 - k0, bj.mul(&c0_inv));
        }
        if !exact {
            out.prec = Some(limit - k0);
        }
        Ok(out.normalized())
    }

    /// `f^e`; negative powers use [`Series::invert`] with the given target.
    pub fn pow_i(&self, e: i64, target: Exp) -> Result<Self> {
        if e >= 0 {
            return Ok(Ring::pow(self, e as u64));
        }
        let v = self.gauge()?;
        // f^-1 is needed below target - (|e|-1)·v(f^-1).
        let extra = Exp::from_integer(e.abs() - 1) * v;
        let inv = self.invert(target + extra)?;
        Ok(Ring::pow(&inv, e.unsigned_abs()))
    }

    /// σ_r: t ↦ t(1 + u t^r). Terms are produced below `target`; the result
    /// stays exact when nothing had to be dropped.
    pub fn subst_sigma(&self, r: Exp, target: Exp) -> Result<Self> {
        self.subst_sigma_var(r, Var::U, target)
    }

    pub fn subst_sigma_var(&self, r: Exp, var: Var, target: Exp) -> Result<Self> {
        if r < Exp::zero() {
            return Err(Error::InvalidSubstitution(format!("sigma_r needs r >= 0, got {r}")));
        }
        let denom = self.denom.lcm(r.denom());
        let mut out = Series { ctx: self.ctx.clone(), denom, terms: BTreeMap::new(), prec: None };
        let mut dropped = false;
        let tk = ceil_units(target, denom);
        let rk = to_units(r, denom).expect("aligned");
        for (q, c) in self.terms() {
            let qk = to_units(q, denom).expect("aligned");
            let finite = q.is_integer() && q >= Exp::zero();
            if rk == 0 && !finite {
                return Err(Error::InvalidSubstitution(format!(
                    "sigma_0 of t^{} is not a polynomial substitution",
                    render_exp(q)
                )));
            }
            let qb = BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()));
            let mut binom = BigRational::one();
            let mut j: i64 = 0;
            loop {
                if binom.is_zero() {
                    break;
                }
                let ek = qk + j * rk;
                if ek >= tk {
                    dropped = true;
                    break;
                }
                let cj = S::from_ratio(&self.ctx, binom.numer(), binom.denom())?;
                if !cj.is_zero() {
                    let coeff = c.mul_monomial(&Monomial::var(var, j as i32)).scale(&cj);
                    out.add_at(ek, coeff);
                }
                binom = binom * (&qb - BigRational::from_integer(j.into())) / BigRational::from_integer((j + 1).into());
                j += 1;
            }
        }
        let f_prec = self.with_denom(denom).prec;
        out.prec = match (f_prec, dropped) {
            (Some(p), true) => Some(p.min(tk)),
            (Some(p), false) => Some(p),
            (None, true) => Some(tk),
            (None, false) => None,
        };
        Ok(out.normalized())
    }

    /// t ↦ λt on an integer-exponent series, λ the given Laurent variable.
    pub fn subst_lambda(&self, var: Var) -> Result<Self> {
        let mut out = Series { terms: BTreeMap::new(), ..self.clone() };
        for (e, c) in self.terms() {
            if !e.is_integer() {
                return Err(Error::FractionalExponent(e));
            }
            let k = e.to_integer() as i32;
            out.add_at(to_units(e, self.denom).unwrap(), c.mul_monomial(&Monomial::var(var, k)));
        }
        Ok(out)
    }

    /// φ_d: t ↦ t^d.
    pub fn subst_power(&self, d: u64) -> Self {
        let d = d as i64;
        Series {
            ctx: self.ctx.clone(),
            denom: self.denom,
            terms: self.terms.iter().map(|(k, c)| (k * d, c.clone())).collect(),
            prec: self.prec.map(|p| p * d),
        }
    }

    /// f(t·q(t)) for an integer-exponent f and a series q with unit constant
    /// term, correct below `target`.
    pub fn compose_t_times(&self, q: &Self, target: Exp) -> Result<Self> {
        let mut out = Series::zero(&self.ctx);
        if let Some(p) = self.prec {
            out = Series::big_o(&self.ctx, Exp::new(p, self.denom));
        }
        let mut q_inv: Option<Series<S>> = None;
        for (e, c) in self.terms() {
            if !e.is_integer() {
                return Err(Error::FractionalExponent(e));
            }
            let k = e.to_integer();
            let rel = target - e;
            let factor = if k >= 0 {
                pow_below(q, k as u64, rel)
            } else {
                let need = rel;
                let inv = match &q_inv {
                    Some(s) if s.prec.is_none_or(|p| Exp::new(p, s.denom) >= need) => s.clone(),
                    _ => {
                        let s = q.invert(need)?;
                        q_inv = Some(s.clone());
                        s
                    }
                };
                pow_below(&inv, k.unsigned_abs(), rel)
            };
            out = out.add(&factor.scale(c).shift(e));
        }
        if out.is_exact() {
            Ok(out)
        } else {
            let p = Exp::new(out.prec.unwrap(), out.denom);
            Ok(out.truncate(p.min(target)))
        }
    }

    /// Entrywise Frobenius on coefficients: c ↦ c^(p^e).
    pub fn coeff_pow(&self, k: u64) -> Self {
        let mut out = Series { terms: BTreeMap::new(), ..self.clone() };
        for (x, c) in &self.terms {
            out.add_at(*x, Ring::pow(c, k));
        }
        out
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.values().flat_map(|c| c.variables()).collect();
        vs.sort();
        vs.dedup();
        vs
    }
}

impl<S: Scalar> PartialEq for Series<S> {
    fn eq(&self, other: &Self) -> bool {
        if self.ctx != other.ctx {
            return false;
        }
        let d = self.denom.lcm(&other.denom);
        let (a, b) = (self.with_denom(d), other.with_denom(d));
        a.prec == b.prec && a.terms == b.terms
    }
}

impl<S: Scalar> fmt::Display for Series<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let mono = if e.is_zero() { String::new() } else { render_t_pow(e) };
            let s = c.to_string();
            let multi = c.len() > 1 || crate::scalar::needs_parens(&s);
            let (neg, body) = if multi {
                (false, format!("({s})"))
            } else {
                match s.strip_prefix('-') {
                    Some(b) => (true, b.to_string()),
                    None => (false, s),
                }
            };
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}*{mono}")
            };
            match (first, neg) {
                (true, false) => write!(f, "{term}")?,
                (true, true) => write!(f, "-{term}")?,
                (false, false) => write!(f, " + {term}")?,
                (false, true) => write!(f, " - {term}")?,
            }
            first = false;
        }
        if let Some(p) = self.prec {
            let o = format!("O({})", render_t_pow(Exp::new(p, self.denom)));
            if first {
                write!(f, "{o}")?;
            } else {
                write!(f, " + {o}")?;
            }
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Series<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> Ring for Series<S> {
    fn zero_like(&self) -> Self {
        Series::zero(&self.ctx)
    }
    fn one_like(&self) -> Self {
        Series::one(&self.ctx)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.same(rhs);
        let d = self.denom.lcm(&rhs.denom);
        let mut out = self.with_denom(d);
        let b = rhs.with_denom(d);
        out.prec = match (out.prec, b.prec) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        for (k, c) in b.terms {
            out.add_at(k, c);
        }
        out.normalized()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.same(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Series::zero(&self.ctx);
        }
        let d = self.denom.lcm(&rhs.denom);
        let a = self.with_denom(d);
        let b = rhs.with_denom(d);
        let va = a.terms.keys().next().copied().or(a.prec).expect("nonzero");
        let vb = b.terms.keys().next().copied().or(b.prec).expect("nonzero");
        let prec = match (a.prec, b.prec) {
            (Some(pa), Some(pb)) => Some((pa + vb).min(pb + va)),
            (Some(pa), None) => Some(pa + vb),
            (None, Some(pb)) => Some(pb + va),
            (None, None) => None,
        };
        let mut out = Series { ctx: self.ctx.clone(), denom: d, terms: BTreeMap::new(), prec };
        for (i, x) in &a.terms {
            for (j, y) in &b.terms {
                let k = i + j;
                if prec.is_some_and(|p| k >= p) {
                    break;
                }
                out.add_at(k, x.mul(y));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Series {
            ctx: self.ctx.clone(),
            denom: self.denom,
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
            prec: self.prec,
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_none()
    }
}

/// Generalized binomial coefficient C(q, j) for rational q.
/// `q^k` with every intermediate product cut at `bound`.
fn pow_below<S: Scalar>(q: &Series<S>, k: u64, bound: Exp) -> Series<S> {
    let mut acc = Series::one(q.ctx()).truncate(bound);
    for _ in 0..k {
        acc = acc.mul(q).truncate(bound);
    }
    acc
}

pub fn binomial(q: Exp, j: u64) -> BigRational {
    let qb = BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()));
    let mut acc = BigRational::one();
    for i in 0..j {
        acc = acc * (&qb - BigRational::from_integer(BigInt::from(i))) / BigRational::from_integer(BigInt::from(i + 1));
    }
    acc
}
