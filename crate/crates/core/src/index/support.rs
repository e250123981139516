//! The support table: nonzero coefficients c^{a,b}_{i,j} of
//! Σ_k Δ_{i,k}(t) (P_{k,j}(t(1+ε)) − P_{k,j}(t)), where Δ = adj(ug).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{PolyMatrix, SeriesMatrix};
use crate::poly::{AuxPoly, Monomial, Var};
use crate::ring::Ring;
use crate::scalar::Scalar;
use crate::series::{binomial, Exp, Series};

use super::IndexResult;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportRecord<S: Scalar> {
    /// 1-based row.
    pub i: usize,
    /// 1-based column.
    pub j: usize,
    /// t-exponent.
    pub a: i64,
    /// ε-exponent, at least 1.
    pub b: u32,
    pub c: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupportTable<S: Scalar> {
    ctx: S::Ctx,
    pub n: usize,
    pub d: i64,
    pub nd: i64,
    pub records: Vec<SupportRecord<S>>,
    /// Records with `a` below this bound are complete; `None` when every
    /// record is present.
    pub known_below: Option<i64>,
}

fn scalar_coeff<S: Scalar>(p: &AuxPoly<S>) -> Result<S> {
    p.as_constant()
        .ok_or_else(|| Error::InvalidSubstitution(format!("support needs scalar coefficients, got {p}")))
}

/// Support table of `g = t^-d·ug` in SL_N.
pub fn support_table<S: Scalar>(ug: &SeriesMatrix<S>, d: i64) -> Result<SupportTable<S>> {
    let n = ug.n();
    let nd = n as i64 * d;
    let ctx = ug.ctx().clone();
    let adj = ug.adjugate();
    let mut max_b: i64 = 0;
    for x in ug.entries() {
        for (m, _) in x.terms() {
            if !m.is_integer() || m < Exp::zero() {
                return Err(Error::NegativeExponentPresent(m));
            }
            max_b = max_b.max(m.to_integer());
        }
        if let Some(p) = x.precision().bound() {
            max_b = max_b.max(p.ceil().to_integer() - 1);
        }
    }
    let mut records = Vec::new();
    let mut known_below: Option<i64> = None;
    let mut note_prec = |s: &Series<S>| {
        if let Some(p) = s.precision().bound() {
            let p = p.floor().to_integer();
            known_below = Some(known_below.map_or(p, |k: i64| k.min(p)));
        }
    };
    for b in 1..=max_b.max(0) {
        // Q^(b)_{kj} = Σ_m C(m,b) p_m t^m
        let q: Vec<Vec<Series<S>>> = ug
            .rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let mut out = Series::from_terms(&ctx, std::iter::empty(), x.precision());
                        for (m, c) in x.terms() {
                            let mi = m.to_integer();
                            if mi < b {
                                continue;
                            }
                            let binom = binomial(m, b as u64);
                            let cb = S::from_int(&ctx, binom.numer());
                            if !cb.is_zero() {
                                out = out.add(&Series::monomial(c.scale(&cb), m));
                            }
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                let mut e = Series::zero(&ctx);
                for k in 0..n {
                    let a = adj.entry(i, k);
                    if a.is_zero() || q[k][j].is_zero() {
                        continue;
                    }
                    e = e.add(&a.mul(&q[k][j]));
                }
                note_prec(&e);
                for (a, c) in e.terms() {
                    if !a.is_integer() || a < Exp::zero() {
                        return Err(Error::NegativeExponentPresent(a));
                    }
                    records.push(SupportRecord {
                        i: i + 1,
                        j: j + 1,
                        a: a.to_integer(),
                        b: b as u32,
                        c: scalar_coeff(c)?,
                    });
                }
            }
        }
    }
    records.sort_by_key(|r| (r.i, r.j, r.a, r.b));
    Ok(SupportTable { ctx, n, d, nd, records, known_below })
}

impl<S: Scalar> SupportTable<S> {
    fn require_known(&self, bound: i64) -> Result<()> {
        match self.known_below {
            Some(k) if k < bound => Err(Error::InsufficientPrecision {
                needed: Exp::from_integer(bound),
                available: Exp::from_integer(k),
            }),
            _ => Ok(()),
        }
    }

    /// max{(Nd − a)/b : a < Nd}, or Zero when no record has a < Nd.
    pub fn index(&self) -> Result<IndexResult> {
        self.require_known(self.nd)?;
        let best = self
            .records
            .iter()
            .filter(|r| r.a < self.nd)
            .map(|r| Exp::new(self.nd - r.a, r.b as i64))
            .max();
        Ok(match best {
            Some(r) => IndexResult::Positive(r),
            None => IndexResult::Zero,
        })
    }

    /// The candidate values (Nd − a)/b.
    pub fn candidates(&self) -> Vec<Exp> {
        let mut c: Vec<Exp> = self
            .records
            .iter()
            .filter(|r| r.a < self.nd)
            .map(|r| Exp::new(self.nd - r.a, r.b as i64))
            .collect();
        c.sort();
        c.dedup();
        c
    }

    /// δ_{ij} + Σ_{−Nd+a+rb=0} c u^b.
    pub fn additive_residue(&self, r: Exp) -> Result<PolyMatrix<S>> {
        self.require_known(self.nd)?;
        let ctx = self.ctx()?;
        let mut rows: Vec<Vec<AuxPoly<S>>> = PolyMatrix::identity(&ctx, self.n).rows().to_vec();
        for rec in &self.records {
            let e = Exp::from_integer(rec.a - self.nd) + r * Exp::from_integer(rec.b as i64);
            if e.is_zero() {
                let t = AuxPoly::term(rec.c.clone(), Monomial::var(Var::U, rec.b as i32));
                rows[rec.i - 1][rec.j - 1] = rows[rec.i - 1][rec.j - 1].add(&t);
            }
        }
        PolyMatrix::new(rows)
    }

    /// λ^-d (δ_{ij} + Σ_{a=Nd} c (λ−1)^b).
    pub fn multiplicative_residue(&self) -> Result<PolyMatrix<S>> {
        self.require_known(self.nd + 1)?;
        let ctx = self.ctx()?;
        let lam = AuxPoly::var(&ctx, Var::Lambda);
        let u = lam.sub(&AuxPoly::one(&ctx));
        let mut rows: Vec<Vec<AuxPoly<S>>> = PolyMatrix::identity(&ctx, self.n).rows().to_vec();
        for rec in &self.records {
            if rec.a == self.nd {
                let t = Ring::pow(&u, rec.b as u64).scale(&rec.c);
                rows[rec.i - 1][rec.j - 1] = rows[rec.i - 1][rec.j - 1].add(&t);
            }
        }
        let scale = lam.pow_i(-self.d)?;
        PolyMatrix::new(rows.into_iter().map(|r| r.into_iter().map(|p| p.mul(&scale)).collect()).collect())
    }

    fn ctx(&self) -> Result<S::Ctx> {
        Ok(self.ctx.clone())
    }
}
