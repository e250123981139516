//! Ramification index r(g) and residue res(g).
//!
//! Everything is computed in SL_N; a GL_N input is first embedded as
//! diag(g, det(g)^-1) and the residue is read off the top-left block.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{GaugeDecomposition, Group, PolyMatrix, SeriesMatrix};
use crate::poly::{AuxPoly, Var};
use crate::ring::Ring;
use crate::scalar::Scalar;
use crate::series::Exp;

pub mod laws;
pub mod support;

pub use support::{support_table, SupportRecord, SupportTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexResult {
    /// g ∈ G(A[[t]]); the paper's r = −1.
    Integral,
    Zero,
    Positive(Exp),
}

impl IndexResult {
    pub fn kind(&self) -> &'static str {
        match self {
            IndexResult::Integral => "integral",
            IndexResult::Zero => "zero",
            IndexResult::Positive(_) => "positive",
        }
    }

    /// The index as a rational, with −1 for integral elements.
    pub fn value(&self) -> Exp {
        match self {
            IndexResult::Integral => -Exp::one(),
            IndexResult::Zero => Exp::zero(),
            IndexResult::Positive(r) => *r,
        }
    }

    pub fn positive(&self) -> Option<Exp> {
        match self {
            IndexResult::Positive(r) => Some(*r),
            _ => None,
        }
    }

    /// Multiply a positive index by `d`; other kinds are unchanged.
    pub fn scaled(&self, d: i64) -> Self {
        match self {
            IndexResult::Positive(r) => IndexResult::Positive(r * Exp::from_integer(d)),
            x => *x,
        }
    }
}

impl fmt::Display for IndexResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexResult::Integral => write!(f, "integral"),
            IndexResult::Zero => write!(f, "0"),
            IndexResult::Positive(r) => write!(f, "{r}"),
        }
    }
}

/// res(g): a homomorphism G_a → G in u, or G_m → G in λ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidueHom<S: Scalar> {
    Trivial,
    Additive(PolyMatrix<S>),
    Multiplicative(PolyMatrix<S>),
}

impl<S: Scalar> ResidueHom<S> {
    pub fn kind(&self) -> &'static str {
        match self {
            ResidueHom::Trivial => "trivial",
            ResidueHom::Additive(_) => "additive",
            ResidueHom::Multiplicative(_) => "multiplicative",
        }
    }

    pub fn matrix(&self) -> Option<&PolyMatrix<S>> {
        match self {
            ResidueHom::Trivial => None,
            ResidueHom::Additive(m) | ResidueHom::Multiplicative(m) => Some(m),
        }
    }

    pub fn is_nontrivial(&self) -> bool {
        self.matrix().is_some_and(|m| !m.is_identity())
    }

    /// The homomorphism law, checked as a polynomial identity:
    /// R(v1)·R(v2) = R(v1+v2), resp. R(λ1)·R(λ2) = R(λ1λ2).
    pub fn verify_hom(&self) -> bool {
        let (m, var, a, b) = match self {
            ResidueHom::Trivial => return true,
            ResidueHom::Additive(m) => (m, Var::U, Var::V1, Var::V2),
            ResidueHom::Multiplicative(m) => (m, Var::Lambda, Var::Lambda1, Var::Lambda2),
        };
        let ctx = m.ctx().clone();
        let (pa, pb) = (AuxPoly::var(&ctx, a), AuxPoly::var(&ctx, b));
        let combined = if var == Var::U { pa.add(&pb) } else { pa.mul(&pb) };
        let check = || -> Result<bool> {
            let lhs = m.substitute_var(var, &pa)?.mul(&m.substitute_var(var, &pb)?);
            let rhs = m.substitute_var(var, &combined)?;
            let unit = m.substitute_var(var, &if var == Var::U { AuxPoly::zero(&ctx) } else { AuxPoly::one(&ctx) })?;
            Ok(lhs == rhs && unit.is_identity())
        };
        check().unwrap_or(false)
    }

    pub fn top_left(&self, k: usize) -> Self {
        match self {
            ResidueHom::Trivial => ResidueHom::Trivial,
            ResidueHom::Additive(m) => ResidueHom::Additive(m.top_left(k)),
            ResidueHom::Multiplicative(m) => ResidueHom::Multiplicative(m.top_left(k)),
        }
    }

    /// Precompose with u ↦ img (additive) or λ ↦ img (multiplicative).
    pub fn precompose(&self, img: &AuxPoly<S>) -> Result<Self> {
        Ok(match self {
            ResidueHom::Trivial => ResidueHom::Trivial,
            ResidueHom::Additive(m) => ResidueHom::Additive(m.substitute_var(Var::U, img)?),
            ResidueHom::Multiplicative(m) => ResidueHom::Multiplicative(m.substitute_var(Var::Lambda, img)?),
        })
    }

    /// h^-1 · R · h for a constant invertible h.
    pub fn conjugate(&self, h: &PolyMatrix<S>) -> Result<Self> {
        let hi = h.inverse()?;
        Ok(match self {
            ResidueHom::Trivial => ResidueHom::Trivial,
            ResidueHom::Additive(m) => ResidueHom::Additive(hi.mul(m).mul(h)),
            ResidueHom::Multiplicative(m) => ResidueHom::Multiplicative(hi.mul(m).mul(h)),
        })
    }
}

impl<S: Scalar> fmt::Display for ResidueHom<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueHom::Trivial => write!(f, "trivial"),
            ResidueHom::Additive(m) => write!(f, "u |-> {m}"),
            ResidueHom::Multiplicative(m) => write!(f, "l |-> {m}"),
        }
    }
}

/// A non-integral input brought to SL form: `sl = t^-d·ug`.
#[derive(Debug, Clone)]
pub struct Prepared<S: Scalar> {
    /// Size of the original matrix.
    pub n: usize,
    pub sl: SeriesMatrix<S>,
    pub gd: GaugeDecomposition<S>,
    pub nd: i64,
}

const MAX_WP: i64 = 1 << 12;

/// Default starting working precision for an input.
pub fn initial_precision<S: Scalar>(g: &SeriesMatrix<S>) -> i64 {
    let d = g.gauge().map(|v| (-v).ceil().to_integer().max(0)).unwrap_or(0);
    let n = g.n() as i64 + 1;
    n * d.max(1) + 4
}

/// Runs `f` at increasing working precision until it stops reporting
/// [`Error::InsufficientPrecision`].
pub fn with_precision<T>(start: i64, mut f: impl FnMut(i64) -> Result<T>) -> Result<T> {
    let mut wp = start.max(1);
    loop {
        match f(wp) {
            Err(Error::InsufficientPrecision { .. }) if wp < MAX_WP => wp *= 2,
            other => return other,
        }
    }
}

/// Brings `g` to SL form, or returns `None` when g ∈ G(A[[t]]).
pub fn prepare<S: Scalar>(g: &SeriesMatrix<S>, wp: i64) -> Result<Option<Prepared<S>>> {
    if let Some(e) = g.entries().flat_map(|x| x.terms().map(|(e, _)| e)).find(|e| !e.is_integer()) {
        return Err(Error::FractionalExponent(e));
    }
    if g.is_integral()? {
        return Ok(None);
    }
    let sl = match g.group() {
        Group::SL => g.clone(),
        Group::GL => g.embed_gl_sl(Exp::from_integer(wp))?,
    };
    let gd = sl.gauge_decompose()?;
    let nd = sl.n() as i64 * gd.d;
    Ok(Some(Prepared { n: g.n(), sl, gd, nd }))
}

impl<S: Scalar> Prepared<S> {
    pub fn support(&self) -> Result<SupportTable<S>> {
        support_table(&self.gd.ug, self.gd.d)
    }

    /// sl^-1 (the adjugate, since det = 1).
    fn inverse(&self) -> SeriesMatrix<S> {
        self.sl.adjugate()
    }

    /// The t^0 block of g^-1 σ_r(g) computed by substitution.
    pub fn sigma_residue(&self, r: Exp) -> Result<PolyMatrix<S>> {
        let inv = self.inverse();
        let target = -inv.gauge()? + Exp::one();
        let h = inv.mul(&self.sl.subst_sigma(r, target)?)?;
        h.specialize_t0()
    }

    /// The t^0 block of g^-1 g(λt).
    pub fn lambda_residue(&self) -> Result<PolyMatrix<S>> {
        let h = self.inverse().mul(&self.sl.subst_lambda(Var::Lambda)?)?;
        h.specialize_t0()
    }
}

/// Everything the CLI reports about one input.
#[derive(Debug, Clone)]
pub struct Analysis<S: Scalar> {
    /// d in g = t^-d·ug for the input itself.
    pub gauge: i64,
    pub index: IndexResult,
    pub residue: ResidueHom<S>,
    pub table: Option<SupportTable<S>>,
    /// Residue from the closed form in the support table.
    pub closed_form: Option<ResidueHom<S>>,
    pub hom: bool,
    pub nontrivial: bool,
    pub paths_agree: bool,
    pub working_precision: i64,
}

pub fn analyze<S: Scalar>(g: &SeriesMatrix<S>) -> Result<Analysis<S>> {
    analyze_from(g, initial_precision(g))
}

pub fn analyze_from<S: Scalar>(g: &SeriesMatrix<S>, start: i64) -> Result<Analysis<S>> {
    with_precision(start, |wp| analyze_at(g, wp))
}

fn analyze_at<S: Scalar>(g: &SeriesMatrix<S>, wp: i64) -> Result<Analysis<S>> {
    let gauge = g.gauge_decompose()?.d;
    let prep = match prepare(g, wp)? {
        None => {
            return Ok(Analysis {
                gauge,
                index: IndexResult::Integral,
                residue: ResidueHom::Trivial,
                table: None,
                closed_form: None,
                hom: true,
                nontrivial: true,
                paths_agree: true,
                working_precision: wp,
            })
        }
        Some(p) => p,
    };
    let table = prep.support()?;
    let index = table.index()?;
    let (full, closed) = match index {
        IndexResult::Positive(r) => (
            ResidueHom::Additive(prep.sigma_residue(r)?),
            ResidueHom::Additive(table.additive_residue(r)?),
        ),
        _ => (
            ResidueHom::Multiplicative(prep.lambda_residue()?),
            ResidueHom::Multiplicative(table.multiplicative_residue()?),
        ),
    };
    let paths_agree = full == closed;
    let residue = full.top_left(prep.n);
    let closed = closed.top_left(prep.n);
    let nontrivial = residue.is_nontrivial();
    let hom = residue.verify_hom();
    Ok(Analysis {
        gauge,
        index,
        residue,
        table: Some(table),
        closed_form: Some(closed),
        hom,
        nontrivial,
        paths_agree,
        working_precision: wp,
    })
}

pub fn index<S: Scalar>(g: &SeriesMatrix<S>) -> Result<IndexResult> {
    with_precision(initial_precision(g), |wp| match prepare(g, wp)? {
        None => Ok(IndexResult::Integral),
        Some(p) => p.support()?.index(),
    })
}

/// res(g), failing with [`Error::TrivialResidue`] if it comes out trivial
/// for a non-integral g.
pub fn residue<S: Scalar>(g: &SeriesMatrix<S>) -> Result<ResidueHom<S>> {
    let a = analyze(g)?;
    if a.index != IndexResult::Integral && !a.nontrivial {
        return Err(Error::TrivialResidue);
    }
    Ok(a.residue)
}

/// Whether r belongs to Σ(g), i.e. g^-1 σ_r(g) is integral.
pub fn in_sigma_set<S: Scalar>(g: &SeriesMatrix<S>, r: Exp) -> Result<bool> {
    crate::oracle::member(g, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Dual, Fp, PrimeModulus, Rational};
    use crate::series::Series;
    use crate::ring::Ring;

    fn t<S: Scalar>(ctx: &S::Ctx, k: i64) -> Series<S> {
        Series::t_pow(ctx, Exp::from_integer(k))
    }

    fn unipotent<S: Scalar>(x: Series<S>) -> SeriesMatrix<S> {
        let ctx = x.ctx().clone();
        SeriesMatrix::infer(vec![vec![Series::one(&ctx), x], vec![Series::zero(&ctx), Series::one(&ctx)]]).unwrap()
    }

    #[test]
    fn multiplicative_torus_element() {
        for d in 1..=3 {
            let g = SeriesMatrix::<Rational>::infer(vec![vec![t(&(), -d)]]).unwrap();
            let a = analyze(&g).unwrap();
            assert_eq!(a.index, IndexResult::Zero);
            let m = a.residue.matrix().unwrap();
            assert_eq!(m.entry(0, 0).to_string(), format!("l^-{d}"));
            assert!(a.hom && a.nontrivial && a.paths_agree);
        }
    }

    #[test]
    fn additive_group_over_rationals() {
        for d in 1..=3 {
            let a = analyze(&unipotent(t::<Rational>(&(), -d))).unwrap();
            assert_eq!(a.index, IndexResult::Positive(Exp::from_integer(d)));
            assert_eq!(a.residue.matrix().unwrap().entry(0, 1).to_string(), format!("-{d}*u").replace("-1*u", "-u"));
            assert!(a.hom && a.paths_agree);
        }
    }

    #[test]
    fn additive_group_char_p() {
        for p in [2u64, 3, 5] {
            let ctx = PrimeModulus::new(p).unwrap();
            let a = analyze(&unipotent(t::<Fp>(&ctx, -(p as i64)))).unwrap();
            assert_eq!(a.index, IndexResult::Positive(Exp::one()));
            let e = a.residue.matrix().unwrap().entry(0, 1).clone();
            let expect = AuxPoly::var(&ctx, Var::U).pow_i(p as i64).unwrap().neg();
            assert_eq!(e, expect);
            assert!(a.hom && a.paths_agree);
        }
    }

    #[test]
    fn dual_number_unit() {
        let eps = Dual::<Rational>::epsilon(&()).unwrap();
        let g = Series::one(&()).add(&Series::monomial(AuxPoly::constant(eps), -Exp::one()));
        let m = SeriesMatrix::infer(vec![vec![g]]).unwrap();
        let a = analyze(&m).unwrap();
        assert_eq!(a.index, IndexResult::Positive(Exp::one()));
        assert_eq!(a.residue.matrix().unwrap().entry(0, 0).to_string(), "1 - e*u");
        assert!(a.hom && a.nontrivial && a.paths_agree);
    }

    #[test]
    fn integral_input() {
        let m = unipotent(t::<Rational>(&(), 2));
        assert_eq!(index(&m).unwrap(), IndexResult::Integral);
        assert_eq!(residue(&m).unwrap(), ResidueHom::Trivial);
    }
}
