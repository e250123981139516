//! Truncated jet groups: substitutions t ↦ a₁t + a₂t² + ⋯ + a_w t^w with a₁
//! a unit, and their action on loop group elements.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::{self, prepare, IndexResult, Prepared};
use crate::matrix::{PolyMatrix, SeriesMatrix};
use crate::poly::{AuxPoly, Var};
use crate::ring::Ring;
use crate::scalar::Scalar;
use crate::series::{Exp, Precision, Series};

/// A jet t ↦ Σ a_i t^i, i = 1..=w.
#[derive(Clone, PartialEq)]
pub struct Jet<S: Scalar> {
    ctx: S::Ctx,
    /// `coeffs[i]` is the coefficient of t^i; `coeffs[0]` is always zero.
    coeffs: Vec<AuxPoly<S>>,
}

impl<S: Scalar> Jet<S> {
    /// Builds a jet from a₁, …, a_w.
    pub fn new(ctx: &S::Ctx, a: Vec<AuxPoly<S>>) -> Result<Self> {
        match a.first() {
            Some(a1) if a1.is_unit() => {}
            Some(a1) => return Err(Error::NonUnitLeadingJetCoefficient(a1.to_string())),
            None => return Err(Error::NonUnitLeadingJetCoefficient("empty jet".into())),
        }
        let mut coeffs = vec![AuxPoly::zero(ctx)];
        coeffs.extend(a);
        Ok(Jet { ctx: ctx.clone(), coeffs })
    }

    pub fn identity(ctx: &S::Ctx, w: usize) -> Self {
        let mut a = vec![AuxPoly::zero(ctx); w.max(1)];
        a[0] = AuxPoly::one(ctx);
        Jet::new(ctx, a).expect("unit")
    }

    /// t ↦ c·t.
    pub fn scaling(c: AuxPoly<S>, w: usize) -> Result<Self> {
        let ctx = c.ctx().clone();
        let mut a = vec![AuxPoly::zero(&ctx); w.max(1)];
        a[0] = c;
        Jet::new(&ctx, a)
    }

    /// φ^r(u): t ↦ t + u t^{r+1}.
    pub fn phi(r: usize, u: AuxPoly<S>, w: usize) -> Self {
        let ctx = u.ctx().clone();
        let mut j = Jet::identity(&ctx, w.max(r + 1));
        j.coeffs[r + 1] = j.coeffs[r + 1].add(&u);
        j.truncated(w)
    }

    /// The generic element of J^level up to order `w`: a₁ is `lead` when
    /// `level = 0` and 1 otherwise, a₂..a_level vanish and the rest are fresh
    /// variables `Jet(offset + i)`.
    pub fn generic(ctx: &S::Ctx, level: usize, w: usize, lead: Var, offset: u16) -> Self {
        let mut j = Jet::identity(ctx, w);
        if level == 0 {
            j.coeffs[1] = AuxPoly::var(ctx, lead);
        }
        for i in (level + 1).max(2)..=w {
            j.coeffs[i] = AuxPoly::var(ctx, Var::Jet(offset + i as u16));
        }
        j
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// a_i, zero past the order.
    pub fn coeff(&self, i: usize) -> AuxPoly<S> {
        self.coeffs.get(i).cloned().unwrap_or_else(|| AuxPoly::zero(&self.ctx))
    }

    pub fn truncated(&self, w: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(w.max(1) + 1, AuxPoly::zero(&self.ctx));
        Jet { ctx: self.ctx.clone(), coeffs }
    }

    /// Whether the jet lies in J^level: a₁ = 1 and a₂ = ⋯ = a_level = 0.
    pub fn in_level(&self, level: usize) -> bool {
        if level == 0 {
            return true;
        }
        self.coeffs[1] == AuxPoly::one(&self.ctx)
            && (2..=level.min(self.order())).all(|i| self.coeffs[i].is_zero())
    }

    /// f ∘ g, truncated at the smaller order.
    pub fn compose(&self, g: &Jet<S>) -> Result<Jet<S>> {
        let w = self.order().min(g.order());
        let inner = &g.coeffs[..=w];
        let mut out = vec![AuxPoly::zero(&self.ctx); w + 1];
        let mut power = vec![AuxPoly::zero(&self.ctx); w + 1];
        power[0] = AuxPoly::one(&self.ctx);
        for k in 1..=w {
            power = trunc_mul(&power, inner, w);
            let ak = &self.coeffs[k];
            if ak.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&power) {
                *o = o.add(&ak.mul(p));
            }
        }
        Jet::new(&self.ctx, out[1..].to_vec())
    }

    /// The compositional inverse.
    pub fn invert(&self) -> Result<Jet<S>> {
        let w = self.order();
        let a1_inv = self.coeffs[1].inverse()?;
        let mut h = Jet::scaling(a1_inv.clone(), w)?;
        // The t^k coefficient of f∘h is a₁·h_k plus terms in h_1..h_{k-1}.
        for k in 2..=w {
            let c = self.compose(&h)?.coeffs[k].clone();
            h.coeffs[k] = c.mul(&a1_inv).neg();
        }
        Ok(h)
    }

    /// σ(t)/t as an exact polynomial series.
    pub fn quotient(&self) -> Series<S> {
        let terms = self.coeffs[1..].iter().enumerate().map(|(i, c)| (Exp::from_integer(i as i64), c.clone()));
        Series::from_terms(&self.ctx, terms, Precision::Exact)
    }

    /// Applies a substitution to every coefficient.
    pub fn substitute(&self, assignments: &BTreeMap<Var, AuxPoly<S>>) -> Result<Jet<S>> {
        let a = self.coeffs[1..].iter().map(|c| c.substitute(assignments)).collect::<Result<Vec<_>>>()?;
        Jet::new(&self.ctx, a)
    }
}

fn trunc_mul<S: Scalar>(a: &[AuxPoly<S>], b: &[AuxPoly<S>], w: usize) -> Vec<AuxPoly<S>> {
    let ctx = a[0].ctx().clone();
    let mut out = vec![AuxPoly::zero(&ctx); w + 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().take(w + 1 - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

impl<S: Scalar> fmt::Display for Jet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| (Exp::from_integer(i as i64), c.clone()));
        let s = Series::from_terms(&self.ctx, terms, Precision::Finite(Exp::from_integer(self.order() as i64 + 1)));
        write!(f, "{s}")
    }
}

impl<S: Scalar> fmt::Debug for Jet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet({self})")
    }
}

/// Entrywise t ↦ σ(t), correct below `target`. Negative exponents go through
/// (σ(t)/t)^-1.
pub fn apply_jet<S: Scalar>(sigma: &Jet<S>, g: &SeriesMatrix<S>, target: Exp) -> Result<SeriesMatrix<S>> {
    let q = sigma.quotient();
    g.map_entries(|x| x.compose_t_times(&q, target))
}

/// g^-1 σ(g) for a jet σ, sized so every exponent below 1 is exact.
struct JetAction<S: Scalar> {
    prep: Prepared<S>,
    inv: SeriesMatrix<S>,
    /// Jet order beyond which coefficients cannot reach t^0.
    order: usize,
    target: Exp,
}

impl<S: Scalar> JetAction<S> {
    fn new(g: &SeriesMatrix<S>) -> Result<Option<Self>> {
        index::with_precision(index::initial_precision(g), |wp| {
            let Some(prep) = prepare(g, wp)? else { return Ok(None) };
            let inv = prep.sl.adjugate();
            let d_inv = (-inv.gauge()?).ceil().to_integer().max(0);
            let order = (prep.gd.d.max(0) + d_inv + 1) as usize;
            let target = Exp::from_integer(1 + d_inv);
            Ok(Some(JetAction { prep, inv, order, target }))
        })
    }

    fn cocycle(&self, sigma: &Jet<S>) -> Result<SeriesMatrix<S>> {
        let moved = apply_jet(sigma, &self.prep.sl, self.target)?;
        self.inv.mul(&moved)
    }

    fn integral_at(&self, level: usize) -> Result<bool> {
        let sigma = Jet::generic(self.prep.sl.ctx(), level, self.order.max(level + 1), Var::Jet(1), 0);
        self.cocycle(&sigma)?.entries_integral()
    }

    /// The t^0 block of g^-1 σ(g), in the original coordinates.
    fn residue_of(&self, sigma: &Jet<S>) -> Result<PolyMatrix<S>> {
        Ok(self.cocycle(sigma)?.specialize_t0()?.top_left(self.prep.n))
    }

    fn generic_residue(&self, level: usize, lead: Var, offset: u16) -> Result<PolyMatrix<S>> {
        let sigma = Jet::generic(self.prep.sl.ctx(), level, self.order.max(level + 1), lead, offset);
        self.residue_of(&sigma)
    }
}

/// Default search bound 2·N·d + 2.
pub fn default_w_max<S: Scalar>(g: &SeriesMatrix<S>) -> usize {
    let d = g.gauge().map(|v| (-v).ceil().to_integer().max(0)).unwrap_or(0);
    (2 * g.n() as i64 * d + 2) as usize
}

/// Smallest w ≤ `w_max` such that g^-1 σ(g) is integral for the generic
/// σ ∈ J^w; 0 for integral g.
pub fn jet_level<S: Scalar>(g: &SeriesMatrix<S>, w_max: usize) -> Result<usize> {
    let Some(action) = JetAction::new(g)? else { return Ok(0) };
    level_of(&action, w_max)
}

fn level_of<S: Scalar>(action: &JetAction<S>, w_max: usize) -> Result<usize> {
    for w in 0..=w_max {
        if action.integral_at(w)? {
            return Ok(w);
        }
    }
    Err(Error::SearchBoundExceeded(w_max))
}

/// How the jet level compares with the index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelRelation {
    /// w = r
    EqualsIndex,
    /// w = r + 1
    IndexPlusOne,
    Other,
}

/// Res on J^w together with its comparison with res(g).
#[derive(Debug, Clone)]
pub struct JetResidue<S: Scalar> {
    pub w: usize,
    pub index: IndexResult,
    pub relation: LevelRelation,
    /// The t^0 block of g^-1 σ(g) for the generic σ ∈ J^w.
    pub res: PolyMatrix<S>,
    pub res_along_phi_matches: bool,
    pub kills_next_level: bool,
    pub trivial_on_2w_plus_1: bool,
}

pub fn jet_residue<S: Scalar>(g: &SeriesMatrix<S>) -> Result<JetResidue<S>> {
    let analysis = index::analyze(g)?;
    let r = match analysis.index {
        IndexResult::Integral => return Err(Error::IntegralInput),
        IndexResult::Positive(r) if !r.is_integer() => return Err(Error::NonIntegralIndex(r.to_string())),
        other => other.value().to_integer() as usize,
    };
    let action = JetAction::new(g)?.ok_or(Error::IntegralInput)?;
    let w = level_of(&action, default_w_max(g))?;
    let relation = if w == r {
        LevelRelation::EqualsIndex
    } else if w == r + 1 {
        LevelRelation::IndexPlusOne
    } else {
        LevelRelation::Other
    };
    let res = action.generic_residue(w, Var::Jet(1), 0)?;
    let ctx = g.ctx().clone();

    let res_along_phi_matches = if w > r {
        false
    } else {
        let mut assign: BTreeMap<Var, AuxPoly<S>> = BTreeMap::new();
        for i in 1..=action.order.max(w + 1) {
            assign.insert(Var::Jet(i as u16), AuxPoly::zero(&ctx));
        }
        if r == 0 {
            assign.insert(Var::Jet(1), AuxPoly::var(&ctx, Var::Lambda));
        } else {
            assign.insert(Var::Jet(1), AuxPoly::one(&ctx));
            assign.insert(Var::Jet(r as u16 + 1), AuxPoly::var(&ctx, Var::U));
        }
        let along = res.map(|p| p.substitute(&assign))?;
        analysis.residue.matrix() == Some(&along)
    };

    let kills_next_level = (w + 2..=action.order.max(w + 2)).all(|i| !res.mentions(Var::Jet(i as u16)))
        && action.generic_residue(w + 1, Var::Jet(1), 0)?.is_identity();
    let trivial_on_2w_plus_1 = action.generic_residue(2 * w + 1, Var::Jet(1), 0)?.is_identity();

    Ok(JetResidue {
        w,
        index: analysis.index,
        relation,
        res,
        res_along_phi_matches,
        kills_next_level,
        trivial_on_2w_plus_1,
    })
}

/// Checks Res(σ∘τ) = Res(τ)·Res(σ) for independent generic σ, τ ∈ J^w. The
/// image is commutative, so the order of the product does not matter.
pub fn residue_is_homomorphism<S: Scalar>(g: &SeriesMatrix<S>, w: usize) -> Result<bool> {
    let Some(action) = JetAction::new(g)? else { return Ok(true) };
    let ctx = g.ctx().clone();
    let order = action.order.max(w + 1);
    let sigma = Jet::generic(&ctx, w, order, Var::Lambda1, 0);
    let tau = Jet::generic(&ctx, w, order, Var::Lambda2, 100);
    let both = action.residue_of(&sigma.compose(&tau)?)?;
    let (rs, rt) = (action.residue_of(&sigma)?, action.residue_of(&tau)?);
    Ok(both == rt.mul(&rs) && both == rs.mul(&rt))
}

/// Whether φ^r(u₁)∘φ^r(u₂) and φ^r(u₁+u₂) have the same J^{r+1}-coset.
pub fn phi_is_additive_mod_next_level<S: Scalar>(ctx: &S::Ctx, r: usize, w: usize) -> Result<bool> {
    let u1 = AuxPoly::<S>::var(ctx, Var::V1);
    let u2 = AuxPoly::var(ctx, Var::V2);
    let lhs = Jet::phi(r, u1.clone(), w).compose(&Jet::phi(r, u2.clone(), w))?;
    let rhs = Jet::phi(r, u1.add(&u2), w);
    Ok(lhs.compose(&rhs.invert()?)?.in_level(r + 1))
}

/// Writes σ ∈ J^level as φ^{s₁}(c₁)∘φ^{s₂}(c₂)∘⋯ with level ≤ s₁ < s₂ < ⋯,
/// up to the order of σ.
pub fn peel<S: Scalar>(sigma: &Jet<S>, level: usize) -> Result<Vec<(usize, AuxPoly<S>)>> {
    if !sigma.in_level(level.max(1)) {
        return Err(Error::InvalidSubstitution(format!("{sigma} is not in level {}", level.max(1))));
    }
    let w = sigma.order();
    let mut rest = sigma.clone();
    let mut out = Vec::new();
    for s in level.max(1)..w {
        let c = rest.coeff(s + 1);
        if c.is_zero() {
            continue;
        }
        let step = Jet::phi(s, c.clone(), w);
        rest = step.invert()?.compose(&rest)?;
        out.push((s, c));
    }
    debug_assert!(rest.in_level(w));
    Ok(out)
}

/// Composes a peeled factorisation back into a jet of order `w`.
pub fn unpeel<S: Scalar>(ctx: &S::Ctx, factors: &[(usize, AuxPoly<S>)], w: usize) -> Result<Jet<S>> {
    let mut acc = Jet::identity(ctx, w);
    for (s, c) in factors {
        acc = acc.compose(&Jet::phi(*s, c.clone(), w))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, PrimeModulus, Rational};
    use num_traits::One;

    fn q(n: i64) -> AuxPoly<Rational> {
        AuxPoly::constant(Rational::integer(n))
    }

    fn unipotent(k: i64) -> SeriesMatrix<Rational> {
        SeriesMatrix::infer(vec![
            vec![Series::one(&()), Series::t_pow(&(), Exp::from_integer(-k))],
            vec![Series::zero(&()), Series::one(&())],
        ])
        .unwrap()
    }

    #[test]
    fn composition_of_phi() {
        for r in 1..=3usize {
            let w = 2 * r + 2;
            let f = Jet::phi(r, AuxPoly::<Rational>::var(&(), Var::V1), w);
            let g = Jet::phi(r, AuxPoly::var(&(), Var::V2), w);
            let c = f.compose(&g).unwrap();
            assert_eq!(c.coeff(r + 1).to_string(), "v1 + v2");
            assert_eq!(c.coeff(2 * r + 1).to_string(), format!("{}*v1*v2", r + 1));
            assert!(c.coeff(r + 2).is_zero() || r == 1);
        }
    }

    #[test]
    fn inverse_and_identity() {
        let lam = AuxPoly::<Rational>::var(&(), Var::Lambda);
        let j = Jet::scaling(lam, 4).unwrap();
        assert_eq!(j.invert().unwrap().coeff(1).to_string(), "l^-1");
        let f = Jet::new(&(), vec![q(2), q(1), q(-3), q(5)]).unwrap();
        let id = Jet::identity(&(), 4);
        assert_eq!(f.compose(&id).unwrap(), f);
        assert_eq!(f.compose(&f.invert().unwrap()).unwrap(), id);
        assert_eq!(f.invert().unwrap().compose(&f).unwrap(), id);
        assert!(matches!(Jet::new(&(), vec![q(0), q(1)]), Err(Error::NonUnitLeadingJetCoefficient(_))));
    }

    #[test]
    fn apply_matches_other_substitutions() {
        let g = unipotent(2);
        let target = Exp::from_integer(6);
        let a = apply_jet(&Jet::phi(1, AuxPoly::<Rational>::var(&(), Var::U), 8), &g, target).unwrap();
        let b = g.subst_sigma(Exp::one(), target).unwrap();
        for (x, y) in a.entries().zip(b.entries()) {
            assert!(x.agrees_below(y, target).unwrap());
        }
        let c = apply_jet(&Jet::scaling(AuxPoly::<Rational>::var(&(), Var::Lambda), 8).unwrap(), &g, target).unwrap();
        let d = g.subst_lambda(Var::Lambda).unwrap();
        for (x, y) in c.entries().zip(d.entries()) {
            assert!(x.agrees_below(y, target).unwrap());
        }
    }

    #[test]
    fn level_and_residue_of_additive_element() {
        for d in 1..=3 {
            let g = unipotent(d);
            let jr = jet_residue(&g).unwrap();
            assert_eq!(jr.w, d as usize);
            assert_eq!(jr.relation, LevelRelation::EqualsIndex);
            assert!(jr.res_along_phi_matches && jr.kills_next_level && jr.trivial_on_2w_plus_1);
            assert!(residue_is_homomorphism(&g, jr.w).unwrap());
        }
    }

    #[test]
    fn level_of_torus_element() {
        for d in 1..=3 {
            let g = SeriesMatrix::<Rational>::infer(vec![vec![Series::t_pow(&(), Exp::from_integer(-d))]]).unwrap();
            let jr = jet_residue(&g).unwrap();
            assert!(jr.w <= 1);
            assert!(jr.res_along_phi_matches, "{jr:?}");
            assert!(residue_is_homomorphism(&g, jr.w).unwrap());
        }
        assert_eq!(jet_level(&unipotent(-1), 4).unwrap(), 0);
    }

    #[test]
    fn phi_additivity_and_peeling() {
        for r in 1..=4 {
            assert!(phi_is_additive_mod_next_level::<Rational>(&(), r, 2 * r + 3).unwrap());
        }
        let ctx = PrimeModulus::new(5).unwrap();
        let c = |n| AuxPoly::constant(Fp::new(n, ctx));
        let sigma = Jet::new(&ctx, vec![c(1), c(0), c(3), c(4), c(1)]).unwrap();
        let parts = peel(&sigma, 2).unwrap();
        assert!(parts.iter().all(|(s, _)| *s >= 2));
        assert_eq!(unpeel(&ctx, &parts, 5).unwrap(), sigma);
    }
}
