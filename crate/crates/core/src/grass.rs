//! Desk-scale affine Grassmannian: Cartan coweights, μ-cell membership and
//! the closed-form indices of minuscule, quasi-minuscule and rank-one cells.

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::{self, IndexResult, ResidueHom};
use crate::linalg::{nullspace, pick_independent, require_field};
use crate::matrix::{Group, PolyMatrix, SeriesMatrix};
use crate::poly::{AuxPoly, Monomial, Var};
use crate::ring::Ring;
use crate::scalar::Scalar;
use crate::series::{Exp, Series};

/// Exponents of a diagonal t^μ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Coweight(pub Vec<i64>);

impl Coweight {
    /// Sorted decreasingly.
    pub fn dominant(mut mu: Vec<i64>) -> Self {
        mu.sort_unstable_by(|a, b| b.cmp(a));
        Coweight(mu)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// ⟨μ, α_ij⟩ = μ_i − μ_j.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.0[i] - self.0[j]
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn t_power<S: Scalar>(&self, ctx: &S::Ctx) -> SeriesMatrix<S> {
        let m = SeriesMatrix::t_power_diagonal(ctx, &self.0);
        if self.total() == 0 {
            m.with_group(Group::SL)
        } else {
            m
        }
    }
}


/// The dominant μ with g ∈ G(k[[t]])·t^μ·G(k[[t]]), by Smith reduction over
/// k[[t]].
pub fn cartan_coweight<S: Scalar>(g: &SeriesMatrix<S>) -> Result<Coweight> {
    require_field::<S>(g.ctx())?;
    index::with_precision(index::initial_precision(g), |wp| smith_exponents(g, wp))
}

fn smith_exponents<S: Scalar>(g: &SeriesMatrix<S>, wp: i64) -> Result<Coweight> {
    let n = g.n();
    let mut m: Vec<Vec<Series<S>>> = g.rows().to_vec();
    let mut mu = Vec::with_capacity(n);
    for k in 0..n {
        // Pivot on an entry of least valuation. Entries that cancelled down
        // to a bare O(t^P) only bound the valuation from below; they are
        // harmless unless they could undercut the pivot.
        let mut best: Option<(Exp, usize, usize)> = None;
        let mut unknown: Option<Exp> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if x.num_terms() == 0 {
                    if let Some(p) = x.valuation_bound() {
                        unknown = Some(unknown.map_or(p, |u| u.min(p)));
                    }
                } else {
                    let v = x.gauge()?;
                    if best.is_none_or(|(b, _, _)| v < b) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let (v, pi, pj) = match (best, unknown) {
            (Some(b), Some(u)) if u <= b.0 => {
                return Err(Error::InsufficientPrecision { needed: b.0 + 1, available: u })
            }
            (Some(b), _) => b,
            (None, Some(u)) => return Err(Error::InsufficientPrecision { needed: u + 1, available: u }),
            (None, None) => return Err(Error::NotInvertible),
        };
        if !v.is_integer() {
            return Err(Error::FractionalExponent(v));
        }
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        let inv = m[k][k].invert(Exp::from_integer(wp))?;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].mul(&inv);
            for j in k + 1..n {
                let delta = f.mul(&m[k][j]);
                m[i][j] = m[i][j].sub(&delta);
            }
            m[i][k] = Series::zero(g.ctx());
        }
        mu.push(v.to_integer());
    }
    Ok(Coweight::dominant(mu))
}

fn constant_coeff<S: Scalar>(x: &Series<S>, e: i64) -> Result<S> {
    let c = x.coeff(Exp::from_integer(e))?;
    c.as_constant()
        .or_else(|| c.is_zero().then(|| S::zero(x.ctx())))
        .ok_or_else(|| Error::InvalidSubstitution(format!("coefficient {c} is not a constant")))
}

/// Looks for a constant h ∈ G(k) with (h·t^μ)^-1·g ∈ G(k[[t]]). Works over
/// y = h^-1, for which "t^-μ·y·g integral" is a linear condition.
pub fn solve_cell_membership<S: Scalar>(g: &SeriesMatrix<S>, mu: &Coweight) -> Result<Option<PolyMatrix<S>>> {
    let ctx = g.ctx().clone();
    require_field::<S>(&ctx)?;
    let n = g.n();
    if mu.0.len() != n {
        return Err(Error::DimensionError(format!("coweight of length {} for a {n}x{n} matrix", mu.0.len())));
    }
    let low = g.gauge()?.floor().to_integer();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|a, b| mu.0[*b].cmp(&mu.0[*a]));
    let mut rows: Vec<Option<Vec<S>>> = vec![None; n];
    let mut chosen: Vec<Vec<S>> = Vec::new();
    for &i in &order {
        // Row i of y·g must vanish below t^{μ_i}.
        let mut eqs = Vec::new();
        for j in 0..n {
            for e in low..mu.0[i] {
                let eq = (0..n).map(|l| constant_coeff(g.entry(l, j), e)).collect::<Result<Vec<S>>>()?;
                if eq.iter().any(|x| !x.is_zero()) {
                    eqs.push(eq);
                }
            }
        }
        let pool = nullspace(&ctx, &eqs, n)?;
        match pick_independent(&chosen, &pool)? {
            Some(v) => {
                chosen.push(v.clone());
                rows[i] = Some(v);
            }
            None => return Ok(None),
        }
    }
    let mut y: Vec<Vec<AuxPoly<S>>> = rows
        .into_iter()
        .map(|r| r.expect("filled").into_iter().map(AuxPoly::constant).collect())
        .collect();
    if g.group() == Group::SL {
        let det = PolyMatrix::new(y.clone())?.det().as_constant().ok_or(Error::NotInvertible)?;
        let s = det.inv()?;
        y[0] = y[0].iter().map(|x| x.scale(&s)).collect();
    }
    let y = PolyMatrix::new(y)?;
    let k = mu.t_power::<S>(&ctx).inverse(Exp::zero())?.mul(&y.to_series())?.mul(g)?;
    let k = SeriesMatrix::new(k.into_rows(), Group::GL)?;
    if !k.is_integral()? {
        return Ok(None);
    }
    Ok(Some(y.inverse()?))
}

/// The decomposition promised for index-0 elements: `Some(h)` iff r(g) = 0,
/// with h·t^μ·k = g for an integral k.
pub fn cell_membership_index_zero<S: Scalar>(g: &SeriesMatrix<S>, mu: &Coweight) -> Result<Option<PolyMatrix<S>>> {
    require_field::<S>(g.ctx())?;
    if index::index(g)? != IndexResult::Zero {
        return Ok(None);
    }
    solve_cell_membership(g, mu)?.map(Some).ok_or(Error::LinearSystemInconsistent)
}

/// det(X·I − res(g)(λ)) = Π(X − λ^{μ_i}) for an index-0 g with Cartan μ.
pub fn char_poly_identity<S: Scalar>(g: &SeriesMatrix<S>) -> Result<bool> {
    let ctx = g.ctx().clone();
    let mu = cartan_coweight(g)?;
    let res = match index::residue(g)? {
        ResidueHom::Multiplicative(m) => m,
        other => return Err(Error::InvalidSubstitution(format!("expected a multiplicative residue, got {}", other.kind()))),
    };
    let x = AuxPoly::var(&ctx, Var::X);
    let n = res.n();
    let shifted: Vec<Vec<AuxPoly<S>>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { x.sub(res.entry(i, j)) } else { res.entry(i, j).neg() }).collect())
        .collect();
    let lhs = PolyMatrix::new(shifted)?.det();
    let mut rhs = AuxPoly::one(&ctx);
    for &m in &mu.0 {
        let lam = AuxPoly::term(S::one(&ctx), Monomial::var(Var::Lambda, m as i32));
        rhs = rhs.mul(&x.sub(&lam));
    }
    Ok(lhs == rhs)
}

/// Cells whose index the paper computes in closed form.
#[derive(Debug, Clone, PartialEq)]
pub enum CellKind<S: Scalar> {
    /// Every ⟨μ,α⟩ ≤ 1; the point is t^μ itself.
    Minuscule,
    /// A single root γ with ⟨μ,γ⟩ = 2; the point is u_γ(t·x)·t^μ.
    QuasiMinuscule { x: S },
    /// Rank one with ⟨μ,α⟩ ≥ 2; the point is u_α(P(t))·t^μ, `p[i-1]` the
    /// coefficient of t^i.
    RankOne { p: Vec<S> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellPoint<S: Scalar> {
    pub ctx: S::Ctx,
    pub mu: Coweight,
    pub kind: CellKind<S>,
}

impl<S: Scalar> CellPoint<S> {
    fn unsupported(&self, why: &str) -> Error {
        Error::UnsupportedCellType(format!("{why} for mu = {:?}", self.mu.0))
    }

    /// Positive roots (i, j), i < j, paired with μ.
    fn pairings(&self) -> Vec<(usize, usize, i64)> {
        let n = self.mu.0.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.push((i, j, self.mu.pairing(i, j)));
            }
        }
        out
    }

    fn check(&self) -> Result<()> {
        if !self.mu.is_dominant() {
            return Err(self.unsupported("coweight not dominant"));
        }
        let big: Vec<_> = self.pairings().into_iter().filter(|p| p.2 >= 2).collect();
        match &self.kind {
            CellKind::Minuscule if big.is_empty() => Ok(()),
            CellKind::QuasiMinuscule { .. } if big.len() == 1 && big[0].2 == 2 => Ok(()),
            CellKind::RankOne { p } if self.mu.0.len() == 2 && big.len() == 1 => {
                if p.len() as i64 > big[0].2 - 1 {
                    Err(self.unsupported("deg P must stay below <mu, alpha>"))
                } else {
                    Ok(())
                }
            }
            _ => Err(self.unsupported("cell type does not match the coweight")),
        }
    }

    /// The root carrying the unipotent factor.
    fn root(&self) -> Option<(usize, usize, i64)> {
        self.pairings().into_iter().find(|p| p.2 >= 2)
    }

    pub fn assemble(&self) -> Result<SeriesMatrix<S>> {
        self.check()?;
        let ctx = &self.ctx;
        let n = self.mu.0.len();
        let mut rows = SeriesMatrix::identity(ctx, n).into_rows();
        let entry = match &self.kind {
            CellKind::Minuscule => None,
            CellKind::QuasiMinuscule { x } => Some(Series::scalar(x.clone()).shift(Exp::from_integer(1))),
            CellKind::RankOne { p } => {
                let terms = p.iter().enumerate().map(|(i, c)| (Exp::from_integer(i as i64 + 1), c.clone()));
                Some(Series::from_scalars(ctx, terms, crate::series::Precision::Exact))
            }
        };
        if let (Some(e), Some((i, j, _))) = (entry, self.root()) {
            rows[i][j] = e;
        }
        let u = SeriesMatrix::new(rows, Group::SL)?;
        let g = u.mul(&self.mu.t_power(ctx))?;
        Ok(if self.mu.total() == 0 { g.with_group(Group::SL) } else { g.with_group(Group::GL) })
    }

    /// The index predicted by the closed forms.
    pub fn predicted_index(&self) -> Result<IndexResult> {
        self.check()?;
        if self.mu.0.iter().all(|m| *m == self.mu.0[0]) {
            return Ok(IndexResult::Integral);
        }
        match &self.kind {
            CellKind::Minuscule => Ok(IndexResult::Zero),
            CellKind::QuasiMinuscule { x } if x.is_zero() => Ok(IndexResult::Zero),
            CellKind::QuasiMinuscule { .. } => {
                let (_, _, m) = self.root().expect("checked");
                Ok(IndexResult::Positive(Exp::from_integer(m - 1)))
            }
            CellKind::RankOne { p } => {
                let (_, _, m) = self.root().expect("checked");
                let char_p = S::descriptor(&self.ctx).characteristic();
                // P(t) − P(t(1+ut^r)) has the terms C(i,k)·x_i·u^k·t^{i+kr};
                // the first k with C(i,k) ≠ 0 is p^{v_p(i)}.
                let mut best: Option<Exp> = None;
                for (idx, x) in p.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let i = idx as i64 + 1;
                    let k = if char_p == 0 { 1 } else { p_part(i, char_p as i64) };
                    let r = Exp::new(m - i, k);
                    best = Some(best.map_or(r, |b| b.max(r)));
                }
                Ok(best.map_or(IndexResult::Zero, IndexResult::Positive))
            }
        }
    }
}

/// Largest power of p dividing i.
fn p_part(mut i: i64, p: i64) -> i64 {
    let mut out = 1;
    while i != 0 && i % p == 0 {
        i /= p;
        out *= p;
    }
    out
}

/// Prediction for a cell point, failing with
/// [`Error::UnsupportedCellType`] outside the three closed-form families.
pub fn cell_index_formulas<S: Scalar>(point: &CellPoint<S>) -> Result<IndexResult> {
    point.predicted_index()
}

/// On the rank-one family, whether "r(u_α(P)·t^μ) = 0 ⟺ P = 0" holds for
/// this P.
pub fn index_zero_iff_p_zero<S: Scalar>(ctx: &S::Ctx, mu: &Coweight, p: &[S]) -> Result<bool> {
    let point = CellPoint { ctx: ctx.clone(), mu: mu.clone(), kind: CellKind::RankOne { p: p.to_vec() } };
    let g = point.assemble()?;
    let zero = index::index(&g)? == IndexResult::Zero;
    Ok(zero == p.iter().all(|x| x.is_zero()))
}

/// Rank-one coweight with ⟨μ,α⟩ = m: (m/2, −m/2) in SL₂ for even m, and
/// ((m+1)/2, (1−m)/2) in GL₂ otherwise.
pub fn rank_one_coweight(m: i64) -> Coweight {
    let top = Integer::div_floor(&(m + 1), &2);
    Coweight(vec![top, top - m])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Dual, Fp, PrimeModulus, Rational};

    fn q(n: i64) -> Rational {
        Rational::integer(n)
    }

    fn upper(x: i64) -> SeriesMatrix<Rational> {
        let t = |k| Series::t_pow(&(), Exp::from_integer(k));
        SeriesMatrix::infer(vec![vec![t(1), Series::scalar(q(x))], vec![Series::zero(&()), t(-1)]]).unwrap()
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(cartan_coweight(&SeriesMatrix::<Rational>::identity(&(), 3)).unwrap(), Coweight(vec![0, 0, 0]));
        let d = Coweight(vec![-1, 1]).t_power::<Rational>(&());
        assert_eq!(cartan_coweight(&d).unwrap(), Coweight(vec![1, -1]));
        assert_eq!(cartan_coweight(&upper(3)).unwrap(), Coweight(vec![1, -1]));
        let eps = Dual::<Rational>::epsilon(&()).unwrap();
        let g = SeriesMatrix::infer(vec![vec![Series::scalar(eps.add(&Dual::one(&())))]]).unwrap();
        assert!(matches!(cartan_coweight(&g), Err(Error::NotAField(_))));
    }

    #[test]
    fn membership_for_index_zero_and_not() {
        let mu = Coweight(vec![1, -1]);
        let g = mu.t_power::<Rational>(&());
        let h = cell_membership_index_zero(&g, &mu).unwrap().unwrap();
        assert!(h.is_identity());
        assert_eq!(cell_membership_index_zero(&upper(1), &mu).unwrap(), None);
        assert_eq!(solve_cell_membership(&upper(1), &mu).unwrap(), None);
    }

    #[test]
    fn negative_diagonal_example_decomposes() {
        // [[t^-1, 1], [0, t]] has index 0 and Cartan coweight (1, -1).
        let t = |k| Series::t_pow(&(), Exp::from_integer(k));
        let g = SeriesMatrix::<Rational>::infer(vec![vec![t(-1), Series::one(&())], vec![Series::zero(&()), t(1)]]).unwrap();
        let mu = cartan_coweight(&g).unwrap();
        assert_eq!(mu, Coweight(vec![1, -1]));
        let h = cell_membership_index_zero(&g, &mu).unwrap().unwrap();
        let k = mu.t_power::<Rational>(&()).inverse(Exp::zero()).unwrap()
            .mul(&h.inverse().unwrap().to_series()).unwrap()
            .mul(&g).unwrap();
        assert!(k.is_integral().unwrap());
        assert!(char_poly_identity(&g).unwrap());
    }

    #[test]
    fn closed_forms() {
        let ctx = PrimeModulus::new(5).unwrap();
        let f = |n| Fp::new(n, ctx);
        let mini = CellPoint { ctx: (), mu: Coweight(vec![1, 0]), kind: CellKind::<Rational>::Minuscule };
        assert_eq!(mini.predicted_index().unwrap(), IndexResult::Zero);
        assert_eq!(index::index(&mini.assemble().unwrap()).unwrap(), IndexResult::Zero);
        let quasi = CellPoint { ctx, mu: Coweight(vec![1, 0, -1]), kind: CellKind::QuasiMinuscule { x: f(2) } };
        let g = quasi.assemble().unwrap();
        assert_eq!(quasi.predicted_index().unwrap(), IndexResult::Positive(Exp::from_integer(1)));
        assert_eq!(index::index(&g).unwrap(), IndexResult::Positive(Exp::from_integer(1)));
        for m in 2..=4 {
            let mu = rank_one_coweight(m);
            let p = CellPoint { ctx: (), mu: mu.clone(), kind: CellKind::RankOne { p: vec![q(1)] } };
            assert_eq!(p.predicted_index().unwrap(), IndexResult::Positive(Exp::from_integer(m - 1)));
            assert_eq!(index::index(&p.assemble().unwrap()).unwrap(), IndexResult::Positive(Exp::from_integer(m - 1)));
            assert!(index_zero_iff_p_zero::<Rational>(&(), &mu, &[]).unwrap());
            assert!(index_zero_iff_p_zero(&(), &mu, &[q(0), q(1)][..(m as usize - 1).min(2)]).unwrap());
        }
        let bad = CellPoint { ctx: (), mu: Coweight(vec![2, -2]), kind: CellKind::<Rational>::Minuscule };
        assert!(matches!(bad.predicted_index(), Err(Error::UnsupportedCellType(_))));
    }

    #[test]
    fn rank_one_in_char_p_uses_p_adic_valuation() {
        let ctx = PrimeModulus::new(2).unwrap();
        let f = |n| Fp::new(n, ctx);
        // P = t^2 over F_2 with <mu, alpha> = 4: r = (4 - 2)/2 = 1.
        let p = CellPoint { ctx, mu: Coweight(vec![2, -2]), kind: CellKind::RankOne { p: vec![f(0), f(1)] } };
        assert_eq!(p.predicted_index().unwrap(), IndexResult::Positive(Exp::from_integer(1)));
        assert_eq!(index::index(&p.assemble().unwrap()).unwrap(), IndexResult::Positive(Exp::from_integer(1)));
    }
}
