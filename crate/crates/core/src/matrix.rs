//! Square matrices over truncated series: products, determinant, adjugate,
//! inverses, gauge decomposition and integrality tests for SL_N / GL_N.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{AuxPoly, Var};
use crate::ring::{self, Ring};
use crate::scalar::Scalar;
use crate::series::{Exp, Precision, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Group {
    SL,
    GL,
}

#[derive(Clone, PartialEq)]
pub struct SeriesMatrix<S: Scalar> {
    rows: Vec<Vec<Series<S>>>,
    group: Group,
}

/// `g = t^-d · ug` with `ug` integral and not divisible by t.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeDecomposition<S: Scalar> {
    pub d: i64,
    pub ug: SeriesMatrix<S>,
}

fn check_square<T>(rows: &[Vec<T>]) -> Result<usize> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::DimensionError("empty matrix".into()));
    }
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionError(format!("row of length {} in a {n}x{n} matrix", r.len())));
    }
    Ok(n)
}

impl<S: Scalar> SeriesMatrix<S> {
    pub fn new(rows: Vec<Vec<Series<S>>>, group: Group) -> Result<Self> {
        check_square(&rows)?;
        let ctx = rows[0][0].ctx().clone();
        if let Some(x) = rows.iter().flatten().find(|x| *x.ctx() != ctx) {
            return Err(crate::scalar::mismatch::<S>(&ctx, x.ctx()));
        }
        Ok(SeriesMatrix { rows, group })
    }

    /// Builds the matrix and tags it SL when det = 1, GL when det is a unit
    /// of the Laurent series ring.
    pub fn infer(rows: Vec<Vec<Series<S>>>) -> Result<Self> {
        let m = Self::new(rows, Group::GL)?;
        let det = m.det();
        if is_one_series(&det) {
            return Ok(SeriesMatrix { group: Group::SL, ..m });
        }
        let lead_is_unit = det.terms().find(|(_, c)| !c.is_nilpotent()).is_some_and(|(_, c)| c.is_unit());
        if lead_is_unit {
            Ok(m)
        } else {
            Err(Error::NotInvertible)
        }
    }

    /// An SL_N element; fails unless det agrees with 1 to the known precision.
    pub fn new_sl(rows: Vec<Vec<Series<S>>>) -> Result<Self> {
        let m = Self::infer(rows)?;
        if m.group != Group::SL {
            return Err(Error::InvalidSubstitution(format!("det = {} is not 1", m.det())));
        }
        Ok(m)
    }

    pub fn identity(ctx: &S::Ctx, n: usize) -> Self {
        let rows = ring::identity_like(&Series::one(ctx), n);
        SeriesMatrix { rows, group: Group::SL }
    }

    pub fn diagonal(entries: Vec<Series<S>>) -> Result<Self> {
        let n = entries.len();
        let ctx = entries
            .first()
            .ok_or_else(|| Error::DimensionError("empty matrix".into()))?
            .ctx()
            .clone();
        let mut rows = vec![vec![Series::zero(&ctx); n]; n];
        for (i, e) in entries.into_iter().enumerate() {
            rows[i][i] = e;
        }
        Self::infer(rows)
    }

    /// diag(t^μ1, …, t^μN).
    pub fn t_power_diagonal(ctx: &S::Ctx, mu: &[i64]) -> Self {
        let n = mu.len();
        let mut rows = vec![vec![Series::zero(ctx); n]; n];
        for (i, m) in mu.iter().enumerate() {
            rows[i][i] = Series::t_pow(ctx, Exp::from_integer(*m));
        }
        let group = if mu.iter().sum::<i64>() == 0 { Group::SL } else { Group::GL };
        SeriesMatrix { rows, group }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn with_group(self, group: Group) -> Self {
        SeriesMatrix { group, ..self }
    }

    pub fn ctx(&self) -> &S::Ctx {
        self.rows[0][0].ctx()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Series<S> {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Series<S>>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Series<S>>> {
        self.rows
    }

    pub fn entries(&self) -> impl Iterator<Item = &Series<S>> {
        self.rows.iter().flatten()
    }

    pub fn precision(&self) -> Precision {
        self.entries().fold(Precision::Exact, |p, x| p.min(x.precision()))
    }

    pub fn is_exact(&self) -> bool {
        self.entries().all(|x| x.is_exact())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.n() != rhs.n() {
            return Err(Error::DimensionError(format!("{}x{} times {}x{}", self.n(), self.n(), rhs.n(), rhs.n())));
        }
        if self.ctx() != rhs.ctx() {
            return Err(crate::scalar::mismatch::<S>(self.ctx(), rhs.ctx()));
        }
        let group = if self.group == Group::SL && rhs.group == Group::SL { Group::SL } else { Group::GL };
        Ok(SeriesMatrix { rows: ring::mat_mul(&self.rows, &rhs.rows), group })
    }

    pub fn det(&self) -> Series<S> {
        ring::det(&self.rows)
    }

    pub fn adjugate(&self) -> Self {
        SeriesMatrix { rows: ring::adjugate(&self.rows), group: Group::GL }
    }

    /// Inverse, correct below `target` when a determinant has to be inverted
    /// as a series; exact whenever det is 1 or a unit monomial.
    pub fn inverse(&self, target: Exp) -> Result<Self> {
        let adj = ring::adjugate(&self.rows);
        let det = self.det();
        if is_one_series(&det) {
            return Ok(SeriesMatrix { rows: adj, group: self.group });
        }
        let v_adj = adj
            .iter()
            .flatten()
            .filter_map(|x| x.valuation_bound())
            .min()
            .unwrap_or(Exp::zero());
        let det_inv = match det.invert(target - v_adj) {
            Ok(x) => x,
            Err(Error::ZeroSeries) | Err(Error::NonUnitLeadingCoefficient(_)) => return Err(Error::NotInvertible),
            Err(e) => return Err(e),
        };
        let rows = adj.iter().map(|r| r.iter().map(|x| x.mul(&det_inv)).collect()).collect();
        Ok(SeriesMatrix { rows, group: self.group })
    }

    /// Smallest exponent over all nonzero entries.
    pub fn gauge(&self) -> Result<Exp> {
        let mut best: Option<Exp> = None;
        for x in self.entries() {
            match x.gauge() {
                Ok(v) => best = Some(best.map_or(v, |b| b.min(v))),
                Err(Error::ZeroSeries) => {}
                Err(e) => return Err(e),
            }
        }
        best.ok_or(Error::NotInvertible)
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.entries().all(|x| x.terms().all(|(e, _)| e.is_integer()))
    }

    pub fn gauge_decompose(&self) -> Result<GaugeDecomposition<S>> {
        if self.det().is_zero() {
            return Err(Error::NotInvertible);
        }
        let v = self.gauge()?;
        let d = (-v).ceil().to_integer().max(0);
        let shift = Exp::from_integer(d);
        let rows = self.rows.iter().map(|r| r.iter().map(|x| x.shift(shift)).collect()).collect();
        Ok(GaugeDecomposition { d, ug: SeriesMatrix { rows, group: Group::GL } })
    }

    /// Membership in G(A[[t]]): integral entries and a unit determinant.
    pub fn is_integral(&self) -> Result<bool> {
        for x in self.entries() {
            if !x.is_integral()? {
                return Ok(false);
            }
        }
        if self.group == Group::SL {
            return Ok(true);
        }
        let c0 = self.det().coeff(Exp::zero())?;
        Ok(c0.is_unit() && c0.as_constant().is_some())
    }

    /// diag(g, det(g)^-1) in SL_{N+1}.
    pub fn embed_gl_sl(&self, target: Exp) -> Result<Self> {
        let n = self.n();
        let det = self.det();
        let det_inv = match det.invert(target) {
            Ok(x) => x,
            Err(Error::ZeroSeries) | Err(Error::NonUnitLeadingCoefficient(_)) => return Err(Error::NotInvertible),
            Err(e) => return Err(e),
        };
        let ctx = self.ctx().clone();
        let mut rows = vec![vec![Series::zero(&ctx); n + 1]; n + 1];
        for i in 0..n {
            for j in 0..n {
                rows[i][j] = self.rows[i][j].clone();
            }
        }
        rows[n][n] = det_inv;
        Ok(SeriesMatrix { rows, group: Group::SL })
    }

    /// Top-left `k × k` block.
    pub fn top_left(&self, k: usize) -> Self {
        let rows = self.rows[..k].iter().map(|r| r[..k].to_vec()).collect();
        SeriesMatrix { rows, group: Group::GL }
    }

    pub fn map_entries(&self, f: impl Fn(&Series<S>) -> Result<Series<S>>) -> Result<Self> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(&f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(SeriesMatrix { rows, group: self.group })
    }

    pub fn subst_sigma(&self, r: Exp, target: Exp) -> Result<Self> {
        self.map_entries(|x| x.subst_sigma(r, target))
    }

    pub fn subst_lambda(&self, var: Var) -> Result<Self> {
        self.map_entries(|x| x.subst_lambda(var))
    }

    pub fn subst_power(&self, d: u64) -> Self {
        self.map_entries(|x| Ok(x.subst_power(d))).expect("infallible")
    }

    pub fn truncate(&self, p: Exp) -> Self {
        self.map_entries(|x| Ok(x.truncate(p))).expect("infallible")
    }

    /// Entrywise coefficient power c ↦ c^k (the Frobenius F_e when k = p^e).
    pub fn coeff_pow(&self, k: u64) -> Self {
        self.map_entries(|x| Ok(x.coeff_pow(k))).expect("infallible")
    }

    /// Constant term of every entry, failing on negative exponents.
    pub fn specialize_t0(&self) -> Result<PolyMatrix<S>> {
        let mut rows = Vec::with_capacity(self.n());
        for (i, r) in self.rows.iter().enumerate() {
            let mut row = Vec::with_capacity(self.n());
            for (j, x) in r.iter().enumerate() {
                match x.specialize_t0() {
                    Ok(p) => row.push(p),
                    Err(Error::NegativeExponentPresent(_)) => return Err(Error::ResidueNotIntegral(i + 1, j + 1)),
                    Err(e) => return Err(e),
                }
            }
            rows.push(row);
        }
        Ok(PolyMatrix { rows })
    }

    /// Whether every entry lacks negative exponents (known to exponent 0).
    pub fn entries_integral(&self) -> Result<bool> {
        for x in self.entries() {
            if x.min_negative_exponent().is_some() {
                return Ok(false);
            }
            if let Some(p) = x.precision().bound() {
                if p < Exp::zero() {
                    return Err(Error::InsufficientPrecision { needed: Exp::zero(), available: p });
                }
            }
        }
        Ok(true)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.ctx(), self.n()).with_group(self.group)
            || self.rows.iter().enumerate().all(|(i, r)| {
                r.iter().enumerate().all(|(j, x)| {
                    let expect = if i == j { Series::one(x.ctx()) } else { Series::zero(x.ctx()) };
                    x.is_exact() && *x == expect
                })
            })
    }

    /// Rows rendered in the matrix DSL.
    pub fn render_rows(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }
}

impl<S: Scalar> fmt::Display for SeriesMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.render_rows().into_iter().map(|r| format!("[{}]", r.join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl<S: Scalar> fmt::Debug for SeriesMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A matrix of auxiliary polynomials, the shape residues take.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix<S: Scalar> {
    rows: Vec<Vec<AuxPoly<S>>>,
}

impl<S: Scalar> PolyMatrix<S> {
    pub fn new(rows: Vec<Vec<AuxPoly<S>>>) -> Result<Self> {
        check_square(&rows)?;
        Ok(PolyMatrix { rows })
    }

    pub fn identity(ctx: &S::Ctx, n: usize) -> Self {
        PolyMatrix { rows: ring::identity_like(&AuxPoly::one(ctx), n) }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn ctx(&self) -> &S::Ctx {
        self.rows[0][0].ctx()
    }

    pub fn entry(&self, i: usize, j: usize) -> &AuxPoly<S> {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<AuxPoly<S>>] {
        &self.rows
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.ctx(), self.n())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        PolyMatrix { rows: ring::mat_mul(&self.rows, &rhs.rows) }
    }

    pub fn det(&self) -> AuxPoly<S> {
        ring::det(&self.rows)
    }

    pub fn adjugate(&self) -> Self {
        PolyMatrix { rows: ring::adjugate(&self.rows) }
    }

    pub fn map(&self, f: impl Fn(&AuxPoly<S>) -> Result<AuxPoly<S>>) -> Result<Self> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(&f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { rows })
    }

    pub fn substitute_var(&self, v: Var, img: &AuxPoly<S>) -> Result<Self> {
        self.map(|p| p.substitute_var(v, img))
    }

    pub fn top_left(&self, k: usize) -> Self {
        PolyMatrix { rows: self.rows[..k].iter().map(|r| r[..k].to_vec()).collect() }
    }

    /// Inverse, defined when the determinant is a unit polynomial.
    pub fn inverse(&self) -> Result<Self> {
        let det_inv = self.det().inverse().map_err(|_| Error::NotInvertible)?;
        PolyMatrix { rows: ring::adjugate(&self.rows) }.map(|p| Ok(p.mul(&det_inv)))
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.rows.iter().flatten().any(|p| p.mentions(v))
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }

    /// The constant matrix as a series matrix.
    pub fn to_series(&self) -> SeriesMatrix<S> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|p| Series::constant(p.clone())).collect())
            .collect();
        SeriesMatrix { rows, group: Group::GL }
    }
}

impl<S: Scalar> fmt::Display for PolyMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.render().into_iter().map(|r| format!("[{}]", r.join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl<S: Scalar> fmt::Debug for PolyMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Whether `x` is 1 to its known precision.
pub(crate) fn is_one_series<S: Scalar>(x: &Series<S>) -> bool {
    let one = Series::one(x.ctx());
    *x == one || (!x.is_exact() && x.sub(&one).terms().next().is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Dual, Rational};

    type Q = Series<Rational>;

    fn t(k: i64) -> Q {
        Q::t_pow(&(), Exp::from_integer(k))
    }
    fn c(k: i64) -> Q {
        Q::scalar(Rational::integer(k))
    }
    fn z() -> Q {
        Q::zero(&())
    }
    fn e(k: i64) -> Exp {
        Exp::from_integer(k)
    }

    #[test]
    fn adjugate_of_generic_two_by_two() {
        let m = SeriesMatrix::new(vec![vec![c(1), c(2)], vec![c(3), c(4)]], Group::GL).unwrap();
        assert_eq!(m.adjugate().to_string(), "[[4, -2], [-3, 1]]");
        assert_eq!(SeriesMatrix::<Rational>::identity(&(), 3).det(), c(1));
    }

    #[test]
    fn triangular_determinant() {
        let m = SeriesMatrix::infer(vec![vec![t(2), c(5)], vec![z(), t(3)]]).unwrap();
        assert_eq!(m.det(), t(5));
        assert_eq!(m.group(), Group::GL);
    }

    #[test]
    fn inverses() {
        let d = SeriesMatrix::infer(vec![vec![t(-1), z()], vec![z(), t(1)]]).unwrap();
        assert_eq!(d.group(), Group::SL);
        assert_eq!(d.inverse(e(4)).unwrap().to_string(), "[[t, 0], [0, t^-1]]");

        // g·g^-1 = I forces the (1,2) entry -t^-2.
        let g = SeriesMatrix::infer(vec![vec![t(1), c(1)], vec![z(), t(1)]]).unwrap();
        let gi = g.inverse(e(4)).unwrap();
        assert_eq!(gi.to_string(), "[[t^-1, -t^-2], [0, t^-1]]");
        assert!(g.mul(&gi).unwrap().is_identity());

        let eps = Dual::<Rational>::epsilon(&()).unwrap();
        let x = Series::monomial(AuxPoly::constant(eps), e(-1));
        let one = Series::one(&());
        let zero = Series::zero(&());
        let u = SeriesMatrix::infer(vec![vec![one.clone(), x.clone()], vec![zero.clone(), one.clone()]]).unwrap();
        let expect = SeriesMatrix::infer(vec![vec![one.clone(), x.neg()], vec![zero, one]]).unwrap();
        assert_eq!(u.inverse(e(2)).unwrap(), expect);
    }

    #[test]
    fn gauge_decompositions() {
        let x = c(7);
        let g = SeriesMatrix::infer(vec![vec![t(1), x.clone()], vec![z(), t(-1)]]).unwrap();
        let gd = g.gauge_decompose().unwrap();
        assert_eq!(gd.d, 1);
        assert_eq!(gd.ug.to_string(), "[[t^2, 7*t], [0, 1]]");
        assert_eq!(gd.ug.det(), t(2));

        let h = SeriesMatrix::infer(vec![vec![c(1), t(1)], vec![z(), c(1)]]).unwrap();
        assert_eq!(h.gauge_decompose().unwrap().d, 0);

        let k = SeriesMatrix::infer(vec![vec![t(-2), z()], vec![z(), t(2)]]).unwrap();
        let kd = k.gauge_decompose().unwrap();
        assert_eq!((kd.d, kd.ug.to_string()), (2, "[[1, 0], [0, t^4]]".to_string()));
    }

    #[test]
    fn integrality() {
        let d = SeriesMatrix::infer(vec![vec![t(1), z()], vec![z(), t(-1)]]).unwrap();
        assert!(!d.is_integral().unwrap());
        let m = SeriesMatrix::infer(vec![vec![c(1).add(&t(1)), t(2)], vec![t(1), c(1).add(&t(3))]]).unwrap();
        assert!(m.is_integral().unwrap());
        let gl1 = SeriesMatrix::infer(vec![vec![t(1)]]).unwrap();
        assert!(!gl1.is_integral().unwrap());
    }

    #[test]
    fn gl_embedding() {
        let g = SeriesMatrix::infer(vec![vec![t(-3)]]).unwrap();
        let s = g.embed_gl_sl(e(4)).unwrap();
        assert_eq!(s.to_string(), "[[t^-3, 0], [0, t^3]]");
        assert_eq!(s.det(), c(1));
        let a = SeriesMatrix::infer(vec![vec![t(2), c(1)], vec![z(), t(1)]]).unwrap();
        assert_eq!(a.embed_gl_sl(e(4)).unwrap().entry(2, 2), &t(-3));
        let i = SeriesMatrix::<Rational>::identity(&(), 2);
        assert!(i.embed_gl_sl(e(1)).unwrap().is_identity());
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(SeriesMatrix::new(vec![vec![c(1), c(2)]], Group::GL), Err(Error::DimensionError(_))));
        assert!(matches!(
            SeriesMatrix::infer(vec![vec![c(1), c(1)], vec![c(1), c(1)]]),
            Err(Error::NotInvertible)
        ));
    }
}
