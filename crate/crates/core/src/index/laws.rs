//! Left index, pushforward along t ↦ t^d, Frobenius, the congruence lemma and
//! left/right invariance.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::SeriesMatrix;
use crate::poly::{AuxPoly, Var};
use crate::ring::Ring;
use crate::scalar::Scalar;
use crate::series::Exp;

use super::{analyze, index, initial_precision, residue, with_precision, IndexResult, ResidueHom};

fn inverse_of<S: Scalar>(g: &SeriesMatrix<S>) -> Result<SeriesMatrix<S>> {
    with_precision(4 * initial_precision(g), |wp| g.inverse(Exp::from_integer(wp)))
}

/// r^L(g) = r(g^-1).
pub fn left_index<S: Scalar>(g: &SeriesMatrix<S>) -> Result<IndexResult> {
    index(&inverse_of(g)?)
}

/// res^L(g) = res(g^-1).
pub fn left_residue<S: Scalar>(g: &SeriesMatrix<S>) -> Result<ResidueHom<S>> {
    residue(&inverse_of(g)?)
}

/// φ_{d,*}(g): every entry under t ↦ t^d.
pub fn pushforward<S: Scalar>(g: &SeriesMatrix<S>, d: u64) -> SeriesMatrix<S> {
    g.subst_power(d)
}

/// φ_{p^e}(g); needs characteristic p > 0.
pub fn frobenius_pushforward<S: Scalar>(g: &SeriesMatrix<S>, e: u32) -> Result<SeriesMatrix<S>> {
    let p = S::descriptor(g.ctx()).characteristic();
    if p == 0 {
        return Err(Error::WrongCharacteristic(0));
    }
    Ok(g.subst_power(p.pow(e)))
}

/// F_e(g): every entry raised to the p^e-th power.
pub fn frobenius_entrywise<S: Scalar>(g: &SeriesMatrix<S>, e: u32) -> Result<SeriesMatrix<S>> {
    let p = S::descriptor(g.ctx()).characteristic();
    if p == 0 {
        return Err(Error::WrongCharacteristic(0));
    }
    let q = p.pow(e);
    let rows = g.rows().iter().map(|r| r.iter().map(|x| Ring::pow(x, q)).collect()).collect();
    SeriesMatrix::new(rows, g.group())
}

/// Outcome of a transformation law: what was predicted and what came out.
#[derive(Debug, Clone, PartialEq)]
pub struct LawCheck<S: Scalar> {
    pub expected_index: IndexResult,
    pub actual_index: IndexResult,
    pub expected_residue: ResidueHom<S>,
    pub actual_residue: ResidueHom<S>,
}

impl<S: Scalar> LawCheck<S> {
    pub fn index_ok(&self) -> bool {
        self.expected_index == self.actual_index
    }
    pub fn residue_ok(&self) -> bool {
        self.expected_residue == self.actual_residue
    }
    pub fn holds(&self) -> bool {
        self.index_ok() && self.residue_ok()
    }
}

fn transported<S: Scalar>(res: &ResidueHom<S>, additive: AuxPoly<S>, multiplicative: AuxPoly<S>) -> Result<ResidueHom<S>> {
    match res {
        ResidueHom::Trivial => Ok(ResidueHom::Trivial),
        ResidueHom::Additive(_) => res.precompose(&additive),
        ResidueHom::Multiplicative(_) => res.precompose(&multiplicative),
    }
}

/// r(φ_d g) = d·r(g) and res(φ_d g)(u) = res(g)(du), res(g)(λ^d).
pub fn check_pushforward<S: Scalar>(g: &SeriesMatrix<S>, d: u64) -> Result<LawCheck<S>> {
    let ctx = g.ctx().clone();
    let p = S::descriptor(&ctx).characteristic();
    if d == 0 || (p != 0 && d.is_multiple_of(p)) {
        return Err(Error::WrongCharacteristic(p));
    }
    let before = analyze(g)?;
    let after = analyze(&pushforward(g, d))?;
    let du = AuxPoly::var(&ctx, Var::U).scale(&S::from_i64(&ctx, d as i64));
    let ld = AuxPoly::var(&ctx, Var::Lambda).pow_i(d as i64)?;
    Ok(LawCheck {
        expected_index: before.index.scaled(d as i64),
        actual_index: after.index,
        expected_residue: transported(&before.residue, du, ld)?,
        actual_residue: after.residue,
    })
}

/// r(φ_{p^e} g) = r(g) and res(φ_{p^e} g)(u) = res(g)(u^{p^e}).
pub fn check_frobenius_pushforward<S: Scalar>(g: &SeriesMatrix<S>, e: u32) -> Result<LawCheck<S>> {
    let ctx = g.ctx().clone();
    let pushed = frobenius_pushforward(g, e)?;
    let q = S::descriptor(&ctx).characteristic().pow(e) as i64;
    let before = analyze(g)?;
    let after = analyze(&pushed)?;
    let uq = AuxPoly::var(&ctx, Var::U).pow_i(q)?;
    let lq = AuxPoly::var(&ctx, Var::Lambda).pow_i(q)?;
    Ok(LawCheck {
        expected_index: before.index,
        actual_index: after.index,
        expected_residue: transported(&before.residue, uq, lq)?,
        actual_residue: after.residue,
    })
}

/// r(F_e(g)) = r(g).
pub fn check_frobenius_entrywise<S: Scalar>(g: &SeriesMatrix<S>, e: u32) -> Result<(IndexResult, IndexResult)> {
    let f = frobenius_entrywise(g, e)?;
    Ok((index(g)?, index(&f)?))
}

/// Whether g^-1 σ_s(g) ≡ I modulo t^{M/n}, n the denominator of r(g)
/// (modulo t^M when r(g) = 0).
pub fn congruence_check<S: Scalar>(g: &SeriesMatrix<S>, s: Exp, m: i64) -> Result<bool> {
    let n = match index(g)? {
        IndexResult::Positive(r) => *r.denom(),
        _ => 1,
    };
    let modulus = Exp::new(m, n);
    with_precision(initial_precision(g), |wp| {
        let inv = g.inverse(Exp::from_integer(wp))?;
        let target = modulus - inv.gauge()?;
        let h = inv.mul(&g.subst_sigma(s, target)?)?;
        let id = SeriesMatrix::identity(g.ctx(), g.n());
        for (x, y) in h.entries().zip(id.entries()) {
            if !x.agrees_below(y, modulus)? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

/// Result of [`invariance_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    pub violations: Vec<String>,
}

impl InvarianceReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// index(h_l·g·h_r) = index(g) and res(h_l·g·h_r) = h̄_r^-1 res(g) h̄_r,
/// h_l constant and h_r integral with unit determinant.
pub fn invariance_check<S: Scalar>(
    g: &SeriesMatrix<S>,
    h_left: &SeriesMatrix<S>,
    h_right: &SeriesMatrix<S>,
) -> Result<InvarianceReport> {
    let mut violations = Vec::new();
    for x in h_left.entries() {
        if x.terms().any(|(e, _)| !e.is_zero()) || !x.is_exact() {
            return Err(Error::InvalidSubstitution("left factor must be constant in t".into()));
        }
    }
    if !h_right.is_integral()? {
        return Err(Error::InvalidSubstitution("right factor must lie in G(A[[t]])".into()));
    }
    let base = analyze(g)?;
    let moved = h_left.mul(g)?.mul(h_right)?;
    let moved = SeriesMatrix::infer(moved.into_rows())?;
    let after = analyze(&moved)?;
    if after.index != base.index {
        violations.push(format!("index {} became {}", base.index, after.index));
    }
    let h0 = h_right.specialize_t0()?;
    let expected = base.residue.conjugate(&h0)?;
    if expected != after.residue {
        violations.push(format!("residue {} expected {}", after.residue, expected));
    }
    Ok(InvarianceReport { violations })
}

/// diag(g1, g2) as an element of the product group.
pub fn block_diagonal<S: Scalar>(g1: &SeriesMatrix<S>, g2: &SeriesMatrix<S>) -> Result<SeriesMatrix<S>> {
    let (n1, n2) = (g1.n(), g2.n());
    let ctx = g1.ctx().clone();
    let zero = crate::series::Series::zero(&ctx);
    let mut rows = vec![vec![zero; n1 + n2]; n1 + n2];
    for i in 0..n1 {
        for j in 0..n1 {
            rows[i][j] = g1.entry(i, j).clone();
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            rows[n1 + i][n1 + j] = g2.entry(i, j).clone();
        }
    }
    SeriesMatrix::infer(rows)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::scalar::{Fp, PrimeModulus, Rational};
    use crate::series::Series;
    use num_traits::One;

    fn gl2<S: Scalar>(ctx: &S::Ctx, a: i64, p: Series<S>, d: i64) -> SeriesMatrix<S> {
        let t = |k| Series::t_pow(ctx, Exp::from_integer(k));
        SeriesMatrix::infer(vec![vec![t(a), p], vec![Series::zero(ctx), t(d)]]).unwrap()
    }

    #[test]
    fn upper_triangular_positive_exponents() {
        for (a, d) in [(1, 1), (2, 1), (3, 2)] {
            let g = gl2::<Rational>(&(), a, Series::one(&()), d);
            let an = analyze(&g).unwrap();
            assert_eq!(an.index, IndexResult::Positive(Exp::from_integer(a)));
            assert_eq!(an.residue.matrix().unwrap().to_string(), format!("[[1, -{d}*u], [0, 1]]").replace("-1*u", "-u"));
            assert!(an.hom && an.paths_agree);
        }
    }

    #[test]
    fn fractional_index_in_char_two() {
        let ctx = PrimeModulus::new(2).unwrap();
        let g = gl2::<Fp>(&ctx, 17, Series::t_pow(&ctx, Exp::from_integer(4)), 2);
        let r = index(&g).unwrap();
        assert_eq!(r, IndexResult::Positive(Exp::new(13, 2)));
        assert!(oracle::member(&g, Exp::new(13, 2)).unwrap());
        assert!(!oracle::member(&g, Exp::new(25, 4)).unwrap());
    }

    #[test]
    fn negative_diagonal_gives_multiplicative_residue() {
        let g = gl2::<Rational>(&(), -1, Series::one(&()), 1);
        let an = analyze(&g).unwrap();
        assert_eq!(an.index, IndexResult::Zero);
        assert_eq!(an.residue.matrix().unwrap().to_string(), "[[l^-1, 0], [0, l]]");
    }

    #[test]
    fn left_index_of_unipotent_times_t() {
        let g = gl2::<Rational>(&(), 1, Series::one(&()), 1);
        assert_eq!(index(&g).unwrap(), IndexResult::Positive(Exp::one()));
        // g^-1 = [[t^-1, -t^-2], [0, t^-1]] has index 1, not 0.
        assert_eq!(left_index(&g).unwrap(), IndexResult::Positive(Exp::one()));
        assert_eq!(oracle::grid_index(&inverse_of(&g).unwrap(), &[1, 2], Exp::from_integer(4)).unwrap(), Some(IndexResult::Positive(Exp::one())));
    }

    #[test]
    fn pushforward_laws() {
        let u = SeriesMatrix::<Rational>::infer(vec![
            vec![Series::one(&()), Series::t_pow(&(), -Exp::one())],
            vec![Series::zero(&()), Series::one(&())],
        ])
        .unwrap();
        let c = check_pushforward(&u, 2).unwrap();
        assert_eq!(c.actual_index, IndexResult::Positive(Exp::from_integer(2)));
        assert!(c.holds(), "{c:?}");
        let m = SeriesMatrix::<Rational>::infer(vec![vec![Series::t_pow(&(), -Exp::one())]]).unwrap();
        let c = check_pushforward(&m, 3).unwrap();
        assert!(c.holds());
        assert_eq!(c.actual_residue.matrix().unwrap().entry(0, 0).to_string(), "l^-3");
    }

    #[test]
    fn frobenius_laws() {
        let ctx = PrimeModulus::new(2).unwrap();
        let u = SeriesMatrix::<Fp>::infer(vec![
            vec![Series::one(&ctx), Series::t_pow(&ctx, -Exp::one())],
            vec![Series::zero(&ctx), Series::one(&ctx)],
        ])
        .unwrap();
        let c = check_frobenius_pushforward(&u, 1).unwrap();
        assert!(c.holds(), "{c:?}");
        let (a, b) = check_frobenius_entrywise(&u, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(frobenius_pushforward(&gl2::<Rational>(&(), 1, Series::one(&()), 1), 1).unwrap_err(), Error::WrongCharacteristic(0));
        assert!(matches!(check_pushforward(&u, 2), Err(Error::WrongCharacteristic(2))));
    }

    #[test]
    fn congruence() {
        let g = gl2::<Rational>(&(), 1, Series::one(&()), 1);
        assert!(congruence_check(&g, Exp::from_integer(3), 2).unwrap());
        assert!(!congruence_check(&g, Exp::one(), 1).unwrap());
        let z = gl2::<Rational>(&(), -1, Series::one(&()), 1);
        assert!(congruence_check(&z, Exp::one(), 1).unwrap());
    }

    #[test]
    fn conjugation_by_constant_diagonal() {
        let g = gl2::<Rational>(&(), 1, Series::one(&()), 1);
        let c = |x: i64| Series::scalar(Rational::integer(x));
        let h = SeriesMatrix::infer(vec![vec![c(3), c(0)], vec![c(0), c(1)]]).unwrap();
        let id = SeriesMatrix::identity(&(), 2);
        assert!(invariance_check(&g, &h, &id).unwrap().holds());
        assert!(invariance_check(&g, &id, &h).unwrap().holds());
        let moved = residue(&g.mul(&h).unwrap()).unwrap();
        assert_eq!(moved.matrix().unwrap().entry(0, 1).to_string(), "-1/3*u");
    }
}
