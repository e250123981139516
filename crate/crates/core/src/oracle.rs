//! Brute-force substitution oracle, independent of the support table:
//! r ∈ Σ(g) iff g^-1 σ_r(g) has no negative exponent.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::index::{with_precision, IndexResult};
use crate::matrix::{Group, SeriesMatrix};
use crate::poly::Var;
use crate::scalar::Scalar;
use crate::series::Exp;

fn start_precision<S: Scalar>(g: &SeriesMatrix<S>) -> i64 {
    crate::index::initial_precision(g)
}

/// Whether `r > 0` lies in Σ(g). For GL inputs both g^-1σ_r(g) and its
/// inverse σ_r(g^-1)g must be integral.
pub fn member<S: Scalar>(g: &SeriesMatrix<S>, r: Exp) -> Result<bool> {
    with_precision(start_precision(g), |wp| {
        let inv = g.inverse(Exp::from_integer(wp))?;
        let target = -inv.gauge()? + Exp::one();
        let h = inv.mul(&g.subst_sigma(r, target)?)?;
        if !h.entries_integral()? {
            return Ok(false);
        }
        if g.group() == Group::GL {
            let target = -g.gauge()? + Exp::one();
            let back = inv.subst_sigma(r, target)?.mul(g)?;
            if !back.entries_integral()? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

/// Lemma "g^-1 g(λt) integral ⟺ r(g) ≤ 0", tested directly.
pub fn lambda_integral<S: Scalar>(g: &SeriesMatrix<S>) -> Result<bool> {
    with_precision(start_precision(g), |wp| {
        let inv = g.inverse(Exp::from_integer(wp))?;
        let h = inv.mul(&g.subst_lambda(Var::Lambda)?)?;
        if !h.entries_integral()? {
            return Ok(false);
        }
        if g.group() == Group::GL {
            let back = inv.subst_lambda(Var::Lambda)?.mul(g)?;
            if !back.entries_integral()? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

/// Index found by grid search: Integral / Zero by direct tests, otherwise
/// the smallest member of {k/D : D ∈ dens, 0 < k/D ≤ bound}. `None` when no
/// grid point up to `bound` is a member.
pub fn grid_index<S: Scalar>(g: &SeriesMatrix<S>, dens: &[i64], bound: Exp) -> Result<Option<IndexResult>> {
    if g.is_integral()? {
        return Ok(Some(IndexResult::Integral));
    }
    if lambda_integral(g)? {
        return Ok(Some(IndexResult::Zero));
    }
    let mut grid: Vec<Exp> = Vec::new();
    for &d in dens {
        let top = (bound * Exp::from_integer(d)).floor().to_integer();
        grid.extend((1..=top).map(|k| Exp::new(k, d)));
    }
    grid.sort();
    grid.dedup();
    // Σ(g) is a half-line, so binary search the sorted grid.
    let (mut lo, mut hi) = (0usize, grid.len());
    if hi == 0 || !member(g, grid[hi - 1])? {
        return Ok(None);
    }
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if member(g, grid[mid - 1])? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let _ = lo;
    Ok(Some(IndexResult::Positive(grid[hi - 1])))
}

/// Test points around a claimed index: each candidate c, c ± 1/(2L), the
/// integers 1..=top and a small positive point.
pub fn probe_points(index: IndexResult, candidates: &[Exp], top: i64) -> Vec<Exp> {
    let mut lcm_den = 1i64;
    for c in candidates.iter().chain(index.positive().iter()) {
        lcm_den = num_integer::lcm(lcm_den, *c.denom());
    }
    let half = Exp::new(1, 2 * lcm_den);
    let mut pts: Vec<Exp> = Vec::new();
    for c in candidates.iter().chain(index.positive().iter()) {
        pts.extend([*c, c - half, c + half]);
    }
    pts.extend((1..=top.max(1)).map(Exp::from_integer));
    pts.push(Exp::new(1, 4 * top.max(1)));
    pts.retain(|x| *x > Exp::zero());
    pts.sort();
    pts.dedup();
    pts
}

/// Checks Σ(g) ∩ points = [r, ∞) ∩ points; returns the first disagreeing
/// point, if any.
pub fn half_line_violation<S: Scalar>(g: &SeriesMatrix<S>, index: IndexResult, points: &[Exp]) -> Result<Option<Exp>> {
    let r = index.value();
    for &x in points {
        let expected = x >= r;
        if member(g, x)? != expected {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::series::Series;

    fn unipotent(k: i64) -> SeriesMatrix<Rational> {
        SeriesMatrix::infer(vec![
            vec![Series::one(&()), Series::t_pow(&(), Exp::from_integer(-k))],
            vec![Series::zero(&()), Series::one(&())],
        ])
        .unwrap()
    }

    #[test]
    fn membership_is_a_half_line() {
        let g = unipotent(2);
        assert!(!member(&g, Exp::new(3, 2)).unwrap());
        assert!(member(&g, Exp::from_integer(2)).unwrap());
        assert!(member(&g, Exp::new(7, 3)).unwrap());
        let idx = IndexResult::Positive(Exp::from_integer(2));
        let pts = probe_points(idx, &[Exp::from_integer(2)], 5);
        assert_eq!(half_line_violation(&g, idx, &pts).unwrap(), None);
    }

    #[test]
    fn grid_search() {
        assert_eq!(grid_index(&unipotent(3), &[1, 2], Exp::from_integer(5)).unwrap(), Some(IndexResult::Positive(Exp::from_integer(3))));
        assert_eq!(grid_index(&unipotent(-1), &[1], Exp::one()).unwrap(), Some(IndexResult::Integral));
        let m = SeriesMatrix::<Rational>::infer(vec![vec![Series::t_pow(&(), Exp::from_integer(-2))]]).unwrap();
        assert_eq!(grid_index(&m, &[1], Exp::one()).unwrap(), Some(IndexResult::Zero));
    }
}
