//! Dense linear algebra over a field of scalars.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<S: Scalar>(m: &mut [Vec<S>]) -> Result<Vec<usize>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv()?;
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = f.mul(&m[r][j]);
                    m[i][j] = m[i][j].sub(&delta);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// A basis of { y : Σ_j rows[i][j]·y_j = 0 for all i }.
pub fn nullspace<S: Scalar>(ctx: &S::Ctx, rows: &[Vec<S>], ncols: usize) -> Result<Vec<Vec<S>>> {
    let mut m: Vec<Vec<S>> = rows.to_vec();
    let pivots = rref(&mut m)?;
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![S::zero(ctx); ncols];
        v[free] = S::one(ctx);
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = m[r][free].neg();
        }
        basis.push(v);
    }
    Ok(basis)
}

pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> Result<usize> {
    let mut m = rows.to_vec();
    Ok(rref(&mut m)?.len())
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span<S: Scalar>(vectors: &[Vec<S>], v: &[S]) -> Result<bool> {
    let mut with = vectors.to_vec();
    with.push(v.to_vec());
    Ok(rank(&with)? == rank(vectors)?)
}

/// Extends independent `chosen` vectors by one taken from `pool`.
pub fn pick_independent<S: Scalar>(chosen: &[Vec<S>], pool: &[Vec<S>]) -> Result<Option<Vec<S>>> {
    for v in pool {
        if !in_span(chosen, v)? {
            return Ok(Some(v.clone()));
        }
    }
    Ok(None)
}

pub(crate) fn require_field<S: Scalar>(ctx: &S::Ctx) -> Result<()> {
    let d = S::descriptor(ctx);
    if d.is_field() {
        Ok(())
    } else {
        Err(Error::NotAField(d.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::scalar::{Fp, PrimeModulus, Rational};

    #[test]
    fn nullspace_of_rank_one_rows() {
        let q = Rational::integer;
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let ns = nullspace(&(), &rows, 3).unwrap();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot = rows[0].iter().zip(v).fold(q(0), |acc, (a, b)| acc.add(&a.mul(b)));
            assert!(dot.is_zero());
        }
        assert!(in_span(&ns, &ns[0].iter().map(|x| x.add(x)).collect::<Vec<_>>()).unwrap());
    }

    #[test]
    fn rank_mod_p() {
        let ctx = PrimeModulus::new(3).unwrap();
        let f = |n| Fp::new(n, ctx);
        assert_eq!(rank(&[vec![f(1), f(2)], vec![f(2), f(1)]]).unwrap(), 1);
    }
}
