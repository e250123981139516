//! Seeded random generators for loop-group elements.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::grass::Coweight;
use crate::matrix::{Group, SeriesMatrix};
use crate::scalar::Scalar;
use crate::series::{Exp, Precision, Series};

/// Independent stream for instance `i` of a run seeded with `seed`.
pub fn instance_rng(seed: u64, i: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i))
}

/// A nonzero scalar from the small integers ±1..±3.
pub fn unit_scalar<S: Scalar, R: Rng>(rng: &mut R, ctx: &S::Ctx) -> S {
    loop {
        let mut c = rng.gen_range(1..=3i64);
        if rng.gen_bool(0.5) {
            c = -c;
        }
        let x = S::from_i64(ctx, c);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A scalar from −3..=3, possibly zero.
pub fn small_scalar<S: Scalar, R: Rng>(rng: &mut R, ctx: &S::Ctx) -> S {
    S::from_i64(ctx, rng.gen_range(-3..=3i64))
}

/// An exact Laurent polynomial with one or two terms, exponents in lo..=hi.
pub fn laurent<S: Scalar, R: Rng>(rng: &mut R, ctx: &S::Ctx, lo: i64, hi: i64) -> Series<S> {
    let k = rng.gen_range(1..=2);
    let terms: Vec<(Exp, S)> =
        (0..k).map(|_| (Exp::from_integer(rng.gen_range(lo..=hi)), unit_scalar(rng, ctx))).collect();
    Series::from_scalars(ctx, terms, Precision::Exact)
}

/// I + x·E_ij.
pub fn elementary<S: Scalar>(ctx: &S::Ctx, n: usize, i: usize, j: usize, x: Series<S>) -> SeriesMatrix<S> {
    let mut rows = SeriesMatrix::identity(ctx, n).into_rows();
    rows[i][j] = x;
    SeriesMatrix::new(rows, Group::SL).expect("elementary matrices are square")
}

fn random_pair<R: Rng>(rng: &mut R, n: usize) -> (usize, usize) {
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// μ with Σμ = 0 and entries in −2..=2.
pub fn random_sl_coweight<R: Rng>(rng: &mut R, n: usize) -> Vec<i64> {
    loop {
        let mut mu: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-2..=2)).collect();
        let last = -mu.iter().sum::<i64>();
        if last.abs() <= 2 {
            mu.push(last);
            return mu;
        }
    }
}

/// The signed cyclic permutation matrix, which has determinant 1.
fn weyl<S: Scalar>(ctx: &S::Ctx, n: usize) -> SeriesMatrix<S> {
    let mut rows = vec![vec![Series::zero(ctx); n]; n];
    for i in 0..n {
        rows[i][(i + 1) % n] = Series::one(ctx);
    }
    if n.is_multiple_of(2) {
        rows[0][1] = Series::scalar(S::from_i64(ctx, -1));
    }
    SeriesMatrix::new(rows, Group::SL).expect("square")
}

fn within(g: &SeriesMatrix<impl Scalar>, lo: i64, hi: i64) -> bool {
    let (lo, hi) = (Exp::from_integer(lo), Exp::from_integer(hi));
    g.entries().all(|x| x.terms().all(|(e, _)| e >= lo && e <= hi))
}

/// A random element of SL_n(k((t))) whose entries are Laurent polynomials
/// with exponents in −3..=3: a short product of elementary, torus and Weyl
/// factors, rejected until it fits. Integral products are mostly rejected
/// too, since they exercise little.
pub fn random_sl<S: Scalar, R: Rng>(rng: &mut R, ctx: &S::Ctx, n: usize) -> Result<SeriesMatrix<S>> {
    loop {
        let mut g = SeriesMatrix::identity(ctx, n);
        for _ in 0..rng.gen_range(1..=4) {
            let f = match rng.gen_range(0..5) {
                0..=2 => {
                    let (i, j) = random_pair(rng, n);
                    elementary(ctx, n, i, j, laurent(rng, ctx, -3, 3))
                }
                3 => SeriesMatrix::t_power_diagonal(ctx, &random_sl_coweight(rng, n)).with_group(Group::SL),
                _ => weyl(ctx, n),
            };
            g = g.mul(&f)?;
        }
        if within(&g, -3, 3) && (rng.gen_bool(0.1) || !g.is_integral()?) {
            return Ok(g.with_group(Group::SL));
        }
    }
}

/// A random element of SL_n(k[t]) ⊂ SL_n(k[[t]]).
pub fn random_integral<S: Scalar, R: Rng>(rng: &mut R, ctx: &S::Ctx, n: usize) -> Result<SeriesMatrix<S>> {
    let mut g = SeriesMatrix::identity(ctx, n);
    for _ in 0..rng.gen_range(1..=3) {
        let (i, j) = random_pair(rng, n);
        g = g.mul(&elementary(ctx, n, i, j, laurent(rng, ctx, 0, 2)))?;
    }
    Ok(g.with_group(Group::SL))
}

/// A random element of SL_n(k).
pub fn random_constant<S: Scalar, R: Rng>(rng: &mut R, ctx: &S::Ctx, n: usize) -> Result<SeriesMatrix<S>> {
    let mut g = SeriesMatrix::identity(ctx, n);
    for _ in 0..rng.gen_range(1..=3) {
        let (i, j) = random_pair(rng, n);
        g = g.mul(&elementary(ctx, n, i, j, Series::scalar(small_scalar(rng, ctx))))?;
    }
    if rng.gen_bool(0.5) {
        g = g.mul(&weyl(ctx, n))?;
    }
    Ok(g.with_group(Group::SL))
}

/// A random dominant coweight of SL_n, not the zero one.
pub fn random_dominant<R: Rng>(rng: &mut R, n: usize) -> Coweight {
    loop {
        let mu = Coweight::dominant(random_sl_coweight(rng, n));
        if mu.0.iter().any(|m| *m != 0) {
            return mu;
        }
    }
}
