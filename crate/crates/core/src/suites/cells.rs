//! Randomized checks on the affine Grassmannian side: Cartan round trips,
//! cell membership against the index, and the closed-form cell indices.

use rand::Rng;

use super::gen;
use crate::error::Result;
use crate::grass::{self, CellKind, CellPoint, Coweight};
use crate::index::{self, IndexResult};
use crate::matrix::SeriesMatrix;
use crate::scalar::Scalar;

fn flag(ok: bool, msg: impl FnOnce() -> String) -> Vec<String> {
    if ok {
        Vec::new()
    } else {
        vec![msg()]
    }
}

/// Random u·t^μ·v with u, v ∈ SL_n(k[t]): the Cartan coweight must be μ.
pub fn cartan_round_trip<S: Scalar, R: Rng>(rng: &mut R, ctx: &S::Ctx, n: usize) -> Result<Vec<String>> {
    let mu = gen::random_dominant(rng, n);
    let u = gen::random_integral::<S, _>(rng, ctx, n)?;
    let v = gen::random_integral::<S, _>(rng, ctx, n)?;
    let g = u.mul(&mu.t_power(ctx))?.mul(&v)?;
    let found = grass::cartan_coweight(&g)?;
    Ok(flag(found == mu, || format!("built with {:?}, decomposed as {:?}", mu.0, found.0)))
}

/// r(g) = 0 ⟺ g ∈ G(k)·t^μ·G(k[[t]]), μ the Cartan coweight of g.
pub fn fixed_point_criterion<S: Scalar>(g: &SeriesMatrix<S>) -> Result<Vec<String>> {
    let mu = grass::cartan_coweight(g)?;
    if mu.0.iter().all(|m| *m == mu.0[0]) {
        return Ok(Vec::new());
    }
    let zero = index::index(g)? == IndexResult::Zero;
    let member = grass::solve_cell_membership(g, &mu)?.is_some();
    Ok(flag(zero == member, || format!("r(g) = 0 is {zero} but cell membership is {member} for mu = {:?}", mu.0)))
}

/// A sample with r(g) = 0: h·t^μ·v with h constant and v integral.
pub fn index_zero_sample<S: Scalar, R: Rng>(rng: &mut R, ctx: &S::Ctx, n: usize) -> Result<SeriesMatrix<S>> {
    let mu = gen::random_dominant(rng, n);
    let h = gen::random_constant(rng, ctx, n)?;
    let v = gen::random_integral(rng, ctx, n)?;
    h.mul(&mu.t_power(ctx))?.mul(&v)
}

/// A sample that often has positive index: a random loop, or u·t^μ·v with
/// u non-constant.
pub fn generic_sample<S: Scalar, R: Rng>(rng: &mut R, ctx: &S::Ctx, n: usize) -> Result<SeriesMatrix<S>> {
    if rng.gen_bool(0.5) {
        return gen::random_sl(rng, ctx, n);
    }
    let mu = gen::random_dominant(rng, n);
    let u = gen::random_integral(rng, ctx, n)?;
    let v = gen::random_integral(rng, ctx, n)?;
    u.mul(&mu.t_power(ctx))?.mul(&v)
}

/// det(X − res(g)(λ)) = Π(X − λ^{μ_i}) for r(g) = 0.
pub fn char_poly<S: Scalar>(g: &SeriesMatrix<S>) -> Result<Vec<String>> {
    Ok(flag(grass::char_poly_identity(g)?, || "characteristic polynomial of res(g) differs".into()))
}

/// A random minuscule or quasi-minuscule point of GL₂, SL₂ or SL₃.
pub fn random_small_cell<S: Scalar, R: Rng>(rng: &mut R, ctx: &S::Ctx) -> CellPoint<S> {
    let (mu, quasi) = match rng.gen_range(0..5) {
        0 => (vec![1, 0], false),
        1 => (vec![1, 1, 0], false),
        2 => (vec![1, -1], true),
        3 => (vec![1, 0, -1], true),
        _ => (vec![2, 0], true),
    };
    let kind = if quasi {
        let x = if rng.gen_bool(0.2) { S::zero(ctx) } else { gen::unit_scalar(rng, ctx) };
        CellKind::QuasiMinuscule { x }
    } else {
        CellKind::Minuscule
    };
    CellPoint { ctx: ctx.clone(), mu: Coweight(mu), kind }
}

/// A random rank-one point u_α(P)·t^μ with ⟨μ,α⟩ = m and P(0) = 0.
pub fn random_rank_one<S: Scalar, R: Rng>(rng: &mut R, ctx: &S::Ctx, m: i64) -> CellPoint<S> {
    let p: Vec<S> = if rng.gen_bool(0.2) {
        vec![S::zero(ctx); (m - 1) as usize]
    } else {
        (1..m).map(|_| gen::small_scalar(rng, ctx)).collect()
    };
    CellPoint { ctx: ctx.clone(), mu: grass::rank_one_coweight(m), kind: CellKind::RankOne { p } }
}

/// The closed-form index agrees with the computed one.
pub fn closed_form<S: Scalar>(point: &CellPoint<S>) -> Result<Vec<String>> {
    let predicted = grass::cell_index_formulas(point)?;
    let actual = index::index(&point.assemble()?)?;
    Ok(flag(predicted == actual, || format!("mu = {:?}: formula {predicted}, computed {actual}", point.mu.0)))
}

/// r(g) = 0 ⟺ P = 0 on the rank-one family.
pub fn rank_one_zero_criterion<S: Scalar>(point: &CellPoint<S>) -> Result<Vec<String>> {
    let CellKind::RankOne { p } = &point.kind else { return Ok(Vec::new()) };
    let ok = grass::index_zero_iff_p_zero(&point.ctx, &point.mu, p)?;
    Ok(flag(ok, || format!("mu = {:?}, P = {:?}: zero index does not match P = 0", point.mu.0, p)))
}
