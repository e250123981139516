//! Randomized invariants of the index and residue. Each check returns the
//! list of violations it found; an empty list means the instance passed.

use rand::Rng;
use serde::Serialize;

use super::gen;
use crate::error::Result;
use crate::index::laws::{self, block_diagonal, congruence_check, invariance_check};
use crate::index::{self, Analysis, IndexResult};
use crate::jets::{self, LevelRelation};
use crate::matrix::SeriesMatrix;
use crate::oracle;
use crate::scalar::Scalar;
use crate::series::Exp;

/// Runs and violations of one named property.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Tally {
    pub name: String,
    pub runs: usize,
    pub failed: usize,
    /// The first few violation messages.
    pub examples: Vec<String>,
}

const KEPT: usize = 5;

impl Tally {
    pub fn new(name: impl Into<String>) -> Self {
        Tally { name: name.into(), ..Default::default() }
    }

    pub fn record(&mut self, label: &str, outcome: Result<Vec<String>>) {
        self.runs += 1;
        let problems = match outcome {
            Ok(v) => v,
            Err(e) => vec![format!("error: {e}")],
        };
        if !problems.is_empty() {
            self.failed += 1;
            if self.examples.len() < KEPT {
                self.examples.push(format!("{label}: {}", problems.join("; ")));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

fn flag(ok: bool, msg: impl FnOnce() -> String) -> Vec<String> {
    if ok {
        Vec::new()
    } else {
        vec![msg()]
    }
}

/// Closed-form index against the substitution oracle: Σ(g) must be exactly
/// the half-line [r, ∞) at every probe point, and g^-1 g(λt) is integral
/// exactly when r ≤ 0.
pub fn oracle_equivalence<S: Scalar>(g: &SeriesMatrix<S>, a: &Analysis<S>) -> Result<Vec<String>> {
    let mut out = Vec::new();
    if a.index == IndexResult::Integral {
        out.extend(flag(g.is_integral()?, || "classified integral but has a pole".into()));
        return Ok(out);
    }
    let candidates = a.table.as_ref().map(|t| t.candidates()).unwrap_or_default();
    let top = a.index.value().ceil().to_integer() + 2;
    let points = oracle::probe_points(a.index, &candidates, top);
    if let Some(x) = oracle::half_line_violation(g, a.index, &points)? {
        out.push(format!("index {} but membership of {x} disagrees", a.index));
    }
    let lam = oracle::lambda_integral(g)?;
    out.extend(flag(lam == (a.index == IndexResult::Zero), || {
        format!("lambda-integrality {lam} for index {}", a.index)
    }));
    Ok(out)
}

/// Homomorphism law, non-triviality and two-path agreement of the residue.
pub fn residue_checks<S: Scalar>(a: &Analysis<S>) -> Vec<String> {
    let mut out = flag(a.hom, || format!("residue {} is not a homomorphism", a.residue));
    if a.index != IndexResult::Integral {
        out.extend(flag(a.nontrivial, || "residue is trivial".into()));
    }
    out.extend(flag(a.paths_agree, || "substitution and closed-form residues differ".into()));
    out
}

/// Over ℚ: r ∈ ℤ and r ≤ Nd. Over 𝔽_p: the denominator of r is p^s and
/// p^s·r ≤ Nd.
pub fn integrality<S: Scalar>(g: &SeriesMatrix<S>, a: &Analysis<S>) -> Vec<String> {
    let Some(r) = a.index.positive() else { return Vec::new() };
    let nd = g.n() as i64 * a.gauge;
    let p = S::descriptor(g.ctx()).characteristic() as i64;
    let mut den = *r.denom();
    if p == 0 {
        return flag(den == 1 && *r.numer() <= nd, || format!("r = {r} with Nd = {nd}"));
    }
    while den % p == 0 {
        den /= p;
    }
    flag(den == 1 && *r.numer() <= nd, || format!("r = {r} with Nd = {nd} in characteristic {p}"))
}

/// Left-constant and right-integral invariance with the conjugation rule.
pub fn invariance<S: Scalar, R: Rng>(rng: &mut R, g: &SeriesMatrix<S>) -> Result<Vec<String>> {
    let ctx = g.ctx();
    let hl = gen::random_constant(rng, ctx, g.n())?;
    let hr = gen::random_integral(rng, ctx, g.n())?;
    Ok(invariance_check(g, &hl, &hr)?.violations)
}

/// The smallest pushforward degree d ≥ 2 prime to the characteristic.
pub fn pushforward_degree<S: Scalar>(ctx: &S::Ctx) -> u64 {
    let p = S::descriptor(ctx).characteristic();
    (2..).find(|d| p == 0 || d % p != 0).expect("some degree is prime to p")
}

pub fn pushforward_law<S: Scalar>(g: &SeriesMatrix<S>) -> Result<Vec<String>> {
    let d = pushforward_degree::<S>(g.ctx());
    let law = laws::check_pushforward(g, d)?;
    let mut out = flag(law.index_ok(), || format!("r(phi_{d} g) = {}, expected {}", law.actual_index, law.expected_index));
    out.extend(flag(law.residue_ok(), || {
        format!("res(phi_{d} g) = {}, expected {}", law.actual_residue, law.expected_residue)
    }));
    Ok(out)
}

/// Both Frobenius laws in characteristic p; nothing to check in
/// characteristic 0.
pub fn frobenius_laws<S: Scalar>(g: &SeriesMatrix<S>) -> Result<Vec<String>> {
    if S::descriptor(g.ctx()).characteristic() == 0 {
        return Ok(Vec::new());
    }
    let law = laws::check_frobenius_pushforward(g, 1)?;
    let mut out = flag(law.holds(), || {
        format!("Frobenius pushforward gave {} / {}", law.actual_index, law.actual_residue)
    });
    let (before, after) = laws::check_frobenius_entrywise(g, 1)?;
    out.extend(flag(before == after, || format!("r(F(g)) = {after} but r(g) = {before}")));
    Ok(out)
}

/// Indices of g1, g2 and the block-diagonal pair.
pub fn product_indices<S: Scalar>(g1: &SeriesMatrix<S>, g2: &SeriesMatrix<S>) -> Result<[IndexResult; 3]> {
    let pair = block_diagonal(g1, g2)?;
    Ok([index::index(g1)?, index::index(g2)?, index::index(&pair)?])
}

/// r((g1, g2)) = max(r(g1), r(g2)), since Σ of the pair is Σ(g1) ∩ Σ(g2).
pub fn product_max_law(ix: &[IndexResult; 3]) -> Vec<String> {
    let expected = ix[0].value().max(ix[1].value());
    flag(ix[2].value() == expected, || format!("pair index {} but the parts have {} and {}", ix[2], ix[0], ix[1]))
}

/// The printed bound r((g1, g2)) ≤ min(r(g1), r(g2)).
pub fn product_min_bound(ix: &[IndexResult; 3]) -> Vec<String> {
    let bound = ix[0].value().min(ix[1].value());
    flag(ix[2].value() <= bound, || format!("pair index {} exceeds min({}, {})", ix[2], ix[0], ix[1]))
}

/// g^-1 σ_s(g) ≡ I mod t^{M/n} for s = (m+M)/n and M ∈ {1,2,3}, or
/// mod t^M for s = M when r = 0.
pub fn congruence<S: Scalar>(g: &SeriesMatrix<S>, a: &Analysis<S>) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for m in 1..=3i64 {
        let s = match a.index {
            IndexResult::Integral => return Ok(out),
            IndexResult::Zero => Exp::from_integer(m),
            IndexResult::Positive(r) => Exp::new(r.numer() + m, *r.denom()),
        };
        if !congruence_check(g, s, m)? {
            out.push(format!("congruence fails for M = {m}, s = {s}"));
        }
    }
    Ok(out)
}

/// Jet-level comparison for an SL₂ element with integral index.
pub fn jet_comparison<S: Scalar>(g: &SeriesMatrix<S>) -> Result<(LevelRelation, Vec<String>)> {
    let j = jets::jet_residue(g)?;
    let mut out = flag(j.relation != LevelRelation::Other, || format!("w = {} against r = {}", j.w, j.index));
    out.extend(flag(j.res_along_phi_matches, || "Res along phi differs from res(g)".into()));
    out.extend(flag(j.kills_next_level, || "Res does not kill the next level".into()));
    out.extend(flag(j.trivial_on_2w_plus_1, || "Res is not trivial on J^(2w+1)".into()));
    Ok((j.relation, out))
}

/// Positive rationals with r₁ < r₂, for the monotone-membership check.
pub fn monotone_pair<R: Rng>(rng: &mut R) -> (Exp, Exp) {
    let a = Exp::new(rng.gen_range(1..=12), rng.gen_range(1..=4));
    let b = a + Exp::new(rng.gen_range(1..=6), rng.gen_range(1..=4));
    (a, b)
}

/// r₁ ∈ Σ(g) ⇒ r₂ ∈ Σ(g).
pub fn monotone_membership<S: Scalar>(g: &SeriesMatrix<S>, pair: (Exp, Exp)) -> Result<Vec<String>> {
    if g.is_integral()? {
        return Ok(Vec::new());
    }
    let (a, b) = pair;
    let ok = !oracle::member(g, a)? || oracle::member(g, b)?;
    Ok(flag(ok, || format!("{a} is a member but {b} is not")))
}

