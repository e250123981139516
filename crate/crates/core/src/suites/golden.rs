//! The worked examples of the paper as a manifest of golden cases.
//!
//! Every case carries the value printed in the paper and the value the
//! library must produce. They differ for the `Disputed` cases, where the
//! printed value does not survive a direct computation; those cases check
//! the derived value and report the printed one alongside.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grass::{self, CellKind, CellPoint, Coweight};
use crate::index::laws;
use crate::index::{self, ResidueHom};
use crate::jets;
use crate::matrix::{Group, SeriesMatrix};
use crate::oracle;
use crate::parse::parse_matrix;
use crate::poly::{AuxPoly, Var};
use crate::report::AnalysisRecord;
use crate::ring::Ring;
use crate::scalar::{Dual, Fp, PrimeModulus, Rational, Scalar};
use crate::series::{Exp, Precision, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Agrees,
    Disputed,
}

pub struct GoldenCase {
    pub id: &'static str,
    /// Where the example lives in the paper.
    pub source: &'static str,
    pub expectation: Expectation,
    /// The value as printed in the paper.
    pub printed: &'static str,
    /// The value the library must reproduce.
    pub expected: &'static str,
    run: fn() -> Result<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseOutcome {
    pub id: &'static str,
    pub source: &'static str,
    pub expectation: Expectation,
    pub printed: &'static str,
    pub expected: &'static str,
    pub computed: String,
    pub passed: bool,
}

fn q() -> &'static () {
    &()
}

fn fp(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).expect("prime")
}

fn t<S: Scalar>(ctx: &S::Ctx, k: i64) -> Series<S> {
    Series::t_pow(ctx, Exp::from_integer(k))
}

fn one_by_one<S: Scalar>(x: Series<S>) -> Result<SeriesMatrix<S>> {
    SeriesMatrix::new(vec![vec![x]], Group::GL)
}

fn unipotent<S: Scalar>(x: Series<S>) -> Result<SeriesMatrix<S>> {
    let ctx = x.ctx().clone();
    SeriesMatrix::infer(vec![vec![Series::one(&ctx), x], vec![Series::zero(&ctx), Series::one(&ctx)]])
}

fn gl2<S: Scalar>(ctx: &S::Ctx, a: i64, p: Series<S>, d: i64) -> Result<SeriesMatrix<S>> {
    SeriesMatrix::infer(vec![vec![t(ctx, a), p], vec![Series::zero(ctx), t(ctx, d)]])
}

fn res_text<S: Scalar>(r: &ResidueHom<S>) -> String {
    match r.matrix() {
        Some(m) if m.n() == 1 => m.entry(0, 0).to_string(),
        Some(m) => m.to_string(),
        None => "trivial".into(),
    }
}

/// The additive residue of a unipotent element as its upper-right entry.
fn corner<S: Scalar>(r: &ResidueHom<S>) -> String {
    match r.matrix() {
        Some(m) if m.n() == 2 => m.entry(0, 1).to_string(),
        _ => res_text(r),
    }
}

fn joined(parts: impl IntoIterator<Item = Result<String>>) -> Result<String> {
    Ok(parts.into_iter().collect::<Result<Vec<_>>>()?.join("; "))
}

fn invert_dual() -> Result<String> {
    let eps = Dual::<Rational>::epsilon(q()).expect("dual numbers have epsilon");
    let g = Series::one(q()).add(&Series::monomial(AuxPoly::constant(eps), -Exp::one()));
    Ok(g.invert(Exp::from_integer(4))?.truncate(Exp::one()).to_string())
}

fn sigma_t_minus_d() -> Result<String> {
    joined((1..=3).map(|d| {
        let s = t::<Rational>(q(), -d).subst_sigma(Exp::from_integer(d), Exp::one())?;
        Ok(format!("d={d}: {}", s.coeff(Exp::zero())?))
    }))
}

fn sigma_t_minus_p() -> Result<String> {
    joined([2u64, 3, 5].map(|p| {
        let ctx = fp(p);
        let s = t::<Fp>(&ctx, -(p as i64)).subst_sigma(Exp::one(), Exp::one())?;
        Ok(format!("p={p}: {s}"))
    }))
}

fn lambda_t_minus_d() -> Result<String> {
    joined((1..=3).map(|d| Ok(format!("d={d}: {}", t::<Rational>(q(), -d).subst_lambda(Var::Lambda)?))))
}

fn specialize_lambda() -> Result<String> {
    joined((1..=3).map(|d| {
        let l = AuxPoly::<Rational>::var(q(), Var::Lambda).pow_i(d)?;
        Ok(Series::constant(l).specialize_t0()?.to_string())
    }))
}

fn det_upper() -> Result<String> {
    let p = Series::from_scalars(q(), [(Exp::zero(), Rational::integer(1)), (Exp::one(), Rational::integer(5))], Precision::Exact);
    joined([(1, 1), (2, 1), (3, 2), (-1, 1)].map(|(a, d)| Ok(format!("({a},{d}): {}", gl2::<Rational>(q(), a, p.clone(), d)?.det()))))
}

fn inverse_section_3_1() -> Result<String> {
    let g = gl2::<Rational>(q(), 1, Series::one(q()), 1)?;
    Ok(g.inverse(Exp::from_integer(4))?.to_string())
}

fn support_binomials() -> Result<String> {
    joined([2u64, 3, 5].map(|p| {
        let ctx = fp(p);
        let g = unipotent(t::<Fp>(&ctx, -(p as i64)))?;
        let a = index::analyze(&g)?;
        let table = a.table.ok_or(Error::IntegralInput)?;
        let mut bs: Vec<u32> = table.records.iter().filter(|r| r.a < table.nd).map(|r| r.b).collect();
        bs.sort();
        bs.dedup();
        let powers = bs.iter().all(|b| (0..8).any(|k| p.pow(k) == *b as u64));
        Ok(format!("p={p}: b in {bs:?}, p-powers {powers}, residue {}", corner(&a.residue)))
    }))
}

fn index_example_a() -> Result<String> {
    joined([(1, 1), (2, 1), (3, 2)].map(|(a, d)| {
        Ok(format!("({a},{d}): {}", index::index(&gl2::<Rational>(q(), a, Series::one(q()), d)?)?))
    }))
}

fn index_dual() -> Result<String> {
    let g = parse_matrix::<Dual<Rational>>("[[1 + e*t^-1]]", q())?;
    Ok(index::index(&g)?.to_string())
}

fn index_example_b() -> Result<String> {
    let ctx = fp(2);
    let g = gl2::<Fp>(&ctx, 17, t(&ctx, 4), 2)?;
    let r = index::index(&g)?;
    let r_val = r.value();
    let eps = Exp::new(1, 4);
    let member = oracle::member(&g, r_val)? && !oracle::member(&g, r_val - eps)?;
    Ok(format!("{r}, oracle {}", if member { "confirms" } else { "disagrees" }))
}

fn index_gm() -> Result<String> {
    joined((1..=3).map(|d| Ok(format!("d={d}: {}", index::index(&one_by_one(t::<Rational>(q(), -d))?)?))))
}

fn residue_gm() -> Result<String> {
    joined((1..=3).map(|d| Ok(format!("d={d}: {}", res_text(&index::residue(&one_by_one(t::<Rational>(q(), -d))?)?)))))
}

fn residue_ga_q() -> Result<String> {
    joined((1..=3).map(|d| Ok(format!("d={d}: {}", corner(&index::residue(&unipotent(t::<Rational>(q(), -d))?)?)))))
}

fn residue_ga_fp() -> Result<String> {
    joined([2u64, 3, 5].map(|p| {
        let ctx = fp(p);
        Ok(format!("p={p}: {}", corner(&index::residue(&unipotent(t::<Fp>(&ctx, -(p as i64)))?)?)))
    }))
}

fn residue_example_a() -> Result<String> {
    joined([(1, 1), (2, 1), (3, 2)].map(|(a, d)| {
        Ok(format!("({a},{d}): {}", res_text(&index::residue(&gl2::<Rational>(q(), a, Series::one(q()), d)?)?)))
    }))
}

fn residue_example_c() -> Result<String> {
    joined([(-1, 1), (-2, 3)].map(|(a, d)| {
        Ok(format!("({a},{d}): {}", res_text(&index::residue(&gl2::<Rational>(q(), a, Series::one(q()), d)?)?)))
    }))
}

fn hom_fp() -> Result<String> {
    joined([2u64, 3, 5].map(|p| {
        let ctx = fp(p);
        let a = index::analyze(&unipotent(t::<Fp>(&ctx, -(p as i64)))?)?;
        Ok(format!("p={p}: {}", a.residue.verify_hom()))
    }))
}

fn left_index_section_3_1() -> Result<String> {
    Ok(laws::left_index(&gl2::<Rational>(q(), 1, Series::one(q()), 1)?)?.to_string())
}

fn index_section_3_1() -> Result<String> {
    Ok(index::index(&gl2::<Rational>(q(), 1, Series::one(q()), 1)?)?.to_string())
}

fn left_residue_gm() -> Result<String> {
    joined((1..=3).map(|d| Ok(format!("d={d}: {}", res_text(&laws::left_residue(&one_by_one(t::<Rational>(q(), -d))?)?)))))
}

fn pushforward_ga() -> Result<String> {
    let law = laws::check_pushforward(&unipotent(t::<Rational>(q(), -1))?, 2)?;
    Ok(format!("{}, {}, law {}", law.actual_index, corner(&law.actual_residue), law.holds()))
}

fn pushforward_gm() -> Result<String> {
    let law = laws::check_pushforward(&one_by_one(t::<Rational>(q(), -1))?, 3)?;
    Ok(format!("{}, law {}", res_text(&law.actual_residue), law.holds()))
}

fn frobenius_entrywise() -> Result<String> {
    joined([2u64, 3, 5].map(|p| {
        let ctx = fp(p);
        let g = gl2::<Fp>(&ctx, 1, Series::one(&ctx), 1)?;
        let (a, b) = laws::check_frobenius_entrywise(&g, 1)?;
        Ok(format!("p={p}: {a} -> {b}"))
    }))
}

fn congruence_zero() -> Result<String> {
    let samples = [
        one_by_one(t::<Rational>(q(), -2))?,
        gl2::<Rational>(q(), -1, Series::one(q()), 1)?,
        Coweight(vec![2, 0, -2]).t_power::<Rational>(q()),
    ];
    joined(samples.iter().map(|g| laws::congruence_check(g, Exp::one(), 1).map(|b| b.to_string())))
}

fn jets_gm() -> Result<String> {
    joined((1..=3).map(|d| {
        let j = jets::jet_residue(&one_by_one(t::<Rational>(q(), -d))?)?;
        Ok(format!("d={d}: w={}", j.w))
    }))
}

fn jets_ga_phi() -> Result<String> {
    joined((1..=3).map(|d| {
        let g = unipotent(t::<Rational>(q(), -d))?;
        let j = jets::jet_residue(&g)?;
        let mut assign = BTreeMap::new();
        for i in 1..=(2 * j.w + 2) as u16 {
            assign.insert(Var::Jet(i), AuxPoly::zero(q()));
        }
        assign.insert(Var::Jet(1), AuxPoly::one(q()));
        assign.insert(Var::Jet(d as u16 + 1), AuxPoly::var(q(), Var::U));
        let along = j.res.entry(0, 1).substitute(&assign)?;
        Ok(format!("d={d}: {along}"))
    }))
}

fn jets_no_next_coefficient() -> Result<String> {
    joined((1..=3).map(|d| {
        let j = jets::jet_residue(&unipotent(t::<Rational>(q(), -d))?)?;
        let next = Var::Jet(j.w as u16 + 2);
        let free = (0..2).all(|a| (0..2).all(|b| !j.res.entry(a, b).mentions(next)));
        Ok(format!("d={d}: {}", free && j.kills_next_level))
    }))
}

fn jets_multiplicative() -> Result<String> {
    joined((1..=3).map(|d| {
        let j = jets::jet_residue(&one_by_one(t::<Rational>(q(), -d))?)?;
        let mut assign = BTreeMap::new();
        for i in 2..=(2 * j.w + 2) as u16 {
            assign.insert(Var::Jet(i), AuxPoly::zero(q()));
        }
        assign.insert(Var::Jet(1), AuxPoly::var(q(), Var::Lambda));
        let along = j.res.entry(0, 0).substitute(&assign)?;
        Ok(format!("d={d}: {along}, matches res {}", j.res_along_phi_matches))
    }))
}

fn example_c_membership() -> Result<String> {
    let g = gl2::<Rational>(q(), -1, Series::one(q()), 1)?;
    let res = index::residue(&g)?;
    let m = res.matrix().ok_or(Error::TrivialResidue)?;
    // g'' = res(g)(t^-1)·g; the residue is diagonal in λ.
    let mut rows = SeriesMatrix::identity(q(), 2).into_rows();
    for (i, row) in rows.iter_mut().enumerate() {
        let k = m.entry(i, i).degree_in(Var::Lambda).unwrap_or(0) as i64;
        row[i] = t(q(), -k);
    }
    let g2 = SeriesMatrix::infer(rows)?.mul(&g)?;
    let integral = oracle::lambda_integral(&g2)?;
    let mu = grass::cartan_coweight(&g)?;
    let h = grass::cell_membership_index_zero(&g, &mu)?;
    Ok(format!("g'' = {g2}, lambda-integral {integral}, membership found {}", h.is_some()))
}

fn example_a_no_membership() -> Result<String> {
    joined([(1, 1), (2, 1), (3, 2)].map(|(a, d)| {
        let g = gl2::<Rational>(q(), a, Series::one(q()), d)?;
        let mu = grass::cartan_coweight(&g)?;
        Ok(format!("({a},{d}): found {}", grass::solve_cell_membership(&g, &mu)?.is_some()))
    }))
}

fn minuscule() -> Result<String> {
    let p = CellPoint { ctx: (), mu: Coweight(vec![1, 0]), kind: CellKind::<Rational>::Minuscule };
    let g = p.assemble()?;
    let res = index::residue(&g)?;
    Ok(format!("{}, res {}", index::index(&g)?, res_text(&res)))
}

fn quasi_minuscule() -> Result<String> {
    joined([1i64, 2, -3].map(|x| {
        let p = CellPoint { ctx: (), mu: Coweight(vec![1, -1]), kind: CellKind::QuasiMinuscule { x: Rational::integer(x) } };
        Ok(format!("x={x}: {}", index::index(&p.assemble()?)?))
    }))
}

fn rank_one_p_zero() -> Result<String> {
    joined((2..=4).map(|m| {
        let p = CellPoint { ctx: (), mu: grass::rank_one_coweight(m), kind: CellKind::RankOne { p: vec![Rational::zero(q()); m as usize - 1] } };
        Ok(format!("m={m}: {}", index::index(&p.assemble()?)?))
    }))
}

fn rank_one_p_t() -> Result<String> {
    let p = CellPoint { ctx: (), mu: Coweight(vec![2, -2]), kind: CellKind::RankOne { p: vec![Rational::one(q()), Rational::zero(q()), Rational::zero(q())] } };
    Ok(index::index(&p.assemble()?)?.to_string())
}

fn parse_dual() -> Result<String> {
    let g = parse_matrix::<Dual<Rational>>("[[1, e*t^-1],[0,1]]", q())?;
    let a = index::analyze(&g)?;
    Ok(format!("{:?}, index {}, residue {}", g.group(), a.index, corner(&a.residue)))
}

fn parse_fp2() -> Result<String> {
    let ctx = fp(2);
    let g = parse_matrix::<Fp>("[[t^2, t^16],[0, t^-2]]", &ctx)?;
    let r = index::index(&g)?;
    let agree = oracle::half_line_violation(&g, r, &oracle::probe_points(r, &[], 20))?.is_none();
    Ok(format!("{:?}, index {r}, oracle agrees {agree}", g.group()))
}

fn cli_index_record() -> Result<String> {
    let g = parse_matrix::<Rational>("[[t^1,1],[0,t^1]]", q())?;
    let rec = AnalysisRecord::new(&index::analyze(&g)?, q(), 2);
    serde_json::to_string(&rec.index).map_err(|e| Error::InvalidSubstitution(e.to_string()))
}

use Expectation::{Agrees, Disputed};

/// The manifest. Over 𝔽_p, −c renders as p − c (so −u³ is `2*u^3` in
/// 𝔽₃). Every worked example of the paper appears here exactly
/// once; [`run_all`] fails if a case cannot be run.
pub static MANIFEST: &[GoldenCase] = &[
    GoldenCase { id: "dual-inverse", source: "dual numbers example", expectation: Agrees, printed: "1 - e*t^-1", expected: "-e*t^-1 + 1 + O(t)", run: invert_dual },
    GoldenCase { id: "sigma-t-minus-d", source: "G_a over Q example", expectation: Agrees, printed: "-d*u", expected: "d=1: -u; d=2: -2*u; d=3: -3*u", run: sigma_t_minus_d },
    GoldenCase { id: "sigma-t-minus-p", source: "G_a over F_p example", expectation: Agrees, printed: "t^-p - u^p + O(t)", expected: "p=2: t^-2 + u^2 + O(t); p=3: t^-3 + 2*u^3 + O(t); p=5: t^-5 + 4*u^5 + O(t)", run: sigma_t_minus_p },
    GoldenCase { id: "lambda-t-minus-d", source: "G_m example", expectation: Agrees, printed: "l^-d*t^-d", expected: "d=1: l^-1*t^-1; d=2: l^-2*t^-2; d=3: l^-3*t^-3", run: lambda_t_minus_d },
    GoldenCase { id: "specialize-lambda", source: "G_m example", expectation: Agrees, printed: "l^d", expected: "l; l^2; l^3", run: specialize_lambda },
    GoldenCase { id: "det-upper-triangular", source: "triangular examples", expectation: Agrees, printed: "t^(a+d)", expected: "(1,1): t^2; (2,1): t^3; (3,2): t^5; (-1,1): 1", run: det_upper },
    GoldenCase { id: "inverse-left-right", source: "left and right indices", expectation: Disputed, printed: "[[t^-1, -t^2], [0, t^-1]]", expected: "[[t^-1, -t^-2], [0, t^-1]]", run: inverse_section_3_1 },
    GoldenCase { id: "support-binomials-fp", source: "G_a over F_p example", expectation: Agrees, printed: "only -u^p survives", expected: "p=2: b in [2], p-powers true, residue u^2; p=3: b in [3], p-powers true, residue 2*u^3; p=5: b in [5], p-powers true, residue 4*u^5", run: support_binomials },
    GoldenCase { id: "index-triangular-a", source: "triangular example (a)", expectation: Agrees, printed: "r = a", expected: "(1,1): 1; (2,1): 2; (3,2): 3", run: index_example_a },
    GoldenCase { id: "index-dual-unit", source: "dual numbers example", expectation: Agrees, printed: "1", expected: "1", run: index_dual },
    GoldenCase { id: "index-triangular-b", source: "triangular example (b)", expectation: Disputed, printed: "25/2", expected: "13/2, oracle confirms", run: index_example_b },
    GoldenCase { id: "index-gm", source: "G_m example", expectation: Agrees, printed: "0", expected: "d=1: 0; d=2: 0; d=3: 0", run: index_gm },
    GoldenCase { id: "residue-gm", source: "G_m example", expectation: Disputed, printed: "l^d", expected: "d=1: l^-1; d=2: l^-2; d=3: l^-3", run: residue_gm },
    GoldenCase { id: "residue-ga-q", source: "G_a over Q example", expectation: Agrees, printed: "-d*u", expected: "d=1: -u; d=2: -2*u; d=3: -3*u", run: residue_ga_q },
    GoldenCase { id: "residue-ga-fp", source: "G_a over F_p example", expectation: Agrees, printed: "-u^p", expected: "p=2: u^2; p=3: 2*u^3; p=5: 4*u^5", run: residue_ga_fp },
    GoldenCase { id: "residue-triangular-a", source: "triangular example (a)", expectation: Agrees, printed: "[[1, -d*u], [0, 1]]", expected: "(1,1): [[1, -u], [0, 1]]; (2,1): [[1, -u], [0, 1]]; (3,2): [[1, -2*u], [0, 1]]", run: residue_example_a },
    GoldenCase { id: "residue-triangular-c", source: "triangular example (c)", expectation: Agrees, printed: "diag(l^a, l^d)", expected: "(-1,1): [[l^-1, 0], [0, l]]; (-2,3): [[l^-2, 0], [0, l^3]]", run: residue_example_c },
    GoldenCase { id: "residue-hom-fp", source: "G_a over F_p example", expectation: Agrees, printed: "true", expected: "p=2: true; p=3: true; p=5: true", run: hom_fp },
    GoldenCase { id: "left-index-left-right", source: "left and right indices", expectation: Disputed, printed: "0", expected: "1", run: left_index_section_3_1 },
    GoldenCase { id: "index-left-right", source: "left and right indices", expectation: Agrees, printed: "1", expected: "1", run: index_section_3_1 },
    GoldenCase { id: "left-residue-gm", source: "left and right indices", expectation: Disputed, printed: "l^-d", expected: "d=1: l; d=2: l^2; d=3: l^3", run: left_residue_gm },
    GoldenCase { id: "pushforward-ga", source: "Lemma on pushforwards", expectation: Agrees, printed: "2, -2*u", expected: "2, -2*u, law true", run: pushforward_ga },
    GoldenCase { id: "pushforward-gm", source: "Lemma on pushforwards", expectation: Disputed, printed: "l^3", expected: "l^-3, law true", run: pushforward_gm },
    GoldenCase { id: "frobenius-entrywise", source: "Corollary on Frobenius", expectation: Agrees, printed: "r(F_e(g)) = r(g)", expected: "p=2: 1 -> 1; p=3: 1 -> 1; p=5: 1 -> 1", run: frobenius_entrywise },
    GoldenCase { id: "congruence-index-zero", source: "Lemma on congruences", expectation: Agrees, printed: "true", expected: "true; true; true", run: congruence_zero },
    GoldenCase { id: "jets-gm-level", source: "Lemma on jet levels", expectation: Agrees, printed: "0 or 1", expected: "d=1: w=0; d=2: w=0; d=3: w=0", run: jets_gm },
    GoldenCase { id: "jets-ga-along-phi", source: "Lemma on jet levels", expectation: Agrees, printed: "-d*u", expected: "d=1: -u; d=2: -2*u; d=3: -3*u", run: jets_ga_phi },
    GoldenCase { id: "jets-next-coefficient", source: "Lemma on jet levels", expectation: Agrees, printed: "a_(w+2) absent", expected: "d=1: true; d=2: true; d=3: true", run: jets_no_next_coefficient },
    GoldenCase { id: "jets-multiplicative", source: "Lemma on jet levels", expectation: Agrees, printed: "res(g)(a_1)", expected: "d=1: l^-1, matches res true; d=2: l^-2, matches res true; d=3: l^-3, matches res true", run: jets_multiplicative },
    GoldenCase { id: "cell-membership-triangular-c", source: "triangular example (c)", expectation: Agrees, printed: "g'' integral up to lambda", expected: "g'' = [[1, t], [0, 1]], lambda-integral true, membership found true", run: example_c_membership },
    GoldenCase { id: "cell-membership-triangular-a", source: "Fixed-point criterion", expectation: Agrees, printed: "none", expected: "(1,1): found false; (2,1): found false; (3,2): found false", run: example_a_no_membership },
    GoldenCase { id: "cell-minuscule", source: "Minuscule cells", expectation: Agrees, printed: "r = 0, res = t^mu", expected: "0, res [[l, 0], [0, 1]]", run: minuscule },
    GoldenCase { id: "cell-quasi-minuscule", source: "Quasi-minuscule cells", expectation: Agrees, printed: "<mu,gamma> - 1 = 1", expected: "x=1: 1; x=2: 1; x=-3: 1", run: quasi_minuscule },
    GoldenCase { id: "rank-one-p-zero", source: "Final corollary", expectation: Agrees, printed: "0", expected: "m=2: 0; m=3: 0; m=4: 0", run: rank_one_p_zero },
    GoldenCase { id: "rank-one-p-t", source: "Final corollary", expectation: Agrees, printed: "not 0", expected: "3", run: rank_one_p_t },
    GoldenCase { id: "parse-dual-unipotent", source: "dual numbers example", expectation: Agrees, printed: "r = 1", expected: "SL, index 1, residue -e*u", run: parse_dual },
    GoldenCase { id: "parse-fp2-triangular-b", source: "triangular example (b)", expectation: Agrees, printed: "family member", expected: "SL, index 0, oracle agrees true", run: parse_fp2 },
    GoldenCase { id: "cli-index-triangular-a", source: "triangular example (a)", expectation: Agrees, printed: "{\"kind\":\"positive\",\"num\":1,\"den\":1}", expected: "{\"kind\":\"positive\",\"num\":1,\"den\":1}", run: cli_index_record },
];

pub fn run_case(case: &GoldenCase) -> CaseOutcome {
    let computed = match (case.run)() {
        Ok(s) => s,
        Err(e) => format!("error: {e}"),
    };
    CaseOutcome {
        id: case.id,
        source: case.source,
        expectation: case.expectation,
        printed: case.printed,
        expected: case.expected,
        passed: computed == case.expected,
        computed,
    }
}

pub fn run_all() -> Vec<CaseOutcome> {
    MANIFEST.iter().map(run_case).collect()
}

pub fn find(id: &str) -> Option<&'static GoldenCase> {
    MANIFEST.iter().find(|c| c.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = MANIFEST.iter().map(|c| c.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), MANIFEST.len());
    }

    #[test]
    fn disputed_cases_differ_from_the_print() {
        for c in MANIFEST.iter().filter(|c| c.expectation == Disputed) {
            assert_ne!(c.printed, c.expected, "{}", c.id);
        }
    }
}
