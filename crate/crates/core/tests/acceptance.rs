//! Acceptance run: one PASS/FAIL line per criterion, with the sub-checks
//! underneath.
//!
//! A few literal values printed in the paper do not survive a direct
//! computation. Those sub-checks are kept exactly as printed and stay red;
//! they are listed in `KNOWN_RED`. The process exits non-zero only when the
//! set of red sub-checks differs from that list, so a new regression or a
//! stale entry both fail the run.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ramification::index::{self, laws, ResidueHom};
use ramification::parse::parse_matrix;
use ramification::suites::{golden, jet_suite, law_suite, grass_suite, index_suite, props, JetLevelCounts, Tally};
use ramification::{Dual, Fp, PrimeModulus, Rational, Result, Scalar};

const SEED: u64 = 42;

/// Sub-checks that reproduce a printed value the computation contradicts.
const KNOWN_RED: &[&str] = &[
    "1/G_m residue is l^d",
    "1/triangular example (b) index is 25/2",
    "1/left index of [[t,1],[0,t]] is 0",
    "4/product index at most the min SL2/q",
    "4/product index at most the min SL2/fp:2",
    "4/product index at most the min SL2/fp:5",
];

struct Check {
    name: String,
    ok: bool,
    detail: Vec<String>,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool) -> Self {
        Check { name: name.into(), ok, detail: Vec::new() }
    }

    fn with(mut self, detail: impl Into<String>) -> Self {
        self.detail.push(detail.into());
        self
    }

    fn literal(name: &str, printed: &str, computed: Result<String>) -> Self {
        match computed {
            Ok(c) => Check::new(name, c == printed).with(format!("printed {printed}, computed {c}")),
            Err(e) => Check::new(name, false).with(format!("error: {e}")),
        }
    }

    fn tally(t: &Tally) -> Self {
        let mut c = Check::new(t.name.clone(), t.passed()).with(format!("{} runs, {} failed", t.runs, t.failed));
        c.detail.extend(t.examples.iter().take(2).cloned());
        c
    }

    fn timed(name: &str, took: Duration, limit: Duration) -> Self {
        Check::new(name, took < limit).with(format!("{:.2} s, limit {} s", took.as_secs_f64(), limit.as_secs()))
    }
}

struct Criterion {
    number: usize,
    title: &'static str,
    checks: Vec<Check>,
    note: Option<String>,
}

impl Criterion {
    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    fn print(&self) {
        println!("{} criterion {}: {}", if self.passed() { "PASS" } else { "FAIL" }, self.number, self.title);
        for c in &self.checks {
            println!("    {} {}", if c.ok { "ok  " } else { "RED " }, c.name);
            for d in &c.detail {
                println!("         {d}");
            }
        }
        if let Some(n) = &self.note {
            println!("    note: {n}");
        }
    }

    fn red(&self) -> impl Iterator<Item = String> + '_ {
        self.checks.iter().filter(|c| !c.ok).map(move |c| format!("{}/{}", self.number, c.name))
    }
}

fn fp(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).expect("prime")
}

fn index_of<S: Scalar>(src: &str, ctx: &S::Ctx) -> Result<String> {
    Ok(index::index(&parse_matrix::<S>(src, ctx)?)?.to_string())
}

fn residue_text<S: Scalar>(r: &ResidueHom<S>) -> String {
    match r.matrix() {
        Some(m) if m.n() == 1 => m.entry(0, 0).to_string(),
        Some(m) => m.to_string(),
        None => "trivial".into(),
    }
}

fn residue_of<S: Scalar>(src: &str, ctx: &S::Ctx) -> Result<String> {
    Ok(residue_text(&index::residue(&parse_matrix::<S>(src, ctx)?)?))
}

fn corner_of<S: Scalar>(src: &str, ctx: &S::Ctx) -> Result<String> {
    let r = index::residue(&parse_matrix::<S>(src, ctx)?)?;
    Ok(r.matrix().map(|m| m.entry(0, 1).to_string()).unwrap_or_else(|| "trivial".into()))
}

fn each(values: impl IntoIterator<Item = Result<String>>) -> Result<String> {
    Ok(values.into_iter().collect::<Result<Vec<_>>>()?.join("; "))
}

/// The worked examples, each compared with the value as printed.
fn worked_examples() -> Vec<Check> {
    let q = &();
    let mut out = vec![
        Check::literal("G_m index is 0", "0; 0; 0", each((1..=3).map(|d| index_of::<Rational>(&format!("[[t^-{d}]]"), q)))),
        Check::literal("G_m residue is l^d", "l; l^2; l^3", each((1..=3).map(|d| residue_of::<Rational>(&format!("[[t^-{d}]]"), q)))),
        Check::literal("dual numbers index is 1", "1", index_of::<Dual<Rational>>("[[1 + e*t^-1]]", q)),
        Check::literal(
            "G_a over Q index is d",
            "1; 2; 3",
            each((1..=3).map(|d| index_of::<Rational>(&format!("[[1, t^-{d}], [0, 1]]"), q))),
        ),
        Check::literal(
            "G_a over Q residue is -d*u",
            "-u; -2*u; -3*u",
            each((1..=3).map(|d| corner_of::<Rational>(&format!("[[1, t^-{d}], [0, 1]]"), q))),
        ),
        Check::literal(
            "G_a over F_p index is 1",
            "1; 1; 1",
            each([2u64, 3, 5].map(|p| index_of::<Fp>(&format!("[[1, t^-{p}], [0, 1]]"), &fp(p)))),
        ),
        // -u^p, with -c rendered as p - c.
        Check::literal(
            "G_a over F_p residue is -u^p",
            "u^2; 2*u^3; 4*u^5",
            each([2u64, 3, 5].map(|p| corner_of::<Fp>(&format!("[[1, t^-{p}], [0, 1]]"), &fp(p)))),
        ),
        Check::literal(
            "triangular example (a) index is a",
            "1; 2; 3",
            each([(1, 1), (2, 1), (3, 2)].map(|(a, d)| index_of::<Rational>(&format!("[[t^{a}, 1], [0, t^{d}]]"), q))),
        ),
        Check::literal(
            "triangular example (a) residue is [[1, -d*u], [0, 1]]",
            "[[1, -u], [0, 1]]; [[1, -u], [0, 1]]; [[1, -2*u], [0, 1]]",
            each([(1, 1), (2, 1), (3, 2)].map(|(a, d)| residue_of::<Rational>(&format!("[[t^{a}, 1], [0, t^{d}]]"), q))),
        ),
        Check::literal("triangular example (b) index is 25/2", "25/2", index_of::<Fp>("[[t^17, t^4], [0, t^2]]", &fp(2))),
        Check::literal("triangular example (c) index is 0", "0", index_of::<Rational>("[[t^-1, 1], [0, t]]", q)),
        Check::literal(
            "triangular example (c) residue is diag(l^-1, l)",
            "[[l^-1, 0], [0, l]]",
            residue_of::<Rational>("[[t^-1, 1], [0, t]]", q),
        ),
        Check::literal("index of [[t,1],[0,t]] is 1", "1", index_of::<Rational>("[[t, 1], [0, t]]", q)),
        Check::literal(
            "left index of [[t,1],[0,t]] is 0",
            "0",
            parse_matrix::<Rational>("[[t, 1], [0, t]]", q).and_then(|g| Ok(laws::left_index(&g)?.to_string())),
        ),
    ];
    let membership = golden::run_case(golden::find("cell-membership-triangular-c").expect("case exists"));
    out.push(Check::new("triangular example (c) g'' display is integral", membership.passed).with(membership.computed));
    out
}

fn criterion_1() -> Criterion {
    let start = Instant::now();
    let mut checks = worked_examples();
    let outcomes = golden::run_all();
    let reproduced = outcomes.iter().filter(|o| o.passed).count();
    let took = start.elapsed();
    checks.push(
        Check::new("every worked example reproduces its derived value", reproduced == outcomes.len())
            .with(format!("{reproduced}/{} golden cases", outcomes.len())),
    );
    checks.push(Check::timed("total time", took, Duration::from_secs(1)));
    Criterion { number: 1, title: "worked examples, exact", checks, note: None }
}

/// The index suites over Q, F2 and F5 in SL2 and SL3.
fn index_runs(count: usize) -> (Vec<Tally>, Duration) {
    let start = Instant::now();
    let (f2, f5) = (fp(2), fp(5));
    let mut out = Vec::new();
    for n in [2, 3] {
        out.extend(index_suite::<Rational>(&(), n, SEED, count));
        out.extend(index_suite::<Fp>(&f2, n, SEED, count));
        out.extend(index_suite::<Fp>(&f5, n, SEED, count));
    }
    (out, start.elapsed())
}

fn named<'a>(tallies: &'a [Tally], prefix: &'a str) -> impl Iterator<Item = &'a Tally> + 'a {
    tallies.iter().filter(move |t| t.name.starts_with(prefix))
}

fn criterion_2(tallies: &[Tally], took: Duration) -> Criterion {
    let mut checks: Vec<Check> = named(tallies, "oracle equivalence").map(Check::tally).collect();
    checks.extend(named(tallies, "monotone membership").map(Check::tally));
    checks.push(Check::timed("total time", took, Duration::from_secs(60)));
    Criterion { number: 2, title: "closed-form index against the substitution oracle", checks, note: None }
}

fn hom_problems<S: Scalar>(src: &str, ctx: &S::Ctx) -> Vec<String> {
    match parse_matrix::<S>(src, ctx).and_then(|g| index::analyze(&g)) {
        Ok(a) => props::residue_checks(&a).into_iter().map(|p| format!("{src}: {p}")).collect(),
        Err(e) => vec![format!("{src}: error: {e}")],
    }
}

fn criterion_3(tallies: &[Tally]) -> Criterion {
    let q = &();
    let mut problems = Vec::new();
    let mut runs = 0;
    for d in 1..=3 {
        problems.extend(hom_problems::<Rational>(&format!("[[t^-{d}]]"), q));
        problems.extend(hom_problems::<Rational>(&format!("[[1, t^-{d}], [0, 1]]"), q));
        runs += 2;
    }
    for p in [2u64, 3, 5] {
        problems.extend(hom_problems::<Fp>(&format!("[[1, t^-{p}], [0, 1]]"), &fp(p)));
        runs += 1;
    }
    for (a, d) in [(1, 1), (2, 1), (3, 2), (-1, 1)] {
        problems.extend(hom_problems::<Rational>(&format!("[[t^{a}, 1], [0, t^{d}]]"), q));
        runs += 1;
    }
    problems.extend(hom_problems::<Rational>("[[t, 1], [0, t]]", q));
    problems.extend(hom_problems::<Dual<Rational>>("[[1 + e*t^-1]]", q));
    problems.extend(hom_problems::<Fp>("[[t^17, t^4], [0, t^2]]", &fp(2)));
    runs += 3;
    let mut checks = vec![Check::new("worked examples", problems.is_empty()).with(format!("{runs} residues, {} failed", problems.len()))];
    checks.last_mut().expect("just pushed").detail.extend(problems.into_iter().take(2));
    checks.extend(named(tallies, "residue homomorphism").map(Check::tally));
    Criterion { number: 3, title: "residue is a homomorphism, non-trivial, two paths agree", checks, note: None }
}

fn criterion_4() -> Criterion {
    let (f2, f5) = (fp(2), fp(5));
    let mut checks = Vec::new();
    for (tallies, bound) in [law_suite::<Rational>(&(), SEED, 100), law_suite::<Fp>(&f2, SEED, 100), law_suite::<Fp>(&f5, SEED, 100)] {
        checks.extend(tallies.iter().map(Check::tally));
        checks.push(Check::tally(&bound));
    }
    Criterion {
        number: 4,
        title: "invariance, pushforward, Frobenius, product and congruence laws",
        checks,
        note: Some("the product index is the max of the two indices; the printed bound by the min fails whenever they differ".into()),
    }
}

fn criterion_5(fp_tallies: &[Tally]) -> Criterion {
    let mut checks: Vec<Check> = Vec::new();
    for n in [2, 3] {
        let t = index_suite::<Rational>(&(), n, SEED ^ 0x494e_5447, 150);
        checks.extend(named(&t, "integrality").map(Check::tally));
    }
    checks.extend(named(fp_tallies, "integrality").filter(|t| t.name.contains("fp:")).map(Check::tally));
    Criterion { number: 5, title: "integrality of the index", checks, note: None }
}

fn criterion_6() -> Criterion {
    let mut counts = JetLevelCounts::default();
    let mut checks = Vec::new();
    for (tally, c) in [jet_suite::<Rational>(&(), SEED, 30), jet_suite::<Fp>(&fp(5), SEED, 30)] {
        checks.push(Check::tally(&tally));
        counts.equals_index += c.equals_index;
        counts.index_plus_one += c.index_plus_one;
        counts.other += c.other;
    }
    checks.push(
        Check::new("jet level is r or r + 1", counts.other == 0)
            .with(format!("w = r: {}, w = r + 1: {}, other: {}", counts.equals_index, counts.index_plus_one, counts.other)),
    );
    let which = if counts.index_plus_one == 0 { "w = r in every sample" } else { "both w = r and w = r + 1 occur" };
    Criterion { number: 6, title: "jet comparison", checks, note: Some(which.into()) }
}

fn criterion_7() -> Criterion {
    let start = Instant::now();
    let mut checks: Vec<Check> = grass_suite::<Rational>(&(), SEED, 100).iter().map(Check::tally).collect();
    checks.extend(grass_suite::<Fp>(&fp(5), SEED, 100).iter().map(Check::tally));
    checks.push(Check::timed("total time", start.elapsed(), Duration::from_secs(60)));
    Criterion { number: 7, title: "affine Grassmannian", checks, note: None }
}

fn main() -> ExitCode {
    let (index_tallies, index_time) = index_runs(200);
    let criteria = [
        criterion_1(),
        criterion_2(&index_tallies, index_time),
        criterion_3(&index_tallies),
        criterion_4(),
        criterion_5(&index_tallies),
        criterion_6(),
        criterion_7(),
    ];
    for c in &criteria {
        c.print();
    }
    let red: BTreeSet<String> = criteria.iter().flat_map(Criterion::red).collect();
    let known: BTreeSet<String> = KNOWN_RED.iter().map(|s| s.to_string()).collect();
    let passed = criteria.iter().filter(|c| c.passed()).count();
    println!("{passed}/{} criteria pass; {} red sub-checks are known deviations of the printed text", criteria.len(), known.len());
    let unexpected: Vec<_> = red.difference(&known).collect();
    let stale: Vec<_> = known.difference(&red).collect();
    if unexpected.is_empty() && stale.is_empty() {
        return ExitCode::SUCCESS;
    }
    for u in unexpected {
        println!("unexpected red sub-check: {u}");
    }
    for s in stale {
        println!("known deviation no longer red: {s}");
    }
    ExitCode::FAILURE
}
