//! Bundled suites: the worked examples of the paper ([`golden`]) and the
//! seeded randomized invariants run by `ramify property-suite`.

pub mod cells;
pub mod gen;
pub mod golden;
pub mod props;

use serde::Serialize;

use crate::index::{self, IndexResult};
use crate::jets::LevelRelation;
use crate::scalar::{Fp, PrimeModulus, Rational, Scalar};
pub use props::Tally;

/// Tallies of one randomized run.
#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub count: usize,
    pub tallies: Vec<Tally>,
    /// Checks of statements printed in the paper that do not hold as
    /// printed; reported, never counted as failures of the suite.
    pub disputed: Vec<Tally>,
    /// How often the jet level came out as r and as r + 1.
    pub jet_levels: JetLevelCounts,
}

#[derive(Debug, Clone, Copy, Default, Serialize, PartialEq, Eq)]
pub struct JetLevelCounts {
    pub equals_index: usize,
    pub index_plus_one: usize,
    pub other: usize,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.tallies.iter().all(Tally::passed)
    }
}

fn label<S: Scalar>(ctx: &S::Ctx, n: usize) -> String {
    format!("SL{n}/{}", S::descriptor(ctx))
}

/// Oracle equivalence, residue laws, integrality and monotone membership
/// on `count` random elements of SL_n.
pub fn index_suite<S: Scalar>(ctx: &S::Ctx, n: usize, seed: u64, count: usize) -> Vec<Tally> {
    let name = label::<S>(ctx, n);
    let mut oracle = Tally::new(format!("oracle equivalence {name}"));
    let mut residue = Tally::new(format!("residue homomorphism {name}"));
    let mut integral = Tally::new(format!("integrality {name}"));
    let mut monotone = Tally::new(format!("monotone membership {name}"));
    for i in 0..count {
        let mut rng = gen::instance_rng(seed, i as u64);
        let g = match gen::random_sl::<S, _>(&mut rng, ctx, n) {
            Ok(g) => g,
            Err(e) => {
                oracle.record(&format!("#{i}"), Err(e));
                continue;
            }
        };
        let tag = format!("#{i} {g}");
        match index::analyze(&g) {
            Ok(a) => {
                oracle.record(&tag, props::oracle_equivalence(&g, &a));
                residue.record(&tag, Ok(props::residue_checks(&a)));
                integral.record(&tag, Ok(props::integrality(&g, &a)));
            }
            Err(e) => oracle.record(&tag, Err(e)),
        }
        let pair = props::monotone_pair(&mut rng);
        monotone.record(&tag, props::monotone_membership(&g, pair));
    }
    vec![oracle, residue, integral, monotone]
}

/// Invariance, pushforward, Frobenius, product and congruence laws on
/// random SL₂ elements. The second list holds the printed product bound.
pub fn law_suite<S: Scalar>(ctx: &S::Ctx, seed: u64, count: usize) -> (Vec<Tally>, Tally) {
    let name = label::<S>(ctx, 2);
    let mut inv = Tally::new(format!("invariance {name}"));
    let mut push = Tally::new(format!("pushforward {name}"));
    let mut frob = Tally::new(format!("Frobenius {name}"));
    let mut prod = Tally::new(format!("product index is the max {name}"));
    let mut bound = Tally::new(format!("product index at most the min {name}"));
    let mut cong = Tally::new(format!("congruence {name}"));
    for i in 0..count {
        let mut rng = gen::instance_rng(seed ^ 0x4c41_5753, i as u64);
        let g = gen::random_sl::<S, _>(&mut rng, ctx, 2);
        let g2 = gen::random_sl::<S, _>(&mut rng, ctx, 2);
        let (g, g2) = match (g, g2) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                inv.record(&format!("#{i}"), Err(e));
                continue;
            }
        };
        let tag = format!("#{i} {g}");
        inv.record(&tag, props::invariance(&mut rng, &g));
        push.record(&tag, props::pushforward_law(&g));
        if S::descriptor(ctx).characteristic() != 0 {
            frob.record(&tag, props::frobenius_laws(&g));
        }
        match props::product_indices(&g, &g2) {
            Ok(ix) => {
                prod.record(&tag, Ok(props::product_max_law(&ix)));
                bound.record(&tag, Ok(props::product_min_bound(&ix)));
            }
            Err(e) => prod.record(&tag, Err(e)),
        }
        match index::analyze(&g) {
            Ok(a) => cong.record(&tag, props::congruence(&g, &a)),
            Err(e) => cong.record(&tag, Err(e)),
        }
    }
    let mut out = vec![inv, push];
    if frob.runs > 0 {
        out.push(frob);
    }
    out.extend([prod, cong]);
    (out, bound)
}

/// Jet comparison on SL₂ elements with integral index 1, 2 or 3: the fixed
/// unipotent family t^-1, t^-2, t^-3 followed by random samples.
pub fn jet_suite<S: Scalar>(ctx: &S::Ctx, seed: u64, count: usize) -> (Tally, JetLevelCounts) {
    let mut tally = Tally::new(format!("jet comparison {}", label::<S>(ctx, 2)));
    let mut counts = JetLevelCounts::default();
    let mut samples = Vec::new();
    for k in 1..=3 {
        let x = crate::series::Series::t_pow(ctx, crate::series::Exp::from_integer(-k));
        samples.push(gen::elementary(ctx, 2, 0, 1, x));
    }
    let mut i = 0u64;
    while samples.len() < count.max(3) && i < 50 * count as u64 {
        let mut rng = gen::instance_rng(seed ^ 0x4a45_5453, i);
        i += 1;
        let Ok(g) = gen::random_sl::<S, _>(&mut rng, ctx, 2) else { continue };
        if let Ok(IndexResult::Positive(r)) = index::index(&g) {
            if r.is_integer() && (1..=3).contains(&r.to_integer()) {
                samples.push(g);
            }
        }
    }
    for g in &samples {
        let tag = g.to_string();
        match props::jet_comparison(g) {
            Ok((rel, problems)) => {
                match rel {
                    LevelRelation::EqualsIndex => counts.equals_index += 1,
                    LevelRelation::IndexPlusOne => counts.index_plus_one += 1,
                    LevelRelation::Other => counts.other += 1,
                }
                tally.record(&tag, Ok(problems));
            }
            Err(e) => tally.record(&tag, Err(e)),
        }
    }
    (tally, counts)
}

/// Cartan round trips, the fixed-point criterion in both directions, the
/// characteristic polynomial identity and the closed-form cell indices.
pub fn grass_suite<S: Scalar>(ctx: &S::Ctx, seed: u64, count: usize) -> Vec<Tally> {
    let name = S::descriptor(ctx).to_string();
    let mut cartan = Tally::new(format!("Cartan round trip {name}"));
    let mut fixed = Tally::new(format!("r = 0 iff cell membership {name}"));
    let mut charp = Tally::new(format!("characteristic polynomial {name}"));
    let mut small = Tally::new(format!("minuscule and quasi-minuscule cells {name}"));
    let mut rank_one = Tally::new(format!("rank-one cells {name}"));
    for i in 0..count {
        let mut rng = gen::instance_rng(seed ^ 0x4752_4153, i as u64);
        let n = 2 + i % 2;
        let tag = format!("#{i}");
        cartan.record(&tag, cells::cartan_round_trip::<S, _>(&mut rng, ctx, n));
        match cells::index_zero_sample::<S, _>(&mut rng, ctx, n) {
            Ok(g) => {
                fixed.record(&tag, cells::fixed_point_criterion(&g));
                charp.record(&tag, cells::char_poly(&g));
            }
            Err(e) => fixed.record(&tag, Err(e)),
        }
        match cells::generic_sample::<S, _>(&mut rng, ctx, n) {
            Ok(g) => fixed.record(&tag, cells::fixed_point_criterion(&g)),
            Err(e) => fixed.record(&tag, Err(e)),
        }
        small.record(&tag, cells::closed_form(&cells::random_small_cell::<S, _>(&mut rng, ctx)));
        let m = 2 + (i % 3) as i64;
        let point = cells::random_rank_one::<S, _>(&mut rng, ctx, m);
        let outcome = cells::closed_form(&point).and_then(|mut v| {
            v.extend(cells::rank_one_zero_criterion(&point)?);
            Ok(v)
        });
        rank_one.record(&tag, outcome);
    }
    vec![cartan, fixed, charp, small, rank_one]
}

/// Everything above over ℚ, 𝔽₂ and 𝔽₅ (the Grassmannian part over the
/// fields ℚ and 𝔽₅ only).
pub fn run_property_suite(seed: u64, count: usize) -> SuiteReport {
    let mut report = SuiteReport { seed, count, ..Default::default() };
    let f2 = PrimeModulus::new(2).expect("2 is prime");
    let f5 = PrimeModulus::new(5).expect("5 is prime");
    for n in [2, 3] {
        report.tallies.extend(index_suite::<Rational>(&(), n, seed, count));
        report.tallies.extend(index_suite::<Fp>(&f2, n, seed, count));
        report.tallies.extend(index_suite::<Fp>(&f5, n, seed, count));
    }
    let law_count = count.div_ceil(2);
    for (tallies, bound) in [
        law_suite::<Rational>(&(), seed, law_count),
        law_suite::<Fp>(&f2, seed, law_count),
        law_suite::<Fp>(&f5, seed, law_count),
    ] {
        report.tallies.extend(tallies);
        report.disputed.push(bound);
    }
    let jet_count = (count / 10).clamp(3, 30);
    for (tally, counts) in [jet_suite::<Rational>(&(), seed, jet_count), jet_suite::<Fp>(&f5, seed, jet_count)] {
        report.tallies.push(tally);
        report.jet_levels.equals_index += counts.equals_index;
        report.jet_levels.index_plus_one += counts.index_plus_one;
        report.jet_levels.other += counts.other;
    }
    let grass_count = count.div_ceil(2);
    report.tallies.extend(grass_suite::<Rational>(&(), seed, grass_count));
    report.tallies.extend(grass_suite::<Fp>(&f5, seed, grass_count));
    report
}
