use proptest::prelude::*;

use ramification::index::laws;
use ramification::parse::parse_matrix;
use ramification::ring::Ring;
use ramification::suites::{self, gen};
use ramification::{Exp, Fp, IndexResult, Precision, PrimeModulus, Rational, Scalar, Series};

fn fp(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn laurent<S: Scalar>(ctx: &S::Ctx, terms: &[(i64, i64)]) -> Series<S> {
    Series::from_scalars(ctx, terms.iter().map(|&(e, c)| (Exp::from_integer(e), S::from_i64(ctx, c))), Precision::Exact)
}

fn terms() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-3i64..=3, -4i64..=4), 1..4)
}

proptest! {
    #[test]
    fn prime_field_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), a in 0i64..50, b in 0i64..50, c in 0i64..50) {
        let ctx = fp(p);
        let (a, b, c) = (Fp::from_i64(&ctx, a), Fp::from_i64(&ctx, b), Fp::from_i64(&ctx, c));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&a.neg()), Fp::zero(&ctx));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn frobenius_is_additive_on_series(p in prop::sample::select(vec![2u64, 3, 5]), f in terms(), g in terms()) {
        let ctx = fp(p);
        let (f, g) = (laurent::<Fp>(&ctx, &f), laurent::<Fp>(&ctx, &g));
        prop_assert_eq!(f.add(&g).pow(p), f.pow(p).add(&g.pow(p)));
    }

    #[test]
    fn series_inverse_is_an_inverse(f in terms()) {
        let f = laurent::<Rational>(&(), &f);
        prop_assume!(!f.is_zero());
        let target = Exp::from_integer(6);
        let inv = f.invert(target).unwrap();
        // f·f⁻¹ is known below target + v(f).
        let known = target + f.gauge().unwrap();
        prop_assert!(f.mul(&inv).agrees_below(&Series::one(&()), known).unwrap());
    }

    #[test]
    fn rendering_parses_back(seed in any::<u64>(), n in 2usize..=3) {
        let g = gen::random_sl::<Rational, _>(&mut gen::instance_rng(seed, 0), &(), n).unwrap();
        let back = parse_matrix::<Rational>(&g.to_string(), &()).unwrap();
        prop_assert_eq!(back.rows(), g.rows());
    }

    #[test]
    fn rendering_parses_back_over_f5(seed in any::<u64>()) {
        let ctx = fp(5);
        let g = gen::random_sl::<Fp, _>(&mut gen::instance_rng(seed, 1), &ctx, 2).unwrap();
        let back = parse_matrix::<Fp>(&g.to_string(), &ctx).unwrap();
        prop_assert_eq!(back.rows(), g.rows());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pushforward_scales_the_index(seed in any::<u64>(), d in 1u64..=3) {
        let g = gen::random_sl::<Rational, _>(&mut gen::instance_rng(seed, 2), &(), 2).unwrap();
        let law = laws::check_pushforward(&g, d).unwrap();
        prop_assert!(law.index_ok(), "{}: {} vs {}", g, law.actual_index, law.expected_index);
    }

    #[test]
    fn index_is_the_oracle_threshold(seed in any::<u64>()) {
        let ctx = fp(2);
        let g = gen::random_sl::<Fp, _>(&mut gen::instance_rng(seed, 3), &ctx, 2).unwrap();
        let a = ramification::analyze(&g).unwrap();
        prop_assert!(suites::props::oracle_equivalence(&g, &a).unwrap().is_empty());
        if let IndexResult::Positive(r) = a.index {
            prop_assert!(r.denom() & (r.denom() - 1) == 0, "denominator of {} is not a power of 2", r);
        }
    }
}

#[test]
fn small_property_suite_passes() {
    let report = suites::run_property_suite(7, 20);
    for t in &report.tallies {
        assert!(t.passed(), "{}: {:?}", t.name, t.examples);
    }
    assert_eq!(report.disputed.len(), 3);
    assert_eq!(report.jet_levels.other, 0);
}

#[test]
fn product_index_is_the_max_not_the_min() {
    let one = parse_matrix::<Rational>("[[1, t^-1], [0, 1]]", &()).unwrap();
    let two = parse_matrix::<Rational>("[[1, t^-2], [0, 1]]", &()).unwrap();
    let ix = suites::props::product_indices(&one, &two).unwrap();
    assert!(suites::props::product_max_law(&ix).is_empty());
    assert!(!suites::props::product_min_bound(&ix).is_empty());
}
