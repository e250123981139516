use ramification::suites::golden::{self, Expectation};

/// Every worked example is in the manifest under a stable id.
const REQUIRED: &[&str] = &[
    "dual-inverse",
    "sigma-t-minus-d",
    "sigma-t-minus-p",
    "lambda-t-minus-d",
    "specialize-lambda",
    "det-upper-triangular",
    "inverse-left-right",
    "support-binomials-fp",
    "index-triangular-a",
    "index-dual-unit",
    "index-triangular-b",
    "index-gm",
    "residue-gm",
    "residue-ga-q",
    "residue-ga-fp",
    "residue-triangular-a",
    "residue-triangular-c",
    "residue-hom-fp",
    "left-index-left-right",
    "index-left-right",
    "left-residue-gm",
    "pushforward-ga",
    "pushforward-gm",
    "frobenius-entrywise",
    "congruence-index-zero",
    "jets-gm-level",
    "jets-ga-along-phi",
    "jets-next-coefficient",
    "jets-multiplicative",
    "cell-membership-triangular-c",
    "cell-membership-triangular-a",
    "cell-minuscule",
    "cell-quasi-minuscule",
    "rank-one-p-zero",
    "rank-one-p-t",
    "parse-dual-unipotent",
    "parse-fp2-triangular-b",
    "cli-index-triangular-a",
];

#[test]
fn manifest_is_complete() {
    for id in REQUIRED {
        assert!(golden::find(id).is_some(), "missing golden case {id}");
    }
    assert_eq!(golden::MANIFEST.len(), REQUIRED.len());
}

#[test]
fn every_case_reproduces_its_expected_value() {
    let mut bad = Vec::new();
    for o in golden::run_all() {
        if !o.passed {
            bad.push(format!("{}: expected {:?}, computed {:?}", o.id, o.expected, o.computed));
        }
    }
    assert!(bad.is_empty(), "\n{}", bad.join("\n"));
}

#[test]
fn disputed_cases_are_the_known_ones() {
    let mut disputed: Vec<_> =
        golden::MANIFEST.iter().filter(|c| c.expectation == Expectation::Disputed).map(|c| c.id).collect();
    disputed.sort();
    assert_eq!(
        disputed,
        [
            "index-triangular-b",
            "inverse-left-right",
            "left-index-left-right",
            "left-residue-gm",
            "pushforward-gm",
            "residue-gm"
        ]
    );
}
