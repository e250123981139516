//! `ramify`: ramification index and residue of loop-group elements.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use ramification::grass;
use ramification::index::{self, laws};
use ramification::jets;
use ramification::parse::{parse_exponent, parse_matrix};
use ramification::report::{render_text, AnalysisRecord, CartanRecord, IndexRecord, JetsRecord, LawRecord, ResidueRecord};
use ramification::suites::{self, golden};
use ramification::{Dual, Error, Fp, PrimeModulus, RatFunc, Rational, RingDescriptor, Scalar, SeriesMatrix};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ramify", version, about = "Ramification index and residue of loop-group elements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Base ring: q, fp:<p>, fp:<p>(a) or dual:q.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Starting working precision K/n for index and residue; raised to the
    /// required minimum if lower.
    #[arg(long, global = true)]
    prec: Option<String>,
    /// Print the JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Ramification index, residue and its checks.
    Index { matrix: String },
    /// Same record as `index`; fails if a non-integral input has a trivial residue.
    Residue { matrix: String },
    /// Left index and left residue, i.e. those of the inverse.
    Left { matrix: String },
    /// Pushforward along t -> t^d and its transformation law.
    Pushforward { d: u64, matrix: String },
    /// Frobenius pushforward along t -> t^(p^e) and the entrywise Frobenius.
    Frobenius { e: u32, matrix: String },
    /// Jet level and the jet-group residue.
    Jets { matrix: String },
    /// Cartan coweight and cell membership.
    Cartan { matrix: String },
    /// Run every worked example of the paper.
    VerifyPaper,
    /// Run the randomized invariants.
    PropertySuite {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

/// A record plus whether its checks passed.
struct Output {
    value: Value,
    ok: bool,
    text: fn(&Value) -> String,
}

impl Output {
    fn of(record: impl Serialize, ok: bool) -> Result<Self, Error> {
        let value = serde_json::to_value(record).map_err(|e| Error::InvalidSubstitution(e.to_string()))?;
        Ok(Output { value, ok, text: render_text })
    }

    fn with_text(mut self, text: fn(&Value) -> String) -> Self {
        self.text = text;
        self
    }
}

fn pass_fail(ok: &Value) -> &'static str {
    if ok.as_bool() == Some(true) {
        "PASS"
    } else {
        "FAIL"
    }
}

/// One line per golden case; disputed cases also show the printed value.
fn paper_text(v: &Value) -> String {
    let mut out = String::new();
    for c in v["cases"].as_array().into_iter().flatten() {
        let s = |k: &str| c[k].as_str().unwrap_or_default().to_string();
        out += &format!("{} {} ({}): {}\n", pass_fail(&c["passed"]), s("id"), s("source"), s("computed"));
        if s("expectation") == "disputed" {
            out += &format!("     printed in the paper: {}\n", s("printed"));
        }
        if c["passed"].as_bool() != Some(true) {
            out += &format!("     expected: {}\n", s("expected"));
        }
    }
    out + &format!("{}/{} cases reproduced\n", v["passed"], v["total"])
}

/// One line per property tally.
fn suite_text(v: &Value) -> String {
    let mut out = format!("seed {} count {}\n", v["seed"], v["count"]);
    let line = |t: &Value, tag: &str| {
        let mut l = format!("{tag} {}: {} runs, {} failed\n", t["name"].as_str().unwrap_or_default(), t["runs"], t["failed"]);
        for e in t["examples"].as_array().into_iter().flatten() {
            l += &format!("     {}\n", e.as_str().unwrap_or_default());
        }
        l
    };
    for t in v["tallies"].as_array().into_iter().flatten() {
        out += &line(t, if t["failed"] == 0 { "PASS" } else { "FAIL" });
    }
    for t in v["disputed"].as_array().into_iter().flatten() {
        out += &line(t, "NOTE");
    }
    let j = &v["jet_levels"];
    out + &format!("jet level w = r: {}, w = r + 1: {}, other: {}\n", j["equals_index"], j["index_plus_one"], j["other"])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.value).expect("records serialize"));
            } else {
                print!("{}", (out.text)(&out.value));
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("ramify: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::VerifyPaper => verify_paper(),
        Command::PropertySuite { seed, count } => {
            let report = suites::run_property_suite(*seed, *count);
            let ok = report.passed();
            Ok(Output::of(report, ok)?.with_text(suite_text))
        }
        _ => dispatch(cli),
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Error> {
    match RingDescriptor::from_str(&cli.field)? {
        RingDescriptor::Rational => with_ring::<Rational>(cli, &()),
        RingDescriptor::PrimeField(p) => with_ring::<Fp>(cli, &PrimeModulus::new(p)?),
        RingDescriptor::RationalFunction { base, .. } => match *base {
            RingDescriptor::PrimeField(p) => with_ring::<RatFunc<Fp>>(cli, &PrimeModulus::new(p)?),
            other => Err(Error::BadDescriptor(other.to_string())),
        },
        RingDescriptor::DualNumbers(base) => match *base {
            RingDescriptor::Rational => with_ring::<Dual<Rational>>(cli, &()),
            other => Err(Error::BadDescriptor(format!("dual:{other}"))),
        },
    }
}

/// The starting precision: the override if given, raised to the minimum
/// the input needs.
fn start_precision<S: Scalar>(cli: &Cli, g: &SeriesMatrix<S>) -> Result<i64, Error> {
    let minimum = index::initial_precision(g);
    let Some(src) = &cli.prec else { return Ok(minimum) };
    let asked = parse_exponent(src)?.ceil().to_integer();
    if asked < minimum {
        eprintln!("ramify: precision {src} is below the required {minimum}; using {minimum}");
        return Ok(minimum);
    }
    Ok(asked)
}

fn with_ring<S: Scalar>(cli: &Cli, ctx: &S::Ctx) -> Result<Output, Error> {
    let matrix = match &cli.command {
        Command::Index { matrix }
        | Command::Residue { matrix }
        | Command::Left { matrix }
        | Command::Pushforward { matrix, .. }
        | Command::Frobenius { matrix, .. }
        | Command::Jets { matrix }
        | Command::Cartan { matrix } => matrix,
        Command::VerifyPaper | Command::PropertySuite { .. } => unreachable!("handled before dispatch"),
    };
    let g: SeriesMatrix<S> = parse_matrix(matrix, ctx)?;
    let n = g.n();
    match &cli.command {
        Command::Index { .. } | Command::Residue { .. } => {
            let a = index::analyze_from(&g, start_precision(cli, &g)?)?;
            if matches!(cli.command, Command::Residue { .. }) && a.index != index::IndexResult::Integral && !a.nontrivial {
                return Err(Error::TrivialResidue);
            }
            let rec = AnalysisRecord::new(&a, ctx, n);
            let ok = rec.passed();
            Output::of(rec, ok)
        }
        Command::Left { .. } => {
            let idx = laws::left_index(&g)?;
            let res = laws::left_residue(&g)?;
            Output::of(json!({"index": IndexRecord::from(idx), "residue": ResidueRecord::new(&res, ctx, n)}), true)
        }
        Command::Pushforward { d, .. } => {
            let law = laws::check_pushforward(&g, *d)?;
            Output::of(LawRecord::new(&law, ctx, n), law.holds())
        }
        Command::Frobenius { e, .. } => {
            let law = laws::check_frobenius_pushforward(&g, *e)?;
            let (before, after) = laws::check_frobenius_entrywise(&g, *e)?;
            let ok = law.holds() && before == after;
            Output::of(
                json!({
                    "pushforward": LawRecord::new(&law, ctx, n),
                    "entrywise": {"index": IndexRecord::from(before), "index_after": IndexRecord::from(after), "ok": before == after},
                }),
                ok,
            )
        }
        Command::Jets { .. } => {
            let rec = JetsRecord::new(&jets::jet_residue(&g)?);
            let ok = rec.passed();
            Output::of(rec, ok)
        }
        Command::Cartan { .. } => {
            let mu = grass::cartan_coweight(&g)?;
            let h = grass::solve_cell_membership(&g, &mu)?;
            Output::of(CartanRecord::new(&mu, index::index(&g)?, h.as_ref()), true)
        }
        Command::VerifyPaper | Command::PropertySuite { .. } => unreachable!("handled before dispatch"),
    }
}

fn verify_paper() -> Result<Output, Error> {
    let outcomes = golden::run_all();
    let ok = outcomes.iter().all(|o| o.passed);
    let passed = outcomes.iter().filter(|o| o.passed).count();
    Ok(Output::of(json!({"cases": outcomes, "passed": passed, "total": outcomes.len()}), ok)?.with_text(paper_text))
}
