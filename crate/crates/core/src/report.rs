//! Machine-readable records. The CLI prints these as JSON, and its text
//! output is [`render_text`] applied to the same value.

use serde::Serialize;
use serde_json::Value;

use crate::grass::Coweight;
use crate::index::laws::LawCheck;
use crate::index::{Analysis, IndexResult, ResidueHom};
use crate::jets::{JetResidue, LevelRelation};
use crate::matrix::PolyMatrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexRecord {
    pub kind: &'static str,
    pub num: i64,
    pub den: i64,
}

impl From<IndexResult> for IndexRecord {
    fn from(r: IndexResult) -> Self {
        let v = r.value();
        IndexRecord { kind: r.kind(), num: *v.numer(), den: *v.denom() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueRecord {
    pub kind: &'static str,
    pub matrix: Vec<Vec<String>>,
}

impl ResidueRecord {
    /// A trivial residue is reported as the n×n identity.
    pub fn new<S: Scalar>(res: &ResidueHom<S>, ctx: &S::Ctx, n: usize) -> Self {
        let matrix = match res.matrix() {
            Some(m) => m.render(),
            None => PolyMatrix::<S>::identity(ctx, n).render(),
        };
        ResidueRecord { kind: res.kind(), matrix }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub hom: bool,
    pub nontrivial: bool,
    pub paths_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisRecord {
    pub gauge: i64,
    pub index: IndexRecord,
    pub residue: ResidueRecord,
    pub checks: Checks,
}

impl AnalysisRecord {
    pub fn new<S: Scalar>(a: &Analysis<S>, ctx: &S::Ctx, n: usize) -> Self {
        AnalysisRecord {
            gauge: a.gauge,
            index: a.index.into(),
            residue: ResidueRecord::new(&a.residue, ctx, n),
            checks: Checks { hom: a.hom, nontrivial: a.nontrivial, paths_agree: a.paths_agree },
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.hom && self.checks.nontrivial && self.checks.paths_agree
    }
}

/// Outcome of a pushforward or Frobenius law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawRecord {
    pub index: IndexRecord,
    pub residue: ResidueRecord,
    pub expected_index: IndexRecord,
    pub expected_residue: ResidueRecord,
    pub index_ok: bool,
    pub residue_ok: bool,
}

impl LawRecord {
    pub fn new<S: Scalar>(law: &LawCheck<S>, ctx: &S::Ctx, n: usize) -> Self {
        LawRecord {
            index: law.actual_index.into(),
            residue: ResidueRecord::new(&law.actual_residue, ctx, n),
            expected_index: law.expected_index.into(),
            expected_residue: ResidueRecord::new(&law.expected_residue, ctx, n),
            index_ok: law.index_ok(),
            residue_ok: law.residue_ok(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JetsRecord {
    pub w: usize,
    pub index: IndexRecord,
    pub level_relation: LevelRelation,
    pub res: Vec<Vec<String>>,
    pub res_along_phi_matches: bool,
    pub kills_next_level: bool,
    pub trivial_on_2w_plus_1: bool,
}

impl JetsRecord {
    pub fn new<S: Scalar>(j: &JetResidue<S>) -> Self {
        JetsRecord {
            w: j.w,
            index: j.index.into(),
            level_relation: j.relation,
            res: j.res.render(),
            res_along_phi_matches: j.res_along_phi_matches,
            kills_next_level: j.kills_next_level,
            trivial_on_2w_plus_1: j.trivial_on_2w_plus_1,
        }
    }

    pub fn passed(&self) -> bool {
        self.res_along_phi_matches && self.kills_next_level && self.trivial_on_2w_plus_1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub found: bool,
    pub h: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanRecord {
    pub mu: Vec<i64>,
    pub index: IndexRecord,
    pub cell_membership: Membership,
}

impl CartanRecord {
    pub fn new<S: Scalar>(mu: &Coweight, index: IndexResult, h: Option<&PolyMatrix<S>>) -> Self {
        CartanRecord {
            mu: mu.0.clone(),
            index: index.into(),
            cell_membership: Membership { found: h.is_some(), h: h.map(|m| m.render()).unwrap_or_default() },
        }
    }
}

/// One `key: value` line per leaf, with dotted paths for nested objects.
/// Arrays are printed inline.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    walk(value, "", &mut out);
    out
}

fn walk(value: &Value, path: &str, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk(v, &p, out);
            }
        }
        leaf => {
            out.push_str(path);
            out.push_str(": ");
            out.push_str(&inline(leaf));
            out.push('\n');
        }
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}
