//! Verification suites. Each suite returns a report of named checks; hard
//! checks decide the exit status, experiments only report.

mod forms;
pub(crate) mod geometry;
mod jordan_pairs;
mod lie;

use pairgeom::exactla::PrimeField;
use pairgeom::flags::{enumerate_flags, FlagType};
use pairgeom::intrinsic::{standard_members, FiniteGeometry, PointSet, StandardIntrinsic};
use pairgeom::exactla::enumerate_all_subspaces;
use pairgeom::GeomError;
use serde_json::json;

use crate::config::{CliError, CliResult, RunConfig};
use crate::report::{Check, SuiteReport};

type Runner = fn(&RunConfig) -> CliResult<SuiteReport>;

/// Suite names, what they verify, and their runners, in report order.
pub const SUITES: [(&str, &str, Runner); 10] = [
    ("axioms", "chart module axioms and chart covering on small flag geometries", geometry::axioms),
    ("prop33", "transversal flag pairs and gradings determine each other", geometry::prop33),
    ("thm35", "U(f) acts simply transitively on f^T; affine chart changes for k <= 3 and non-affine witnesses for k = 4", geometry::thm35),
    ("thm38", "standard intrinsic subspaces are intrinsic with slices u(a) ∩ p(e)", geometry::thm38),
    ("thm311", "midpoint formula for graphs; classification and horizon experiments", geometry::thm311),
    ("thm42", "orthogonal complement is a transversality-preserving involution acting by X -> -X*; Lagrangian chart dimensions", forms::thm42),
    ("lemma59", "joint (ad E, ad H) spectrum and the part identities of H' = 2E - H", lie::lemma59),
    ("thm58", "stabilizer algebras of Peirce inner ideals; squeeze experiment", lie::thm58),
    ("appendixA", "inner ideal census, joins, chain rank and Peirce decompositions", jordan_pairs::appendix_a),
    ("appendixB", "Jordan pair identities, fundamental formula and Bergmann operators", jordan_pairs::appendix_b),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.0).collect()
}

/// Runs one suite by name, or every suite for `all`.
pub fn run(name: &str, cfg: &RunConfig) -> CliResult<Vec<SuiteReport>> {
    if name == "all" {
        return SUITES.iter().map(|(_, _, f)| f(cfg)).collect();
    }
    let (_, _, f) = SUITES
        .iter()
        .find(|s| s.0 == name)
        .ok_or_else(|| CliError::Config(format!("unknown suite {name:?}; known: all, {}", suite_names().join(", "))))?;
    Ok(vec![f(cfg)?])
}

pub(crate) fn description(name: &str) -> &'static str {
    SUITES.iter().find(|s| s.0 == name).map(|s| s.1).unwrap_or("")
}

/// Runs a check body; budget overruns abort the run, other errors become a
/// failed check carrying the error message.
pub(crate) fn guard(name: impl Into<String>, hard: bool, body: impl FnOnce() -> pairgeom::Result<Check>) -> CliResult<Check> {
    let name = name.into();
    match body() {
        Ok(mut c) => {
            c.name = name;
            c.hard = hard;
            Ok(c)
        }
        Err(e @ GeomError::BudgetExceeded { .. }) => Err(CliError::Budget(e)),
        Err(e) => Ok(Check { name, pass: false, hard, detail: json!({"error": e.to_string()}) }),
    }
}

/// Builds a check whose name and kind are filled in by [`guard`].
pub(crate) fn outcome(pass: bool, detail: serde_json::Value) -> Check {
    Check::hard("", pass, detail)
}

/// Distinct nonempty standard intrinsic subspaces `{f : f_j ⊆ e ⊆ f_{j+1}}`
/// of a flag geometry.
pub(crate) fn standard_sets(
    g: &FiniteGeometry,
    t: &FlagType,
    field: &PrimeField,
    budget: u64,
) -> pairgeom::Result<Vec<(StandardIntrinsic<PrimeField>, PointSet)>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for e in enumerate_all_subspaces(field, t.ambient(), budget)? {
        for j in 0..t.length() {
            let s = StandardIntrinsic { e: e.clone(), j };
            let set = standard_members(g, &s);
            if !set.is_empty() && seen.insert(set.clone()) {
                out.push((s, set));
            }
        }
    }
    Ok(out)
}

/// All flags of a type, as a budget-checked enumeration.
pub(crate) fn flags_of(field: &PrimeField, t: &FlagType, budget: u64) -> pairgeom::Result<Vec<pairgeom::flags::Flag<PrimeField>>> {
    enumerate_flags(field, t, budget)
}
