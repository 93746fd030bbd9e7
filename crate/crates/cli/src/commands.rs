//! Subcommands: enumeration listings, suite verification, closures and
//! experiments. Each returns the text to emit; writing is done by [`emit`].

use std::fs;
use std::path::Path;

use pairgeom::exactla::{enumerate_all_subspaces, FieldChoice, PrimeField, Subspace};
use pairgeom::flags::{enumerate_flags, Flag};
use pairgeom::intrinsic::{
    check_intrinsic, closure as intrinsic_closure, horizon, squeeze_members, standard_members, FiniteGeometry,
    PointSet, ShortFlagGovernor, StandardIntrinsic,
};
use pairgeom::jordan::Idempotent;
use pairgeom::lagrangian::{enumerate_lagrangian, BilinearForm};
use pairgeom::liealg::{squeeze_experiment, GradedGL, PeirceGrading};
use serde_json::{json, Value};

use crate::config::{CliError, CliResult, RunConfig};
use crate::report::SuiteReport;
use crate::rng::RNG_NAME;
use crate::suites;

/// Writes `text` to the configured output file, or to stdout.
pub fn emit(cfg: &RunConfig, text: &str) -> CliResult<()> {
    match &cfg.out {
        Some(path) => write_atomic(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Writes through a temporary file so a failed write leaves no partial output.
fn write_atomic(path: &Path, text: &str) -> CliResult<()> {
    let tmp = path.with_extension("partial");
    let res = fs::write(&tmp, text).and_then(|_| fs::rename(&tmp, path));
    if let Err(e) = res {
        let _ = fs::remove_file(&tmp);
        return Err(CliError::Config(format!("cannot write {}: {e}", path.display())));
    }
    Ok(())
}

fn json_lines(header: Value, items: impl IntoIterator<Item = Value>) -> String {
    let mut out = header.to_string();
    out.push('\n');
    for v in items {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}

/// Which bilinear form defines Lagrangian listings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Symplectic,
    Symmetric,
}

impl std::str::FromStr for FormKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "symplectic" => Ok(FormKind::Symplectic),
            "symmetric" => Ok(FormKind::Symmetric),
            _ => Err(format!("unknown form {s:?} (symplectic or symmetric)")),
        }
    }
}

/// JSON-lines listing: a header with the count, then one point per line.
pub fn enumerate(cfg: &RunConfig, lagrangian: Option<FormKind>) -> CliResult<String> {
    let field = cfg.prime_or(2)?;
    let n = cfg.require_dim()?;
    let mut header = json!({"field": field.p(), "n": n});
    let items: Vec<Value> = if let Some(kind) = lagrangian {
        if n % 2 != 0 {
            return Err(CliError::Config("Lagrangian flags need an even dimension".into()));
        }
        let form = match kind {
            FormKind::Symplectic => BilinearForm::symplectic(&field, n / 2),
            FormKind::Symmetric => BilinearForm::artinian(&field, n / 2),
        };
        let t = cfg.point_type()?;
        header["kind"] = json!("lagrangian");
        header["type"] = json!(t.dims());
        header["form"] = form.to_json();
        enumerate_lagrangian(&form, &t, cfg.budget)?.iter().map(Flag::to_json).collect()
    } else if cfg.grass.is_none() && cfg.flag_type.is_none() {
        header["kind"] = json!("subspaces");
        enumerate_all_subspaces(&field, n, cfg.budget)?.iter().map(Subspace::to_json).collect()
    } else if let Some(d) = cfg.grass {
        header["kind"] = json!("grassmannian");
        header["d"] = json!(d);
        let t = cfg.point_type()?;
        enumerate_flags(&field, &t, cfg.budget)?.iter().map(|f| f.step(1).to_json()).collect()
    } else {
        let t = cfg.point_type()?;
        header["kind"] = json!("flags");
        header["type"] = json!(t.dims());
        enumerate_flags(&field, &t, cfg.budget)?.iter().map(Flag::to_json).collect()
    };
    header["count"] = json!(items.len());
    Ok(json_lines(header, items))
}

/// Lines of `verify --list`: suite name and what it checks.
pub fn list_suites() -> String {
    let items = suites::SUITES.iter().map(|(name, what, _)| json!({"suite": name, "checks": what}));
    json_lines(json!({"suites": suites::SUITES.len()}), items)
}

/// The report document for the given suite reports.
pub fn report_document(cfg: &RunConfig, reports: &[SuiteReport]) -> Value {
    let mut sorted: Vec<&SuiteReport> = reports.iter().collect();
    sorted.sort_by(|a, b| a.suite.cmp(&b.suite));
    json!({
        "header": {
            "tool": "pairgeom",
            "version": env!("CARGO_PKG_VERSION"),
            "rng": RNG_NAME,
            "seed": cfg.seed,
            "budget": cfg.budget,
            "config": cfg.to_json(),
        },
        "pass": reports.iter().all(SuiteReport::passed),
        "suites": sorted.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    })
}

/// Runs a suite; returns the report text and whether every hard check passed.
pub fn verify(cfg: &RunConfig, suite: &str) -> CliResult<(String, bool)> {
    let reports = suites::run(suite, cfg)?;
    let doc = report_document(cfg, &reports);
    let pass = doc["pass"].as_bool().unwrap_or(false);
    Ok((pretty(&doc), pass))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn prime_field(cfg: &RunConfig, default: u32) -> CliResult<PrimeField> {
    match cfg.field {
        Some(FieldChoice::Rational) => Err(CliError::Config("finite geometries need a prime field".into())),
        _ => cfg.prime_or(default),
    }
}

/// Parses a JSON-lines file of flags (`{"ambient","steps"}`) or subspaces
/// (`{"ambient","basis"}`); blank lines are skipped.
pub fn parse_points(field: &PrimeField, text: &str) -> CliResult<Vec<Flag<PrimeField>>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| CliError::Config(format!("points file line {}: {msg}", i + 1));
        let v: Value = serde_json::from_str(line).map_err(|e| bad(e.to_string()))?;
        let flag = if v.get("steps").is_some() {
            Flag::from_json(field, &v)
        } else {
            Subspace::from_json(field, &v).and_then(Flag::single)
        };
        out.push(flag.map_err(|e| bad(e.to_string()))?);
    }
    Ok(out)
}

/// Smallest intrinsic superset of the given points, with an attempt to
/// recognize it as a governed or standard intrinsic subspace.
pub fn closure(cfg: &RunConfig, points_text: &str) -> CliResult<String> {
    let field = prime_field(cfg, 3)?;
    let t = cfg.point_type()?;
    let g = FiniteGeometry::flags(&field, &t, cfg.budget)?;
    let flags = parse_points(&field, points_text)?;
    if flags.is_empty() {
        return Err(CliError::Config("points file has no points".into()));
    }
    let input = g.set_of(&flags).map_err(|e| CliError::Config(e.to_string()))?;
    let cl = intrinsic_closure(&g, &input)?;
    let classification = classify_set(&g, &field, &cl, cfg.budget)?;
    Ok(pretty(&json!({
        "input_size": input.len(),
        "size": cl.len(),
        "closure": cl.to_json(&g),
        "classification": classification,
    })))
}

fn classify_set(g: &FiniteGeometry, field: &PrimeField, set: &PointSet, budget: u64) -> CliResult<Value> {
    if set.len() == 1 {
        return Ok(json!({"kind": "point"}));
    }
    if set.len() == g.points().len() {
        return Ok(json!({"kind": "whole geometry"}));
    }
    let members = set.flags(g);
    if g.length() == 2 {
        let d = members[0].step(1).dim();
        let (mut lo, mut hi) = (members[0].step(1), members[0].step(1));
        for f in &members[1..] {
            lo = lo.intersect(&f.step(1))?;
            hi = hi.sum(&f.step(1))?;
        }
        let gov = ShortFlagGovernor::new(lo, hi)?;
        if squeeze_members(g, &gov.as_squeeze()) == *set {
            return Ok(json!({
                "kind": "governed",
                "lower": gov.e1.to_json(),
                "upper": gov.e2.to_json(),
                "principal": gov.is_principal(d),
            }));
        }
    }
    for e in enumerate_all_subspaces(field, g.ambient(), budget)? {
        for j in 0..g.length() {
            let s = StandardIntrinsic { e: e.clone(), j };
            if standard_members(g, &s) == *set {
                return Ok(json!({"kind": "standard", "e": e.to_json(), "j": j}));
            }
        }
    }
    Ok(json!({"kind": "unclassified"}))
}

pub const EXPERIMENTS: [&str; 3] = ["classification", "horizon", "squeeze"];

/// Runs a named experiment and returns its JSON report.
pub fn experiment(cfg: &RunConfig, name: &str, rank: Option<usize>) -> CliResult<String> {
    let doc = match name {
        "horizon" => {
            let field = prime_field(cfg, 3)?;
            let g = FiniteGeometry::flags(&field, &cfg.point_type()?, cfg.budget)?;
            let h = horizon(&g, 0);
            let witness = check_intrinsic(&g, &h)?;
            json!({
                "experiment": "horizon",
                "geometry": g.descriptor(),
                "chart": g.copoint(0).to_json(),
                "horizon_size": h.len(),
                "intrinsic": witness.is_none(),
                "witness": witness.map(|w| w.to_json(&g)),
            })
        }
        "classification" => {
            let field = prime_field(cfg, 3)?;
            let t = cfg.point_type()?;
            if t.length() != 2 {
                return Err(CliError::Config("classification runs on Grassmannians (--grass d)".into()));
            }
            let g = FiniteGeometry::flags(&field, &t, cfg.budget)?;
            let (all, rows) = suites::geometry::grassmannian_joins(&g, t.dims()[0])?;
            json!({
                "experiment": "classification",
                "geometry": g.descriptor(),
                "note": "two-point joins are classified over an infinite field; this run uses a finite field",
                "all_match": all,
                "pairs": rows,
            })
        }
        "squeeze" => {
            let field = prime_field(cfg, 3)?;
            let (p, q) = cfg.pq.unwrap_or((1, 1));
            let r = rank.unwrap_or(1);
            if r > p.min(q) {
                return Err(CliError::Config(format!("rank {r} exceeds min(p,q)")));
            }
            let gl = GradedGL::new(&field, p, q)?;
            let mut ep = pairgeom::exactla::Matrix::zeros(&field, p, q);
            for i in 0..r {
                ep.set(i, i, 1);
            }
            let e = Idempotent { eminus: ep.transpose(), eplus: ep };
            let pg = PeirceGrading::new(&gl, &e)?;
            let report = squeeze_experiment(&pg, cfg.budget)?;
            json!({
                "experiment": "squeeze",
                "field": field.p(),
                "pq": [p, q],
                "rank": r,
                "result": report.to_json(),
            })
        }
        other => {
            return Err(CliError::Config(format!("unknown experiment {other:?}; known: {}", EXPERIMENTS.join(", "))));
        }
    };
    Ok(pretty(&doc))
}
