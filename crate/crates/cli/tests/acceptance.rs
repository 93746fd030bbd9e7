//! Acceptance criteria, one pass/fail line each. Suites are run once through
//! the library; determinism is checked through the binary.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use pairgeom_cli::report::SuiteReport;
use pairgeom_cli::suites;
use pairgeom_cli::RunConfig;

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    note: String,
}

fn suite(name: &str) -> (SuiteReport, Duration) {
    let start = Instant::now();
    let mut reports = suites::run(name, &RunConfig::default()).expect("suite runs within the default budget");
    (reports.remove(0), start.elapsed())
}

/// Checks whose name starts with `prefix`; at least one must exist.
fn all_pass(r: &SuiteReport, prefix: &str) -> (bool, usize) {
    let hits: Vec<_> = r.checks.iter().filter(|c| c.name.starts_with(prefix)).collect();
    (!hits.is_empty() && hits.iter().all(|c| c.pass), hits.len())
}

fn no_errors(r: &SuiteReport, prefix: &str) -> bool {
    r.checks.iter().filter(|c| c.name.starts_with(prefix)).all(|c| c.detail.get("error").is_none())
}

fn run_all_seed_42() -> (Vec<u8>, Duration, Option<i32>) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_pairgeom"))
        .args(["verify", "--suite", "all", "--seed", "42"])
        .env_remove("GEOM_BUDGET")
        .output()
        .expect("binary runs");
    (out.stdout, start.elapsed(), out.status.code())
}

#[test]
fn acceptance_criteria() {
    let mut out = Vec::new();

    let (prop33, t) = suite("prop33");
    let (ok, n) = all_pass(&prop33, "roundtrip F2");
    out.push(Outcome {
        id: 1,
        title: "transversal pairs and gradings are mutually inverse over F2, n <= 4, k in {2,3}",
        pass: ok && t < Duration::from_secs(30),
        note: format!("{n} configurations, {:.1}s", t.as_secs_f64()),
    });

    let (thm35, _) = suite("thm35");
    let (ok, n) = all_pass(&thm35, "simple transitivity F2");
    out.push(Outcome {
        id: 2,
        title: "U(f) acts simply transitively on f^T; transporter equals brute-force search",
        pass: ok,
        note: format!("{n} configurations"),
    });

    let (affine_k2, _) = all_pass(&thm35, "affine origin independence F3");
    let witness = thm35.check("non-affine witness search F5 type [1, 2, 3]").expect("witness search ran");
    let k3_affine = thm35.check("affine origin independence F5 type [1, 2, 3]").map(|c| c.pass).unwrap_or(false);
    let k4_witness = thm35.check("non-affine witness F5 type [1, 2, 3, 4]").map(|c| c.pass).unwrap_or(false);
    out.push(Outcome {
        id: 3,
        title: "k = 2 charts affine over F3, n = 3; non-affine witness for k = 3 over F5, n = 3",
        pass: affine_k2 && witness.pass,
        note: format!(
            "k=2 affine: {affine_k2}; k=3 witness found: {}; k=3 sampled affine: {k3_affine}; k=4 witness found: {k4_witness}",
            witness.pass
        ),
    });

    let (thm38, _) = suite("thm38");
    let (ok, n) = all_pass(&thm38, "standard intrinsic");
    out.push(Outcome {
        id: 4,
        title: "standard intrinsic subspaces are intrinsic with slice u(a) ∩ p(e)",
        pass: ok,
        note: format!("{n} configurations"),
    });

    let (thm311, _) = suite("thm311");
    let f5 = thm311.check("midpoint F5").map(|c| c.pass).unwrap_or(false);
    let q = thm311.check("midpoint Q").map(|c| c.pass).unwrap_or(false);
    out.push(Outcome {
        id: 5,
        title: "midpoint of graphs equals the graph of XYX over F5 and Q",
        pass: f5 && q,
        note: "1000 samples per field".into(),
    });

    let (app_a, _) = suite("appendixA");
    let parts = ["census", "join formula", "chain rank", "completed idempotents"];
    let ok = parts.iter().all(|p| all_pass(&app_a, p).0);
    out.push(Outcome {
        id: 6,
        title: "inner ideal census, joins, chain rank and Peirce polynomial in M(2,2;F2)",
        pass: ok,
        note: parts.iter().map(|p| format!("{p}: {}", all_pass(&app_a, p).0)).collect::<Vec<_>>().join(", "),
    });

    let (app_b, _) = suite("appendixB");
    let exhaustive = all_pass(&app_b, "pair identities exhaustive").0;
    let random = all_pass(&app_b, "pair identities random rational").0;
    out.push(Outcome {
        id: 7,
        title: "Jordan pair identities and fundamental formula",
        pass: exhaustive && random,
        note: format!("exhaustive F2: {exhaustive}, 1000 rational samples: {random}"),
    });

    let (thm42, _) = suite("thm42");
    let perp = all_pass(&thm42, "perp").0;
    let dims = all_pass(&thm42, "lagrangian chart dimension").0;
    out.push(Outcome {
        id: 8,
        title: "perp is a transversality-preserving involution acting by -X*; Lagrangian chart dimensions",
        pass: perp && dims,
        note: format!("perp: {perp}, dimensions: {dims}"),
    });

    let (lemma59, _) = suite("lemma59");
    let (thm58, _) = suite("thm58");
    let gradings = all_pass(&lemma59, "peirce gradings").0;
    let stabilizers = all_pass(&thm58, "stabilizer algebras").0;
    out.push(Outcome {
        id: 9,
        title: "joint spectrum, H' part identities, s_I and g_I = q for all idempotents over F3, p,q <= 2",
        pass: gradings && stabilizers,
        note: format!("gradings: {gradings}, stabilizers: {stabilizers}"),
    });

    let classification_ran = no_errors(&thm311, "classification experiment");
    let squeeze_subset = all_pass(&thm58, "squeeze experiment").0;
    let horizon = all_pass(&thm311, "horizon experiment").0;
    out.push(Outcome {
        id: 10,
        title: "experiments: classification reported, squeeze inclusion, horizon intrinsic exactly when projective",
        pass: classification_ran && squeeze_subset && horizon,
        note: format!("classification reported: {classification_ran}, inclusion on all instances: {squeeze_subset}, horizon: {horizon}"),
    });

    let (first, t1, code1) = run_all_seed_42();
    let (second, t2, code2) = run_all_seed_42();
    let identical = !first.is_empty() && first == second;
    out.push(Outcome {
        id: 11,
        title: "verify --suite all --seed 42 is byte-identical across runs",
        pass: identical && t1.max(t2) < Duration::from_secs(300),
        note: format!("{} bytes, exit codes {code1:?}/{code2:?}, {:.1}s per run", first.len(), t1.max(t2).as_secs_f64()),
    });

    for o in &out {
        // written to the real stdout so the summary survives test output capture
        let line = format!("criterion {:>2}: {} | {} | {}\n", o.id, if o.pass { "PASS" } else { "FAIL" }, o.title, o.note);
        std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
    }

    // Criterion 3 asks for a non-affine witness at k = 3. Length-3 flags have a
    // 2-step nilpotent u(a), on which chart changes are affine, so no witness
    // exists; the expected outcome is the absence of a witness together with a
    // witness at k = 4.
    let c3 = &out[2];
    assert!(!c3.pass && affine_k2 && k3_affine && k4_witness, "criterion 3 outcome changed: {}", c3.note);
    for o in out.iter().filter(|o| o.id != 3) {
        assert!(o.pass, "criterion {} failed: {}", o.id, o.note);
    }
}
