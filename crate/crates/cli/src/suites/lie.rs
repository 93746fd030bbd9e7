//! Gradings of gl(p+q) attached to idempotents, stabilizer algebras of
//! Peirce inner ideals, and the squeeze experiment.

use pairgeom::exactla::{all_matrices, Field, Matrix, PrimeField, Rationals};
use pairgeom::jordan::{is_idempotent, Idempotent};
use pairgeom::liealg::{
    check_stabilizers, derivation_from_grading, grading_from_derivation, squeeze_experiment, unital_conjugate_matches,
    GradedGL, PeirceGrading,
};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;

use super::{description, guard, outcome};
use crate::config::{CliResult, RunConfig};
use crate::report::{Check, SuiteReport};
use crate::rng::{check_rng, Sampler};

const DERIVATION_SAMPLES: usize = 12;

fn shapes(cfg: &RunConfig) -> Vec<(usize, usize)> {
    cfg.pq.map(|pq| vec![pq]).unwrap_or_else(|| vec![(1, 1), (1, 2), (2, 1), (2, 2)])
}

/// Every idempotent of `(M(p,q), M(q,p))` over a prime field.
fn idempotents(field: &PrimeField, p: usize, q: usize, budget: u64) -> pairgeom::Result<Vec<Idempotent<PrimeField>>> {
    let plus = all_matrices(field, p, q, budget)?;
    let minus = all_matrices(field, q, p, budget)?;
    let mut out = Vec::new();
    for x in &plus {
        for y in &minus {
            if is_idempotent(x, y)? {
                out.push(Idempotent { eplus: x.clone(), eminus: y.clone() });
            }
        }
    }
    Ok(out)
}

/// Tally of named boolean properties with the first failing idempotent.
#[derive(Default)]
struct Tally {
    failures: BTreeMap<String, usize>,
    first: Option<Value>,
}

impl Tally {
    fn record(&mut self, label: &str, ok: bool, e: &Idempotent<PrimeField>) {
        if !ok {
            *self.failures.entry(label.to_string()).or_default() += 1;
            self.first.get_or_insert_with(|| json!({"property": label, "idempotent": e.to_json()}));
        }
    }

    fn into_check(self, idempotents: usize, extra: Value) -> Check {
        outcome(
            self.failures.is_empty(),
            json!({"idempotents": idempotents, "failures": self.failures, "first_failure": self.first, "extra": extra}),
        )
    }
}

pub fn lemma59(cfg: &RunConfig) -> CliResult<SuiteReport> {
    let mut rep = SuiteReport::new("lemma59", description("lemma59"));
    let field = cfg.prime_or(3)?;
    for (p, q) in shapes(cfg) {
        rep.push(guard(format!("peirce gradings M({p},{q};F{})", field.p()), true, || {
            let gl = GradedGL::new(&field, p, q)?;
            let es = idempotents(&field, p, q, cfg.budget)?;
            let mut tally = Tally::default();
            let mut unital = 0usize;
            for e in &es {
                let pg = PeirceGrading::new(&gl, e)?;
                let table = pg.joint_table()?;
                tally.record("sl2 triple", pg.sl2_triple_holds()?, e);
                tally.record("joint spectrum", pg.joint_spectrum_allowed()?, e);
                tally.record("(0,±2) absent", !table.contains_key(&(0, 2)) && !table.contains_key(&(0, -2)), e);
                for (label, ok) in pg.part_identities()? {
                    tally.record(label, ok, e);
                }
                tally.record("filtrations", pg.filtration_relations_hold(), e);
                tally.record("H grading compatible", pg.h_grading.grading.is_compatible(&gl)?, e);
                tally.record("H grades", pg.h_grading.grading.is_graded_by(&gl, &pg.h_grading.h)?, e);
                tally.record("H' grades", pg.conjugate.grading.is_graded_by(&gl, &pg.conjugate.h)?, e);
                if p == q && e.eplus == e.eminus && e.eplus.mul(&e.eplus)? == e.eplus {
                    unital += 1;
                    tally.record("unital conjugate", unital_conjugate_matches(&gl, &e.eplus)?, e);
                }
            }
            Ok(tally.into_check(es.len(), json!({"unital": unital})))
        })?);
    }
    let name = "eigenvalue gradings F7";
    let mut rng = check_rng(cfg.seed, name);
    rep.push(guard(name, true, || derivation_check(&PrimeField::new(7)?, &mut rng))?);
    let name = "eigenvalue gradings Q";
    let mut rng = check_rng(cfg.seed, name);
    rep.push(guard(name, true, || derivation_check(&Rationals, &mut rng))?);
    Ok(rep)
}

/// Eigenspace gradings of `H` and `H'` agree with the weight construction,
/// and `derivation_from_grading` recovers `H` up to a scalar.
fn derivation_check<F: Field, S: Sampler<F>>(s: &S, rng: &mut ChaCha8Rng) -> pairgeom::Result<Check> {
    let mut failures = 0usize;
    let mut checked = 0usize;
    for (p, q) in [(1, 1), (1, 2), (2, 2)] {
        let gl = GradedGL::new(s.field(), p, q)?;
        for _ in 0..DERIVATION_SAMPLES {
            let e = Idempotent::complete(&s.matrix(rng, p, q))?;
            let pg = PeirceGrading::new(&gl, &e)?;
            checked += 1;
            let h = &pg.h_grading.h;
            let d = derivation_from_grading(&gl, &pg.h_grading.grading)?.sub(h)?;
            let c = d.get(0, 0).clone();
            let ok = grading_from_derivation(&gl, h, 2)? == pg.h_grading.grading
                && grading_from_derivation(&gl, &pg.conjugate.h, 2)? == pg.conjugate.grading
                && d == Matrix::identity(s.field(), gl.n()).scale(&c);
            if !ok {
                failures += 1;
            }
        }
    }
    Ok(outcome(failures == 0, json!({"idempotents": checked, "failures": failures})))
}

/// `diag(1_r, 0)` and its transpose.
fn rank_idempotent<F: Field>(field: &F, p: usize, q: usize, r: usize) -> Idempotent<F> {
    let mut ep = Matrix::zeros(field, p, q);
    for i in 0..r {
        ep.set(i, i, field.one());
    }
    let em = ep.transpose();
    Idempotent { eplus: ep, eminus: em }
}

pub fn thm58(cfg: &RunConfig) -> CliResult<SuiteReport> {
    let mut rep = SuiteReport::new("thm58", description("thm58"));
    let field = cfg.prime_or(3)?;
    for (p, q) in shapes(cfg) {
        rep.push(guard(format!("stabilizer algebras M({p},{q};F{})", field.p()), true, || {
            let gl = GradedGL::new(&field, p, q)?;
            let es = idempotents(&field, p, q, cfg.budget)?;
            let mut tally = Tally::default();
            for e in &es {
                let r = check_stabilizers(&PeirceGrading::new(&gl, e)?)?;
                tally.record("s_I = g0 ∩ (e0 + e-1)", r.s_i_matches, e);
                tally.record("g_cal_I = q", r.g_cal_matches, e);
                tally.record("q self-normalizing", r.self_normalizing, e);
            }
            tally.record("[g1,g-1] + KE = g0", gl.tkk_g0()? == gl.g(0), &Idempotent::zero(&gl.pair()));
            Ok(tally.into_check(es.len(), Value::Null))
        })?);
    }

    let instances: Vec<(u32, usize, usize, usize)> = match cfg.pq {
        Some((p, q)) => (0..=p.min(q)).map(|r| (field.p(), p, q, r)).collect(),
        None => vec![(3, 1, 1, 1), (3, 1, 2, 1), (2, 2, 2, 1), (3, 2, 2, 0), (3, 2, 2, 1), (3, 2, 2, 2)],
    };
    for (pr, p, q, r) in instances {
        rep.push(guard(format!("squeeze experiment M({p},{q};F{pr}) rank {r}"), false, || {
            let f = PrimeField::new(pr)?;
            let gl = GradedGL::new(&f, p, q)?;
            let pg = PeirceGrading::new(&gl, &rank_idempotent(&f, p, q, r))?;
            let report = squeeze_experiment(&pg, cfg.budget)?;
            Ok(outcome(report.subset_holds, report.to_json()))
        })?);
    }
    Ok(rep)
}
