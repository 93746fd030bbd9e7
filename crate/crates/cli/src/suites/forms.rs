//! Orthogonal complement involution and Lagrangian charts.

use pairgeom::charts::{from_chart, to_chart, u_algebra, ChartPoint};
use pairgeom::exactla::{Field, Matrix, PrimeField, Subspace};
use pairgeom::flags::{is_transversal, Flag, FlagType};
use pairgeom::lagrangian::{enumerate_lagrangian, BilinearForm, LagrangianChartModel, Symmetry};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{description, flags_of, guard, outcome};
use crate::config::{CliResult, RunConfig};
use crate::report::SuiteReport;
use crate::rng::{check_rng, Sampler};

const RANDOM_SAMPLES: usize = 300;

/// Counts of the three perp properties on one chart configuration.
#[derive(Default)]
struct PerpTally {
    checked: usize,
    involution: usize,
    transversality: usize,
    chart_action: usize,
}

impl PerpTally {
    fn failures(&self) -> usize {
        self.involution + self.transversality + self.chart_action
    }

    fn to_json(&self) -> serde_json::Value {
        json!({
            "checked": self.checked,
            "failures": {"involution": self.involution, "transversality": self.transversality, "chart_action": self.chart_action},
        })
    }

    fn record<F: Field>(&mut self, form: &BilinearForm<F>, y: &Flag<F>, x: &Flag<F>, a: &Flag<F>) -> pairgeom::Result<()> {
        self.checked += 1;
        for f in [x, a, y] {
            if form.perp_flag(&form.perp_flag(f)?)? != *f {
                self.involution += 1;
            }
        }
        let (px, pa, py) = (form.perp_flag(x)?, form.perp_flag(a)?, form.perp_flag(y)?);
        if is_transversal(x, a)? != is_transversal(&px, &pa)? || is_transversal(y, a)? != is_transversal(&py, &pa)? {
            self.transversality += 1;
        }
        if is_transversal(x, a)? && is_transversal(y, a)? {
            let image = form.perp_chart(&to_chart(y, x, a)?)?;
            if to_chart(&py, &px, &pa)? != image {
                self.chart_action += 1;
            }
        }
        Ok(())
    }
}

fn standard_flag(field: &PrimeField, t: &FlagType) -> pairgeom::Result<Flag<PrimeField>> {
    let n = t.ambient();
    let steps = t.dims()[..t.length() - 1]
        .iter()
        .map(|&d| Subspace::coordinate(field, n, &(0..d).collect::<Vec<_>>()))
        .collect();
    Flag::new(field, n, steps)
}

fn random_flag(field: &PrimeField, t: &FlagType, rng: &mut ChaCha8Rng) -> pairgeom::Result<Flag<PrimeField>> {
    standard_flag(field, t)?.act(&field.invertible(rng, t.ambient()))
}

/// Symmetric model matrices for a skew form, alternating ones for a symmetric form.
fn has_model_symmetry<F: Field>(b: &Matrix<F>, s: Symmetry) -> bool {
    match s {
        Symmetry::Symmetric => *b == b.transpose(),
        Symmetry::Skew => *b == b.transpose().neg() && (0..b.rows()).all(|i| b.field().is_zero(b.get(i, i))),
    }
}

pub fn thm42(cfg: &RunConfig) -> CliResult<SuiteReport> {
    let mut rep = SuiteReport::new("thm42", description("thm42"));

    rep.push(guard("perp exhaustive symplectic F3 n=2", true, || {
        let field = PrimeField::new(3)?;
        let form = BilinearForm::symplectic(&field, 1);
        let mut tally = PerpTally::default();
        for k in 1..=2 {
            for t in FlagType::all_of_length(2, k) {
                let points = flags_of(&field, &t, cfg.budget)?;
                let bases = flags_of(&field, &t.cotype(), cfg.budget)?;
                for a in &bases {
                    for x in &points {
                        for y in &points {
                            tally.record(&form, y, x, a)?;
                        }
                    }
                }
            }
        }
        Ok(outcome(tally.failures() == 0, tally.to_json()))
    })?);

    let name = "perp randomized symplectic F5 n=4";
    let mut rng = check_rng(cfg.seed, name);
    rep.push(guard(name, true, || {
        let field = PrimeField::new(5)?;
        let form = BilinearForm::symplectic(&field, 2);
        let types: Vec<FlagType> = (1..=3).flat_map(|k| FlagType::all_of_length(4, k)).collect();
        let mut tally = PerpTally::default();
        for _ in 0..RANDOM_SAMPLES {
            let t = &types[rng.gen_range(0..types.len())];
            let x = random_flag(&field, t, &mut rng)?;
            let a = loop {
                let a = random_flag(&field, &t.cotype(), &mut rng)?;
                if is_transversal(&x, &a)? {
                    break a;
                }
            };
            let u = u_algebra(&a)?;
            let coord = Matrix::from_vec(&field, 4, 4, field.element_of(&mut rng, &u))?;
            let y = from_chart(&ChartPoint { x: x.clone(), a: a.clone(), coord })?;
            tally.record(&form, &y, &x, &a)?;
            let b = random_flag(&field, &t.cotype(), &mut rng)?;
            tally.record(&form, &y, &x, &b)?;
        }
        Ok(outcome(tally.failures() == 0, tally.to_json()))
    })?);

    for (p, m, symmetric) in [(3, 1, false), (3, 2, false), (5, 2, false), (3, 2, true), (5, 2, true), (3, 1, true)] {
        let kind = if symmetric { "symmetric" } else { "symplectic" };
        rep.push(guard(format!("lagrangian chart dimension {kind} F{p} m={m}"), true, || {
            let field = PrimeField::new(p)?;
            let form = if symmetric { BilinearForm::artinian(&field, m) } else { BilinearForm::symplectic(&field, m) };
            let n = 2 * m;
            let t = FlagType::grassmannian(m, n)?;
            let lags = enumerate_lagrangian(&form, &t, cfg.budget)?;
            let o = &lags[0];
            let op = lags.iter().find(|l| is_transversal(o, l).unwrap_or(false)).ok_or(pairgeom::GeomError::NotTransversal)?;
            let model = LagrangianChartModel::new(&form, &o.step(1), &op.step(1))?;
            let (mut in_chart, mut failures) = (0usize, 0usize);
            for y in &lags {
                if !is_transversal(y, op)? {
                    continue;
                }
                in_chart += 1;
                let x = to_chart(y, o, op)?.coord;
                let b = model.to_model(&x)?;
                if !model.is_lagrangian_coord(&x)? || !has_model_symmetry(&b, model.model_symmetry()) || model.from_model(&b)? != x {
                    failures += 1;
                }
            }
            let expected = field.order().pow(model.dim() as u32) as usize;
            Ok(outcome(
                failures == 0 && in_chart == expected,
                json!({"m": m, "lagrangians": lags.len(), "chart_points": in_chart, "model_dim": model.dim(), "expected_points": expected, "failures": failures}),
            ))
        })?);
    }
    Ok(rep)
}
