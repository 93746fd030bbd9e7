//! Jordan pair suites: inner ideal census, joins, chain rank, Peirce
//! decompositions, and the pair identities.

use std::collections::BTreeMap;

use pairgeom::exactla::{all_matrices, enumerate_all_subspaces, gaussian_binomial, Field, Matrix, PrimeField, Rationals, Subspace};
use pairgeom::jordan::{
    bergmann, chain_rank, classify, complete_idempotent, ief_ideal, inner_ideal_closure, is_division_idempotent,
    is_idempotent, is_inner_ideal, is_maximal_idempotent, is_primitive, is_t_closed, join, jordan_axiom_check,
    kernel_of, max_principal_chain_length, mixed_sum, peirce, peirce_polynomial_vanishes, principal_ideal, quad,
    quasi_invertible, sym_inner_ideal, triple, AxiomSample, Classification, InnerIdeal, JordanPair, Side,
};
use pairgeom::liealg::GradedGL;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{description, guard, outcome};
use crate::config::{CliResult, RunConfig};
use crate::report::SuiteReport;
use crate::rng::{check_rng, Sampler};

const RATIONAL_SAMPLES: usize = 1000;
const OPERATOR_SAMPLES: usize = 300;

type Standard = (InnerIdeal<PrimeField>, Subspace<PrimeField>, Subspace<PrimeField>);

/// Every subspace of `V⁺` of a rectangular pair, sorted into inner ideals.
struct Census {
    subspaces: usize,
    standard: Vec<Standard>,
    nonstandard: Vec<InnerIdeal<PrimeField>>,
    by_dim: BTreeMap<usize, usize>,
    t_closed_disagreements: usize,
}

fn census(pair: &JordanPair<PrimeField>, budget: u64) -> pairgeom::Result<Census> {
    let mut c = Census { subspaces: 0, standard: Vec::new(), nonstandard: Vec::new(), by_dim: BTreeMap::new(), t_closed_disagreements: 0 };
    for s in enumerate_all_subspaces(pair.field(), pair.vec_len(Side::Plus), budget)? {
        c.subspaces += 1;
        let i = InnerIdeal::new(pair, s)?;
        let inner = is_inner_ideal(&i)?;
        if inner != is_t_closed(&i)? {
            c.t_closed_disagreements += 1;
        }
        if !inner {
            continue;
        }
        *c.by_dim.entry(i.dim()).or_default() += 1;
        match classify(&i)? {
            Classification::Standard { e, f } => c.standard.push((i, e, f)),
            Classification::Nonstandard => c.nonstandard.push(i),
        }
    }
    Ok(c)
}

/// `{y : y(F) ⊆ E}`, the kernel expected for `I_{E,F}`.
fn expected_kernel(pair: &JordanPair<PrimeField>, e: &Subspace<PrimeField>, f: &Subspace<PrimeField>) -> pairgeom::Result<Subspace<PrimeField>> {
    let (r, c) = pair.shape(Side::Minus);
    let field = pair.field();
    let ann = e.annihilator().basis().clone();
    let cols = f.basis_columns();
    if ann.rows() == 0 || cols.cols() == 0 {
        return Ok(pair.space(Side::Minus));
    }
    let map = Matrix::linear_map_matrix(field, r, c, |y| Ok(Matrix::column(field, ann.mul(y)?.mul(&cols)?.into_data())))?;
    Ok(Subspace::kernel(&map))
}

pub fn appendix_a(cfg: &RunConfig) -> CliResult<SuiteReport> {
    let mut rep = SuiteReport::new("appendixA", description("appendixA"));
    let field = cfg.prime_or(2)?;
    let (p, q) = cfg.pq.unwrap_or((2, 2));
    let tag = format!("M({p},{q};F{})", field.p());
    let pair = JordanPair::rect(&field, p, q);
    let odd = field.integer_is_unit(2);
    let budget = cfg.budget;

    let cen = census(&pair, budget)?;
    rep.push(guard(format!("census {tag}"), true, || {
        Ok(outcome(
            cen.nonstandard.is_empty(),
            json!({
                "subspaces": cen.subspaces,
                "inner_ideals": cen.standard.len() + cen.nonstandard.len(),
                "inner_ideals_by_dim": cen.by_dim.iter().map(|(d, n)| (d.to_string(), json!(n))).collect::<serde_json::Map<_, _>>(),
                "standard": cen.standard.len(),
                "nonstandard": cen.nonstandard.len(),
                "first_nonstandard": cen.nonstandard.first().map(InnerIdeal::to_json),
            }),
        ))
    })?);
    rep.push(guard(format!("triple-closed criterion {tag}"), odd, || {
        Ok(outcome(
            cen.t_closed_disagreements == 0,
            json!({"disagreements": cen.t_closed_disagreements, "two_invertible": odd}),
        ))
    })?);

    rep.push(guard(format!("join formula {tag}"), true, || {
        let (mut pairs, mut failures) = (0usize, 0usize);
        let mut first = None;
        for (a, (i1, e1, f1)) in cen.standard.iter().enumerate() {
            for (i2, e2, f2) in &cen.standard[a..] {
                pairs += 1;
                let j = join(i1, i2)?;
                let supersets: Vec<&InnerIdeal<PrimeField>> = cen
                    .standard
                    .iter()
                    .map(|s| &s.0)
                    .chain(cen.nonstandard.iter())
                    .filter(|s| i1.is_subset(s) && i2.is_subset(s))
                    .collect();
                let least = supersets.iter().filter(|s| supersets.iter().all(|t| s.is_subset(t))).count();
                let ok = least == 1
                    && supersets.iter().all(|t| j.is_subset(t))
                    && supersets.contains(&&j)
                    && mixed_sum(&pair, (e1, f1), (e2, f2))? == j
                    && inner_ideal_closure(&InnerIdeal::new(&pair, i1.space.sum(&i2.space)?)?)? == j;
                if !ok {
                    failures += 1;
                    first.get_or_insert_with(|| json!({"left": i1.to_json(), "right": i2.to_json()}));
                }
            }
        }
        Ok(outcome(failures == 0, json!({"pairs": pairs, "failures": failures, "first_failure": first})))
    })?);

    rep.push(guard(format!("kernels of standard ideals {tag}"), true, || {
        let mut failures = 0usize;
        for (i, e, f) in &cen.standard {
            if kernel_of(i)? != expected_kernel(&pair, e, f)? {
                failures += 1;
            }
        }
        Ok(outcome(failures == 0, json!({"ideals": cen.standard.len(), "failures": failures})))
    })?);

    let matrices = all_matrices(&field, p, q, budget)?;
    rep.push(guard(format!("chain rank {tag}"), true, || {
        let mut failures = 0usize;
        let mut first = None;
        for x in &matrices {
            let r = x.rank();
            let principal = principal_ideal(&pair, x)?;
            let expected = ief_ideal(&pair, &Subspace::kernel(x), &Subspace::image(x))?;
            let ok = chain_rank(&pair, x)? == r
                && max_principal_chain_length(&pair, x, budget)? == r
                && principal == expected
                && principal.dim() == r * r;
            if !ok {
                failures += 1;
                first.get_or_insert_with(|| x.to_json());
            }
        }
        Ok(outcome(failures == 0, json!({"matrices": matrices.len(), "failures": failures, "first_failure": first})))
    })?);

    rep.push(guard(format!("completed idempotents {tag}"), true, || {
        let (mut failures, mut decomposed) = (0usize, 0usize);
        let mut first = None;
        for x in &matrices {
            let (ep, em) = complete_idempotent(x)?;
            let r = x.rank();
            let mut ok = is_idempotent(&ep, &em)? && ep.rank() == r && peirce_polynomial_vanishes(&ep, &em)?;
            if odd {
                decomposed += 1;
                let pc = peirce(&pair, &ep, &em)?;
                let dims = [2, 1, 0].map(|i| pc.part(Side::Plus, i).dim());
                ok &= dims == [r * r, r * (p - r) + r * (q - r), (p - r) * (q - r)];
                ok &= *pc.part(Side::Plus, 2) == principal_ideal(&pair, &ep)?.space;
                for i in [0, 2] {
                    ok &= is_inner_ideal(&InnerIdeal::new(&pair, pc.part(Side::Plus, i).clone())?)?;
                }
            }
            if !ok {
                failures += 1;
                first.get_or_insert_with(|| x.to_json());
            }
        }
        Ok(outcome(failures == 0, json!({"matrices": matrices.len(), "peirce_decompositions": decomposed, "failures": failures, "first_failure": first})))
    })?);

    if odd {
        rep.push(guard(format!("idempotent types {tag}"), true, || {
            let mut seen = std::collections::HashSet::new();
            let mut failures = 0usize;
            for x in &matrices {
                let (ep, em) = complete_idempotent(x)?;
                if ep.is_zero() || !seen.insert(ep.clone()) {
                    continue;
                }
                let r = ep.rank();
                let ok = is_primitive(&pair, &ep, &em, budget)? == (r == 1)
                    && is_division_idempotent(&pair, &ep, &em, budget)? == (r == 1)
                    && is_maximal_idempotent(&pair, &ep, &em, budget)? == (r == p.min(q));
                if !ok {
                    failures += 1;
                }
            }
            Ok(outcome(failures == 0, json!({"idempotents": seen.len(), "failures": failures})))
        })?);
    }

    for n in [2, 3] {
        let sym_dim = n * (n + 1) / 2;
        let total: u128 = (0..=sym_dim).map(|d| gaussian_binomial(field.order(), sym_dim, d)).sum();
        if total > u128::from(budget) {
            continue;
        }
        rep.push(guard(format!("symmetric pair ideals Sym({n};F{})", field.p()), false, || {
            let sym = JordanPair::sym(&field, n);
            let plus = sym.space(Side::Plus);
            let mut from_kernels = std::collections::BTreeSet::new();
            for e in enumerate_all_subspaces(&field, n, budget)? {
                let i = sym_inner_ideal(&sym, &e)?;
                if !is_inner_ideal(&i)? {
                    return Ok(outcome(false, json!({"not_inner": e.to_json()})));
                }
                from_kernels.insert(i.space);
            }
            let mut inner = 0usize;
            let mut other = Vec::new();
            for s in enumerate_all_subspaces(&field, plus.dim(), budget)? {
                let vs: Vec<Vec<u32>> = s.basis_vectors().iter().map(|c| plus.combine(c)).collect();
                let i = InnerIdeal::new(&sym, Subspace::span(&field, sym.vec_len(Side::Plus), &vs)?)?;
                if is_inner_ideal(&i)? {
                    inner += 1;
                    if !from_kernels.contains(&i.space) {
                        other.push(i.to_json());
                    }
                }
            }
            Ok(outcome(
                other.is_empty(),
                json!({"inner_ideals": inner, "kernel_type": from_kernels.len(), "other": other.len(), "first_other": other.first()}),
            ))
        })?);
    }
    Ok(rep)
}

fn random_samples<F: Field, S: Sampler<F>>(s: &S, rng: &mut ChaCha8Rng, count: usize) -> Vec<AxiomSample<F>> {
    (0..count)
        .map(|_| {
            let (p, q) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            AxiomSample {
                x: s.matrix(rng, p, q),
                y: s.matrix(rng, q, p),
                u: s.matrix(rng, p, q),
                v: s.matrix(rng, q, p),
                w: s.matrix(rng, p, q),
            }
        })
        .collect()
}

fn symmetric<F: Field, S: Sampler<F>>(s: &S, rng: &mut ChaCha8Rng, n: usize) -> Matrix<F> {
    let a = s.matrix(rng, n, n);
    a.add(&a.transpose()).expect("square")
}

/// Operator identities of one sample: `T(x,y,x) = 2Q(x)y`, `B(x,y)z = (1-xy)z(1-yx)`,
/// `B(0,y) = 1`, and quasi-invertibility iff `B(x,y)` is invertible.
fn operator_failures<F: Field>(x: &Matrix<F>, y: &Matrix<F>, z: &Matrix<F>) -> pairgeom::Result<Vec<&'static str>> {
    let field = x.field();
    let (p, q) = x.shape();
    let mut out = Vec::new();
    if triple(x, y, x)? != quad(x, y)?.scale(&field.from_i64(2)) {
        out.push("T(x,y,x) = 2Q(x)y");
    }
    let b = bergmann(x, y)?;
    let lx = Matrix::identity(field, p).sub(&x.mul(y)?)?;
    let rx = Matrix::identity(field, q).sub(&y.mul(x)?)?;
    if b.mul_vec(z.data()) != lx.mul(z)?.mul(&rx)?.into_data() {
        out.push("B(x,y)z = (1-xy)z(1-yx)");
    }
    if bergmann(&Matrix::zeros(field, p, q), y)? != Matrix::identity(field, p * q) {
        out.push("B(0,y) = 1");
    }
    if quasi_invertible(x, y)? != b.is_invertible() {
        out.push("quasi-invertible iff B invertible");
    }
    Ok(out)
}

pub fn appendix_b(cfg: &RunConfig) -> CliResult<SuiteReport> {
    let mut rep = SuiteReport::new("appendixB", description("appendixB"));
    rep.push(guard("pair identities exhaustive (1x2, 2x1) F2", true, || {
        let f2 = PrimeField::new(2)?;
        let plus = all_matrices(&f2, 1, 2, cfg.budget)?;
        let minus = all_matrices(&f2, 2, 1, cfg.budget)?;
        let mut samples = Vec::new();
        for x in &plus {
            for y in &minus {
                for u in &plus {
                    for v in &minus {
                        for w in &plus {
                            samples.push(AxiomSample { x: x.clone(), y: y.clone(), u: u.clone(), v: v.clone(), w: w.clone() });
                        }
                    }
                }
            }
        }
        let r = jordan_axiom_check(samples)?;
        Ok(outcome(r.passed(), r.to_json()))
    })?);

    let name = "pair identities random rational";
    let mut rng = check_rng(cfg.seed, name);
    rep.push(guard(name, true, || {
        let r = jordan_axiom_check(random_samples(&Rationals, &mut rng, RATIONAL_SAMPLES))?;
        Ok(outcome(r.passed(), r.to_json()))
    })?);

    let name = "pair identities random symmetric rational";
    let mut rng = check_rng(cfg.seed, name);
    rep.push(guard(name, true, || {
        let samples: Vec<AxiomSample<Rationals>> = (0..OPERATOR_SAMPLES)
            .map(|_| {
                let n = rng.gen_range(1..=3);
                let mut m = || symmetric(&Rationals, &mut rng, n);
                AxiomSample { x: m(), y: m(), u: m(), v: m(), w: m() }
            })
            .collect();
        let r = jordan_axiom_check(samples)?;
        Ok(outcome(r.passed(), r.to_json()))
    })?);

    for (label, prime) in [("F5", Some(5u32)), ("Q", None)] {
        let name = format!("bergmann operators {label}");
        let mut rng = check_rng(cfg.seed, &name);
        rep.push(guard(name, true, || {
            let mut failures: BTreeMap<&str, usize> = BTreeMap::new();
            let mut record = |fs: Vec<&'static str>| {
                for f in fs {
                    *failures.entry(f).or_default() += 1;
                }
            };
            for _ in 0..OPERATOR_SAMPLES {
                let (p, q) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
                match prime {
                    Some(pr) => {
                        let f = PrimeField::new(pr)?;
                        let (x, y, z) = (f.matrix(&mut rng, p, q), f.matrix(&mut rng, q, p), f.matrix(&mut rng, p, q));
                        record(operator_failures(&x, &y, &z)?);
                    }
                    None => {
                        let s = Rationals;
                        let (x, y, z) = (s.matrix(&mut rng, p, q), s.matrix(&mut rng, q, p), s.matrix(&mut rng, p, q));
                        record(operator_failures(&x, &y, &z)?);
                    }
                }
            }
            Ok(outcome(failures.is_empty(), json!({"samples": OPERATOR_SAMPLES, "failures": failures})))
        })?);
    }

    let name = "triple product as double bracket";
    let mut rng = check_rng(cfg.seed, name);
    rep.push(guard(name, true, || {
        let mut failures = 0usize;
        for _ in 0..OPERATOR_SAMPLES {
            let (p, q) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let gl = GradedGL::new(&Rationals, p, q)?;
            let s = Rationals;
            let (x, y, z) = (s.matrix(&mut rng, p, q), s.matrix(&mut rng, q, p), s.matrix(&mut rng, p, q));
            let lhs = gl.bracket(&gl.bracket(&gl.embed_plus(&x), &gl.embed_minus(&y))?, &gl.embed_plus(&z))?;
            if lhs != gl.embed_plus(&triple(&x, &y, &z)?) {
                failures += 1;
            }
        }
        Ok(outcome(failures == 0, json!({"samples": OPERATOR_SAMPLES, "failures": failures})))
    })?);
    Ok(rep)
}

