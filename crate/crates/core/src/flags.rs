//! Flags, flag types, transversality and gradings of `F^n`.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde_json::{json, Value};

use crate::error::{GeomError, Result};
use crate::exactla::enumerate::{check_budget, enumerate_subspaces, gaussian_binomial};
use crate::exactla::{Field, Matrix, PrimeField, Subspace};

/// A strictly increasing chain `0 ⊂ f_1 ⊂ … ⊂ f_k = F^n`. Only the proper
/// steps `f_1..f_{k-1}` are stored; the length is `k = steps + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag<F: Field> {
    field: F,
    ambient: usize,
    steps: Vec<Subspace<F>>,
}

/// Dimensions `d_1 < … < d_k = n` of the steps of a flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagType {
    dims: Vec<usize>,
}

impl FlagType {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims[0] == 0 || dims.windows(2).any(|w| w[0] >= w[1]) {
            return Err(GeomError::InvalidType(format!("{dims:?} is not strictly increasing and positive")));
        }
        Ok(FlagType { dims })
    }

    /// Type of the Grassmannian of `d`-planes in `F^n` (length 2, or 1 when `d = n`).
    pub fn grassmannian(d: usize, n: usize) -> Result<Self> {
        if d == 0 || d > n {
            return Err(GeomError::InvalidType(format!("Grassmannian of {d}-planes in dimension {n}")));
        }
        if d == n {
            Self::new(vec![n])
        } else {
            Self::new(vec![d, n])
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn ambient(&self) -> usize {
        *self.dims.last().expect("nonempty")
    }
    pub fn length(&self) -> usize {
        self.dims.len()
    }

    /// Type of the flags transversal to flags of this type:
    /// `d_i' = n - d_{k-i}`.
    pub fn cotype(&self) -> Self {
        let n = self.ambient();
        let k = self.length();
        let mut dims: Vec<usize> = (1..k).map(|i| n - self.dims[k - i - 1]).collect();
        dims.push(n);
        FlagType { dims }
    }

    /// Dimensions of the grading parts `d_j - d_{j-1}`.
    pub fn part_dims(&self) -> Vec<usize> {
        let mut prev = 0;
        self.dims
            .iter()
            .map(|&d| {
                let c = d - prev;
                prev = d;
                c
            })
            .collect()
    }

    /// All types of length `k` in dimension `n`, in lexicographic order.
    pub fn all_of_length(n: usize, k: usize) -> Vec<Self> {
        fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<FlagType>) {
            if left == 0 {
                let mut dims = cur.clone();
                dims.push(n);
                out.push(FlagType { dims });
                return;
            }
            for d in start..n {
                cur.push(d);
                rec(d + 1, n, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 && k > 0 {
            rec(1, n, k - 1, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Number of flags of this type over `F_q`.
    pub fn count(&self, q: u64) -> u128 {
        let mut total: u128 = 1;
        for w in self.dims.windows(2).rev() {
            total = total.saturating_mul(gaussian_binomial(q, w[1], w[0]));
        }
        total
    }
}

impl<F: Field> Flag<F> {
    /// Builds a flag from its proper steps, validating strictness.
    pub fn new(field: &F, ambient: usize, steps: Vec<Subspace<F>>) -> Result<Self> {
        if ambient == 0 {
            return Err(GeomError::InvalidFlag("ambient dimension 0".into()));
        }
        for s in &steps {
            if s.ambient() != ambient {
                return Err(GeomError::AmbientMismatch(s.ambient(), ambient));
            }
        }
        if steps.first().is_some_and(Subspace::is_zero) || steps.last().is_some_and(Subspace::is_full) {
            return Err(GeomError::InvalidFlag("steps must be proper and nonzero".into()));
        }
        for w in steps.windows(2) {
            if w[0].dim() >= w[1].dim() || !w[0].is_subspace_of(&w[1]) {
                return Err(GeomError::InvalidFlag("steps must be strictly increasing".into()));
            }
        }
        Ok(Flag { field: field.clone(), ambient, steps })
    }

    /// Builds a flag from all steps including the top `F^n`.
    pub fn from_all_steps(field: &F, ambient: usize, mut steps: Vec<Subspace<F>>) -> Result<Self> {
        match steps.pop() {
            Some(top) if top.is_full() && top.ambient() == ambient => Self::new(field, ambient, steps),
            _ => Err(GeomError::InvalidFlag("last step must be the whole space".into())),
        }
    }

    /// The length-1 flag `(F^n)`.
    pub fn trivial(field: &F, ambient: usize) -> Self {
        Flag { field: field.clone(), ambient, steps: Vec::new() }
    }

    /// The length-2 flag `(s ⊂ F^n)`, or the trivial flag if `s` is full.
    pub fn single(s: Subspace<F>) -> Result<Self> {
        let field = s.field().clone();
        let n = s.ambient();
        if s.is_full() {
            return Ok(Self::trivial(&field, n));
        }
        Self::new(&field, n, vec![s])
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    /// Length `k`.
    pub fn length(&self) -> usize {
        self.steps.len() + 1
    }
    pub fn proper_steps(&self) -> &[Subspace<F>] {
        &self.steps
    }

    /// Step `f_i` for `0 <= i <= k` (`f_0 = 0`, `f_k = F^n`).
    pub fn step(&self, i: usize) -> Subspace<F> {
        let k = self.length();
        match i {
            0 => Subspace::zero(&self.field, self.ambient),
            i if i >= k => Subspace::full(&self.field, self.ambient),
            i => self.steps[i - 1].clone(),
        }
    }

    pub fn flag_type(&self) -> FlagType {
        let mut dims: Vec<usize> = self.steps.iter().map(Subspace::dim).collect();
        dims.push(self.ambient);
        FlagType { dims }
    }

    pub fn same_type(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.flag_type() == other.flag_type()
    }

    /// Image `g·f` under an invertible matrix.
    pub fn act(&self, g: &Matrix<F>) -> Result<Self> {
        let steps = self.steps.iter().map(|s| s.image_under(g)).collect::<Result<Vec<_>>>()?;
        Self::new(&self.field, self.ambient, steps)
    }

    pub fn to_json(&self) -> Value {
        json!({"ambient": self.ambient, "steps": self.steps.iter().map(Subspace::to_json).collect::<Vec<_>>()})
    }

    pub fn from_json(field: &F, v: &Value) -> Result<Self> {
        let n = v.get("ambient").and_then(Value::as_u64).ok_or_else(|| GeomError::Json("flag: ambient".into()))?
            as usize;
        let steps = v
            .get("steps")
            .and_then(Value::as_array)
            .ok_or_else(|| GeomError::Json("flag: steps".into()))?
            .iter()
            .map(|s| Subspace::from_json(field, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, n, steps)
    }
}

impl<F: Field> PartialOrd for Flag<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the canonical bases, outermost step first.
impl<F: Field> Ord for Flag<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.steps.len().cmp(&other.steps.len()))
            .then_with(|| self.steps.iter().rev().cmp(other.steps.iter().rev()))
    }
}

/// A direct-sum decomposition `F^n = g_1 ⊕ … ⊕ g_k` into nonzero parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grading<F: Field> {
    field: F,
    ambient: usize,
    parts: Vec<Subspace<F>>,
}

impl<F: Field> Grading<F> {
    pub fn new(field: &F, ambient: usize, parts: Vec<Subspace<F>>) -> Result<Self> {
        if parts.is_empty() {
            return Err(GeomError::InvalidGrading("no parts".into()));
        }
        for p in &parts {
            if p.ambient() != ambient {
                return Err(GeomError::AmbientMismatch(p.ambient(), ambient));
            }
            if p.is_zero() {
                return Err(GeomError::InvalidGrading("zero part".into()));
            }
        }
        let total: usize = parts.iter().map(Subspace::dim).sum();
        if total != ambient || !Subspace::sum_all(field, ambient, &parts)?.is_full() {
            return Err(GeomError::InvalidGrading("parts do not form a direct sum of the whole space".into()));
        }
        Ok(Grading { field: field.clone(), ambient, parts })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn length(&self) -> usize {
        self.parts.len()
    }
    /// Parts `g_1, …, g_k` (index 0 holds `g_1`).
    pub fn parts(&self) -> &[Subspace<F>] {
        &self.parts
    }

    pub fn to_json(&self) -> Value {
        json!({"ambient": self.ambient, "parts": self.parts.iter().map(Subspace::to_json).collect::<Vec<_>>()})
    }
}

/// `e_i ⊕ f_{k-i} = F^n` for all `i`. Errors when lengths or ambients differ.
pub fn is_transversal<F: Field>(e: &Flag<F>, f: &Flag<F>) -> Result<bool> {
    if e.ambient != f.ambient {
        return Err(GeomError::AmbientMismatch(e.ambient, f.ambient));
    }
    if e.length() != f.length() {
        return Err(GeomError::InvalidFlag(format!("lengths {} and {} differ", e.length(), f.length())));
    }
    let k = e.length();
    for i in 1..k {
        if !e.steps[i - 1].is_complement(&f.steps[k - i - 1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The grading `g_j = e_j ∩ f_{k+1-j}` of a transversal pair.
pub fn grading_from_pair<F: Field>(e: &Flag<F>, f: &Flag<F>) -> Result<Grading<F>> {
    if !is_transversal(e, f)? {
        return Err(GeomError::NotTransversal);
    }
    let k = e.length();
    let parts = (1..=k).map(|j| e.step(j).intersect(&f.step(k + 1 - j))).collect::<Result<Vec<_>>>()?;
    Grading::new(&e.field, e.ambient, parts)
}

/// The transversal pair `e_i = g_1 ⊕ … ⊕ g_i`, `f_i = g_{k+1-i} ⊕ … ⊕ g_k`.
pub fn flags_from_grading<F: Field>(g: &Grading<F>) -> Result<(Flag<F>, Flag<F>)> {
    let k = g.length();
    let (field, n) = (&g.field, g.ambient);
    let mut e_steps = Vec::with_capacity(k - 1);
    let mut f_steps = Vec::with_capacity(k - 1);
    for i in 1..k {
        e_steps.push(Subspace::sum_all(field, n, &g.parts[..i])?);
        f_steps.push(Subspace::sum_all(field, n, &g.parts[k - i..])?);
    }
    Ok((Flag::new(field, n, e_steps)?, Flag::new(field, n, f_steps)?))
}

/// Embeds the subspaces of `F^{dim s}` into `s` through its canonical basis.
fn embed(s: &Subspace<PrimeField>, inner: &Subspace<PrimeField>) -> Subspace<PrimeField> {
    let vs: Vec<Vec<u32>> = inner.basis_vectors().iter().map(|c| s.combine(c)).collect();
    Subspace::span(s.field(), s.ambient(), &vs).expect("embedded vectors")
}

/// All flags of the given type in `F_p^n`, sorted.
pub fn enumerate_flags(field: &PrimeField, t: &FlagType, budget: u64) -> Result<Vec<Flag<PrimeField>>> {
    check_budget(t.count(field.order()), budget)?;
    let n = t.ambient();
    let mut cache: HashMap<(usize, usize), Vec<Subspace<PrimeField>>> = HashMap::new();
    let mut out = Vec::new();
    let proper = &t.dims()[..t.length() - 1];
    let mut chain = Vec::new();
    extend_down(field, &Subspace::full(field, n), proper, &mut chain, &mut cache, budget, &mut out)?;
    out.sort();
    Ok(out)
}

fn extend_down(
    field: &PrimeField,
    top: &Subspace<PrimeField>,
    remaining: &[usize],
    chain: &mut Vec<Subspace<PrimeField>>,
    cache: &mut HashMap<(usize, usize), Vec<Subspace<PrimeField>>>,
    budget: u64,
    out: &mut Vec<Flag<PrimeField>>,
) -> Result<()> {
    let Some((&d, rest)) = remaining.split_last() else {
        let mut steps = chain.clone();
        steps.reverse();
        out.push(Flag::new(field, top.ambient(), steps)?);
        return Ok(());
    };
    let m = top.dim();
    if !cache.contains_key(&(m, d)) {
        cache.insert((m, d), enumerate_subspaces(field, m, d, budget)?);
    }
    let inner = cache[&(m, d)].clone();
    for s in inner {
        let step = embed(top, &s);
        chain.push(step.clone());
        extend_down(field, &step, rest, chain, cache, budget, out)?;
        chain.pop();
    }
    Ok(())
}

/// All ordered gradings of `F_p^n` with the given part dimensions, in
/// enumeration order (parts chosen in sorted order, first part outermost).
pub fn enumerate_gradings(field: &PrimeField, part_dims: &[usize], budget: u64) -> Result<Vec<Grading<PrimeField>>> {
    let n: usize = part_dims.iter().sum();
    if part_dims.iter().any(|&c| c == 0) || n == 0 {
        return Err(GeomError::InvalidGrading("part dimensions must be positive".into()));
    }
    let q = field.order();
    let gl = |m: usize| -> u128 { (0..m).fold(1u128, |acc, i| acc.saturating_mul((q as u128).pow(m as u32) - (q as u128).pow(i as u32))) };
    let count = part_dims.iter().fold(gl(n), |acc, &c| acc / gl(c));
    check_budget(count, budget)?;
    let mut by_dim: HashMap<usize, Vec<Subspace<PrimeField>>> = HashMap::new();
    for &c in part_dims {
        if !by_dim.contains_key(&c) {
            by_dim.insert(c, enumerate_subspaces(field, n, c, budget)?);
        }
    }
    let mut out = Vec::new();
    let mut parts = Vec::new();
    grading_rec(field, n, part_dims, &by_dim, &Subspace::zero(field, n), &mut parts, &mut out)?;
    Ok(out)
}

fn grading_rec(
    field: &PrimeField,
    n: usize,
    dims: &[usize],
    by_dim: &HashMap<usize, Vec<Subspace<PrimeField>>>,
    acc: &Subspace<PrimeField>,
    parts: &mut Vec<Subspace<PrimeField>>,
    out: &mut Vec<Grading<PrimeField>>,
) -> Result<()> {
    let Some((&c, rest)) = dims.split_first() else {
        out.push(Grading::new(field, n, parts.clone())?);
        return Ok(());
    };
    for s in &by_dim[&c] {
        let sum = acc.sum(s)?;
        if sum.dim() != acc.dim() + c {
            continue;
        }
        parts.push(s.clone());
        grading_rec(field, n, rest, by_dim, &sum, parts, out)?;
        parts.pop();
    }
    Ok(())
}
