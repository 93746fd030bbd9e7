//! Intrinsic subspaces of finite flag geometries.
//!
//! A subset `S ⊆ X⁺` is intrinsic when, for every chart base `a ∈ X⁻` and
//! every origin `x ∈ S ∩ a^⊤`, the chart coordinates of `S ∩ a^⊤` form a
//! linear subspace of `u(a)`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::charts::{maps_sending, require_chart_field, u_algebra, unipotent_elements, ChartFrame};
use crate::error::{GeomError, Result};
use crate::exactla::enumerate::{all_vectors, check_budget, power_count};
use crate::exactla::{Field, Matrix, PrimeField, Subspace};
use crate::flags::{enumerate_flags, is_transversal, Flag, FlagType};

/// Group elements of one chart: `u_y` for each point `y` of the chart domain.
struct ChartData {
    frame: ChartFrame<PrimeField>,
    elements: Vec<Matrix<PrimeField>>,
    inverses: Vec<Matrix<PrimeField>>,
}

/// A finite geometry: the points `X⁺`, the chart bases `X⁻`, and for each
/// chart base the indices of the transversal points.
pub struct FiniteGeometry {
    field: PrimeField,
    ambient: usize,
    length: usize,
    points: Vec<Flag<PrimeField>>,
    copoints: Vec<Flag<PrimeField>>,
    index: HashMap<Flag<PrimeField>, usize>,
    domains: Vec<Vec<usize>>,
    charts: Vec<OnceLock<std::result::Result<ChartData, GeomError>>>,
    descriptor: Value,
}

impl FiniteGeometry {
    /// The flag geometry of the given type, charted by flags of the co-type.
    pub fn flags(field: &PrimeField, point_type: &FlagType, budget: u64) -> Result<Self> {
        let points = enumerate_flags(field, point_type, budget)?;
        let copoints = enumerate_flags(field, &point_type.cotype(), budget)?;
        let descriptor = json!({
            "kind": "flag",
            "field": field.to_json(),
            "n": point_type.ambient(),
            "k": point_type.length(),
            "type": point_type.dims(),
        });
        Self::from_parts(field, points, copoints, descriptor, budget)
    }

    /// A geometry from explicit point and chart-base lists (e.g. a subgeometry).
    pub fn from_parts(
        field: &PrimeField,
        mut points: Vec<Flag<PrimeField>>,
        mut copoints: Vec<Flag<PrimeField>>,
        descriptor: Value,
        budget: u64,
    ) -> Result<Self> {
        check_budget((points.len() as u128).max(copoints.len() as u128), budget)?;
        points.sort();
        points.dedup();
        copoints.sort();
        copoints.dedup();
        let first = points.first().ok_or_else(|| GeomError::InvalidFlag("empty geometry".into()))?;
        let (ambient, length) = (first.ambient(), first.length());
        let index = points.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let mut domains = Vec::with_capacity(copoints.len());
        for a in &copoints {
            let mut dom = Vec::new();
            for (i, x) in points.iter().enumerate() {
                if is_transversal(x, a)? {
                    dom.push(i);
                }
            }
            domains.push(dom);
        }
        let charts = (0..copoints.len()).map(|_| OnceLock::new()).collect();
        Ok(FiniteGeometry {
            field: *field,
            ambient,
            length,
            points,
            copoints,
            index,
            domains,
            charts,
            descriptor,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn length(&self) -> usize {
        self.length
    }
    pub fn points(&self) -> &[Flag<PrimeField>] {
        &self.points
    }
    pub fn copoints(&self) -> &[Flag<PrimeField>] {
        &self.copoints
    }
    pub fn descriptor(&self) -> &Value {
        &self.descriptor
    }
    pub fn point(&self, i: usize) -> &Flag<PrimeField> {
        &self.points[i]
    }
    pub fn copoint(&self, a: usize) -> &Flag<PrimeField> {
        &self.copoints[a]
    }
    pub fn index_of(&self, f: &Flag<PrimeField>) -> Option<usize> {
        self.index.get(f).copied()
    }
    pub fn copoint_index(&self, a: &Flag<PrimeField>) -> Option<usize> {
        self.copoints.binary_search(a).ok()
    }
    /// Indices of the points transversal to chart base `a`.
    pub fn domain(&self, a: usize) -> &[usize] {
        &self.domains[a]
    }

    pub fn all(&self) -> PointSet {
        PointSet { members: (0..self.points.len()).collect() }
    }

    pub fn set_of(&self, flags: &[Flag<PrimeField>]) -> Result<PointSet> {
        let members = flags
            .iter()
            .map(|f| self.index_of(f).ok_or_else(|| GeomError::InvalidFlag("flag is not a point of the geometry".into())))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(PointSet { members })
    }

    fn chart(&self, a: usize) -> Result<&ChartData> {
        let cell = self.charts[a].get_or_init(|| {
            require_chart_field(&self.field, self.length)?;
            let dom = &self.domains[a];
            let x0 = &self.points[*dom.first().ok_or(GeomError::NotInChart)?];
            let frame = ChartFrame::new(&self.copoints[a], x0)?;
            let elements = dom.iter().map(|&i| frame.element(&self.points[i])).collect::<Result<Vec<_>>>()?;
            let inverses = elements.iter().map(Matrix::inverse).collect::<Result<Vec<_>>>()?;
            Ok(ChartData { frame, elements, inverses })
        });
        cell.as_ref().map_err(Clone::clone)
    }

    /// Position of point `i` in the domain of chart `a`.
    fn domain_pos(&self, a: usize, i: usize) -> Option<usize> {
        self.domains[a].binary_search(&i).ok()
    }

    /// Chart coordinates (vectorized) of `members` at origin `x`, chart `a`.
    fn coords(&self, a: usize, x: usize, members: &[usize]) -> Result<Vec<Vec<u32>>> {
        let chart = self.chart(a)?;
        let px = self.domain_pos(a, x).ok_or(GeomError::NotInChart)?;
        members
            .iter()
            .map(|&y| {
                let py = self.domain_pos(a, y).ok_or(GeomError::NotInChart)?;
                Ok(chart.frame.coord(&chart.elements[py], &chart.inverses[px])?.into_data())
            })
            .collect()
    }

    /// The point with vectorized coordinate `c` at origin `x` in chart `a`.
    fn point_at(&self, a: usize, x: usize, c: &[u32]) -> Result<usize> {
        let chart = self.chart(a)?;
        let px = self.domain_pos(a, x).ok_or(GeomError::NotInChart)?;
        let m = Matrix::from_vec(&self.field, self.ambient, self.ambient, c.to_vec())?;
        let f = chart.frame.point(&m, &chart.elements[px])?;
        self.index_of(&f).ok_or_else(|| GeomError::InvalidFlag("chart point outside the geometry".into()))
    }

    /// Origins at which a slice must be tested. For length 2 the group `U(a)`
    /// is abelian and coordinates at another origin are translates, so one
    /// origin decides; a slice filling the whole chart is always linear.
    fn origins<'s>(&self, a: usize, slice: &'s [usize]) -> &'s [usize] {
        if slice.len() <= 1 || slice.len() == self.domains[a].len() {
            &[]
        } else if self.length <= 2 {
            &slice[..1]
        } else {
            slice
        }
    }

    fn slice(&self, a: usize, set: &PointSet) -> Vec<usize> {
        self.domains[a].iter().copied().filter(|i| set.members.contains(i)).collect()
    }
}

/// A subset of the points of a [`FiniteGeometry`], by sorted index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    pub members: BTreeSet<usize>,
}

impl PointSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        PointSet { members: members.into_iter().collect() }
    }
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }
    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.is_subset(&other.members)
    }
    pub fn flags<'g>(&self, g: &'g FiniteGeometry) -> Vec<&'g Flag<PrimeField>> {
        self.members.iter().map(|&i| g.point(i)).collect()
    }
    pub fn to_json(&self, g: &FiniteGeometry) -> Value {
        json!({
            "geometry": g.descriptor().clone(),
            "members": self.members.iter().map(|&i| g.point(i).to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Failure certificate of the intrinsic property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub chart: usize,
    pub origin: usize,
    pub violation: Violation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `y + z` at the origin leaves the set.
    Sigma { y: usize, z: usize, result: usize },
    /// `r·y` at the origin leaves the set.
    PiR { y: usize, r: u32, result: usize },
}

impl Witness {
    pub fn to_json(&self, g: &FiniteGeometry) -> Value {
        let violation = match &self.violation {
            Violation::Sigma { y, z, result } => json!({
                "op": "sigma",
                "args": [g.point(*y).to_json(), g.point(*z).to_json()],
                "result": g.point(*result).to_json(),
            }),
            Violation::PiR { y, r, result } => json!({
                "op": "pi_r",
                "args": [g.point(*y).to_json(), r],
                "result": g.point(*result).to_json(),
            }),
        };
        json!({"chart": g.copoints[self.chart].to_json(), "origin": g.point(self.origin).to_json(), "violation": violation})
    }
}

/// Whether a set of distinct vectors over `F_p` is a linear subspace, and its span.
fn span_of(field: &PrimeField, dim: usize, coords: &[Vec<u32>]) -> Result<Subspace<PrimeField>> {
    Subspace::span(field, dim, coords)
}

fn is_submodule(field: &PrimeField, dim: usize, coords: &[Vec<u32>]) -> Result<bool> {
    let span = span_of(field, dim, coords)?;
    Ok(power_count(field.order(), span.dim()) == coords.len() as u128)
}

/// Checks the intrinsic property; `Ok(None)` means intrinsic.
pub fn check_intrinsic(g: &FiniteGeometry, set: &PointSet) -> Result<Option<Witness>> {
    require_chart_field(g.field(), g.length())?;
    let dim = g.ambient * g.ambient;
    for a in 0..g.copoints.len() {
        let slice = g.slice(a, set);
        for &x in g.origins(a, &slice) {
            let coords = g.coords(a, x, &slice)?;
            if !is_submodule(g.field(), dim, &coords)? {
                return Ok(Some(find_violation(g, a, x, &slice, &coords)?));
            }
        }
    }
    Ok(None)
}

pub fn is_intrinsic(g: &FiniteGeometry, set: &PointSet) -> Result<bool> {
    Ok(check_intrinsic(g, set)?.is_none())
}

fn find_violation(g: &FiniteGeometry, a: usize, x: usize, slice: &[usize], coords: &[Vec<u32>]) -> Result<Witness> {
    let f = g.field();
    let present: HashSet<&Vec<u32>> = coords.iter().collect();
    for (i, cy) in coords.iter().enumerate() {
        for (j, cz) in coords.iter().enumerate().skip(i) {
            let s: Vec<u32> = cy.iter().zip(cz).map(|(u, v)| f.add(u, v)).collect();
            if !present.contains(&s) {
                let result = g.point_at(a, x, &s)?;
                return Ok(Witness { chart: a, origin: x, violation: Violation::Sigma { y: slice[i], z: slice[j], result } });
            }
        }
    }
    for (i, cy) in coords.iter().enumerate() {
        for r in 2..f.p() {
            let s: Vec<u32> = cy.iter().map(|u| f.mul(u, &r)).collect();
            if !present.contains(&s) {
                let result = g.point_at(a, x, &s)?;
                return Ok(Witness { chart: a, origin: x, violation: Violation::PiR { y: slice[i], r, result } });
            }
        }
    }
    Err(GeomError::NotIntrinsic("span differs but no violating operation found".into()))
}

/// Smallest intrinsic superset, by saturating chart spans to a fixed point.
pub fn closure(g: &FiniteGeometry, set: &PointSet) -> Result<PointSet> {
    require_chart_field(g.field(), g.length())?;
    let dim = g.ambient * g.ambient;
    let mut cur = set.clone();
    loop {
        let mut changed = false;
        for a in 0..g.copoints.len() {
            let mut slice = g.slice(a, &cur);
            let mut oi = 0;
            while oi < g.origins(a, &slice).len() {
                let x = slice[oi];
                oi += 1;
                let coords = g.coords(a, x, &slice)?;
                let span = span_of(g.field(), dim, &coords)?;
                if power_count(g.field().order(), span.dim()) == coords.len() as u128 {
                    continue;
                }
                for c in all_vectors(g.field(), span.dim()) {
                    let v = span.combine(&c);
                    let y = g.point_at(a, x, &v)?;
                    cur.members.insert(y);
                }
                slice = g.slice(a, &cur);
                oi = 0;
                changed = true;
            }
        }
        if !changed {
            return Ok(cur);
        }
    }
}

/// `x ∨ y`: the intrinsic closure of two points.
pub fn join_points(g: &FiniteGeometry, x: usize, y: usize) -> Result<PointSet> {
    closure(g, &PointSet::new([x, y]))
}

/// Chart coordinates of an intrinsic set at origin `x` in chart `a`, as a
/// subspace of the vectorized `u(a)`.
pub fn affine_slice(g: &FiniteGeometry, set: &PointSet, x: usize, a: usize) -> Result<Subspace<PrimeField>> {
    if !set.contains(x) || g.domain_pos(a, x).is_none() {
        return Err(GeomError::NotInChart);
    }
    let slice = g.slice(a, set);
    let coords = g.coords(a, x, &slice)?;
    let dim = g.ambient * g.ambient;
    if !is_submodule(g.field(), dim, &coords)? {
        return Err(GeomError::NotIntrinsic("slice is not a submodule at this base".into()));
    }
    span_of(g.field(), dim, &coords)
}

/// Standard intrinsic subspace `I_{e;j} = {f : f_j ⊆ e ⊆ f_{j+1}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardIntrinsic<F: Field> {
    pub e: Subspace<F>,
    pub j: usize,
}

/// Governor `g_1 ⊆ … ⊆ g_{k}` selecting `{f : g_j ⊆ f_j ⊆ g_{j+1}, j = 1..k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqueezeGovernor<F: Field> {
    pub bounds: Vec<Subspace<F>>,
}

/// Governor `e1 ⊆ e2` of the Grassmann case: `{x : e1 ⊆ x ⊆ e2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortFlagGovernor<F: Field> {
    pub e1: Subspace<F>,
    pub e2: Subspace<F>,
}

impl<F: Field> ShortFlagGovernor<F> {
    pub fn new(e1: Subspace<F>, e2: Subspace<F>) -> Result<Self> {
        if !e1.is_subspace_of(&e2) {
            return Err(GeomError::InvalidFlag("governor steps must be nested".into()));
        }
        Ok(ShortFlagGovernor { e1, e2 })
    }

    /// `p - dim e1 = dim e2 - p` for points of dimension `p`.
    pub fn is_principal(&self, p: usize) -> bool {
        p >= self.e1.dim() && self.e2.dim() >= p && p - self.e1.dim() == self.e2.dim() - p
    }

    pub fn as_squeeze(&self) -> SqueezeGovernor<F> {
        SqueezeGovernor { bounds: vec![self.e1.clone(), self.e2.clone()] }
    }
}

impl<F: Field> StandardIntrinsic<F> {
    pub fn contains(&self, f: &Flag<F>) -> bool {
        f.step(self.j).is_subspace_of(&self.e) && self.e.is_subspace_of(&f.step(self.j + 1))
    }
}

impl<F: Field> SqueezeGovernor<F> {
    pub fn contains(&self, f: &Flag<F>) -> bool {
        let k = f.length();
        self.bounds.len() == k
            && (1..k).all(|j| self.bounds[j - 1].is_subspace_of(&f.step(j)) && f.step(j).is_subspace_of(&self.bounds[j]))
    }
}

pub fn standard_members(g: &FiniteGeometry, s: &StandardIntrinsic<PrimeField>) -> PointSet {
    PointSet::new((0..g.points.len()).filter(|&i| s.contains(g.point(i))))
}

pub fn squeeze_members(g: &FiniteGeometry, s: &SqueezeGovernor<PrimeField>) -> PointSet {
    PointSet::new((0..g.points.len()).filter(|&i| s.contains(g.point(i))))
}

/// The complement `X⁺ ∖ a^⊤` of a chart.
pub fn horizon(g: &FiniteGeometry, a: usize) -> PointSet {
    let dom: BTreeSet<usize> = g.domain(a).iter().copied().collect();
    PointSet::new((0..g.points.len()).filter(|i| !dom.contains(i)))
}

/// Longest chain `{x} = x∨z_0 ⊂ x∨z_1 ⊂ … ⊂ x∨y` of principal joins.
pub fn principal_rank(g: &FiniteGeometry, x: usize, y: usize) -> Result<usize> {
    let top = join_points(g, x, y)?;
    let mut joins: Vec<PointSet> = Vec::new();
    for &z in &top.members {
        let j = join_points(g, x, z)?;
        if !joins.contains(&j) {
            joins.push(j);
        }
    }
    joins.sort_by_key(PointSet::len);
    let mut best: Vec<usize> = vec![0; joins.len()];
    for i in 0..joins.len() {
        for k in 0..i {
            if joins[k].len() < joins[i].len() && joins[k].is_subset(&joins[i]) {
                best[i] = best[i].max(best[k] + 1);
            }
        }
    }
    let top_pos = joins.iter().position(|j| *j == top).expect("x∨y is among the joins");
    Ok(best[top_pos])
}

/// Components of `set` under "some chart contains both points".
pub fn connected_components(g: &FiniteGeometry, set: &PointSet) -> Vec<PointSet> {
    let members: Vec<usize> = set.members.iter().copied().collect();
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut parent: Vec<usize> = (0..members.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut c = i;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for a in 0..g.copoints.len() {
        let slice = g.slice(a, set);
        for w in slice.windows(2) {
            let (ra, rb) = (find(&mut parent, pos[&w[0]]), find(&mut parent, pos[&w[1]]));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut comps: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for (i, &m) in members.iter().enumerate() {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().insert(m);
    }
    let mut out: Vec<PointSet> = comps.into_values().map(|members| PointSet { members }).collect();
    out.sort();
    out
}

/// Group-level form of the slice identity, valid in every characteristic:
/// `{u ∈ U(a) : u·x ∈ set} = {u ∈ U(a) : u(e) ⊆ e}`.
pub fn group_slice_matches(
    g: &FiniteGeometry,
    set: &PointSet,
    x: usize,
    a: usize,
    e: &Subspace<PrimeField>,
    budget: u64,
) -> Result<bool> {
    let base = &g.copoints[a];
    let xf = g.point(x);
    for u in unipotent_elements(base, budget)? {
        let moved = g.index_of(&xf.act(&u)?).ok_or(GeomError::NotInChart)?;
        let stabilizes = e.image_under(&u)?.is_subspace_of(e);
        if set.contains(moved) != stabilizes {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `u(a) ∩ p(e)` as a subspace of the vectorized endomorphisms.
pub fn expected_standard_slice<F: Field>(a: &Flag<F>, e: &Subspace<F>) -> Result<Subspace<F>> {
    let stab = maps_sending(e.field(), e.ambient(), &[(e.clone(), e.clone())])?;
    u_algebra(a)?.intersect(&stab)
}
