//! Graded structures on `gl(p+q)`: the 3-grading of the Euler element
//! `E = diag(1_p, 0_q)`, 5-gradings from idempotents of the rectangular pair,
//! stabilizer algebras of Peirce inner ideals and the squeeze experiment.
//!
//! `g₁` is the upper-right `p×q` block and `g₋₁` the lower-left `q×p` block,
//! so `[[x,y],z] = xyz + zyx = T(x,y,z)` for `x, z ∈ g₁`, `y ∈ g₋₁`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde_json::{json, Value};

use crate::error::{GeomError, Result};
use crate::exactla::enumerate::{check_budget, enumerate_subspaces, gaussian_binomial};
use crate::exactla::{Field, Matrix, PrimeField, Subspace};
use crate::jordan::{self, Idempotent, InnerIdeal, JordanPair, Side};

/// `gl(p+q)` with its Euler element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedGL<F: Field> {
    field: F,
    p: usize,
    q: usize,
}

impl<F: Field> GradedGL<F> {
    pub fn new(field: &F, p: usize, q: usize) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(GeomError::Shape("p and q must be positive".into()));
        }
        Ok(GradedGL { field: field.clone(), p, q })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn p(&self) -> usize {
        self.p
    }
    pub fn q(&self) -> usize {
        self.q
    }
    pub fn n(&self) -> usize {
        self.p + self.q
    }
    /// Dimension of the vectorized algebra.
    pub fn dim(&self) -> usize {
        self.n() * self.n()
    }

    pub fn pair(&self) -> JordanPair<F> {
        JordanPair::rect(&self.field, self.p, self.q)
    }

    pub fn euler(&self) -> Matrix<F> {
        let mut e = Matrix::zeros(&self.field, self.n(), self.n());
        for i in 0..self.p {
            e.set(i, i, self.field.one());
        }
        e
    }

    /// `x ∈ M(p,q)` placed in the upper-right block.
    pub fn embed_plus(&self, x: &Matrix<F>) -> Matrix<F> {
        let mut m = Matrix::zeros(&self.field, self.n(), self.n());
        m.put(0, self.p, x);
        m
    }

    /// `y ∈ M(q,p)` placed in the lower-left block.
    pub fn embed_minus(&self, y: &Matrix<F>) -> Matrix<F> {
        let mut m = Matrix::zeros(&self.field, self.n(), self.n());
        m.put(self.p, 0, y);
        m
    }

    pub fn plus_block(&self, x: &Matrix<F>) -> Matrix<F> {
        x.submatrix(0, self.p, self.p, self.n())
    }

    pub fn minus_block(&self, x: &Matrix<F>) -> Matrix<F> {
        x.submatrix(self.p, self.n(), 0, self.p)
    }

    pub fn to_matrix(&self, v: &[F::Elem]) -> Matrix<F> {
        Matrix::from_vec(&self.field, self.n(), self.n(), v.to_vec()).expect("shape")
    }

    pub fn bracket(&self, a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
        a.commutator(b)
    }

    /// `ad(x)` on the vectorized algebra.
    pub fn ad(&self, x: &Matrix<F>) -> Result<Matrix<F>> {
        Matrix::linear_map_matrix(&self.field, self.n(), self.n(), |y| x.commutator(y))
    }

    /// Embedded subspace of `g₁` for a subspace of the vectorized `M(p,q)`.
    pub fn embed_plus_space(&self, s: &Subspace<F>) -> Result<Subspace<F>> {
        let vs: Vec<Vec<F::Elem>> = s
            .basis_vectors()
            .iter()
            .map(|v| Ok(self.embed_plus(&Matrix::from_vec(&self.field, self.p, self.q, v.clone())?).into_data()))
            .collect::<Result<_>>()?;
        Subspace::span(&self.field, self.dim(), &vs)
    }

    /// The grading of `ad(E)`: `g₁`, `g₀` (block diagonal), `g₋₁`.
    pub fn three_grading(&self) -> ZGrading<F> {
        self.euler_weights().grading(self, &[1]).expect("weights")
    }

    /// `g_i` of the 3-grading.
    pub fn g(&self, i: i64) -> Subspace<F> {
        self.three_grading().part(i)
    }

    /// `[g₁, g₋₁] + K·E`, the part of `g₀` generated by the pair.
    pub fn tkk_g0(&self) -> Result<Subspace<F>> {
        let g1 = self.g(1);
        let gm = self.g(-1);
        let mut vs = vec![self.euler().into_data()];
        for a in g1.basis_vectors() {
            for b in gm.basis_vectors() {
                vs.push(self.to_matrix(&a).commutator(&self.to_matrix(&b))?.into_data());
            }
        }
        Subspace::span(&self.field, self.dim(), &vs)
    }

    /// Standard basis with the `E`-weights `1` (first `p`) and `0`.
    pub fn euler_weights(&self) -> WeightBasis<F> {
        let labels = (0..self.n()).map(|i| vec![if i < self.p { 1 } else { 0 }]).collect();
        WeightBasis { s: Matrix::identity(&self.field, self.n()), labels }
    }

    /// `{X : [X, s] ⊆ s}`.
    pub fn normalizer(&self, s: &Subspace<F>) -> Result<Subspace<F>> {
        let ann = s.annihilator().basis().clone();
        let basis: Vec<Matrix<F>> = s.basis_vectors().iter().map(|v| self.to_matrix(v)).collect();
        let field = &self.field;
        let map = Matrix::linear_map_matrix(field, self.n(), self.n(), |x| {
            let mut out = Vec::new();
            for b in &basis {
                out.extend(ann.mul_vec(&x.commutator(b)?.into_data()));
            }
            Ok(Matrix::column(field, out))
        })?;
        if basis.is_empty() || ann.rows() == 0 {
            return Ok(Subspace::full(field, self.dim()));
        }
        Ok(Subspace::kernel(&map))
    }

    /// `[a, b] ⊆ c` on bases.
    pub fn bracket_within(&self, a: &Subspace<F>, b: &Subspace<F>, c: &Subspace<F>) -> Result<bool> {
        for x in a.basis_vectors() {
            for y in b.basis_vectors() {
                if !c.contains_vector(self.to_matrix(&x).commutator(&self.to_matrix(&y))?.data()) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        json!({"field": self.field.to_json(), "p": self.p, "q": self.q})
    }
}

/// A `Z`-grading of the vectorized algebra by subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZGrading<F: Field> {
    field: F,
    ambient: usize,
    parts: BTreeMap<i64, Subspace<F>>,
}

impl<F: Field> ZGrading<F> {
    /// Drops zero parts and checks that the sum is direct and everything.
    pub fn new(field: &F, ambient: usize, parts: BTreeMap<i64, Subspace<F>>) -> Result<Self> {
        let parts: BTreeMap<i64, Subspace<F>> = parts.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        let list: Vec<Subspace<F>> = parts.values().cloned().collect();
        if !Subspace::is_direct(field, ambient, &list)? || Subspace::sum_all(field, ambient, &list)?.dim() != ambient {
            return Err(GeomError::InvalidGrading("parts do not form a direct decomposition".into()));
        }
        Ok(ZGrading { field: field.clone(), ambient, parts })
    }

    pub fn part(&self, i: i64) -> Subspace<F> {
        self.parts.get(&i).cloned().unwrap_or_else(|| Subspace::zero(&self.field, self.ambient))
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.parts.keys().copied().collect()
    }

    pub fn parts(&self) -> &BTreeMap<i64, Subspace<F>> {
        &self.parts
    }

    /// `⊕_{j ≥ i} part_j`.
    pub fn plus_filtration(&self, i: i64) -> Subspace<F> {
        self.sum_where(|j| j >= i)
    }

    /// `⊕_{j ≤ -i} part_j`.
    pub fn minus_filtration(&self, i: i64) -> Subspace<F> {
        self.sum_where(|j| j <= -i)
    }

    fn sum_where(&self, keep: impl Fn(i64) -> bool) -> Subspace<F> {
        let list: Vec<Subspace<F>> = self.parts.iter().filter(|(j, _)| keep(**j)).map(|(_, s)| s.clone()).collect();
        Subspace::sum_all(&self.field, self.ambient, &list).expect("same ambient")
    }

    /// `[part_i, part_j] ⊆ part_{i+j}` for all degrees.
    pub fn is_compatible(&self, gl: &GradedGL<F>) -> Result<bool> {
        for (i, a) in &self.parts {
            for (j, b) in &self.parts {
                if !gl.bracket_within(a, b, &self.part(i + j))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `ad(d)` acts as `i` on every part `i`.
    pub fn is_graded_by(&self, gl: &GradedGL<F>, d: &Matrix<F>) -> Result<bool> {
        for (i, s) in &self.parts {
            let scalar = self.field.from_i64(*i);
            for v in s.basis_vectors() {
                let x = gl.to_matrix(&v);
                if d.commutator(&x)? != x.scale(&scalar) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        let parts: serde_json::Map<String, Value> =
            self.parts.iter().map(|(i, s)| (i.to_string(), s.to_json())).collect();
        json!({"parts": parts})
    }
}

/// A basis `S` of `K^{p+q}` (columns) with integer weight labels per vector.
/// The element `Σ c_k diag(w_k)` in this basis grades `gl` by `w_a - w_b` on
/// `S E_ab S⁻¹`, in every characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightBasis<F: Field> {
    pub s: Matrix<F>,
    pub labels: Vec<Vec<i64>>,
}

impl<F: Field> WeightBasis<F> {
    /// The element acting as `Σ c_k w_k` on each basis vector.
    pub fn element(&self, coeffs: &[i64]) -> Result<Matrix<F>> {
        let field = self.s.field();
        let mut d = Matrix::zeros(field, self.s.rows(), self.s.rows());
        for (a, l) in self.labels.iter().enumerate() {
            d.set(a, a, field.from_i64(combine(l, coeffs)));
        }
        self.s.mul(&d)?.mul(&self.s.inverse()?)
    }

    fn unit(&self, a: usize, b: usize, s_inv: &Matrix<F>) -> Result<Matrix<F>> {
        let field = self.s.field();
        let n = self.s.rows();
        let mut e = Matrix::zeros(field, n, n);
        e.set(a, b, field.one());
        self.s.mul(&e)?.mul(s_inv)
    }

    /// Parts of `gl` indexed by the label difference vectors.
    pub fn joint_parts(&self, gl: &GradedGL<F>) -> Result<BTreeMap<Vec<i64>, Subspace<F>>> {
        let s_inv = self.s.inverse()?;
        let n = self.s.rows();
        let mut vecs: BTreeMap<Vec<i64>, Vec<Vec<F::Elem>>> = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                let key: Vec<i64> = self.labels[a].iter().zip(&self.labels[b]).map(|(x, y)| x - y).collect();
                vecs.entry(key).or_default().push(self.unit(a, b, &s_inv)?.into_data());
            }
        }
        vecs.into_iter().map(|(k, vs)| Ok((k, Subspace::span(gl.field(), gl.dim(), &vs)?))).collect()
    }

    /// Grading by `Σ c_k (w_k(a) - w_k(b))`.
    pub fn grading(&self, gl: &GradedGL<F>, coeffs: &[i64]) -> Result<ZGrading<F>> {
        let mut parts: BTreeMap<i64, Vec<Subspace<F>>> = BTreeMap::new();
        for (k, s) in self.joint_parts(gl)? {
            parts.entry(combine(&k, coeffs)).or_default().push(s);
        }
        let parts = parts
            .into_iter()
            .map(|(i, ss)| Ok((i, Subspace::sum_all(gl.field(), gl.dim(), &ss)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        ZGrading::new(gl.field(), gl.dim(), parts)
    }
}

fn combine(labels: &[i64], coeffs: &[i64]) -> i64 {
    labels.iter().zip(coeffs).map(|(a, b)| a * b).sum()
}

/// Eigenspace decomposition of `ad(d)` for integer eigenvalues `-n..=n`.
/// Needs `1, …, 3n` to be units.
pub fn grading_from_derivation<F: Field>(gl: &GradedGL<F>, d: &Matrix<F>, n: u64) -> Result<ZGrading<F>> {
    gl.field().require_units_up_to(3 * n)?;
    let ad = gl.ad(d)?;
    let id = Matrix::identity(gl.field(), gl.dim());
    let mut parts = BTreeMap::new();
    for lambda in -(n as i64)..=(n as i64) {
        let shifted = ad.sub(&id.scale(&gl.field().from_i64(lambda)))?;
        parts.insert(lambda, Subspace::kernel(&shifted));
    }
    let total: usize = parts.values().map(Subspace::dim).sum();
    if total != gl.dim() {
        return Err(GeomError::NotDiagonalizable);
    }
    ZGrading::new(gl.field(), gl.dim(), parts)
}

/// The `D` with `[D, x] = i x` on every part `i`, normalized by `D_{nn} = 0`
/// (a grading fixes `D` only up to adding a multiple of the identity).
pub fn derivation_from_grading<F: Field>(gl: &GradedGL<F>, grading: &ZGrading<F>) -> Result<Matrix<F>> {
    let field = gl.field();
    let n = gl.n();
    let mut targets: Vec<(Matrix<F>, F::Elem)> = Vec::new();
    for (i, s) in grading.parts() {
        for v in s.basis_vectors() {
            targets.push((gl.to_matrix(&v), field.from_i64(*i)));
        }
    }
    let a = Matrix::linear_map_matrix(field, n, n, |d| {
        let mut out = Vec::new();
        for (x, _) in &targets {
            out.extend(d.commutator(x)?.into_data());
        }
        out.push(d.get(n - 1, n - 1).clone());
        Ok(Matrix::column(field, out))
    })?;
    let mut rhs = Vec::new();
    for (x, i) in &targets {
        rhs.extend(x.scale(i).into_data());
    }
    rhs.push(field.zero());
    let sol = a.solve(&Matrix::column(field, rhs)).map_err(|_| GeomError::InvalidGrading("grading is not inner".into()))?;
    Matrix::from_vec(field, n, n, sol.into_data())
}

/// A 5-grading with its grading element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiveGrading<F: Field> {
    pub h: Matrix<F>,
    pub grading: ZGrading<F>,
}

impl<F: Field> FiveGrading<F> {
    pub fn part(&self, i: i64) -> Subspace<F> {
        self.grading.part(i)
    }

    pub fn to_json(&self) -> Value {
        let parts: serde_json::Map<String, Value> =
            (-2..=2).map(|i| (i.to_string(), self.part(i).to_json())).collect();
        json!({"H": self.h.to_json(), "parts": parts})
    }
}

/// Allowed `(ad E, ad H)` eigenvalue pairs for a grading of Peirce type.
pub const JOINT_SPECTRUM: [(i64, i64); 9] =
    [(-1, -2), (-1, -1), (-1, 0), (0, -1), (0, 0), (0, 1), (1, 0), (1, 1), (1, 2)];

/// Gradings attached to an idempotent of `(M(p,q), M(q,p))` inside `gl(p+q)`.
#[derive(Clone, Debug)]
pub struct PeirceGrading<F: Field> {
    pub gl: GradedGL<F>,
    pub idempotent: Idempotent<F>,
    /// Basis of `K^{p+q}` with labels `(E-weight, H-weight)`.
    pub weights: WeightBasis<F>,
    /// Grading of `H = [e⁺, e⁻]`.
    pub h_grading: FiveGrading<F>,
    /// Grading of `H' = 2E - H`.
    pub conjugate: FiveGrading<F>,
}

impl<F: Field> PeirceGrading<F> {
    pub fn new(gl: &GradedGL<F>, e: &Idempotent<F>) -> Result<Self> {
        let field = gl.field();
        let (p, q) = (gl.p(), gl.q());
        if e.eplus.shape() != (p, q) || e.eminus.shape() != (q, p) {
            return Err(GeomError::Shape("idempotent does not fit gl(p+q)".into()));
        }
        if !jordan::is_idempotent(&e.eplus, &e.eminus)? {
            return Err(GeomError::NotIdempotent);
        }
        // e⁺e⁻ and e⁻e⁺ are idempotent matrices; H acts by 1, 0 on K^p and -1, 0 on K^q.
        let pp = e.eplus.mul(&e.eminus)?;
        let qq = e.eminus.mul(&e.eplus)?;
        let mut cols: Vec<Vec<F::Elem>> = Vec::new();
        let mut labels = Vec::new();
        let pad = |v: Vec<F::Elem>, top: bool| -> Vec<F::Elem> {
            let mut out = vec![field.zero(); p + q];
            let off = if top { 0 } else { p };
            for (k, x) in v.into_iter().enumerate() {
                out[off + k] = x;
            }
            out
        };
        for (m, top, e_w, h_w) in [(&pp, true, 1, 1), (&qq, false, 0, -1)] {
            for v in Subspace::image(m).basis_vectors() {
                cols.push(pad(v, top));
                labels.push(vec![e_w, h_w]);
            }
            for v in m.kernel_vectors() {
                cols.push(pad(v, top));
                labels.push(vec![e_w, 0]);
            }
        }
        let weights = WeightBasis { s: Matrix::from_columns(field, p + q, &cols), labels };
        let h = gl.embed_plus(&e.eplus).commutator(&gl.embed_minus(&e.eminus))?;
        if weights.element(&[0, 1])? != h || weights.element(&[1, 0])? != gl.euler() {
            return Err(GeomError::InvalidGrading("weight basis does not diagonalize H".into()));
        }
        let h_grading = FiveGrading { h: h.clone(), grading: weights.grading(gl, &[0, 1])? };
        let h_prime = gl.euler().scale(&field.from_i64(2)).sub(&h)?;
        let conjugate = FiveGrading { h: h_prime, grading: weights.grading(gl, &[2, -1])? };
        Ok(PeirceGrading { gl: gl.clone(), idempotent: e.clone(), weights, h_grading, conjugate })
    }

    pub fn h(&self, i: i64) -> Subspace<F> {
        self.h_grading.part(i)
    }

    pub fn e(&self, i: i64) -> Subspace<F> {
        self.conjugate.part(i)
    }

    /// `[e⁺,e⁻] = H`, `[H,e⁺] = 2e⁺`, `[H,e⁻] = -2e⁻`.
    pub fn sl2_triple_holds(&self) -> Result<bool> {
        let two = self.gl.field().from_i64(2);
        let ep = self.gl.embed_plus(&self.idempotent.eplus);
        let em = self.gl.embed_minus(&self.idempotent.eminus);
        let h = &self.h_grading.h;
        Ok(ep.commutator(&em)? == *h
            && h.commutator(&ep)? == ep.scale(&two)
            && h.commutator(&em)? == em.scale(&two).neg())
    }

    /// Dimensions of the joint `(ad E, ad H)` eigenspaces.
    pub fn joint_table(&self) -> Result<BTreeMap<(i64, i64), usize>> {
        let mut out = BTreeMap::new();
        for (k, s) in self.weights.joint_parts(&self.gl)? {
            if !s.is_zero() {
                *out.entry((k[0], k[1])).or_insert(0) += s.dim();
            }
        }
        Ok(out)
    }

    /// Every joint pair belongs to [`JOINT_SPECTRUM`].
    pub fn joint_spectrum_allowed(&self) -> Result<bool> {
        Ok(self.joint_table()?.keys().all(|k| JOINT_SPECTRUM.contains(k)))
    }

    /// Named checks expressing the parts of `H'` through those of `H` and `E`.
    pub fn part_identities(&self) -> Result<Vec<(&'static str, bool)>> {
        let g = |i| self.gl.g(i);
        let h = |i| self.h(i);
        let n = self.gl.dim();
        let f = self.gl.field();
        let sum = |parts: &[Subspace<F>]| Subspace::sum_all(f, n, parts);
        Ok(vec![
            ("e2 = h0 ∩ g1", self.e(2) == h(0).intersect(&g(1))?),
            ("e1 = (h1 ∩ g1) + (g0 ∩ h-1)", self.e(1) == sum(&[h(1).intersect(&g(1))?, g(0).intersect(&h(-1))?])?),
            (
                "e0 = h2 + h-2 + (g0 ∩ h0)",
                self.e(0) == sum(&[h(2), h(-2), g(0).intersect(&h(0))?])?,
            ),
            ("e-1 = (h-1 ∩ g-1) + (g0 ∩ h1)", self.e(-1) == sum(&[h(-1).intersect(&g(-1))?, g(0).intersect(&h(1))?])?),
            ("e-2 = h0 ∩ g-1", self.e(-2) == h(0).intersect(&g(-1))?),
            ("h2 ⊆ g1", h(2).is_subspace_of(&g(1))),
            ("h-2 ⊆ g-1", h(-2).is_subspace_of(&g(-1))),
        ])
    }

    /// `f₂ ⊆ o₁ ⊆ f₀` and `f₁ ⊆ o₀ ⊆ f₋₁` for the plus-filtrations of `E` and `H'`.
    pub fn filtration_relations_hold(&self) -> bool {
        let o = self.gl.three_grading();
        let f = &self.conjugate.grading;
        let (o1, o0) = (o.plus_filtration(1), o.plus_filtration(0));
        f.plus_filtration(2).is_subspace_of(&o1)
            && o1.is_subspace_of(&f.plus_filtration(0))
            && f.plus_filtration(1).is_subspace_of(&o0)
            && o0.is_subspace_of(&f.plus_filtration(-1))
    }

    /// `q = e₀ ⊕ e₋₁ ⊕ e₋₂`.
    pub fn parabolic(&self) -> Subspace<F> {
        self.conjugate.grading.minus_filtration(0)
    }

    /// Peirce 2-space `I = V₂(e)` as an inner ideal of `M(p,q)`.
    pub fn peirce_ideal(&self) -> Result<InnerIdeal<F>> {
        let pair = self.gl.pair();
        let pc = jordan::peirce(&pair, &self.idempotent.eplus, &self.idempotent.eminus);
        let space = match pc {
            Ok(pc) => pc.part(Side::Plus, 2).clone(),
            // In characteristic 2 the Peirce 2-space is still [e⁺].
            Err(_) => jordan::principal_ideal(&pair, &self.idempotent.eplus)?.space,
        };
        InnerIdeal::new(&pair, space)
    }

    pub fn to_json(&self) -> Result<Value> {
        let table: Vec<Value> =
            self.joint_table()?.iter().map(|((a, b), d)| json!({"E": a, "H": b, "dim": d})).collect();
        Ok(json!({
            "idempotent": self.idempotent.to_json(),
            "h_grading": self.h_grading.to_json(),
            "conjugate": self.conjugate.to_json(),
            "joint_table": table,
        }))
    }
}

/// The algebras `g_I = I ⊕ [I,g₋₁] ⊕ g₋₁`, `s_I = {X ∈ g₀ : [X,I] ⊆ I}`,
/// and `g_𝓘 = I ⊕ s_I ⊕ g₋₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerAlgebras<F: Field> {
    pub g_i: Subspace<F>,
    pub s_i: Subspace<F>,
    pub g_cal_i: Subspace<F>,
}

pub fn stabilizer_algebras<F: Field>(gl: &GradedGL<F>, ideal: &InnerIdeal<F>) -> Result<StabilizerAlgebras<F>> {
    let n = gl.dim();
    let field = gl.field();
    let i_space = gl.embed_plus_space(&ideal.space)?;
    let gm = gl.g(-1);
    let g0 = gl.g(0);
    let mut brackets = Vec::new();
    for a in i_space.basis_vectors() {
        for b in gm.basis_vectors() {
            brackets.push(gl.to_matrix(&a).commutator(&gl.to_matrix(&b))?.into_data());
        }
    }
    let g_i = Subspace::sum_all(field, n, &[i_space.clone(), Subspace::span(field, n, &brackets)?, gm.clone()])?;
    let s_i = gl.normalizer(&i_space)?.intersect(&g0)?;
    let g_cal_i = Subspace::sum_all(field, n, &[i_space, s_i.clone(), gm])?;
    Ok(StabilizerAlgebras { g_i, s_i, g_cal_i })
}

/// Results of the stabilizer-algebra identities for one idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerReport {
    /// `s_I = g₀ ∩ (e₀ ⊕ e₋₁)`.
    pub s_i_matches: bool,
    /// `g_𝓘 = q`.
    pub g_cal_matches: bool,
    /// The normalizer of `q` is `q`.
    pub self_normalizing: bool,
}

impl StabilizerReport {
    pub fn passed(&self) -> bool {
        self.s_i_matches && self.g_cal_matches && self.self_normalizing
    }
}

pub fn check_stabilizers<F: Field>(pg: &PeirceGrading<F>) -> Result<StabilizerReport> {
    let gl = &pg.gl;
    let alg = stabilizer_algebras(gl, &pg.peirce_ideal()?)?;
    let q = pg.parabolic();
    let e0m1 = pg.e(0).sum(&pg.e(-1))?;
    Ok(StabilizerReport {
        s_i_matches: alg.s_i == gl.g(0).intersect(&e0m1)?,
        g_cal_matches: alg.g_cal_i == q,
        self_normalizing: gl.normalizer(&q)? == q,
    })
}

/// For `p = q` and `e² = e`: `2E - [e,e]` differs from `[1-e, 1-e]` by a
/// central element, so both define the same grading.
pub fn unital_conjugate_matches<F: Field>(gl: &GradedGL<F>, e: &Matrix<F>) -> Result<bool> {
    if gl.p() != gl.q() || e.mul(e)? != *e {
        return Err(GeomError::NotIdempotent);
    }
    let field = gl.field();
    let one = Matrix::identity(field, gl.p());
    let f = one.sub(e)?;
    let h = gl.embed_plus(e).commutator(&gl.embed_minus(e))?;
    let h_prime = gl.euler().scale(&field.from_i64(2)).sub(&h)?;
    let h_comp = gl.embed_plus(&f).commutator(&gl.embed_minus(&f))?;
    let diff = h_prime.sub(&h_comp)?;
    let n = gl.n();
    let c = diff.get(0, 0).clone();
    Ok(diff == Matrix::identity(field, n).scale(&c))
}

/// `a₁ = {X : im X ⊆ x, X(x) = 0}` and `a₀ = {X : X(x) ⊆ x}` for a subspace `x`.
pub fn point_filtration<F: Field>(gl: &GradedGL<F>, x: &Subspace<F>) -> Result<(Subspace<F>, Subspace<F>)> {
    let field = gl.field();
    let n = gl.n();
    let ann = x.annihilator().basis().clone();
    let cols = x.basis_columns();
    let a1 = Matrix::linear_map_matrix(field, n, n, |m| {
        let mut out = if ann.rows() > 0 { ann.mul(m)?.into_data() } else { vec![] };
        if cols.cols() > 0 {
            out.extend(m.mul(&cols)?.into_data());
        }
        Ok(Matrix::column(field, out))
    })?;
    let a0 = Matrix::linear_map_matrix(field, n, n, |m| {
        let out = if ann.rows() > 0 && cols.cols() > 0 { ann.mul(m)?.mul(&cols)?.into_data() } else { vec![] };
        Ok(Matrix::column(field, out))
    })?;
    let kernel = |m: &Matrix<F>| if m.rows() == 0 { Subspace::full(field, n * n) } else { Subspace::kernel(m) };
    Ok((kernel(&a1), kernel(&a0)))
}

/// `f₂ ⊆ a₁ ⊆ f₀` and `f₁ ⊆ a₀ ⊆ f₋₁` for the minus-filtration `f` of `H'`.
pub fn is_squeezed<F: Field>(pg: &PeirceGrading<F>, x: &Subspace<F>) -> Result<bool> {
    let (a1, a0) = point_filtration(&pg.gl, x)?;
    let f = &pg.conjugate.grading;
    Ok(f.minus_filtration(2).is_subspace_of(&a1)
        && a1.is_subspace_of(&f.minus_filtration(0))
        && f.minus_filtration(1).is_subspace_of(&a0)
        && a0.is_subspace_of(&f.minus_filtration(-1)))
}

/// Outcome of the squeeze experiment on the Grassmannian of `q`-planes in `K^{p+q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqueezeReport {
    pub grassmannian: usize,
    pub orbit: usize,
    pub squeezed: usize,
    /// Every orbit point is squeezed.
    pub subset_holds: bool,
    /// Every squeezed point lies in the orbit.
    pub superset_holds: bool,
    pub friendly: Option<bool>,
    pub counterexample: Option<Value>,
}

impl SqueezeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "grassmannian": self.grassmannian,
            "orbit": self.orbit,
            "squeezed": self.squeezed,
            "subset_holds": self.subset_holds,
            "superset_holds": self.superset_holds,
            "friendly": self.friendly,
            "counterexample": self.counterexample,
        })
    }
}

/// Orbit of the base point `0 ⊕ K^q` under `exp(I)` and `exp(V⁻)`.
pub fn peirce_orbit(pg: &PeirceGrading<PrimeField>, budget: u64) -> Result<BTreeSet<Subspace<PrimeField>>> {
    let gl = &pg.gl;
    let field = gl.field();
    let (p, q, n) = (gl.p(), gl.q(), gl.n());
    check_budget(gaussian_binomial(field.order(), n, q), budget)?;
    let ideal = pg.peirce_ideal()?;
    let id = Matrix::identity(field, n);
    let mut gens = Vec::new();
    for b in ideal.basis() {
        gens.push(id.add(&gl.embed_plus(&b))?);
    }
    for v in Subspace::full(field, q * p).basis_vectors() {
        gens.push(id.add(&gl.embed_minus(&Matrix::from_vec(field, q, p, v)?))?);
    }
    let base = Subspace::coordinate(field, n, &(p..n).collect::<Vec<_>>());
    let mut seen = BTreeSet::from([base.clone()]);
    let mut queue = VecDeque::from([base]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.image_under(g)?;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Compares the orbit of the Peirce inner ideal with the squeezed points.
pub fn squeeze_experiment(pg: &PeirceGrading<PrimeField>, budget: u64) -> Result<SqueezeReport> {
    let gl = &pg.gl;
    let grass = enumerate_subspaces(gl.field(), gl.n(), gl.q(), budget)?;
    let orbit = peirce_orbit(pg, budget)?;
    let mut squeezed = BTreeSet::new();
    for x in &grass {
        if is_squeezed(pg, x)? {
            squeezed.insert(x.clone());
        }
    }
    let outside = orbit.iter().find(|x| !squeezed.contains(*x));
    let missing = squeezed.iter().find(|x| !orbit.contains(*x));
    let counterexample = outside
        .map(|x| json!({"kind": "orbit point not squeezed", "point": x.to_json()}))
        .or_else(|| missing.map(|x| json!({"kind": "squeezed point outside orbit", "point": x.to_json()})));
    let ideal = pg.peirce_ideal()?;
    let friendly = match jordan::is_friendly(&ideal, budget) {
        Ok(b) => Some(b),
        Err(GeomError::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SqueezeReport {
        grassmannian: grass.len(),
        orbit: orbit.len(),
        squeezed: squeezed.len(),
        subset_holds: outside.is_none(),
        superset_holds: missing.is_none(),
        friendly,
        counterexample,
    })
}
