//! Rectangular and symmetric matrix Jordan pairs and their inner ideals.
//!
//! For the rectangular pair `(M(p,q), M(q,p))` and the symmetric pair
//! `(Sym, Sym)` the triple product is `T(x,y,z) = xyz + zyx`, the quadratic
//! map `Q(x)y = xyx`, and the Bergmann operator
//! `B(x,y)z = z - T(x,y,z) + Q(x)Q(y)z = (1 - xy) z (1 - yx)`.

use serde_json::{json, Value};

use crate::error::{GeomError, Result};
use crate::exactla::enumerate::{check_budget, power_count, subspace_elements};
use crate::exactla::{Field, Matrix, PrimeField, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairKind<F: Field> {
    /// `V⁺ = M(p,q)`, `V⁻ = M(q,p)`.
    Rect { p: usize, q: usize },
    /// `V⁺ = V⁻ = {f : fᵀG = Gf}` for a symmetric invertible `G`.
    Sym { n: usize, gram: Matrix<F> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanPair<F: Field> {
    field: F,
    kind: PairKind<F>,
}

/// `+` or `-` side of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl<F: Field> JordanPair<F> {
    pub fn rect(field: &F, p: usize, q: usize) -> Self {
        JordanPair { field: field.clone(), kind: PairKind::Rect { p, q } }
    }

    /// Symmetric pair for the standard form `G = I`.
    pub fn sym(field: &F, n: usize) -> Self {
        JordanPair { field: field.clone(), kind: PairKind::Sym { n, gram: Matrix::identity(field, n) } }
    }

    pub fn sym_with_form(field: &F, gram: Matrix<F>) -> Result<Self> {
        if !gram.is_square() || gram.transpose() != gram || !gram.is_invertible() {
            return Err(GeomError::Form("gram matrix must be symmetric and invertible".into()));
        }
        Ok(JordanPair { field: field.clone(), kind: PairKind::Sym { n: gram.rows(), gram } })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn kind(&self) -> &PairKind<F> {
        &self.kind
    }

    /// Matrix shape of elements of `V^σ`.
    pub fn shape(&self, side: Side) -> (usize, usize) {
        match (&self.kind, side) {
            (PairKind::Rect { p, q }, Side::Plus) => (*p, *q),
            (PairKind::Rect { p, q }, Side::Minus) => (*q, *p),
            (PairKind::Sym { n, .. }, _) => (*n, *n),
        }
    }

    /// Length of the vectorization of `V^σ` matrices.
    pub fn vec_len(&self, side: Side) -> usize {
        let (r, c) = self.shape(side);
        r * c
    }

    /// `V^σ` as a subspace of the vectorized matrices.
    pub fn space(&self, side: Side) -> Subspace<F> {
        match &self.kind {
            PairKind::Rect { .. } => Subspace::full(&self.field, self.vec_len(side)),
            PairKind::Sym { n, gram } => {
                let map = Matrix::linear_map_matrix(&self.field, *n, *n, |f| f.transpose().mul(gram)?.sub(&gram.mul(f)?))
                    .expect("square shapes");
                Subspace::kernel(&map)
            }
        }
    }

    /// Basis of `V^σ` as matrices.
    pub fn basis(&self, side: Side) -> Vec<Matrix<F>> {
        let (r, c) = self.shape(side);
        self.space(side)
            .basis_vectors()
            .into_iter()
            .map(|v| Matrix::from_vec(&self.field, r, c, v).expect("shape"))
            .collect()
    }

    pub fn contains(&self, side: Side, x: &Matrix<F>) -> bool {
        x.shape() == self.shape(side) && self.space(side).contains_vector(x.data())
    }

    pub fn to_matrix(&self, side: Side, v: &[F::Elem]) -> Result<Matrix<F>> {
        let (r, c) = self.shape(side);
        Matrix::from_vec(&self.field, r, c, v.to_vec())
    }

    pub fn to_json(&self) -> Value {
        match &self.kind {
            PairKind::Rect { p, q } => json!({"kind": "rect", "p": p, "q": q}),
            PairKind::Sym { n, gram } => {
                if *gram == Matrix::identity(&self.field, *n) {
                    json!({"kind": "sym", "n": n})
                } else {
                    json!({"kind": "sym", "n": n, "gram": gram.to_json()})
                }
            }
        }
    }
}

/// `T(x,y,z) = xyz + zyx` (the same formula on both sides).
pub fn triple<F: Field>(x: &Matrix<F>, y: &Matrix<F>, z: &Matrix<F>) -> Result<Matrix<F>> {
    x.mul(y)?.mul(z)?.add(&z.mul(y)?.mul(x)?)
}

/// `Q(x)y = xyx`.
pub fn quad<F: Field>(x: &Matrix<F>, y: &Matrix<F>) -> Result<Matrix<F>> {
    x.mul(y)?.mul(x)
}

/// `B(x,y)` as a matrix on the vectorization of the side containing `x`.
pub fn bergmann<F: Field>(x: &Matrix<F>, y: &Matrix<F>) -> Result<Matrix<F>> {
    let field = x.field();
    let (r, c) = x.shape();
    Matrix::linear_map_matrix(field, r, c, |z| z.sub(&triple(x, y, z)?)?.add(&quad(x, &quad(y, z)?)?))
}

/// `(x, y)` is quasi-invertible iff `1 - xy` is invertible.
pub fn quasi_invertible<F: Field>(x: &Matrix<F>, y: &Matrix<F>) -> Result<bool> {
    let id = Matrix::identity(x.field(), x.rows());
    Ok(id.sub(&x.mul(y)?)?.is_invertible())
}

/// `β(x,y) = (B(x,y), B(y,x)⁻¹)`; fails unless `(x,y)` is quasi-invertible.
pub fn beta<F: Field>(x: &Matrix<F>, y: &Matrix<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    if !quasi_invertible(x, y)? {
        return Err(GeomError::NotQuasiInvertible);
    }
    Ok((bergmann(x, y)?, bergmann(y, x)?.inverse()?))
}

/// Outer symmetry `T(x,y,z) = T(z,y,x)`.
pub fn identity_outer_symmetry<F: Field>(x: &Matrix<F>, y: &Matrix<F>, z: &Matrix<F>) -> Result<bool> {
    Ok(triple(x, y, z)? == triple(z, y, x)?)
}

/// `T(x,y,T(u,v,w)) = T(T(x,y,u),v,w) - T(u,T(y,x,v),w) + T(u,v,T(x,y,w))`.
pub fn identity_derivation<F: Field>(
    x: &Matrix<F>,
    y: &Matrix<F>,
    u: &Matrix<F>,
    v: &Matrix<F>,
    w: &Matrix<F>,
) -> Result<bool> {
    let lhs = triple(x, y, &triple(u, v, w)?)?;
    let rhs = triple(&triple(x, y, u)?, v, w)?
        .sub(&triple(u, &triple(y, x, v)?, w)?)?
        .add(&triple(u, v, &triple(x, y, w)?)?)?;
    Ok(lhs == rhs)
}

/// Fundamental formula `Q(Q(x)y) = Q(x)Q(y)Q(x)` as operators on the opposite side.
pub fn fundamental_formula<F: Field>(x: &Matrix<F>, y: &Matrix<F>) -> Result<bool> {
    let (r, c) = y.shape();
    let field = x.field();
    let qxy = quad(x, y)?;
    let lhs = Matrix::linear_map_matrix(field, r, c, |w| quad(&qxy, w))?;
    let rhs = Matrix::linear_map_matrix(field, r, c, |w| quad(x, &quad(y, &quad(x, w)?)?))?;
    Ok(lhs == rhs)
}

/// A pair `(e⁺, e⁻)` with `Q(e⁺)e⁻ = e⁺` and `Q(e⁻)e⁺ = e⁻`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Idempotent<F: Field> {
    pub eplus: Matrix<F>,
    pub eminus: Matrix<F>,
}

impl<F: Field> Idempotent<F> {
    pub fn new(pair: &JordanPair<F>, eplus: Matrix<F>, eminus: Matrix<F>) -> Result<Self> {
        if !pair.contains(Side::Plus, &eplus) || !pair.contains(Side::Minus, &eminus) {
            return Err(GeomError::Shape("idempotent components must lie in V+ and V-".into()));
        }
        if !is_idempotent(&eplus, &eminus)? {
            return Err(GeomError::NotIdempotent);
        }
        Ok(Idempotent { eplus, eminus })
    }

    pub fn zero(pair: &JordanPair<F>) -> Self {
        let (r, c) = pair.shape(Side::Plus);
        Idempotent { eplus: Matrix::zeros(pair.field(), r, c), eminus: Matrix::zeros(pair.field(), c, r) }
    }

    /// Completion of `x` via [`complete_idempotent`].
    pub fn complete(x: &Matrix<F>) -> Result<Self> {
        let (eplus, eminus) = complete_idempotent(x)?;
        Ok(Idempotent { eplus, eminus })
    }

    pub fn rank(&self) -> usize {
        self.eplus.rank()
    }

    pub fn to_json(&self) -> Value {
        json!({"eplus": self.eplus.to_json(), "eminus": self.eminus.to_json()})
    }
}

/// Inputs for one evaluation of the pair identities; `x, u, w ∈ V⁺`, `y, v ∈ V⁻`.
#[derive(Clone, Debug)]
pub struct AxiomSample<F: Field> {
    pub x: Matrix<F>,
    pub y: Matrix<F>,
    pub u: Matrix<F>,
    pub v: Matrix<F>,
    pub w: Matrix<F>,
}

/// Violation counts for the outer symmetry, derivation identity and fundamental formula.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub samples: usize,
    pub outer_symmetry: usize,
    pub derivation: usize,
    pub fundamental: usize,
    pub first_violation: Option<Value>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.outer_symmetry == 0 && self.derivation == 0 && self.fundamental == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "samples": self.samples,
            "violations": {
                "outer_symmetry": self.outer_symmetry,
                "derivation": self.derivation,
                "fundamental": self.fundamental,
            },
            "first_violation": self.first_violation,
            "pass": self.passed(),
        })
    }
}

/// Evaluates the pair identities on every sample.
pub fn jordan_axiom_check<F: Field>(samples: impl IntoIterator<Item = AxiomSample<F>>) -> Result<AxiomReport> {
    let mut report = AxiomReport::default();
    for s in samples {
        report.samples += 1;
        let checks = [
            ("outer_symmetry", identity_outer_symmetry(&s.x, &s.y, &s.u)?),
            ("derivation", identity_derivation(&s.x, &s.y, &s.u, &s.v, &s.w)?),
            ("fundamental", fundamental_formula(&s.x, &s.y)?),
        ];
        for (name, ok) in checks {
            if ok {
                continue;
            }
            match name {
                "outer_symmetry" => report.outer_symmetry += 1,
                "derivation" => report.derivation += 1,
                _ => report.fundamental += 1,
            }
            if report.first_violation.is_none() {
                report.first_violation = Some(json!({
                    "identity": name,
                    "x": s.x.to_json(), "y": s.y.to_json(), "u": s.u.to_json(),
                    "v": s.v.to_json(), "w": s.w.to_json(),
                }));
            }
        }
    }
    Ok(report)
}

/// An inner ideal candidate: a subspace of the vectorized `V⁺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerIdeal<F: Field> {
    pub pair: JordanPair<F>,
    pub space: Subspace<F>,
}

impl<F: Field> InnerIdeal<F> {
    pub fn new(pair: &JordanPair<F>, space: Subspace<F>) -> Result<Self> {
        if !space.is_subspace_of(&pair.space(Side::Plus)) {
            return Err(GeomError::Shape("subspace is not inside V+".into()));
        }
        Ok(InnerIdeal { pair: pair.clone(), space })
    }

    pub fn span(pair: &JordanPair<F>, elements: &[Matrix<F>]) -> Result<Self> {
        let vs: Vec<Vec<F::Elem>> = elements.iter().map(|m| m.data().to_vec()).collect();
        Self::new(pair, Subspace::span(pair.field(), pair.vec_len(Side::Plus), &vs)?)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<Matrix<F>> {
        self.space.basis_vectors().iter().map(|v| self.pair.to_matrix(Side::Plus, v).expect("shape")).collect()
    }

    pub fn contains(&self, x: &Matrix<F>) -> bool {
        self.space.contains_vector(x.data())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.space.is_subspace_of(&other.space)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.pair.field().to_json(),
            "pair": self.pair.to_json(),
            "basis": self.basis().iter().map(Matrix::to_json).collect::<Vec<_>>(),
        })
    }
}

fn products<F: Field>(pair: &JordanPair<F>, basis: &[Matrix<F>], with_diagonal_t: bool) -> Result<Vec<Matrix<F>>> {
    let minus = pair.basis(Side::Minus);
    let mut out = Vec::new();
    for (i, bi) in basis.iter().enumerate() {
        for e in &minus {
            if !with_diagonal_t {
                out.push(quad(bi, e)?);
            }
            let start = if with_diagonal_t { i } else { i + 1 };
            for bj in &basis[start..] {
                out.push(triple(bi, e, bj)?);
            }
        }
    }
    Ok(out)
}

/// `Q(I)V⁻ ⊆ I`, tested through the polarized criterion on a basis:
/// `Q(b_i)E ∈ I` and `T(b_i,E,b_j) ∈ I` for `i < j`. Valid in every characteristic.
pub fn is_inner_ideal<F: Field>(i: &InnerIdeal<F>) -> Result<bool> {
    let basis = i.basis();
    Ok(products(&i.pair, &basis, false)?.iter().all(|m| i.contains(m)))
}

/// `T(I,V⁻,I) ⊆ I`; equivalent to [`is_inner_ideal`] when 2 is a unit.
pub fn is_t_closed<F: Field>(i: &InnerIdeal<F>) -> Result<bool> {
    let basis = i.basis();
    Ok(products(&i.pair, &basis, true)?.iter().all(|m| i.contains(m)))
}

/// Least inner ideal containing `i`, by iterated closure.
pub fn inner_ideal_closure<F: Field>(i: &InnerIdeal<F>) -> Result<InnerIdeal<F>> {
    let mut cur = i.clone();
    loop {
        let extra = products(&cur.pair, &cur.basis(), false)?;
        let mut all = cur.basis();
        all.extend(extra);
        let next = InnerIdeal::span(&cur.pair, &all)?;
        if next.dim() == cur.dim() {
            return Ok(cur);
        }
        cur = next;
    }
}

/// Principal inner ideal `[x] = Q(x)V⁻`.
pub fn principal_ideal<F: Field>(pair: &JordanPair<F>, x: &Matrix<F>) -> Result<InnerIdeal<F>> {
    let images = pair.basis(Side::Minus).iter().map(|e| quad(x, e)).collect::<Result<Vec<_>>>()?;
    InnerIdeal::span(pair, &images)
}

/// Inner ideal generated by `x`: `(x) = [x] + Fx`.
pub fn generated_ideal<F: Field>(pair: &JordanPair<F>, x: &Matrix<F>) -> Result<InnerIdeal<F>> {
    let mut images = pair.basis(Side::Minus).iter().map(|e| quad(x, e)).collect::<Result<Vec<_>>>()?;
    images.push(x.clone());
    InnerIdeal::span(pair, &images)
}

/// `B(x,y)V⁺`, an inner ideal for every `(x,y)`.
pub fn bergmann_image<F: Field>(pair: &JordanPair<F>, x: &Matrix<F>, y: &Matrix<F>) -> Result<InnerIdeal<F>> {
    let b = bergmann(x, y)?;
    let images: Vec<Vec<F::Elem>> =
        pair.space(Side::Plus).basis_vectors().iter().map(|v| b.mul_vec(v)).collect();
    InnerIdeal::new(pair, Subspace::span(pair.field(), pair.vec_len(Side::Plus), &images)?)
}

fn rect_dims<F: Field>(pair: &JordanPair<F>) -> Result<(usize, usize)> {
    match pair.kind() {
        PairKind::Rect { p, q } => Ok((*p, *q)),
        PairKind::Sym { .. } => Err(GeomError::Shape("operation needs a rectangular pair".into())),
    }
}

/// `I_{E,F} = {f ∈ M(p,q) : E ⊆ ker f, im f ⊆ F}` for `E ⊆ F^q`, `F ⊆ F^p`.
pub fn ief_ideal<F: Field>(pair: &JordanPair<F>, e: &Subspace<F>, f: &Subspace<F>) -> Result<InnerIdeal<F>> {
    let (p, q) = rect_dims(pair)?;
    if e.ambient() != q || f.ambient() != p {
        return Err(GeomError::Shape("I_(E,F) needs E ⊆ F^q and F ⊆ F^p".into()));
    }
    let field = pair.field();
    let ann = f.annihilator().basis().clone();
    let eb = e.basis_columns();
    let map = Matrix::linear_map_matrix(field, p, q, |x| {
        let v1 = x.mul(&eb)?.into_data();
        let mut v2 = ann.mul(x)?.into_data();
        v2.extend(v1);
        Ok(Matrix::column(field, v2))
    })?;
    InnerIdeal::new(pair, Subspace::kernel(&map))
}

/// Result of [`classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification<F: Field> {
    Standard { e: Subspace<F>, f: Subspace<F> },
    Nonstandard,
}

/// Recognizes `I = I_{E,F}` with `E = ∩ ker b`, `F = Σ im b` over a basis.
pub fn classify<F: Field>(i: &InnerIdeal<F>) -> Result<Classification<F>> {
    let (p, q) = rect_dims(&i.pair)?;
    let field = i.pair.field();
    let mut e = Subspace::full(field, q);
    let mut f = Subspace::zero(field, p);
    for b in i.basis() {
        e = e.intersect(&Subspace::kernel(&b))?;
        f = f.sum(&Subspace::image(&b))?;
    }
    if ief_ideal(&i.pair, &e, &f)?.space == i.space {
        Ok(Classification::Standard { e, f })
    } else {
        Ok(Classification::Nonstandard)
    }
}

/// Join of two standard inner ideals: `I_{E1∩E2, F1+F2}`.
pub fn join<F: Field>(i1: &InnerIdeal<F>, i2: &InnerIdeal<F>) -> Result<InnerIdeal<F>> {
    match (classify(i1)?, classify(i2)?) {
        (Classification::Standard { e: e1, f: f1 }, Classification::Standard { e: e2, f: f2 }) => {
            ief_ideal(&i1.pair, &e1.intersect(&e2)?, &f1.sum(&f2)?)
        }
        _ => Err(GeomError::Nonstandard),
    }
}

/// `I_{E1,F1} + I_{E1,F2} + I_{E2,F1} + I_{E2,F2}`.
pub fn mixed_sum<F: Field>(
    pair: &JordanPair<F>,
    (e1, f1): (&Subspace<F>, &Subspace<F>),
    (e2, f2): (&Subspace<F>, &Subspace<F>),
) -> Result<InnerIdeal<F>> {
    let mut s = Subspace::zero(pair.field(), pair.vec_len(Side::Plus));
    for e in [e1, e2] {
        for f in [f1, f2] {
            s = s.sum(&ief_ideal(pair, e, f)?.space)?;
        }
    }
    InnerIdeal::new(pair, s)
}

/// Invertible `B` (q×q), `C` (p×p) with `C⁻¹ x B = diag(1_r, 0)`, and `r`.
pub fn rank_normal_form<F: Field>(x: &Matrix<F>) -> Result<(Matrix<F>, Matrix<F>, usize)> {
    let field = x.field();
    let (p, q) = x.shape();
    let (_, pivots) = x.rref();
    let r = pivots.len();
    let mut b_cols: Vec<Vec<F::Elem>> = pivots
        .iter()
        .map(|&c| {
            let mut v = vec![field.zero(); q];
            v[c] = field.one();
            v
        })
        .collect();
    b_cols.extend(x.kernel_vectors());
    let mut c_cols: Vec<Vec<F::Elem>> = b_cols[..r].iter().map(|b| x.mul_vec(b)).collect();
    let image = Subspace::span(field, p, &c_cols)?;
    c_cols.extend(image.standard_complement().basis_vectors());
    let b = Matrix::from_columns(field, q, &b_cols);
    let c = Matrix::from_columns(field, p, &c_cols);
    Ok((b, c, r))
}

/// `diag(1_t, 0)` of the given shape.
fn partial_identity<F: Field>(field: &F, rows: usize, cols: usize, t: usize) -> Matrix<F> {
    let mut d = Matrix::zeros(field, rows, cols);
    for i in 0..t {
        d.set(i, i, field.one());
    }
    d
}

/// Completes `x` to an idempotent `(x, y)`, i.e. `Q(x)y = x`, `Q(y)x = y`.
pub fn complete_idempotent<F: Field>(x: &Matrix<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    let (b, c, r) = rank_normal_form(x)?;
    let (p, q) = x.shape();
    let y = b.mul(&partial_identity(x.field(), q, p, r))?.mul(&c.inverse()?)?;
    Ok((x.clone(), y))
}

pub fn is_idempotent<F: Field>(e_plus: &Matrix<F>, e_minus: &Matrix<F>) -> Result<bool> {
    Ok(quad(e_plus, e_minus)? == *e_plus && quad(e_minus, e_plus)? == *e_minus)
}

/// `Q(e⁺)f⁻ = 0` and `Q(e⁻)f⁺ = 0`.
pub fn is_orthogonal<F: Field>(e: (&Matrix<F>, &Matrix<F>), f: (&Matrix<F>, &Matrix<F>)) -> Result<bool> {
    Ok(quad(e.0, f.1)?.is_zero() && quad(e.1, f.0)?.is_zero())
}

/// Peirce spaces `V_2, V_1, V_0` on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Peirce<F: Field> {
    pub plus: [Subspace<F>; 3],
    pub minus: [Subspace<F>; 3],
}

impl<F: Field> Peirce<F> {
    /// `V_i^σ` for `i ∈ {0, 1, 2}`.
    pub fn part(&self, side: Side, i: usize) -> &Subspace<F> {
        match side {
            Side::Plus => &self.plus[2 - i],
            Side::Minus => &self.minus[2 - i],
        }
    }
}

/// Operator `T(a, b, ·)` on the vectorized side containing `a`.
pub fn t_operator<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    let (r, c) = a.shape();
    Matrix::linear_map_matrix(a.field(), r, c, |z| triple(a, b, z))
}

fn eigenspaces<F: Field>(op: &Matrix<F>, space: &Subspace<F>) -> Result<[Subspace<F>; 3]> {
    let field = op.field();
    let n = op.rows();
    let mut parts = Vec::new();
    for lambda in [2i64, 1, 0] {
        let shifted = op.sub(&Matrix::identity(field, n).scale(&field.from_i64(lambda)))?;
        parts.push(Subspace::kernel(&shifted).intersect(space)?);
    }
    let total: usize = parts.iter().map(Subspace::dim).sum();
    if total != space.dim() || Subspace::sum_all(field, n, &parts)? != *space {
        return Err(GeomError::NotDiagonalizable);
    }
    Ok([parts[0].clone(), parts[1].clone(), parts[2].clone()])
}

/// Peirce decomposition: eigenspaces of `T(e⁺,e⁻,·)` for eigenvalues 2, 1, 0.
/// Needs `2 ≠ 0`.
pub fn peirce<F: Field>(pair: &JordanPair<F>, e_plus: &Matrix<F>, e_minus: &Matrix<F>) -> Result<Peirce<F>> {
    if pair.field().characteristic() == 2 {
        return Err(GeomError::EigenvalueCollision(2, 0, 2));
    }
    if !is_idempotent(e_plus, e_minus)? {
        return Err(GeomError::NotIdempotent);
    }
    Ok(Peirce {
        plus: eigenspaces(&t_operator(e_plus, e_minus)?, &pair.space(Side::Plus))?,
        minus: eigenspaces(&t_operator(e_minus, e_plus)?, &pair.space(Side::Minus))?,
    })
}

/// Whether `L(L-1)(L-2) = 0` for `L = T(e⁺,e⁻,·)`; holds in every characteristic.
pub fn peirce_polynomial_vanishes<F: Field>(e_plus: &Matrix<F>, e_minus: &Matrix<F>) -> Result<bool> {
    let l = t_operator(e_plus, e_minus)?;
    let field = l.field();
    let id = Matrix::identity(field, l.rows());
    let l1 = l.sub(&id)?;
    let l2 = l.sub(&id.scale(&field.from_i64(2)))?;
    Ok(l.mul(&l1)?.mul(&l2)?.is_zero())
}

/// Constructive chain `0 ⊂ [h_1] ⊂ … ⊂ [h_r] = [g]` of principal inner ideals,
/// with `h_t = C diag(1_t, 0) B⁻¹` from the rank normal form of `g`.
pub fn principal_chain<F: Field>(pair: &JordanPair<F>, g: &Matrix<F>) -> Result<Vec<InnerIdeal<F>>> {
    let (p, q) = rect_dims(pair)?;
    let (b, c, r) = rank_normal_form(g)?;
    let b_inv = b.inverse()?;
    let mut chain = vec![InnerIdeal::new(pair, Subspace::zero(pair.field(), p * q))?];
    for t in 1..=r {
        let h = c.mul(&partial_identity(pair.field(), p, q, t))?.mul(&b_inv)?;
        let next = principal_ideal(pair, &h)?;
        let prev = chain.last().expect("nonempty");
        if !(prev.is_subset(&next) && prev.dim() < next.dim()) {
            return Err(GeomError::NotInnerIdeal);
        }
        chain.push(next);
    }
    Ok(chain)
}

/// Number of strict inclusions in [`principal_chain`].
pub fn chain_rank<F: Field>(pair: &JordanPair<F>, g: &Matrix<F>) -> Result<usize> {
    Ok(principal_chain(pair, g)?.len() - 1)
}

/// Longest chain of principal inner ideals from `0` to `[g]`, by
/// enumerating every principal ideal `[h]`, `h ∈ [g]`.
pub fn max_principal_chain_length(pair: &JordanPair<PrimeField>, g: &Matrix<PrimeField>, budget: u64) -> Result<usize> {
    let top = principal_ideal(pair, g)?;
    check_budget(power_count(pair.field().order(), top.dim()), budget)?;
    let mut ideals: Vec<Subspace<PrimeField>> = Vec::new();
    for v in subspace_elements(&top.space, budget)? {
        let h = pair.to_matrix(Side::Plus, &v)?;
        let s = principal_ideal(pair, &h)?.space;
        if !ideals.contains(&s) {
            ideals.push(s);
        }
    }
    ideals.sort_by_key(Subspace::dim);
    let mut best = vec![0usize; ideals.len()];
    for i in 0..ideals.len() {
        for k in 0..i {
            if ideals[k].dim() < ideals[i].dim() && ideals[k].is_subspace_of(&ideals[i]) {
                best[i] = best[i].max(best[k] + 1);
            }
        }
    }
    let pos = ideals.iter().position(|s| *s == top.space).expect("[g] is principal");
    Ok(best[pos])
}

/// `{f ∈ Sym : e ⊆ ker f}` in a symmetric pair.
pub fn sym_inner_ideal<F: Field>(pair: &JordanPair<F>, e: &Subspace<F>) -> Result<InnerIdeal<F>> {
    let n = match pair.kind() {
        PairKind::Sym { n, .. } => *n,
        PairKind::Rect { .. } => return Err(GeomError::Shape("operation needs a symmetric pair".into())),
    };
    if e.ambient() != n {
        return Err(GeomError::AmbientMismatch(e.ambient(), n));
    }
    let eb = e.basis_columns();
    let killers = Subspace::kernel(&Matrix::linear_map_matrix(pair.field(), n, n, |f| {
        Ok(Matrix::column(pair.field(), f.mul(&eb)?.into_data()))
    })?);
    InnerIdeal::new(pair, killers.intersect(&pair.space(Side::Plus))?)
}

/// `Ann(X) ⊆ V⁺` for a set `X ⊆ V⁻`: the `a` with `Q(a)X = Q(X)a = 0`,
/// `Q(a)Q(X) = Q(X)Q(a) = 0` and `T(a,X) = T(X,a) = 0`.
///
/// The conditions linear in `a` are solved exactly; the quadratic ones are
/// then verified on the solution space in polarized form.
pub fn annihilator<F: Field>(pair: &JordanPair<F>, xs: &[Matrix<F>]) -> Result<Subspace<F>> {
    let field = pair.field();
    let (r, c) = pair.shape(Side::Plus);
    let plus_basis = pair.basis(Side::Plus);
    let minus_basis = pair.basis(Side::Minus);
    let plus_space = pair.space(Side::Plus);
    let mut sol = plus_space.clone();
    for x in xs {
        let lin = Matrix::linear_map_matrix(field, r, c, |a| {
            let mut v = quad(x, a)?.into_data();
            for z in &plus_basis {
                v.extend(triple(a, x, z)?.into_data());
            }
            for w in &minus_basis {
                v.extend(triple(x, a, w)?.into_data());
            }
            Ok(Matrix::column(field, v))
        })?;
        sol = sol.intersect(&Subspace::kernel(&lin))?;
    }
    let basis: Vec<Matrix<F>> = sol.basis_vectors().iter().map(|v| pair.to_matrix(Side::Plus, v)).collect::<Result<_>>()?;
    // Polarized quadratic conditions: a X b + b X a = 0, a (XzX) b + b (XzX) a = 0,
    // X (a w b + b w a) X = 0 for all basis pairs a, b (a = b gives the squares).
    let sym = |a: &Matrix<F>, m: &Matrix<F>, b: &Matrix<F>| -> Result<Matrix<F>> {
        if a == b {
            quad(a, m)
        } else {
            triple(a, m, b)
        }
    };
    for x in xs {
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i..] {
                let mut ok = sym(a, x, b)?.is_zero();
                for z in &plus_basis {
                    ok &= sym(a, &quad(x, z)?, b)?.is_zero();
                }
                for w in &minus_basis {
                    ok &= quad(x, &sym(a, w, b)?)?.is_zero();
                }
                if !ok {
                    return Err(GeomError::NotInnerIdeal);
                }
            }
        }
    }
    Ok(sol)
}

/// Kernel `{y ∈ V⁻ : Q(I)y = 0}` of an inner ideal.
pub fn kernel_of<F: Field>(i: &InnerIdeal<F>) -> Result<Subspace<F>> {
    let pair = &i.pair;
    let field = pair.field();
    let (r, c) = pair.shape(Side::Minus);
    let basis = i.basis();
    let map = Matrix::linear_map_matrix(field, r, c, |y| {
        let mut v = Vec::new();
        for (k, a) in basis.iter().enumerate() {
            v.extend(quad(a, y)?.into_data());
            for b in &basis[k + 1..] {
                v.extend(triple(a, y, b)?.into_data());
            }
        }
        Ok(Matrix::column(field, v))
    })?;
    if basis.is_empty() {
        return Ok(pair.space(Side::Minus));
    }
    Subspace::kernel(&map).intersect(&pair.space(Side::Minus))
}

/// `z` is trivial when `Q(z) = 0`.
pub fn is_trivial_element<F: Field>(pair: &JordanPair<F>, z: &Matrix<F>) -> Result<bool> {
    for e in pair.basis(Side::Minus) {
        if !quad(z, &e)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Division idempotent: `V_2 ≠ 0` and every nonzero `x ∈ V_2⁺` has `Q(x): V_2⁻ → V_2⁺` invertible.
pub fn is_division_idempotent(
    pair: &JordanPair<PrimeField>,
    e_plus: &Matrix<PrimeField>,
    e_minus: &Matrix<PrimeField>,
    budget: u64,
) -> Result<bool> {
    let pc = peirce(pair, e_plus, e_minus)?;
    let (v2p, v2m) = (pc.part(Side::Plus, 2), pc.part(Side::Minus, 2));
    if v2p.is_zero() {
        return Ok(false);
    }
    for v in subspace_elements(v2p, budget)? {
        if v.iter().all(|&a| a == 0) {
            continue;
        }
        let x = pair.to_matrix(Side::Plus, &v)?;
        let images: Vec<Vec<u32>> = v2m
            .basis_vectors()
            .iter()
            .map(|w| Ok(quad(&x, &pair.to_matrix(Side::Minus, w)?)?.into_data()))
            .collect::<Result<_>>()?;
        let img = Subspace::span(pair.field(), pair.vec_len(Side::Plus), &images)?;
        if img != *v2p || v2m.dim() != v2p.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Primitive: nonzero and not a sum of two nonzero orthogonal idempotents.
/// Decided by enumerating idempotents inside the Peirce 2-space.
pub fn is_primitive(
    pair: &JordanPair<PrimeField>,
    e_plus: &Matrix<PrimeField>,
    e_minus: &Matrix<PrimeField>,
    budget: u64,
) -> Result<bool> {
    if e_plus.is_zero() {
        return Ok(false);
    }
    let pc = peirce(pair, e_plus, e_minus)?;
    let (v2p, v2m) = (pc.part(Side::Plus, 2), pc.part(Side::Minus, 2));
    check_budget(power_count(pair.field().order(), v2p.dim() + v2m.dim()), budget)?;
    for a in subspace_elements(v2p, budget)? {
        let ap = pair.to_matrix(Side::Plus, &a)?;
        if ap.is_zero() || ap == *e_plus {
            continue;
        }
        for b in subspace_elements(v2m, budget)? {
            let am = pair.to_matrix(Side::Minus, &b)?;
            if !is_idempotent(&ap, &am)? {
                continue;
            }
            let (rp, rm) = (e_plus.sub(&ap)?, e_minus.sub(&am)?);
            if !rp.is_zero() && is_idempotent(&rp, &rm)? && is_orthogonal((&ap, &am), (&rp, &rm))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Maximal: the Peirce 0-space contains no nonzero idempotent.
pub fn is_maximal_idempotent(
    pair: &JordanPair<PrimeField>,
    e_plus: &Matrix<PrimeField>,
    e_minus: &Matrix<PrimeField>,
    budget: u64,
) -> Result<bool> {
    let pc = peirce(pair, e_plus, e_minus)?;
    let (v0p, v0m) = (pc.part(Side::Plus, 0), pc.part(Side::Minus, 0));
    check_budget(power_count(pair.field().order(), v0p.dim() + v0m.dim()), budget)?;
    for a in subspace_elements(v0p, budget)? {
        let ap = pair.to_matrix(Side::Plus, &a)?;
        if ap.is_zero() {
            continue;
        }
        for b in subspace_elements(v0m, budget)? {
            if is_idempotent(&ap, &pair.to_matrix(Side::Minus, &b)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Simple inner ideal: nonzero, not consisting of trivial elements, and
/// minimal; decided by `[x] = I` for every non-trivial `x ∈ I` and the
/// absence of smaller nonzero inner ideals among the `(x)`, `x ∈ I`.
pub fn is_simple_inner_ideal(i: &InnerIdeal<PrimeField>, budget: u64) -> Result<bool> {
    if i.dim() == 0 || !is_inner_ideal(i)? {
        return Ok(false);
    }
    let mut nontrivial = false;
    for v in subspace_elements(&i.space, budget)? {
        if v.iter().all(|&a| a == 0) {
            continue;
        }
        let x = i.pair.to_matrix(Side::Plus, &v)?;
        if generated_ideal(&i.pair, &x)?.dim() < i.dim() {
            return Ok(false);
        }
        if !is_trivial_element(&i.pair, &x)? {
            nontrivial = true;
        }
    }
    Ok(nontrivial)
}

/// For `(I, V⁻)`: whether `{x ∈ I : B(x,a)|_I invertible}` spans `I` for every
/// `a ∈ V⁻`, and `{y ∈ V⁻ : B(y,b) invertible}` spans `V⁻` for every `b ∈ I`.
pub fn is_friendly(i: &InnerIdeal<PrimeField>, budget: u64) -> Result<bool> {
    let pair = &i.pair;
    let minus = pair.space(Side::Minus);
    let i_elems = subspace_elements(&i.space, budget)?;
    let m_elems = subspace_elements(&minus, budget)?;
    check_budget((i_elems.len() as u128) * (m_elems.len() as u128), budget.saturating_mul(budget))?;
    let restricted_invertible = |b: &Matrix<PrimeField>, s: &Subspace<PrimeField>| -> bool {
        let imgs: Vec<Vec<u32>> = s.basis_vectors().iter().map(|v| b.mul_vec(v)).collect();
        Subspace::span(pair.field(), b.rows(), &imgs).map(|t| t.dim() == s.dim()).unwrap_or(false)
    };
    for av in &m_elems {
        let a = pair.to_matrix(Side::Minus, av)?;
        let mut good = Vec::new();
        for xv in &i_elems {
            let x = pair.to_matrix(Side::Plus, xv)?;
            if restricted_invertible(&bergmann(&x, &a)?, &i.space) {
                good.push(xv.clone());
            }
        }
        if Subspace::span(pair.field(), pair.vec_len(Side::Plus), &good)? != i.space {
            return Ok(false);
        }
    }
    for bv in &i_elems {
        let b = pair.to_matrix(Side::Plus, bv)?;
        let mut good = Vec::new();
        for yv in &m_elems {
            let y = pair.to_matrix(Side::Minus, yv)?;
            if restricted_invertible(&bergmann(&y, &b)?, &minus) {
                good.push(yv.clone());
            }
        }
        if Subspace::span(pair.field(), pair.vec_len(Side::Minus), &good)? != minus {
            return Ok(false);
        }
    }
    Ok(true)
}
