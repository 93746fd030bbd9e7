//! Non-degenerate bilinear forms, orthogonal complements and Lagrangian
//! flag subgeometries.

use serde_json::{json, Value};

use crate::charts::{is_adapted, ChartPoint};
use crate::error::{GeomError, Result};
use crate::exactla::{Field, Matrix, PrimeField, Subspace};
use crate::flags::{enumerate_flags, is_transversal, Flag, FlagType};
use crate::intrinsic::{FiniteGeometry, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Symmetric,
    Skew,
}

/// `β(u, v) = uᵀ G v` with `G` invertible and `Gᵀ = ±G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearForm<F: Field> {
    gram: Matrix<F>,
    symmetry: Symmetry,
}

impl<F: Field> BilinearForm<F> {
    pub fn new(gram: Matrix<F>, symmetry: Symmetry) -> Result<Self> {
        if !gram.is_square() {
            return Err(GeomError::Form("gram matrix must be square".into()));
        }
        let expected = match symmetry {
            Symmetry::Symmetric => gram.clone(),
            Symmetry::Skew => gram.neg(),
        };
        if gram.transpose() != expected {
            return Err(GeomError::Form(format!("gram matrix is not {symmetry:?}")));
        }
        if symmetry == Symmetry::Skew && gram.field().characteristic() == 2 {
            // alternating is the meaningful notion in characteristic 2
            for i in 0..gram.rows() {
                if !gram.field().is_zero(gram.get(i, i)) {
                    return Err(GeomError::Form("skew form must be alternating".into()));
                }
            }
        }
        if !gram.is_invertible() {
            return Err(GeomError::Form("form is degenerate".into()));
        }
        Ok(BilinearForm { gram, symmetry })
    }

    /// `(0 -I; I 0)` on `F^{2m}`.
    pub fn symplectic(field: &F, m: usize) -> Self {
        let id = Matrix::identity(field, m);
        let z = Matrix::zeros(field, m, m);
        let gram = Matrix::block(&z, &id.neg(), &id, &z).expect("square blocks");
        BilinearForm { gram, symmetry: Symmetry::Skew }
    }

    /// `(0 I; I 0)` on `F^{2m}`.
    pub fn artinian(field: &F, m: usize) -> Self {
        let id = Matrix::identity(field, m);
        let z = Matrix::zeros(field, m, m);
        let gram = Matrix::block(&z, &id, &id, &z).expect("square blocks");
        BilinearForm { gram, symmetry: Symmetry::Symmetric }
    }

    pub fn gram(&self) -> &Matrix<F> {
        &self.gram
    }
    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }
    pub fn field(&self) -> &F {
        self.gram.field()
    }

    pub fn eval(&self, u: &[F::Elem], v: &[F::Elem]) -> F::Elem {
        let gv = self.gram.mul_vec(v);
        let f = self.field();
        u.iter().zip(&gv).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
    }

    /// `S^⊥ = {v : β(s, v) = 0 for all s ∈ S}`.
    pub fn perp(&self, s: &Subspace<F>) -> Result<Subspace<F>> {
        if s.ambient() != self.dim() {
            return Err(GeomError::AmbientMismatch(s.ambient(), self.dim()));
        }
        if s.is_zero() {
            return Ok(Subspace::full(self.field(), self.dim()));
        }
        Ok(Subspace::kernel(&s.basis().mul(&self.gram)?))
    }

    pub fn is_isotropic(&self, s: &Subspace<F>) -> Result<bool> {
        Ok(s.is_subspace_of(&self.perp(s)?))
    }

    pub fn is_lagrangian(&self, s: &Subspace<F>) -> Result<bool> {
        Ok(self.perp(s)? == *s)
    }

    /// Flag `f^⊥` with steps `(f^⊥)_j = (f_{k-j})^⊥`.
    pub fn perp_flag(&self, f: &Flag<F>) -> Result<Flag<F>> {
        let k = f.length();
        let steps = (1..k).map(|j| self.perp(&f.step(k - j))).collect::<Result<Vec<_>>>()?;
        Flag::new(self.field(), f.ambient(), steps)
    }

    /// `f_j^⊥ = f_{k-j}` for all `j`.
    pub fn is_lagrangian_flag(&self, f: &Flag<F>) -> Result<bool> {
        Ok(self.perp_flag(f)? == *f)
    }

    /// The involution `(e, f) ↦ (e^⊥, f^⊥)` of the geometry.
    pub fn perp_automorphism(&self, e: &Flag<F>, f: &Flag<F>) -> Result<(Flag<F>, Flag<F>)> {
        Ok((self.perp_flag(e)?, self.perp_flag(f)?))
    }

    /// Adjoint `X* = G⁻¹ Xᵀ G`, so that `β(Xu, v) = β(u, X* v)`.
    pub fn adjoint(&self, x: &Matrix<F>) -> Result<Matrix<F>> {
        self.gram.inverse()?.mul(&x.transpose())?.mul(&self.gram)
    }

    /// Chart action of the perp involution: `X ↦ -X*`.
    pub fn perp_chart(&self, p: &ChartPoint<F>) -> Result<ChartPoint<F>> {
        Ok(ChartPoint { x: self.perp_flag(&p.x)?, a: self.perp_flag(&p.a)?, coord: self.adjoint(&p.coord)?.neg() })
    }

    pub fn to_json(&self) -> Value {
        let sym = match self.symmetry {
            Symmetry::Symmetric => "symmetric",
            Symmetry::Skew => "skew",
        };
        json!({"gram": self.gram.to_json(), "symmetry": sym})
    }

    pub fn from_json(field: &F, v: &Value) -> Result<Self> {
        let gram = Matrix::from_json(field, v.get("gram").ok_or_else(|| GeomError::Json("form: gram".into()))?)?;
        let symmetry = match v.get("symmetry").and_then(Value::as_str) {
            Some("symmetric") => Symmetry::Symmetric,
            Some("skew") => Symmetry::Skew,
            _ => return Err(GeomError::Json("form: symmetry".into())),
        };
        Self::new(gram, symmetry)
    }
}

/// All Lagrangian flags of a self-dual type.
pub fn enumerate_lagrangian(
    form: &BilinearForm<PrimeField>,
    t: &FlagType,
    budget: u64,
) -> Result<Vec<Flag<PrimeField>>> {
    if t.ambient() != form.dim() {
        return Err(GeomError::AmbientMismatch(t.ambient(), form.dim()));
    }
    if t.cotype() != *t {
        return Err(GeomError::InvalidType("Lagrangian flags need a self-dual type".into()));
    }
    let mut out = Vec::new();
    for f in enumerate_flags(form.field(), t, budget)? {
        if form.is_lagrangian_flag(&f)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// The Lagrangian subgeometry: points and chart bases are Lagrangian flags.
pub fn lagrangian_geometry(form: &BilinearForm<PrimeField>, t: &FlagType, budget: u64) -> Result<FiniteGeometry> {
    let flags = enumerate_lagrangian(form, t, budget)?;
    let descriptor = json!({
        "kind": "lagrangian",
        "field": form.field().to_json(),
        "n": t.ambient(),
        "k": t.length(),
        "type": t.dims(),
        "form": form.to_json(),
    });
    FiniteGeometry::from_parts(form.field(), flags.clone(), flags, descriptor, budget)
}

/// Lagrangian Grassmannian points `{f : e1 ⊆ f ⊆ e1^⊥}` for isotropic `e1`.
pub fn lagrangian_standard_members(
    g: &FiniteGeometry,
    form: &BilinearForm<PrimeField>,
    e1: &Subspace<PrimeField>,
) -> Result<PointSet> {
    if !form.is_isotropic(e1)? {
        return Err(GeomError::Form("governor must be isotropic".into()));
    }
    let upper = form.perp(e1)?;
    Ok(PointSet::new((0..g.points().len()).filter(|&i| {
        let f = g.point(i).step(1);
        e1.is_subspace_of(&f) && f.is_subspace_of(&upper)
    })))
}

/// Identification of the Lagrangian chart at a transversal Lagrangian pair
/// `(o, o')` with symmetric (symplectic form) or skew (symmetric form)
/// `m×m` matrices: a coordinate `X` maps to `b_X(u_i, u_j) = β(X u_i, u_j)`
/// over the canonical basis `u` of `o`.
#[derive(Clone, Debug)]
pub struct LagrangianChartModel<F: Field> {
    form: BilinearForm<F>,
    o: Subspace<F>,
    op: Subspace<F>,
    pairing: Matrix<F>,
}

impl<F: Field> LagrangianChartModel<F> {
    pub fn new(form: &BilinearForm<F>, o: &Subspace<F>, op: &Subspace<F>) -> Result<Self> {
        if !form.is_lagrangian(o)? || !form.is_lagrangian(op)? {
            return Err(GeomError::Form("base must be Lagrangian".into()));
        }
        if !o.is_complement(op)? {
            return Err(GeomError::NotTransversal);
        }
        let pairing = op.basis().mul(form.gram())?.mul(&o.basis_columns())?;
        Ok(LagrangianChartModel { form: form.clone(), o: o.clone(), op: op.clone(), pairing })
    }

    /// Symmetric matrices for a skew form, skew matrices for a symmetric form.
    pub fn model_symmetry(&self) -> Symmetry {
        match self.form.symmetry() {
            Symmetry::Skew => Symmetry::Symmetric,
            Symmetry::Symmetric => Symmetry::Skew,
        }
    }

    /// Dimension `m(m+1)/2` or `m(m-1)/2` of the model space.
    pub fn dim(&self) -> usize {
        let m = self.o.dim();
        match self.model_symmetry() {
            Symmetry::Symmetric => m * (m + 1) / 2,
            Symmetry::Skew => m * (m - 1) / 2,
        }
    }

    /// Model matrix of a chart coordinate.
    pub fn to_model(&self, x: &Matrix<F>) -> Result<Matrix<F>> {
        let a = Flag::single(self.op.clone())?;
        if !is_adapted(x, &a)? {
            return Err(GeomError::NotAdapted);
        }
        // X u_i = O' c_i, so b[i][j] = c_iᵀ (O'ᵀ G O)[.][j]
        let xo = x.mul(&self.o.basis_columns())?;
        let c = self.op.basis_columns().solve(&xo)?;
        c.transpose().mul(&self.pairing)
    }

    /// Chart coordinate of a model matrix.
    pub fn from_model(&self, b: &Matrix<F>) -> Result<Matrix<F>> {
        let m = self.o.dim();
        if b.shape() != (m, m) {
            return Err(GeomError::Shape("model matrix size".into()));
        }
        let c = self.pairing.inverse()?.transpose().mul(&b.transpose())?;
        let n = self.form.dim();
        let image = self.op.basis_columns().mul(&c)?;
        let s = self.o.basis_columns().hstack(&self.op.basis_columns())?;
        let values = image.hstack(&Matrix::zeros(self.form.field(), n, m))?;
        values.mul(&s.inverse()?)
    }

    /// Whether a chart point `exp(X)·o` is Lagrangian, i.e. `X = -X*`.
    pub fn is_lagrangian_coord(&self, x: &Matrix<F>) -> Result<bool> {
        Ok(*x == self.form.adjoint(x)?.neg())
    }
}

/// Whether a flag pair is a transversal Lagrangian pair.
pub fn is_lagrangian_pair<F: Field>(form: &BilinearForm<F>, x: &Flag<F>, a: &Flag<F>) -> Result<bool> {
    Ok(form.is_lagrangian_flag(x)? && form.is_lagrangian_flag(a)? && is_transversal(x, a)?)
}
