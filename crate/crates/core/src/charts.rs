//! Charts of flag geometries.
//!
//! For a flag `a` of length `k`, the unipotent group
//! `U(a) = {g : (g - 1)(a_i) ⊆ a_{i-1}}` acts simply transitively on the
//! flags transversal to `a`. Coordinates live in the nilpotent algebra
//! `u(a) = {X : X(a_i) ⊆ a_{i-1}}` through the truncated exponential
//! `exp(X) = Σ_{i<k} X^i / i!`, which is defined when `1, …, k-1` are units.

use serde_json::{json, Value};

use crate::error::{GeomError, Result};
use crate::exactla::enumerate::{check_budget, power_count, subspace_elements};
use crate::exactla::{Field, Matrix, PrimeField, Subspace};
use crate::flags::{is_transversal, Flag, FlagType};

/// Fails unless the chart linear structure exists for flags of length `k`.
pub fn require_chart_field<F: Field>(field: &F, k: usize) -> Result<()> {
    field.require_units_up_to(k.saturating_sub(1) as u64)
}

/// A flag geometry `X⁺` of fixed type, with the co-type flags `X⁻` as chart bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagGeometry<F: Field> {
    field: F,
    point_type: FlagType,
}

impl<F: Field> FlagGeometry<F> {
    /// Validates that `1, …, k-1` are units, which the charts require.
    pub fn new(field: &F, point_type: FlagType) -> Result<Self> {
        require_chart_field(field, point_type.length())?;
        Ok(FlagGeometry { field: field.clone(), point_type })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.point_type.ambient()
    }
    pub fn length(&self) -> usize {
        self.point_type.length()
    }
    pub fn point_type(&self) -> &FlagType {
        &self.point_type
    }
    pub fn cotype(&self) -> FlagType {
        self.point_type.cotype()
    }

    pub fn to_chart(&self, y: &Flag<F>, x: &Flag<F>, a: &Flag<F>) -> Result<ChartPoint<F>> {
        self.check_point(x)?;
        self.check_point(y)?;
        to_chart(y, x, a)
    }

    fn check_point(&self, x: &Flag<F>) -> Result<()> {
        if x.flag_type() != self.point_type {
            return Err(GeomError::InvalidType(format!("{:?} is not {:?}", x.flag_type(), self.point_type)));
        }
        Ok(())
    }
}

/// A point of the chart `a^⊤` with origin `x`, given by its coordinate in `u(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPoint<F: Field> {
    pub x: Flag<F>,
    pub a: Flag<F>,
    pub coord: Matrix<F>,
}

impl<F: Field> ChartPoint<F> {
    pub fn to_json(&self) -> Value {
        json!({"base": {"x": self.x.to_json(), "a": self.a.to_json()}, "coord": self.coord.to_json()})
    }
}

/// `{X ∈ End(F^n) : X(src) ⊆ dst}` for every pair, as a subspace of the
/// row-major vectorization `F^{n²}`.
pub fn maps_sending<F: Field>(field: &F, n: usize, pairs: &[(Subspace<F>, Subspace<F>)]) -> Result<Subspace<F>> {
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (src, dst) in pairs {
        if src.ambient() != n || dst.ambient() != n {
            return Err(GeomError::AmbientMismatch(src.ambient(), n));
        }
        let ann = dst.annihilator().basis_vectors();
        for w in &ann {
            for b in src.basis_vectors() {
                let mut row = vec![field.zero(); n * n];
                for r in 0..n {
                    if field.is_zero(&w[r]) {
                        continue;
                    }
                    for c in 0..n {
                        row[r * n + c] = field.mul(&w[r], &b[c]);
                    }
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Ok(Subspace::full(field, n * n));
    }
    let m = Matrix::from_vec(field, rows.len(), n * n, rows.into_iter().flatten().collect())?;
    Ok(Subspace::kernel(&m))
}

/// The nilpotent algebra `u(a)` as a subspace of `F^{n²}`.
pub fn u_algebra<F: Field>(a: &Flag<F>) -> Result<Subspace<F>> {
    let k = a.length();
    let pairs: Vec<_> = (1..=k).map(|i| (a.step(i), a.step(i - 1))).collect();
    maps_sending(a.field(), a.ambient(), &pairs)
}

/// The stabilizer algebra `p(e) = {X : X(e) ⊆ e}` as a subspace of `F^{n²}`.
pub fn stabilizer_algebra<F: Field>(e: &Subspace<F>) -> Result<Subspace<F>> {
    maps_sending(e.field(), e.ambient(), &[(e.clone(), e.clone())])
}

/// Whether `X(a_i) ⊆ a_{i-1}` for all `i`.
pub fn is_adapted<F: Field>(x: &Matrix<F>, a: &Flag<F>) -> Result<bool> {
    if x.shape() != (a.ambient(), a.ambient()) {
        return Err(GeomError::Shape("operator size differs from ambient".into()));
    }
    for i in 1..=a.length() {
        if !a.step(i).image_under(x)?.is_subspace_of(&a.step(i - 1)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Truncated exponential `Σ_{i<k} X^i / i!` of an operator with `X^k = 0`.
pub fn exp_nilpotent<F: Field>(x: &Matrix<F>, k: usize) -> Result<Matrix<F>> {
    let field = x.field();
    require_chart_field(field, k)?;
    let n = x.rows();
    let mut acc = Matrix::identity(field, n);
    let mut term = Matrix::identity(field, n);
    for i in 1..k {
        term = term.mul(x)?.scale(&field.inv_integer(i as i64)?);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Truncated logarithm `-Σ_{i=1}^{k-1} (-Y)^i / i` of `u = 1 + Y` with `Y^k = 0`.
pub fn log_unipotent<F: Field>(u: &Matrix<F>, k: usize) -> Result<Matrix<F>> {
    let field = u.field();
    require_chart_field(field, k)?;
    let n = u.rows();
    let y = u.sub(&Matrix::identity(field, n))?;
    let neg_y = y.neg();
    let mut acc = Matrix::zeros(field, n, n);
    let mut power = Matrix::identity(field, n);
    for i in 1..k {
        power = power.mul(&neg_y)?;
        acc = acc.sub(&power.scale(&field.inv_integer(i as i64)?))?;
    }
    Ok(acc)
}

/// The unique `u ∈ U(f)` with `u·e = e'`, for `e, e'` transversal to `f`.
///
/// Built inductively: `u1` fixes the last proper step `f_{k-1}` pointwise
/// and moves `e_1` to `e'_1`; the problem then restricts to `f_{k-1}`, and
/// the restricted solution is extended by the identity on `e_1`.
pub fn transporter<F: Field>(f: &Flag<F>, e: &Flag<F>, e2: &Flag<F>) -> Result<Matrix<F>> {
    if !is_transversal(e, f)? || !is_transversal(e2, f)? {
        return Err(GeomError::NotTransversal);
    }
    Ok(transporter_steps(f.field(), f.ambient(), f.proper_steps(), e.proper_steps(), e2.proper_steps()))
}

fn transporter_steps<F: Field>(
    field: &F,
    m: usize,
    f: &[Subspace<F>],
    e: &[Subspace<F>],
    e2: &[Subspace<F>],
) -> Matrix<F> {
    let Some(top) = f.last() else {
        return Matrix::identity(field, m);
    };
    let d1 = e[0].dim();
    let d = m - d1;
    // Basis adapted to m = e_1 ⊕ f_{k-1}.
    let s = e[0].basis_columns().hstack(&top.basis_columns()).expect("same height");
    let s_inv = s.inverse().expect("e_1 and f_{k-1} are complementary");
    let c = s_inv.mul(&e2[0].basis_columns()).expect("shape");
    let a = c.submatrix(0, d1, 0, d1);
    let b = c.submatrix(d1, m, 0, d1);
    let shear = b.mul(&a.inverse().expect("e'_1 is complementary to f_{k-1}")).expect("shape");
    let mut lower = Matrix::identity(field, m);
    lower.put(d1, 0, &shear);
    let u1 = s.mul(&lower).and_then(|t| t.mul(&s_inv)).expect("shape");

    // Restrict to f_{k-1} in the coordinates of the adapted basis.
    let coords = |w: &Subspace<F>| -> Subspace<F> {
        let img = s_inv.mul(&w.basis_columns()).expect("shape");
        Subspace::image(&img.submatrix(d1, m, 0, img.cols()))
    };
    let f_inner: Vec<_> = f[..f.len() - 1].iter().map(coords).collect();
    let inner = |flag: &[Subspace<F>]| -> Vec<Subspace<F>> {
        flag[1..].iter().map(|step| coords(&step.intersect(top).expect("same ambient"))).collect()
    };
    let u2 = transporter_steps(field, d, &f_inner, &inner(e), &inner(e2));
    let mut block = Matrix::identity(field, m);
    block.put(d1, d1, &u2);
    let u3 = s.mul(&block).and_then(|t| t.mul(&s_inv)).expect("shape");
    u1.mul(&u3).expect("shape")
}

/// Every element of `U(f)` over a prime field, as `1 + X` for `X ∈ u(f)`.
pub fn unipotent_elements(f: &Flag<PrimeField>, budget: u64) -> Result<Vec<Matrix<PrimeField>>> {
    let field = f.field();
    let n = f.ambient();
    let u = u_algebra(f)?;
    check_budget(power_count(field.order(), u.dim()), budget)?;
    let id = Matrix::identity(field, n);
    subspace_elements(&u, budget)?
        .into_iter()
        .map(|v| Matrix::from_vec(field, n, n, v)?.add(&id))
        .collect()
}

/// Chart coordinate of `y` with origin `x` in the chart of `a`.
pub fn to_chart<F: Field>(y: &Flag<F>, x: &Flag<F>, a: &Flag<F>) -> Result<ChartPoint<F>> {
    if !is_transversal(x, a)? {
        return Err(GeomError::NotTransversal);
    }
    if !is_transversal(y, a)? {
        return Err(GeomError::NotInChart);
    }
    let u = transporter(a, x, y)?;
    let coord = log_unipotent(&u, a.length())?;
    Ok(ChartPoint { x: x.clone(), a: a.clone(), coord })
}

/// The flag `exp(X)·x`.
pub fn from_chart<F: Field>(p: &ChartPoint<F>) -> Result<Flag<F>> {
    if !is_adapted(&p.coord, &p.a)? {
        return Err(GeomError::NotAdapted);
    }
    p.x.act(&exp_nilpotent(&p.coord, p.a.length())?)
}

/// Scalar multiple `r·y` in the chart `a^⊤` with origin `x`.
pub fn pi_r<F: Field>(x: &Flag<F>, a: &Flag<F>, y: &Flag<F>, r: &F::Elem) -> Result<Flag<F>> {
    let p = to_chart(y, x, a)?;
    from_chart(&ChartPoint { coord: p.coord.scale(r), ..p })
}

/// Sum `y + z` in the chart `a^⊤` with origin `x`.
pub fn sigma<F: Field>(x: &Flag<F>, a: &Flag<F>, y: &Flag<F>, z: &Flag<F>) -> Result<Flag<F>> {
    let py = to_chart(y, x, a)?;
    let pz = to_chart(z, x, a)?;
    from_chart(&ChartPoint { coord: py.coord.add(&pz.coord)?, ..py })
}

/// The point `y - x + z` formed in the chart `a^⊤` with origin `o`.
pub fn affine_combination<F: Field>(o: &Flag<F>, a: &Flag<F>, y: &Flag<F>, x: &Flag<F>, z: &Flag<F>) -> Result<Flag<F>> {
    let cy = to_chart(y, o, a)?;
    let cx = to_chart(x, o, a)?;
    let cz = to_chart(z, o, a)?;
    from_chart(&ChartPoint { coord: cy.coord.sub(&cx.coord)?.add(&cz.coord)?, ..cy })
}

/// Whether coordinates at origin `o2` are those at `o1` translated by the
/// coordinate of `o2`, for the point `y`.
pub fn origin_translation_holds<F: Field>(a: &Flag<F>, o1: &Flag<F>, o2: &Flag<F>, y: &Flag<F>) -> Result<bool> {
    let at_o2 = to_chart(y, o2, a)?.coord;
    let shifted = to_chart(y, o1, a)?.coord.sub(&to_chart(o2, o1, a)?.coord)?;
    Ok(at_o2 == shifted)
}

/// Graph `{(u, Xu)}` of `X: K^p → K^q` as a point of `Gras_p(K^{p+q})`.
pub fn graph_plus<F: Field>(x: &Matrix<F>) -> Result<Flag<F>> {
    let p = x.cols();
    Flag::single(Subspace::image(&Matrix::identity(x.field(), p).vstack(x)?))
}

/// Graph `{(Yv, v)}` of `Y: K^q → K^p` as a point of `Gras_q(K^{p+q})`.
pub fn graph_minus<F: Field>(y: &Matrix<F>) -> Result<Flag<F>> {
    let q = y.cols();
    Flag::single(Subspace::image(&y.vstack(&Matrix::identity(y.field(), q))?))
}

/// Whether the midpoint of `Γ_X` and `Γ_{-X}` in the chart of `Γ_Y` is `Γ_{XYX}`.
/// Needs `1 - XY` and `1 + XY` invertible and `2` a unit.
pub fn midpoint_matches<F: Field>(x: &Matrix<F>, y: &Matrix<F>) -> Result<bool> {
    let half = x.field().inv_integer(2)?;
    let mid = pi_r(&graph_plus(x)?, &graph_minus(y)?, &graph_plus(&x.neg())?, &half)?;
    Ok(mid == graph_plus(&x.mul(y)?.mul(x)?)?)
}

/// Chart data for a fixed base `a` and reference origin `x0`: each point `y`
/// of the chart is represented by `u_y = transporter(a, x0, y)`, so that the
/// coordinate of `y` at origin `x` is `log(u_y u_x⁻¹)`.
#[derive(Clone, Debug)]
pub struct ChartFrame<F: Field> {
    a: Flag<F>,
    x0: Flag<F>,
    k: usize,
}

impl<F: Field> ChartFrame<F> {
    pub fn new(a: &Flag<F>, x0: &Flag<F>) -> Result<Self> {
        require_chart_field(a.field(), a.length())?;
        if !is_transversal(x0, a)? {
            return Err(GeomError::NotTransversal);
        }
        Ok(ChartFrame { a: a.clone(), x0: x0.clone(), k: a.length() })
    }

    pub fn base(&self) -> &Flag<F> {
        &self.a
    }

    /// Group element carrying the reference origin to `y`.
    pub fn element(&self, y: &Flag<F>) -> Result<Matrix<F>> {
        transporter(&self.a, &self.x0, y)
    }

    /// Coordinate of the point with element `uy` at the origin with element `ux`.
    pub fn coord(&self, uy: &Matrix<F>, ux_inv: &Matrix<F>) -> Result<Matrix<F>> {
        log_unipotent(&uy.mul(ux_inv)?, self.k)
    }

    /// The point with coordinate `c` at the origin whose element is `ux`.
    pub fn point(&self, c: &Matrix<F>, ux: &Matrix<F>) -> Result<Flag<F>> {
        self.x0.act(&exp_nilpotent(c, self.k)?.mul(ux)?)
    }
}
