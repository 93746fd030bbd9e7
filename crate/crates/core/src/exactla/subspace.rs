//! Subspaces of `F^n` in canonical reduced-row-echelon form.

use std::cmp::Ordering;

use serde_json::{json, Value};

use super::field::Field;
use super::matrix::Matrix;
use crate::error::{GeomError, Result};

/// A subspace of `F^n`, stored as the nonzero rows of its RREF basis.
/// Two subspaces are equal iff their canonical bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, n: usize) -> Self {
        Subspace { ambient: n, basis: Matrix::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: &F, n: usize) -> Self {
        Subspace { ambient: n, basis: Matrix::identity(field, n), pivots: (0..n).collect() }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix<F>) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.submatrix(0, pivots.len(), 0, m.cols());
        Subspace { ambient: m.cols(), basis, pivots }
    }

    /// Span of the given vectors in `F^n`.
    pub fn span(field: &F, n: usize, vectors: &[Vec<F::Elem>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != n) {
            return Err(GeomError::Shape(format!("vector length differs from ambient {n}")));
        }
        let m = Matrix::from_vec(field, vectors.len(), n, vectors.iter().flatten().cloned().collect())?;
        Ok(Self::row_space(&m))
    }

    /// Column space of `m`.
    pub fn image(m: &Matrix<F>) -> Self {
        Self::row_space(&m.transpose())
    }

    /// `{v : m v = 0}`.
    pub fn kernel(m: &Matrix<F>) -> Self {
        let vs = m.kernel_vectors();
        Self::span(m.field(), m.cols(), &vs).expect("kernel vectors have ambient length")
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(field: &F, n: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vec<F::Elem>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![field.zero(); n];
                v[i] = field.one();
                v
            })
            .collect();
        Self::span(field, n, &vs).expect("coordinate vectors")
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }
    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
    pub fn basis_vectors(&self) -> Vec<Vec<F::Elem>> {
        self.basis.row_vectors()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    /// Basis vectors as the columns of an `n x dim` matrix.
    pub fn basis_columns(&self) -> Matrix<F> {
        self.basis.transpose()
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(GeomError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Reduces `v` against the canonical basis; the remainder is zero iff
    /// `v` lies in the subspace.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut w = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate().skip(pc) {
                if !f.is_zero(b) {
                    w[j] = f.sub(&w[j], &f.mul(&c, b));
                }
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[F::Elem]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(|x| self.field().is_zero(x))
    }

    /// Coordinates of `v` with respect to the canonical basis, if contained.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Vector with the given coordinates in the canonical basis.
    pub fn combine(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut v = vec![f.zero(); self.ambient];
        for (i, c) in coords.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                v[j] = f.add(&v[j], &f.mul(c, b));
            }
        }
        v
    }

    /// `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.dim() <= other.dim()
            && (0..self.dim()).all(|i| other.contains_vector(self.basis.row(i)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)?))
    }

    /// Sum of several subspaces of `F^n`.
    pub fn sum_all(field: &F, n: usize, parts: &[Self]) -> Result<Self> {
        let mut acc = Self::zero(field, n);
        for p in parts {
            acc = acc.sum(p)?;
        }
        Ok(acc)
    }

    /// Annihilator under the standard dot product.
    pub fn annihilator(&self) -> Self {
        Self::kernel(&self.basis)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if self.is_subspace_of(other) {
            return Ok(self.clone());
        }
        if other.is_subspace_of(self) {
            return Ok(other.clone());
        }
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// Whether `self ⊕ other = F^n`.
    pub fn is_complement(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.dim() + other.dim() == self.ambient && self.sum(other)?.is_full())
    }

    /// Whether the sum of `parts` is direct.
    pub fn is_direct(field: &F, n: usize, parts: &[Self]) -> Result<bool> {
        let total: usize = parts.iter().map(Subspace::dim).sum();
        Ok(Self::sum_all(field, n, parts)?.dim() == total)
    }

    /// Complement spanned by the standard basis vectors at non-pivot columns.
    pub fn standard_complement(&self) -> Self {
        let free: Vec<usize> = (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect();
        Self::coordinate(self.field(), self.ambient, &free)
    }

    /// Image under the linear map `m` (acting on column vectors).
    pub fn image_under(&self, m: &Matrix<F>) -> Result<Self> {
        if m.cols() != self.ambient {
            return Err(GeomError::Shape("map domain differs from ambient".into()));
        }
        let vs: Vec<Vec<F::Elem>> = (0..self.dim()).map(|i| m.mul_vec(self.basis.row(i))).collect();
        Self::span(self.field(), m.rows(), &vs)
    }

    /// Preimage under the linear map `m` (from `F^{m.cols}` into this ambient).
    pub fn preimage_under(&self, m: &Matrix<F>) -> Result<Self> {
        if m.rows() != self.ambient {
            return Err(GeomError::Shape("map codomain differs from ambient".into()));
        }
        let ann = self.annihilator();
        Ok(Self::kernel(&ann.basis.mul(m)?))
    }

    pub fn to_json(&self) -> Value {
        json!({"ambient": self.ambient, "basis": self.basis.to_json()})
    }

    pub fn from_json(field: &F, v: &Value) -> Result<Self> {
        let n = v
            .get("ambient")
            .and_then(Value::as_u64)
            .ok_or_else(|| GeomError::Json("subspace: ambient".into()))? as usize;
        let b = Matrix::from_json(field, v.get("basis").ok_or_else(|| GeomError::Json("subspace: basis".into()))?)?;
        if b.cols() != n && b.rows() > 0 {
            return Err(GeomError::Json("subspace: basis width".into()));
        }
        if b.rows() == 0 {
            return Ok(Self::zero(field, n));
        }
        Ok(Self::row_space(&b))
    }
}

impl<F: Field> PartialOrd for Subspace<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Order by ambient, then dimension, then lexicographically on the canonical basis.
impl<F: Field> Ord for Subspace<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.basis.data().cmp(other.basis.data()))
    }
}
