use pairgeom::lagrangian::*;
use pairgeom::exactla::{Field, Matrix, PrimeField, Subspace};
use pairgeom::flags::{Flag, FlagType};
use pairgeom::charts::to_chart;
use pairgeom::exactla::Rationals;

#[test]
fn double_perp_is_identity() {
    let q = Rationals;
    let form = BilinearForm::symplectic(&q, 2);
    let s = Subspace::span(&q, 4, &[vec![q.one(), q.from_i64(2), q.zero(), q.from_i64(-1)]]).unwrap();
    assert_eq!(form.perp(&form.perp(&s).unwrap()).unwrap(), s);
    assert_eq!(form.perp(&s).unwrap().dim(), 3);
}

#[test]
fn lagrangian_grassmannian_sizes() {
    let f3 = PrimeField::new(3).unwrap();
    let t = FlagType::new(vec![2, 4]).unwrap();
    assert_eq!(enumerate_lagrangian(&BilinearForm::symplectic(&f3, 2), &t, 10_000).unwrap().len(), 40);
    let t1 = FlagType::new(vec![1, 2]).unwrap();
    assert_eq!(enumerate_lagrangian(&BilinearForm::symplectic(&f3, 1), &t1, 10_000).unwrap().len(), 4);
}

#[test]
fn model_roundtrip_symplectic() {
    let q = Rationals;
    let form = BilinearForm::symplectic(&q, 2);
    let o = Subspace::coordinate(&q, 4, &[0, 1]);
    let op = Subspace::coordinate(&q, 4, &[2, 3]);
    let model = LagrangianChartModel::new(&form, &o, &op).unwrap();
    assert_eq!(model.dim(), 3);
    let b = Matrix::from_i64(&q, &[vec![1, 2], vec![2, -5]]).unwrap();
    let x = model.from_model(&b).unwrap();
    assert!(model.is_lagrangian_coord(&x).unwrap());
    assert_eq!(model.to_model(&x).unwrap(), b);
    let y = Flag::single(o.clone()).unwrap().act(&Matrix::identity(&q, 4).add(&x).unwrap()).unwrap();
    assert!(form.is_lagrangian_flag(&y).unwrap());
    let back = to_chart(&y, &Flag::single(o).unwrap(), &Flag::single(op).unwrap()).unwrap();
    assert_eq!(back.coord, x);
}

#[test]
fn rejects_bad_forms() {
    let q = Rationals;
    let g = Matrix::from_i64(&q, &[vec![1, 1], vec![0, 1]]).unwrap();
    assert!(BilinearForm::new(g, Symmetry::Symmetric).is_err());
    let d = Matrix::from_i64(&q, &[vec![1, 0], vec![0, 0]]).unwrap();
    assert!(BilinearForm::new(d, Symmetry::Symmetric).is_err());
}
