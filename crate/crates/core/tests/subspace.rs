use pairgeom::exactla::subspace::*;
use pairgeom::exactla::field::Field;
use pairgeom::exactla::matrix::Matrix;
use pairgeom::exactla::field::{PrimeField, Rationals};

#[test]
fn canonical_equality() {
    let f = PrimeField::new(5).unwrap();
    let a = Subspace::span(&f, 3, &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
    let b = Subspace::span(&f, 3, &[vec![1, 3, 1], vec![2, 4, 0]]).unwrap();
    assert_eq!(a, b);
}

#[test]
fn intersection_and_sum_dims() {
    let q = Rationals;
    let a = Subspace::coordinate(&q, 4, &[0, 1]);
    let b = Subspace::span(&q, 4, &[vec![q.one(), q.zero(), q.one(), q.zero()], vec![
        q.zero(),
        q.one(),
        q.zero(),
        q.zero(),
    ]])
    .unwrap();
    let i = a.intersect(&b).unwrap();
    let s = a.sum(&b).unwrap();
    assert_eq!(i.dim(), 1);
    assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
    assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
}

#[test]
fn standard_complement_complements() {
    let f = PrimeField::new(3).unwrap();
    let a = Subspace::span(&f, 4, &[vec![1, 2, 0, 1], vec![0, 0, 1, 1]]).unwrap();
    assert!(a.is_complement(&a.standard_complement()).unwrap());
}

#[test]
fn preimage_of_image() {
    let f = PrimeField::new(3).unwrap();
    let m = Matrix::from_i64(&f, &[vec![1, 1, 0], vec![0, 0, 0], vec![0, 0, 1]]).unwrap();
    let s = Subspace::coordinate(&f, 3, &[0]);
    let pre = s.preimage_under(&m).unwrap();
    assert_eq!(pre, Subspace::span(&f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap());
}

#[test]
fn json_roundtrip() {
    let f = PrimeField::new(7).unwrap();
    let a = Subspace::span(&f, 3, &[vec![3, 1, 4]]).unwrap();
    assert_eq!(Subspace::from_json(&f, &a.to_json()).unwrap(), a);
    let z = Subspace::zero(&f, 3);
    assert_eq!(Subspace::from_json(&f, &z.to_json()).unwrap(), z);
}
