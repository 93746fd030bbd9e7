use pairgeom::exactla::matrix::*;
use pairgeom::exactla::field::Field;
use pairgeom::error::GeomError;
use pairgeom::exactla::field::{PrimeField, Rationals};

#[test]
fn rref_over_f5() {
    let f = PrimeField::new(5).unwrap();
    let m = Matrix::from_i64(&f, &[vec![2, 4], vec![1, 2]]).unwrap();
    let (r, piv) = m.rref();
    assert_eq!(r, Matrix::from_i64(&f, &[vec![1, 2], vec![0, 0]]).unwrap());
    assert_eq!(piv, vec![0]);
}

#[test]
fn inverse_over_rationals() {
    let q = Rationals;
    let m = Matrix::from_i64(&q, &[vec![2, 1], vec![7, 4]]).unwrap();
    let inv = m.inverse().unwrap();
    assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&q, 2));
    let s = Matrix::from_i64(&q, &[vec![1, 2], vec![2, 4]]).unwrap();
    assert_eq!(s.inverse(), Err(GeomError::Singular));
}

#[test]
fn kernel_vectors_are_killed() {
    let f = PrimeField::new(3).unwrap();
    let m = Matrix::from_i64(&f, &[vec![1, 1, 0, 2], vec![0, 1, 1, 1]]).unwrap();
    let ker = m.kernel_vectors();
    assert_eq!(ker.len(), 2);
    for v in ker {
        assert!(m.mul_vec(&v).iter().all(|x| *x == 0));
    }
}

#[test]
fn solve_consistent_system() {
    let q = Rationals;
    let a = Matrix::from_i64(&q, &[vec![1, 2], vec![3, 4]]).unwrap();
    let b = Matrix::from_i64(&q, &[vec![5], vec![6]]).unwrap();
    let x = a.solve(&b).unwrap();
    assert_eq!(a.mul(&x).unwrap(), b);
}

#[test]
fn json_roundtrip() {
    let q = Rationals;
    let m = Matrix::from_i64(&q, &[vec![1, -2], vec![0, 3]]).unwrap().scale(&q.inv_integer(4).unwrap());
    let v = m.to_json();
    assert_eq!(v["entries"][0][1], "-1/2");
    assert_eq!(Matrix::from_json(&q, &v).unwrap(), m);
}
