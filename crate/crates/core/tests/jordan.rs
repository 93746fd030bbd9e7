use pairgeom::jordan::*;
use pairgeom::exactla::{Matrix, PrimeField, Subspace};
use pairgeom::exactla::Rationals;

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

#[test]
fn principal_ideal_of_unit_matrix() {
    let f3 = f(3);
    let pair = JordanPair::rect(&f3, 2, 2);
    let x = Matrix::from_i64(&f3, &[vec![1, 0], vec![0, 0]]).unwrap();
    let i = principal_ideal(&pair, &x).unwrap();
    assert_eq!(i.dim(), 1);
    assert!(i.contains(&x));
    let ief = ief_ideal(&pair, &Subspace::coordinate(&f3, 2, &[1]), &Subspace::coordinate(&f3, 2, &[0])).unwrap();
    assert_eq!(i, ief);
}

#[test]
fn ief_dimension() {
    let q = Rationals;
    let pair = JordanPair::rect(&q, 3, 4);
    let e = Subspace::coordinate(&q, 4, &[0]);
    let fsp = Subspace::coordinate(&q, 3, &[0, 1]);
    let i = ief_ideal(&pair, &e, &fsp).unwrap();
    assert_eq!(i.dim(), 3 * 2);
    assert!(is_inner_ideal(&i).unwrap());
    assert_eq!(classify(&i).unwrap(), Classification::Standard { e, f: fsp });
}

#[test]
fn idempotent_completion() {
    let q = Rationals;
    let x = Matrix::from_i64(&q, &[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
    let (xp, y) = complete_idempotent(&x).unwrap();
    assert!(is_idempotent(&xp, &y).unwrap());
}

#[test]
fn peirce_of_rank_one_in_2x2() {
    let f3 = f(3);
    let pair = JordanPair::rect(&f3, 2, 2);
    let e = Matrix::from_i64(&f3, &[vec![1, 0], vec![0, 0]]).unwrap();
    let pc = peirce(&pair, &e, &e).unwrap();
    assert_eq!([pc.plus[0].dim(), pc.plus[1].dim(), pc.plus[2].dim()], [1, 2, 1]);
    assert!(peirce(&JordanPair::rect(&f(2), 2, 2), &e, &e).is_err());
}

#[test]
fn bergmann_factorizes() {
    let q = Rationals;
    let x = Matrix::from_i64(&q, &[vec![1, 2], vec![0, 1]]).unwrap();
    let y = Matrix::from_i64(&q, &[vec![3, 0], vec![1, 1]]).unwrap();
    let z = Matrix::from_i64(&q, &[vec![1, -1], vec![2, 5]]).unwrap();
    let id = Matrix::identity(&q, 2);
    let direct = id.sub(&x.mul(&y).unwrap()).unwrap().mul(&z).unwrap().mul(&id.sub(&y.mul(&x).unwrap()).unwrap()).unwrap();
    let via_op = bergmann(&x, &y).unwrap().mul_vec(z.data());
    assert_eq!(direct.into_data(), via_op);
}

#[test]
fn annihilator_of_idempotent_is_zero_space() {
    let f5 = f(5);
    let pair = JordanPair::rect(&f5, 2, 3);
    let ep = Matrix::from_i64(&f5, &[vec![1, 0, 0], vec![0, 0, 0]]).unwrap();
    let em = ep.transpose();
    let ann = annihilator(&pair, &[em.clone()]).unwrap();
    let pc = peirce(&pair, &ep, &em).unwrap();
    assert_eq!(ann, *pc.part(Side::Plus, 0));
}
