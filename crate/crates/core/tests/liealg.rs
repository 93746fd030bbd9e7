use pairgeom::liealg::*;
use pairgeom::exactla::{Matrix, PrimeField};
use pairgeom::jordan::Idempotent;
use pairgeom::exactla::Rationals;

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

#[test]
fn euler_grading_blocks() {
    let gl = GradedGL::new(&Rationals, 2, 1).unwrap();
    let g = gl.three_grading();
    assert_eq!((g.part(1).dim(), g.part(0).dim(), g.part(-1).dim()), (2, 5, 2));
    assert!(g.is_compatible(&gl).unwrap());
    assert!(g.is_graded_by(&gl, &gl.euler()).unwrap());
    let via_ad = grading_from_derivation(&gl, &gl.euler(), 1).unwrap();
    assert_eq!(via_ad, g);
    assert_eq!(derivation_from_grading(&gl, &g).unwrap(), gl.euler());
}

#[test]
fn rank_one_in_gl2() {
    let q = Rationals;
    let gl = GradedGL::new(&q, 1, 1).unwrap();
    let one = Matrix::identity(&q, 1);
    let e = Idempotent::new(&gl.pair(), one.clone(), one).unwrap();
    let pg = PeirceGrading::new(&gl, &e).unwrap();
    assert!(pg.sl2_triple_holds().unwrap());
    let dims: Vec<usize> = (-2..=2).map(|i| pg.h(i).dim()).collect();
    assert_eq!(dims, vec![1, 0, 2, 0, 1]);
    assert_eq!(pg.conjugate.h, Matrix::identity(&q, 2));
    assert_eq!(pg.e(0).dim(), 4);
}

#[test]
fn peirce_grading_over_f3() {
    let f3 = f(3);
    let gl = GradedGL::new(&f3, 2, 2).unwrap();
    let ep = Matrix::from_i64(&f3, &[vec![1, 0], vec![0, 0]]).unwrap();
    let e = Idempotent::new(&gl.pair(), ep.clone(), ep).unwrap();
    let pg = PeirceGrading::new(&gl, &e).unwrap();
    assert!(pg.joint_spectrum_allowed().unwrap());
    assert!(pg.part_identities().unwrap().iter().all(|(_, ok)| *ok));
    assert!(pg.filtration_relations_hold());
    assert!(pg.h_grading.grading.is_graded_by(&gl, &pg.h_grading.h).unwrap());
    assert!(pg.conjugate.grading.is_compatible(&gl).unwrap());
    assert!(check_stabilizers(&pg).unwrap().passed());
}

#[test]
fn derivation_field_condition() {
    let gl = GradedGL::new(&f(5), 1, 1).unwrap();
    assert!(grading_from_derivation(&gl, &gl.euler(), 2).is_err());
    assert!(grading_from_derivation(&gl, &gl.euler(), 1).is_ok());
}

#[test]
fn projective_line_orbit() {
    let f3 = f(3);
    let gl = GradedGL::new(&f3, 1, 1).unwrap();
    let one = Matrix::identity(&f3, 1);
    let e = Idempotent::new(&gl.pair(), one.clone(), one).unwrap();
    let pg = PeirceGrading::new(&gl, &e).unwrap();
    let rep = squeeze_experiment(&pg, 10_000).unwrap();
    assert_eq!(rep.grassmannian, 4);
    assert_eq!(rep.orbit, 4);
    assert!(rep.subset_holds);
}
