use pairgeom::flags::*;
use pairgeom::error::GeomError;
use pairgeom::exactla::{PrimeField, Subspace};

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

#[test]
fn flag_counts() {
    let f2 = f(2);
    assert_eq!(enumerate_flags(&f2, &FlagType::new(vec![1, 2]).unwrap(), 100).unwrap().len(), 3);
    assert_eq!(enumerate_flags(&f2, &FlagType::new(vec![1, 2, 3]).unwrap(), 100).unwrap().len(), 21);
    assert_eq!(enumerate_flags(&f2, &FlagType::new(vec![1, 3]).unwrap(), 100).unwrap().len(), 7);
    assert_eq!(FlagType::new(vec![1, 2, 3]).unwrap().count(2), 21);
}

#[test]
fn cotype_is_complementary() {
    let t = FlagType::new(vec![1, 3, 4]).unwrap();
    assert_eq!(t.cotype().dims(), &[1, 3, 4]);
    let t = FlagType::new(vec![1, 2, 5]).unwrap();
    assert_eq!(t.cotype().dims(), &[3, 4, 5]);
    assert_eq!(t.cotype().cotype(), t);
}

#[test]
fn standard_pair_grading() {
    let f3 = f(3);
    let e = Flag::new(&f3, 3, vec![Subspace::coordinate(&f3, 3, &[0]), Subspace::coordinate(&f3, 3, &[0, 1])])
        .unwrap();
    let fl = Flag::new(&f3, 3, vec![Subspace::coordinate(&f3, 3, &[2]), Subspace::coordinate(&f3, 3, &[1, 2])])
        .unwrap();
    let g = grading_from_pair(&e, &fl).unwrap();
    for (j, part) in g.parts().iter().enumerate() {
        assert_eq!(*part, Subspace::coordinate(&f3, 3, &[j]));
    }
    assert_eq!(flags_from_grading(&g).unwrap(), (e, fl));
}

#[test]
fn non_transversal_is_rejected() {
    let f3 = f(3);
    let e = Flag::single(Subspace::coordinate(&f3, 2, &[0])).unwrap();
    assert!(!is_transversal(&e, &e).unwrap());
    assert_eq!(grading_from_pair(&e, &e), Err(GeomError::NotTransversal));
}

#[test]
fn trivial_flags() {
    let f5 = f(5);
    let g = Grading::new(&f5, 2, vec![Subspace::full(&f5, 2)]).unwrap();
    let (e, fl) = flags_from_grading(&g).unwrap();
    assert_eq!(e, Flag::trivial(&f5, 2));
    assert_eq!(fl, Flag::trivial(&f5, 2));
}

#[test]
fn gradings_count() {
    // ordered pairs of complementary lines in F_2^2
    assert_eq!(enumerate_gradings(&f(2), &[1, 1], 100).unwrap().len(), 6);
}

#[test]
fn strictness_enforced() {
    let f3 = f(3);
    let a = Subspace::coordinate(&f3, 3, &[0]);
    assert!(Flag::new(&f3, 3, vec![a.clone(), a]).is_err());
    assert!(Flag::new(&f3, 3, vec![Subspace::full(&f3, 3)]).is_err());
}
