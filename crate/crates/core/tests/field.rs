use pairgeom::exactla::field::*;

#[test]
fn prime_inverse() {
    let f = PrimeField::new(7).unwrap();
    for a in 1..7 {
        let i = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &i), 1);
    }
    assert_eq!(f.inv(&0), None);
}

#[test]
fn rejects_composites() {
    assert!(PrimeField::new(9).is_err());
    assert!(PrimeField::new(1).is_err());
    assert!(PrimeField::new(2).is_ok());
}

#[test]
fn rational_text_roundtrip() {
    let q = Rationals;
    let a = parse_rational("-6/4").unwrap();
    assert_eq!(format_rational(&a), "-3/2");
    assert_eq!(q.elem_from_json(&q.elem_to_json(&a)).unwrap(), a);
    assert_eq!(format_rational(&q.from_i64(5)), "5/1");
}

#[test]
fn unit_integers() {
    let f = PrimeField::new(3).unwrap();
    assert!(f.require_units_up_to(2).is_ok());
    assert!(f.require_units_up_to(3).is_err());
    assert!(Rationals.require_units_up_to(100).is_ok());
}
