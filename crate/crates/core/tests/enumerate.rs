use pairgeom::exactla::enumerate::*;
use pairgeom::exactla::field::PrimeField;
use pairgeom::error::GeomError;

#[test]
fn gaussian_binomials() {
    assert_eq!(gaussian_binomial(2, 2, 1), 3);
    assert_eq!(gaussian_binomial(3, 4, 2), 130);
    assert_eq!(gaussian_binomial(2, 4, 2), 35);
    assert_eq!(gaussian_binomial(5, 3, 0), 1);
}

#[test]
fn enumeration_counts_match_binomials() {
    let f2 = PrimeField::new(2).unwrap();
    assert_eq!(enumerate_subspaces(&f2, 2, 1, 100).unwrap().len(), 3);
    let f3 = PrimeField::new(3).unwrap();
    let subs = enumerate_subspaces(&f3, 4, 2, 1000).unwrap();
    assert_eq!(subs.len(), 130);
    let mut dedup = subs.clone();
    dedup.dedup();
    assert_eq!(dedup.len(), 130);
    assert!(subs.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn budget_is_enforced() {
    let f3 = PrimeField::new(3).unwrap();
    assert!(matches!(
        enumerate_subspaces(&f3, 4, 2, 100),
        Err(GeomError::BudgetExceeded { needed: 130, budget: 100 })
    ));
}
