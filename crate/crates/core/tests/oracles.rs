use std::collections::HashSet;

use pairgeom::charts::to_chart;
use pairgeom::exactla::{Field, Matrix, PrimeField, Rationals, Subspace};
use pairgeom::flags::{is_transversal, FlagType};
use pairgeom::intrinsic::{closure, is_intrinsic, FiniteGeometry, PointSet};
use pairgeom::lagrangian::{lagrangian_geometry, lagrangian_standard_members, BilinearForm};
use pairgeom::liealg::{grading_from_derivation, GradedGL, WeightBasis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn geometry(p: u32, dims: Vec<usize>) -> FiniteGeometry {
    FiniteGeometry::flags(&f(p), &FlagType::new(dims).unwrap(), 20_000).unwrap()
}

/// Every chart slice is a linear subspace at every one of its origins.
fn naive_intrinsic(g: &FiniteGeometry, set: &PointSet) -> bool {
    let field = g.field();
    let n = g.ambient();
    for a in g.copoints() {
        let slice: Vec<_> = (0..g.points().len())
            .filter(|&i| set.contains(i) && is_transversal(g.point(i), a).unwrap())
            .collect();
        for &x in &slice {
            let coords: Vec<Vec<u32>> = slice
                .iter()
                .map(|&y| to_chart(g.point(y), g.point(x), a).unwrap().coord.vectorize())
                .collect();
            let span = Subspace::span(field, n * n, &coords).unwrap();
            if (field.order() as u128).pow(span.dim() as u32) != coords.len() as u128 {
                return false;
            }
        }
    }
    true
}

fn subset(bits: u64, len: usize) -> PointSet {
    PointSet::new((0..len).filter(|i| bits >> i & 1 == 1))
}

fn random_subset(rng: &mut ChaCha8Rng, len: usize, size: usize) -> PointSet {
    PointSet::new((0..size).map(|_| rng.gen_range(0..len)))
}

#[test]
fn intrinsic_matches_naive_on_all_subsets_of_small_planes() {
    for (p, dims) in [(2, vec![1, 2]), (3, vec![1, 2]), (5, vec![1, 2]), (2, vec![1, 3])] {
        let g = geometry(p, dims);
        let len = g.points().len();
        assert!(len <= 12);
        for bits in 0..1u64 << len {
            let s = subset(bits, len);
            assert_eq!(is_intrinsic(&g, &s).unwrap(), naive_intrinsic(&g, &s), "{bits:b}");
        }
    }
}

#[test]
fn intrinsic_matches_naive_on_random_complete_flags_over_f3() {
    let g = geometry(3, vec![1, 2, 3]);
    let len = g.points().len();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let size = rng.gen_range(1..5);
        let s = random_subset(&mut rng, len, size);
        assert_eq!(is_intrinsic(&g, &s).unwrap(), naive_intrinsic(&g, &s));
        let c = closure(&g, &s).unwrap();
        assert!(s.is_subset(&c));
        assert!(naive_intrinsic(&g, &c));
    }
}

#[test]
fn closure_is_least_intrinsic_superset() {
    let g = geometry(2, vec![1, 3]);
    let len = g.points().len();
    let intrinsic: Vec<PointSet> =
        (0..1u64 << len).map(|b| subset(b, len)).filter(|s| naive_intrinsic(&g, s)).collect();
    for bits in 0..1u64 << len {
        let s = subset(bits, len);
        let least = intrinsic
            .iter()
            .filter(|t| s.is_subset(t))
            .min_by_key(|t| t.len())
            .unwrap();
        for t in intrinsic.iter().filter(|t| s.is_subset(t)) {
            assert!(least.is_subset(t));
        }
        assert_eq!(closure(&g, &s).unwrap(), *least);
    }
}

#[test]
fn lagrangian_standard_slices_by_enumeration() {
    let field = f(3);
    let form = BilinearForm::symplectic(&field, 2);
    let g = lagrangian_geometry(&form, &FlagType::grassmannian(2, 4).unwrap(), 20_000).unwrap();
    assert_eq!(g.points().len(), 40);
    let mut seen = HashSet::new();
    for x in g.points() {
        for e1 in [x.step(1)] {
            for v in e1.basis_vectors() {
                let line = Subspace::span(&field, 4, &[v]).unwrap();
                if !seen.insert(line.clone()) {
                    continue;
                }
                let members = lagrangian_standard_members(&g, &form, &line).unwrap();
                let brute: Vec<usize> = (0..g.points().len())
                    .filter(|&i| {
                        let s = g.point(i).step(1);
                        line.is_subspace_of(&s) && s.is_subspace_of(&form.perp(&line).unwrap())
                    })
                    .collect();
                assert_eq!(members, PointSet::new(brute));
                assert_eq!(members.len(), 4);
                assert!(is_intrinsic(&g, &members).unwrap());
                assert!(naive_intrinsic(&g, &members));
            }
        }
    }
    assert!(!seen.is_empty());
}

fn weights_agree<F: Field>(field: &F, s: Matrix<F>, labels: Vec<Vec<i64>>, coeffs: &[i64], bound: u64) {
    let gl = GradedGL::new(field, 2, 2).unwrap();
    let wb = WeightBasis { s, labels };
    let d = wb.element(coeffs).unwrap();
    let by_ad = grading_from_derivation(&gl, &d, bound).unwrap();
    assert_eq!(by_ad, wb.grading(&gl, coeffs).unwrap());
    assert!(by_ad.is_graded_by(&gl, &d).unwrap());
}

#[test]
fn derivation_grading_matches_weights_over_f7() {
    let field = f(7);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 20 {
        let data: Vec<u32> = (0..16).map(|_| rng.gen_range(0..7)).collect();
        let s = Matrix::from_vec(&field, 4, 4, data).unwrap();
        if !s.is_invertible() {
            continue;
        }
        let labels: Vec<Vec<i64>> = (0..4).map(|_| vec![rng.gen_range(0..2), rng.gen_range(0..2)]).collect();
        weights_agree(&field, s, labels, &[1, 1], 2);
        done += 1;
    }
}

#[test]
fn derivation_grading_matches_weights_over_rationals() {
    let q = Rationals;
    let s = Matrix::from_i64(&q, &[vec![1, 2, 0, 1], vec![0, 1, 3, 0], vec![1, 0, 1, 0], vec![2, 0, 0, 1]]).unwrap();
    let labels = vec![vec![1, 0], vec![0, 1], vec![0, 0], vec![1, 1]];
    weights_agree(&q, s.clone(), labels.clone(), &[1, 1], 2);
    weights_agree(&q, s, labels, &[1, -1], 2);
}
