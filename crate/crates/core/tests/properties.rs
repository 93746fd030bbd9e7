use pairgeom::charts::{exp_nilpotent, log_unipotent};
use pairgeom::exactla::{Field, Matrix, PrimeField, Rationals, Subspace};
use pairgeom::jordan::{fundamental_formula, identity_derivation, identity_outer_symmetry};
use proptest::prelude::*;

const N: usize = 4;

fn f5() -> PrimeField {
    PrimeField::new(5).unwrap()
}

fn vectors(max: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..5, N), 0..=max)
}

fn span(vs: &[Vec<u32>]) -> Subspace<PrimeField> {
    Subspace::span(&f5(), N, vs).unwrap()
}

fn matrix(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = Matrix<PrimeField>> {
    prop::collection::vec(0..p, rows * cols)
        .prop_map(move |d| Matrix::from_vec(&PrimeField::new(p).unwrap(), rows, cols, d).unwrap())
}

fn rational_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Rationals>> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |d| {
        let q = Rationals;
        Matrix::from_vec(&q, rows, cols, d.into_iter().map(|x| q.from_i64(x)).collect()).unwrap()
    })
}

proptest! {
    #[test]
    fn reduced_basis_is_canonical(vs in vectors(4), c in prop::collection::vec(0u32..5, 4)) {
        let s = span(&vs);
        let field = f5();
        let mut extra = vs.clone();
        extra.reverse();
        let combo = vs.iter().zip(&c).fold(vec![0; N], |acc, (v, r)| {
            acc.iter().zip(v).map(|(a, b)| field.add(a, &field.mul(b, r))).collect()
        });
        extra.push(combo);
        let t = span(&extra);
        prop_assert_eq!(s.basis(), t.basis());
        prop_assert_eq!(&s, &t);
        let (r, _) = s.basis().rref();
        prop_assert_eq!(&r, s.basis());
    }

    #[test]
    fn dimension_formula(a in vectors(3), b in vectors(3)) {
        let (a, b) = (span(&a), span(&b));
        let sum = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
        prop_assert!(a.is_subspace_of(&sum) && meet.is_subspace_of(&a) && meet.is_subspace_of(&b));
    }

    #[test]
    fn modular_law(a in vectors(3), b in vectors(3), c in vectors(3)) {
        let c = span(&c);
        let a = span(&a).intersect(&c).unwrap();
        let b = span(&b);
        let lhs = a.sum(&b.intersect(&c).unwrap()).unwrap();
        let rhs = a.sum(&b).unwrap().intersect(&c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn annihilator_is_an_involution(a in vectors(4), b in vectors(4)) {
        let (a, b) = (span(&a), span(&b));
        prop_assert_eq!(a.annihilator().dim() + a.dim(), N);
        prop_assert_eq!(a.annihilator().annihilator(), a.clone());
        let sum = a.sum(&b).unwrap();
        prop_assert_eq!(sum.annihilator(), a.annihilator().intersect(&b.annihilator()).unwrap());
    }

    #[test]
    fn exp_log_inverse_on_nilpotents(d in prop::collection::vec(0u32..7, N * N)) {
        let field = PrimeField::new(7).unwrap();
        let mut x = Matrix::zeros(&field, N, N);
        for i in 0..N {
            for j in i + 1..N {
                x.set(i, j, d[i * N + j]);
            }
        }
        let u = exp_nilpotent(&x, N).unwrap();
        prop_assert_eq!(log_unipotent(&u, N).unwrap(), x.clone());
        let neg = exp_nilpotent(&x.neg(), N).unwrap();
        prop_assert_eq!(u.mul(&neg).unwrap(), Matrix::identity(&field, N));
    }

    #[test]
    fn jordan_identities_over_f5(
        x in matrix(5, 2, 3), y in matrix(5, 3, 2), u in matrix(5, 2, 3),
        v in matrix(5, 3, 2), w in matrix(5, 2, 3),
    ) {
        prop_assert!(identity_outer_symmetry(&x, &y, &u).unwrap());
        prop_assert!(identity_derivation(&x, &y, &u, &v, &w).unwrap());
        prop_assert!(fundamental_formula(&x, &y).unwrap());
        prop_assert!(fundamental_formula(&y, &x).unwrap());
    }

    #[test]
    fn jordan_identities_over_rationals(
        x in rational_matrix(2, 2), y in rational_matrix(2, 2), u in rational_matrix(2, 2),
        v in rational_matrix(2, 2), w in rational_matrix(2, 2),
    ) {
        prop_assert!(identity_derivation(&x, &y, &u, &v, &w).unwrap());
        prop_assert!(fundamental_formula(&x, &y).unwrap());
    }
}
