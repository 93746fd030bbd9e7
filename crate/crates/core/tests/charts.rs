use pairgeom::charts::*;
use pairgeom::exactla::{Field, Matrix, PrimeField, Subspace};
use pairgeom::flags::{is_transversal, Flag, FlagType};
use pairgeom::exactla::Rationals;
use pairgeom::flags::enumerate_flags;

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

#[test]
fn exp_log_inverse_on_complete_flag() {
    let field = f(5);
    let a = Flag::new(&field, 3, vec![Subspace::coordinate(&field, 3, &[0]), Subspace::coordinate(&field, 3, &[
        0, 1,
    ])])
    .unwrap();
    let x = Matrix::from_i64(&field, &[vec![0, 2, 3], vec![0, 0, 4], vec![0, 0, 0]]).unwrap();
    assert!(is_adapted(&x, &a).unwrap());
    let u = exp_nilpotent(&x, 3).unwrap();
    assert_eq!(log_unipotent(&u, 3).unwrap(), x);
}

#[test]
fn char_two_rejects_length_three() {
    assert!(FlagGeometry::new(&f(2), FlagType::new(vec![1, 2, 3]).unwrap()).is_err());
    assert!(FlagGeometry::new(&f(2), FlagType::new(vec![1, 3]).unwrap()).is_ok());
}

#[test]
fn transporter_moves_and_is_unipotent() {
    let field = f(3);
    let t = FlagType::new(vec![1, 2, 3]).unwrap();
    let flags = enumerate_flags(&field, &t, 1000).unwrap();
    let a = &flags[0];
    let trans: Vec<_> = flags.iter().filter(|x| is_transversal(x, a).unwrap()).collect();
    for e in &trans {
        for e2 in &trans {
            let u = transporter(a, e, e2).unwrap();
            assert_eq!(e.act(&u).unwrap(), **e2);
            let y = u.sub(&Matrix::identity(&field, 3)).unwrap();
            assert!(is_adapted(&y, a).unwrap());
        }
    }
}

#[test]
fn grassmann_chart_is_graph_map() {
    // o = span(e1), o' = span(e2); the graph of f: o -> o' has coordinate [[0,0],[f,0]].
    let q = Rationals;
    let o = Flag::single(Subspace::coordinate(&q, 2, &[0])).unwrap();
    let op = Flag::single(Subspace::coordinate(&q, 2, &[1])).unwrap();
    let fval = q.from_i64(7);
    let graph = Flag::single(Subspace::span(&q, 2, &[vec![q.one(), fval.clone()]]).unwrap()).unwrap();
    let p = to_chart(&graph, &o, &op).unwrap();
    let expected = Matrix::from_rows(&q, vec![vec![q.zero(), q.zero()], vec![fval, q.zero()]]).unwrap();
    assert_eq!(p.coord, expected);
    assert_eq!(from_chart(&p).unwrap(), graph);
}

#[test]
fn midpoint_is_quadratic_map() {
    let q = Rationals;
    let x = Matrix::from_i64(&q, &[vec![1, 2], vec![0, 1], vec![3, -1]]).unwrap();
    let y = Matrix::from_i64(&q, &[vec![1, 0, 2], vec![1, 1, 0]]).unwrap();
    assert!(midpoint_matches(&x, &y).unwrap());
}
