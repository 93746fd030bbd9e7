use pairgeom::intrinsic::*;
use pairgeom::exactla::PrimeField;
use pairgeom::flags::FlagType;

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn grass(p: u32, d: usize, n: usize) -> FiniteGeometry {
    FiniteGeometry::flags(&f(p), &FlagType::grassmannian(d, n).unwrap(), 20_000).unwrap()
}

#[test]
fn two_points_of_projective_line_over_f3_are_not_intrinsic() {
    let g = grass(3, 1, 2);
    assert_eq!(g.points().len(), 4);
    let w = check_intrinsic(&g, &PointSet::new([0, 1])).unwrap();
    assert!(w.is_some());
    assert_eq!(closure(&g, &PointSet::new([0, 1])).unwrap(), g.all());
}

#[test]
fn two_points_over_f2_are_intrinsic() {
    let g = grass(2, 2, 4);
    for y in 1..g.points().len() {
        assert!(is_intrinsic(&g, &PointSet::new([0, y])).unwrap());
    }
}

#[test]
fn singletons_and_whole_space_are_intrinsic() {
    let g = grass(3, 1, 3);
    assert!(is_intrinsic(&g, &PointSet::new([5])).unwrap());
    assert!(is_intrinsic(&g, &g.all()).unwrap());
    assert!(is_intrinsic(&g, &PointSet::new([])).unwrap());
}

#[test]
fn rank_one_join_is_projective_line() {
    let g = grass(3, 2, 4);
    let x = 0;
    let xf = g.point(x).clone();
    let mut seen = false;
    for y in 1..g.points().len() {
        let yf = g.point(y);
        let meet = xf.step(1).intersect(&yf.step(1)).unwrap();
        if meet.dim() == 1 {
            let j = join_points(&g, x, y).unwrap();
            let gov = ShortFlagGovernor::new(meet, xf.step(1).sum(&yf.step(1)).unwrap()).unwrap();
            assert_eq!(j, squeeze_members(&g, &gov.as_squeeze()));
            assert_eq!(j.len(), 4);
            seen = true;
            break;
        }
    }
    assert!(seen);
}

#[test]
fn horizon_of_projective_plane_chart_is_a_line() {
    let g = grass(3, 1, 3);
    let h = horizon(&g, 0);
    assert_eq!(h.len(), 4);
    assert!(is_intrinsic(&g, &h).unwrap());
}
