use proptest::prelude::*;

use helly::colorful::{check_helly_condition, eval_property, HellyCheck, Polytope, PropertySpec};
use helly::exactgeom::rational::ratio;
use helly::exactgeom::Rational;
use helly::pointsets::{Lattice, SetDescriptor};

/// Corners in quarter units.
fn boxed(c: &[(i64, i64)]) -> Polytope {
    let lo: Vec<Rational> = c.iter().map(|&(a, _)| ratio(a, 4)).collect();
    let hi: Vec<Rational> = c.iter().map(|&(a, w)| ratio(a + w, 4)).collect();
    Polytope::boxed(&lo, &hi)
}

fn corners() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-12i64..=12, 0i64..=12), 2)
}

fn property() -> impl Strategy<Value = PropertySpec> {
    prop_oneof![
        Just(PropertySpec::MeetsSet(SetDescriptor::integer_lattice(2))),
        Just(PropertySpec::MeetsSet(SetDescriptor::LatticeDifference { d: 2, removed: vec![Lattice::scaled(2, 2)] })),
        (1u64..=6).prop_map(PropertySpec::LatticeCount),
        (0usize..=2).prop_map(PropertySpec::Dimension),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn properties_are_monotone(p in property(), inner in corners(), grow in prop::collection::vec(0i64..=6, 4)) {
        let outer: Vec<(i64, i64)> = inner.iter().enumerate().map(|(i, &(a, w))| (a - grow[2 * i], w + grow[2 * i] + grow[2 * i + 1])).collect();
        if eval_property(&p, &boxed(&inner)).unwrap() {
            prop_assert!(eval_property(&p, &boxed(&outer)).unwrap());
        }
    }

    #[test]
    fn plane_lattice_is_four_helly(family in prop::collection::vec(corners(), 5..=6)) {
        let fam: Vec<Polytope> = family.iter().map(|c| boxed(c)).collect();
        let p = PropertySpec::MeetsSet(SetDescriptor::integer_lattice(2));
        prop_assert_eq!(check_helly_condition(&p, &fam, 4).unwrap(), HellyCheck::Consistent);
    }

    #[test]
    fn punctured_lattice_is_six_helly(family in prop::collection::vec(corners(), 7..=8)) {
        let fam: Vec<Polytope> = family.iter().map(|c| boxed(c)).collect();
        let s = SetDescriptor::LatticeDifference { d: 2, removed: vec![Lattice::scaled(2, 2)] };
        prop_assert_eq!(check_helly_condition(&PropertySpec::MeetsSet(s), &fam, 6).unwrap(), HellyCheck::Consistent);
    }
}

/// Four cuts of a bounded frame, each dropping one corner of the unit square.
#[test]
fn unit_square_family_breaks_three() {
    use helly::exactgeom::rational::int;
    use helly::exactgeom::HalfSpace;
    let h = |a: i64, b: i64, c: i64| Polytope::new(2, vec![HalfSpace::new(vec![int(a), int(b)], int(c)).unwrap()]).unwrap();
    let frame = [h(1, 0, 3), h(-1, 0, 2), h(0, 1, 3), h(0, -1, 2)];
    let cut = |a: i64, b: i64, c: i64| {
        let mut hs = frame.iter().flat_map(|p| p.halfspaces.clone()).collect::<Vec<_>>();
        hs.push(HalfSpace::new(vec![int(a), int(b)], int(c)).unwrap());
        Polytope::new(2, hs).unwrap()
    };
    let fam = [cut(1, 1, 1), cut(-1, 1, 0), cut(1, -1, 0), cut(-1, -1, -1)];
    let p = PropertySpec::MeetsSet(SetDescriptor::integer_lattice(2));
    assert!(matches!(check_helly_condition(&p, &fam, 3).unwrap(), HellyCheck::Counterexample { .. }));
    assert_eq!(check_helly_condition(&p, &fam, 4).unwrap(), HellyCheck::Consistent);
}
