use proptest::prelude::*;

use helly::exactgeom::rational::{int, ratio};
use helly::exactgeom::{
    core_of, in_hull, lp_optimize, orientation, strict_convex_position, Constant, Direction, ExactNumber, HalfSpace,
    LpOutcome, Point, Rational, Sign, SymbolicBasis,
};

/// Applies `row_i += c·row_j` (or negates row `i` when `i == j`) to the identity.
fn unimodular(d: usize, moves: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    for &(i, j, c) in moves {
        let (i, j) = (i % d, j % d);
        if i == j {
            a[i].iter_mut().for_each(|x| *x = -*x);
        } else {
            for t in 0..d {
                a[i][t] += c * a[j][t];
            }
        }
    }
    a
}

fn apply(a: &[Vec<i64>], b: &[i64], p: &[i64]) -> Point {
    let q: Vec<i64> = a.iter().zip(b).map(|(row, bi)| row.iter().zip(p).map(|(x, y)| x * y).sum::<i64>() + bi).collect();
    Point::integer(&q)
}

fn moves() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6)
}

fn points(d: usize, n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, d), n)
}

fn solve2(a: &HalfSpace, b: &HalfSpace) -> Option<Vec<Rational>> {
    let det = a.normal[0].clone() * &b.normal[1] - a.normal[1].clone() * &b.normal[0];
    if det == int(0) {
        return None;
    }
    let x = (a.offset.clone() * &b.normal[1] - a.normal[1].clone() * &b.offset) / &det;
    let y = (a.normal[0].clone() * &b.offset - a.offset.clone() * &b.normal[0]) / &det;
    Some(vec![x, y])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orientation_flips_under_transpositions(pts in points(2, 3..=3), i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j);
        let p: Vec<Point> = pts.iter().map(|r| Point::integer(r)).collect();
        let mut q = p.clone();
        q.swap(i, j);
        prop_assert_eq!(orientation(&q).unwrap(), orientation(&p).unwrap().flip());
    }

    #[test]
    fn orientation_flips_in_space(pts in points(3, 4..=4), i in 0usize..4, j in 0usize..4) {
        prop_assume!(i != j);
        let p: Vec<Point> = pts.iter().map(|r| Point::integer(r)).collect();
        let mut q = p.clone();
        q.swap(i, j);
        prop_assert_eq!(orientation(&q).unwrap(), orientation(&p).unwrap().flip());
    }

    #[test]
    fn hull_predicates_survive_unimodular_maps(
        pts in points(2, 1..=6),
        query in prop::collection::vec(-6i64..=6, 2),
        m in moves(),
        b in prop::collection::vec(-9i64..=9, 2),
    ) {
        let a = unimodular(2, &m);
        let before: Vec<Point> = pts.iter().map(|r| Point::integer(r)).collect();
        let after: Vec<Point> = pts.iter().map(|r| apply(&a, &b, r)).collect();
        prop_assert_eq!(
            in_hull(&Point::integer(&query), &before).unwrap(),
            in_hull(&apply(&a, &b, &query), &after).unwrap()
        );
        prop_assert_eq!(strict_convex_position(&before).unwrap(), strict_convex_position(&after).unwrap());
    }

    #[test]
    fn hull_predicates_survive_unimodular_maps_in_space(
        pts in points(3, 1..=6),
        query in prop::collection::vec(-6i64..=6, 3),
        m in moves(),
        b in prop::collection::vec(-9i64..=9, 3),
    ) {
        let a = unimodular(3, &m);
        let before: Vec<Point> = pts.iter().map(|r| Point::integer(r)).collect();
        let after: Vec<Point> = pts.iter().map(|r| apply(&a, &b, r)).collect();
        prop_assert_eq!(
            in_hull(&Point::integer(&query), &before).unwrap(),
            in_hull(&apply(&a, &b, &query), &after).unwrap()
        );
        prop_assert_eq!(strict_convex_position(&before).unwrap(), strict_convex_position(&after).unwrap());
    }

    /// Points on the parabola are in strict convex position.
    #[test]
    fn large_convex_sets_have_cores(xs in prop::collection::btree_set(-8i64..=8, 4..=7), m in moves()) {
        let a = unimodular(2, &m);
        let r: Vec<Point> = xs.iter().map(|&x| apply(&a, &[0, 0], &[x, x * x])).collect();
        prop_assert!(!core_of(&r).unwrap().is_empty());
    }

    /// Same on the moment curve in space.
    #[test]
    fn large_convex_sets_have_cores_in_space(ts in prop::collection::btree_set(-4i64..=4, 5..=6)) {
        let r: Vec<Point> = ts.iter().map(|&t| Point::integer(&[t, t * t, t * t * t])).collect();
        prop_assert!(!core_of(&r).unwrap().is_empty());
    }

    #[test]
    fn signs_are_exact(c in prop::collection::vec((-40i64..=40, 1i64..=9), 4)) {
        let basis = SymbolicBasis::new(vec![
            ("pi".into(), Constant::Pi),
            ("sqrt(2)".into(), Constant::Sqrt(2)),
            ("sqrt(3)".into(), Constant::Sqrt(3)),
        ]).unwrap();
        let coeffs: Vec<Rational> = c.iter().map(|&(n, d)| ratio(n, d)).collect();
        let zero = coeffs.iter().all(|q| *q == int(0));
        let x = ExactNumber::new(basis, coeffs).unwrap();
        prop_assert_eq!(x.sign().unwrap() == Sign::Zero, zero);
    }

    /// LP optimum over a box cut by up to two halfplanes equals the best feasible
    /// pairwise intersection of constraint lines.
    #[test]
    fn lp_matches_vertex_enumeration(
        cuts in prop::collection::vec(((-5i64..=5, -5i64..=5), -20i64..=20), 0..=2),
        obj in (-5i64..=5, -5i64..=5),
        max in any::<bool>(),
    ) {
        let hs = |a: i64, b: i64, c: i64| HalfSpace::new(vec![int(a), int(b)], int(c)).unwrap();
        let mut cons = vec![hs(1, 0, 10), hs(-1, 0, 10), hs(0, 1, 10), hs(0, -1, 10)];
        for &((a, b), c) in &cuts {
            prop_assume!(a != 0 || b != 0);
            cons.push(hs(a, b, c));
        }
        let objective = vec![int(obj.0), int(obj.1)];
        let value = |x: &[Rational]| objective[0].clone() * &x[0] + objective[1].clone() * &x[1];
        let mut best: Option<Rational> = None;
        for i in 0..cons.len() {
            for j in i + 1..cons.len() {
                let Some(x) = solve2(&cons[i], &cons[j]) else { continue };
                if cons.iter().all(|h| h.contains(&x)) {
                    let v = value(&x);
                    best = Some(match best {
                        None => v,
                        Some(b) if (max && v > b) || (!max && v < b) => v,
                        Some(b) => b,
                    });
                }
            }
        }
        let dir = if max { Direction::Max } else { Direction::Min };
        match (lp_optimize(&cons, &objective, dir).unwrap(), best) {
            (LpOutcome::Infeasible, None) => {}
            (LpOutcome::Optimal { value: v, point }, Some(b)) => {
                prop_assert_eq!(v.to_rational().unwrap(), b.clone());
                let x = point.to_rational().unwrap();
                prop_assert!(cons.iter().all(|h| h.contains(&x)));
                prop_assert_eq!(value(&x), b);
            }
            (got, want) => prop_assert!(false, "lp {:?} vs enumeration {:?}", got, want),
        }
    }
}
