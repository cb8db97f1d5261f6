use super::{integer_bbox, Configuration, LowerBoundCertificate, ReasonCode, Verdict};
use crate::error::{Error, Result};
use crate::exactgeom::kernel::hull_hrep;
use crate::exactgeom::point::rational_rows;
use crate::exactgeom::{convex_position, ConvexPosition, Point};
use crate::pointsets::SetDescriptor;

/// Checks that `V` is an S-vertex-polytope: `V ⊂ S` in strict convex position and
/// `conv(V) ∩ S = V`.
pub fn check_vertex_polytope(s: &SetDescriptor, v: &[Point]) -> Result<LowerBoundCertificate> {
    let verdict = vertex_verdict(s, v)?;
    Ok(LowerBoundCertificate {
        configuration: Configuration::vertex_polytope(s.clone(), v.to_vec()),
        claimed_bound: v.len(),
        verdict,
    })
}

fn vertex_verdict(s: &SetDescriptor, v: &[Point]) -> Result<Verdict> {
    if !s.is_discrete() {
        return Err(Error::NotEnumerable(format!("vertex-polytope certificates need a discrete set, got {}", s.kind())));
    }
    if v.is_empty() {
        return Ok(Verdict::invalid(ReasonCode::WrongCount, "empty configuration"));
    }
    for p in v {
        if p.dim() != s.dim() {
            return Err(Error::DimensionMismatch { expected: s.dim(), found: p.dim() });
        }
        if !s.contains(p)? {
            return Ok(Verdict::invalid(ReasonCode::NotInSet, format!("{p} is not in S")));
        }
    }
    match convex_position(v)? {
        ConvexPosition::Strict => {}
        ConvexPosition::Duplicate(i, j) => {
            return Ok(Verdict::invalid(ReasonCode::DuplicatePoint, format!("points {i} and {j} coincide")));
        }
        ConvexPosition::Captured(i) => {
            return Ok(Verdict::invalid(
                ReasonCode::NotConvexPosition,
                format!("{} lies in the hull of the other points", v[i]),
            ));
        }
    }
    let rows = rational_rows(v).ok_or_else(|| Error::UnsupportedCoordinates("discrete sets have rational points".into()))?;
    let hull = hull_hrep(&rows)?;
    let window = integer_bbox(v).expect("rational points have a box");
    for q in s.enumerate(&window)? {
        if v.contains(&q) {
            continue;
        }
        if hull.contains(&q.to_rational().expect("rational"))? {
            return Ok(Verdict::invalid(ReasonCode::CapturedPoint, format!("{q} is in S and in the hull but not a vertex")));
        }
    }
    Ok(Verdict::Valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointsets::Lattice;

    fn ip(v: &[i64]) -> Point {
        Point::integer(v)
    }

    #[test]
    fn unit_square_is_valid() {
        let c = check_vertex_polytope(
            &SetDescriptor::integer_lattice(2),
            &[ip(&[0, 0]), ip(&[1, 0]), ip(&[1, 1]), ip(&[0, 1])],
        )
        .unwrap();
        assert_eq!(c.verdict, Verdict::Valid);
        assert_eq!(c.claimed_bound, 4);
    }

    #[test]
    fn big_triangle_captures_points() {
        let c = check_vertex_polytope(&SetDescriptor::integer_lattice(2), &[ip(&[0, 0]), ip(&[2, 0]), ip(&[0, 2])]).unwrap();
        assert!(matches!(c.verdict, Verdict::Invalid { code: ReasonCode::CapturedPoint, .. }));
    }

    #[test]
    fn hexagon_in_punctured_lattice() {
        let s = SetDescriptor::LatticeDifference { d: 2, removed: vec![Lattice::scaled(2, 2)] };
        // lexicographically first hollow hexagon in [-2,3]^2, from an exhaustive scan
        let hex = [ip(&[-2, -1]), ip(&[-1, -1]), ip(&[-1, 0]), ip(&[1, 0]), ip(&[1, 1]), ip(&[2, 1])];
        let c = check_vertex_polytope(&s, &hex).unwrap();
        assert_eq!(c.verdict, Verdict::Valid, "{:?}", c.verdict);
    }

    #[test]
    fn non_member_is_reported() {
        let s = SetDescriptor::LatticeDifference { d: 2, removed: vec![Lattice::scaled(2, 2)] };
        let c = check_vertex_polytope(&s, &[ip(&[0, 0]), ip(&[1, 0])]).unwrap();
        assert!(matches!(c.verdict, Verdict::Invalid { code: ReasonCode::NotInSet, .. }));
    }
}
