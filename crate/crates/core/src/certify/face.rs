use num_traits::Zero;

use super::{Configuration, LowerBoundCertificate, ReasonCode, Verdict};
use crate::error::{Error, Result};
use crate::exactgeom::lp::{optimize_rational, Standard};
use crate::exactgeom::rational::{ceil_i64, floor_i64};
use crate::exactgeom::{Direction, HalfSpace, Rational};
use crate::pointsets::{SetDescriptor, Window};

/// Checks that `∩H` is an S-face-polytope: bounded, every halfspace irredundant,
/// and `S ∩ P` consists of exactly one point in the relative interior of each facet.
///
/// A point on exactly one bounding hyperplane of an irredundant system lies in the
/// relative interior of that facet, so no facet enumeration is needed.
pub fn check_face_polytope(s: &SetDescriptor, h: &[HalfSpace]) -> Result<LowerBoundCertificate> {
    let verdict = face_verdict(s, h)?;
    Ok(LowerBoundCertificate {
        configuration: Configuration::face_polytope(s.clone(), h.to_vec()),
        claimed_bound: h.len(),
        verdict,
    })
}

fn face_verdict(s: &SetDescriptor, h: &[HalfSpace]) -> Result<Verdict> {
    if !s.is_discrete() {
        return Err(Error::NotEnumerable(format!("face-polytope certificates need a discrete set, got {}", s.kind())));
    }
    let d = s.dim();
    for hs in h {
        if hs.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: hs.dim() });
        }
    }
    if h.is_empty() {
        return Err(Error::Unbounded);
    }
    let mut lower = Vec::with_capacity(d);
    let mut upper = Vec::with_capacity(d);
    for i in 0..d {
        let mut e = vec![Rational::zero(); d];
        e[i] = Rational::from_integer(1.into());
        for dir in [Direction::Min, Direction::Max] {
            match optimize_rational(h, d, &e, dir) {
                Standard::Infeasible => return Ok(Verdict::invalid(ReasonCode::EmptyPolytope, "the halfspaces have empty intersection")),
                Standard::Unbounded => return Err(Error::Unbounded),
                Standard::Optimal { value, .. } => match dir {
                    Direction::Min => lower.push(floor_i64(&value).expect("bounds fit in i64")),
                    Direction::Max => upper.push(ceil_i64(&value).expect("bounds fit in i64")),
                },
            }
        }
    }
    for i in 0..h.len() {
        let others: Vec<HalfSpace> = h.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect();
        if let Standard::Optimal { value, .. } = optimize_rational(&others, d, &h[i].normal, Direction::Max) {
            if value <= h[i].offset {
                return Ok(Verdict::invalid(ReasonCode::RedundantHalfspace, format!("halfspace {i} is redundant")));
            }
        }
    }
    let window = Window::new(lower, upper)?;
    let inside: Vec<Vec<Rational>> = s
        .enumerate(&window)?
        .into_iter()
        .map(|p| p.to_rational().expect("discrete sets are rational"))
        .filter(|q| h.iter().all(|hs| hs.contains(q)))
        .collect();
    if inside.len() != h.len() {
        return Ok(Verdict::invalid(
            ReasonCode::WrongCount,
            format!("{} points of S in the polytope, {} halfspaces", inside.len(), h.len()),
        ));
    }
    let mut per_facet = vec![0usize; h.len()];
    for q in &inside {
        let tight: Vec<usize> = (0..h.len()).filter(|&j| h[j].slack(q).is_zero()).collect();
        if tight.len() != 1 {
            return Ok(Verdict::invalid(
                ReasonCode::NotRelativeInterior,
                format!("a point of S lies on {} bounding hyperplanes", tight.len()),
            ));
        }
        per_facet[tight[0]] += 1;
    }
    if let Some(j) = per_facet.iter().position(|&c| c != 1) {
        return Ok(Verdict::invalid(
            ReasonCode::NotRelativeInterior,
            format!("facet {j} holds {} points of S", per_facet[j]),
        ));
    }
    Ok(Verdict::Valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::int;

    fn hs(n: &[i64], o: i64) -> HalfSpace {
        HalfSpace::new(n.iter().map(|&v| int(v)).collect(), int(o)).unwrap()
    }

    #[test]
    fn diamond_is_valid() {
        let h = [hs(&[1, 1], 2), hs(&[-1, -1], 0), hs(&[1, -1], 1), hs(&[-1, 1], 1)];
        let c = check_face_polytope(&SetDescriptor::integer_lattice(2), &h).unwrap();
        assert_eq!(c.verdict, Verdict::Valid);
        assert_eq!(c.claimed_bound, 4);
    }

    #[test]
    fn square_puts_points_at_vertices() {
        let h = [hs(&[1, 0], 1), hs(&[-1, 0], 0), hs(&[0, 1], 1), hs(&[0, -1], 0)];
        let c = check_face_polytope(&SetDescriptor::integer_lattice(2), &h).unwrap();
        assert!(matches!(c.verdict, Verdict::Invalid { code: ReasonCode::NotRelativeInterior, .. }));
    }

    #[test]
    fn redundant_and_unbounded() {
        let h = [hs(&[1, 1], 2), hs(&[-1, -1], 0), hs(&[1, -1], 1), hs(&[-1, 1], 1), hs(&[1, 0], 5)];
        let c = check_face_polytope(&SetDescriptor::integer_lattice(2), &h).unwrap();
        assert!(matches!(c.verdict, Verdict::Invalid { code: ReasonCode::RedundantHalfspace, .. }));
        let open = [hs(&[1, 0], 1), hs(&[-1, 0], 0)];
        assert!(matches!(check_face_polytope(&SetDescriptor::integer_lattice(2), &open), Err(Error::Unbounded)));
    }
}
