use std::sync::Arc;

use super::{integer_bbox, Configuration, LowerBoundCertificate, ReasonCode, Verdict};
use crate::error::{Error, Result};
use crate::exactgeom::basis::SymbolicBasis;
use crate::exactgeom::kernel::Constraint;
use crate::exactgeom::number::Sign;
use crate::exactgeom::point::common_basis;
use crate::exactgeom::poly::Poly;
use crate::exactgeom::{convex_position, ConvexPosition, CorePolytope, ExactNumber, Point, Rational};
use crate::pointsets::{dense_group_contains, module_contains, SetDescriptor, Window};

/// Checks a Hoffman configuration: `R ⊂ S` in strict convex position whose core
/// `∩_i conv(R ∖ {x_i})` misses `S`.
pub fn check_hoffman(s: &SetDescriptor, r: &[Point]) -> Result<LowerBoundCertificate> {
    let verdict = match hoffman_verdict(s, r) {
        Err(Error::PrecisionExhausted { bits }) => Verdict::undecided(
            ReasonCode::Precision,
            format!("sign undecided at the {bits}-bit precision cap"),
        ),
        other => other?,
    };
    Ok(LowerBoundCertificate {
        configuration: Configuration::hoffman(s.clone(), r.to_vec()),
        claimed_bound: r.len(),
        verdict,
    })
}

fn hoffman_verdict(s: &SetDescriptor, r: &[Point]) -> Result<Verdict> {
    if r.is_empty() {
        return Ok(Verdict::invalid(ReasonCode::WrongCount, "empty configuration"));
    }
    for p in r {
        if p.dim() != s.dim() {
            return Err(Error::DimensionMismatch { expected: s.dim(), found: p.dim() });
        }
        if !s.contains(p)? {
            return Ok(Verdict::invalid(ReasonCode::NotInSet, format!("{p} is not in S")));
        }
    }
    match convex_position(r)? {
        ConvexPosition::Strict => {}
        ConvexPosition::Duplicate(i, j) => {
            return Ok(Verdict::invalid(ReasonCode::DuplicatePoint, format!("points {i} and {j} coincide")));
        }
        ConvexPosition::Captured(i) => {
            return Ok(Verdict::invalid(
                ReasonCode::NotConvexPosition,
                format!("{} lies in the hull of the other points", r[i]),
            ));
        }
    }
    if r.len() == 1 {
        // the only leave-one-out hull is conv(∅)
        return Ok(Verdict::Valid);
    }
    let core = CorePolytope::new(r)?;
    if core.is_empty() {
        return Ok(Verdict::Valid);
    }
    match s {
        _ if s.is_discrete() => discrete_case(s, &core),
        SetDescriptor::PuncturedSpace { excluded, .. } => match core.dim()? {
            Some(0) => {
                let c = core.point()?.expect("zero-dimensional core has a point");
                if excluded.contains(&c) {
                    Ok(Verdict::Valid)
                } else {
                    Ok(Verdict::invalid(ReasonCode::CoreMeetsSet, format!("the core point {c} is not excluded")))
                }
            }
            _ => Ok(Verdict::invalid(
                ReasonCode::CoreMeetsSet,
                "a core of positive dimension has infinitely many points, and only finitely many are excluded",
            )),
        },
        SetDescriptor::QModule { generators } => module_case(generators, &core),
        SetDescriptor::DiscreteDenseProduct { m, generators } => fiber_case(*m, generators, r, &core),
        _ => Ok(Verdict::undecided(ReasonCode::Unsupported, format!("no decision rule for {}", s.kind()))),
    }
}

fn discrete_case(s: &SetDescriptor, core: &CorePolytope) -> Result<Verdict> {
    let bbox = core.integer_bbox()?.expect("nonempty core");
    let window = Window::new(bbox.iter().map(|b| b.0).collect(), bbox.iter().map(|b| b.1).collect())?;
    for q in s.enumerate(&window)? {
        if core.contains(&q)? {
            return Ok(Verdict::invalid(ReasonCode::CoreMeetsSet, format!("{q} is in S and in the core")));
        }
    }
    Ok(Verdict::Valid)
}

/// Dense ℚ-modules: a point core is decided by membership; a full-dimensional
/// core meets the dense module; a lower-dimensional core is declared to meet it
/// only when all its vertices are module points, which makes the module dense in
/// the core's affine hull.
fn module_case(generators: &[Point], core: &CorePolytope) -> Result<Verdict> {
    let d = core.ambient_dim();
    match core.dim()? {
        None => Ok(Verdict::Valid),
        Some(0) => {
            let c = core.point()?.expect("zero-dimensional core has a point");
            if module_contains(generators, &c)? {
                Ok(Verdict::invalid(ReasonCode::CoreMeetsSet, format!("the core point {c} is in the module")))
            } else {
                Ok(Verdict::Valid)
            }
        }
        Some(k) if k == d => Ok(Verdict::invalid(
            ReasonCode::CoreMeetsSet,
            "the core is full-dimensional and the module is dense",
        )),
        Some(k) => {
            let Some(vertices) = core.vertex_points()? else {
                return Ok(Verdict::undecided(
                    ReasonCode::DensityUnknown,
                    format!("{k}-dimensional core with vertices outside the basis span"),
                ));
            };
            for v in &vertices {
                if !module_contains(generators, v)? {
                    return Ok(Verdict::undecided(
                        ReasonCode::DensityUnknown,
                        format!("{k}-dimensional core; density of the module in its affine hull is not established"),
                    ));
                }
            }
            Ok(Verdict::invalid(
                ReasonCode::CoreMeetsSet,
                format!("{k}-dimensional core spanned by module points, so the module is dense in it"),
            ))
        }
    }
}

/// A bound `num/den` on the dense coordinate, `den > 0`.
struct Bound {
    num: Poly,
    den: Poly,
}

impl Bound {
    fn cmp(&self, other: &Bound) -> Result<Sign> {
        self.num.mul(&other.den).sub(&other.num.mul(&self.den)).sign()
    }
}

/// `ℤ^m × D`: scan the integer fibers over the box of the integer coordinates of
/// `R`. Each fiber meets the core in an interval of the last coordinate; an
/// interval with interior meets the dense group, a single point is tested for
/// membership.
fn fiber_case(m: usize, generators: &[ExactNumber], r: &[Point], core: &CorePolytope) -> Result<Verdict> {
    let basis: Arc<SymbolicBasis> = {
        let mut pts: Vec<&Point> = r.iter().collect();
        let gen_points: Vec<Point> = generators.iter().map(|g| Point::new(vec![g.clone()])).collect::<Result<_>>()?;
        pts.extend(gen_points.iter());
        common_basis(pts.iter().copied())?
    };
    let constraints = core.poly_constraints(&basis);
    let heads: Vec<Point> = r
        .iter()
        .map(|p| Point::new(p.coords()[..m].to_vec()))
        .collect::<Result<_>>()?;
    let window = integer_bbox(&heads).ok_or_else(|| Error::UnsupportedCoordinates("integer coordinates expected".into()))?;
    for z in window.integer_points() {
        let mut lo: Option<Bound> = None;
        let mut hi: Option<Bound> = None;
        let mut empty = false;
        for c in &constraints {
            let Constraint { normal, offset } = c;
            let mut rhs = offset.clone();
            for (i, &zi) in z.iter().enumerate() {
                rhs = rhs.sub(&normal[i].scale(&Rational::from_integer(zi.into())));
            }
            let coef = &normal[m];
            match coef.sign()? {
                Sign::Zero => {
                    if rhs.sign()? == Sign::Negative {
                        empty = true;
                        break;
                    }
                }
                Sign::Positive => {
                    let b = Bound { num: rhs, den: coef.clone() };
                    if hi.as_ref().map_or(Ok(true), |h| b.cmp(h).map(|s| s == Sign::Negative))? {
                        hi = Some(b);
                    }
                }
                Sign::Negative => {
                    let b = Bound { num: rhs.neg(), den: coef.neg() };
                    if lo.as_ref().map_or(Ok(true), |l| b.cmp(l).map(|s| s == Sign::Positive))? {
                        lo = Some(b);
                    }
                }
            }
        }
        if empty {
            continue;
        }
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Ok(Verdict::undecided(ReasonCode::Unsupported, "unbounded fiber"));
        };
        match lo.cmp(&hi)? {
            Sign::Positive => continue,
            Sign::Negative => {
                return Ok(Verdict::invalid(
                    ReasonCode::CoreMeetsSet,
                    format!("the fiber over {z:?} meets the core in a segment, which the dense factor meets"),
                ));
            }
            Sign::Zero => {
                let Some(t) = lo.num.quotient_as_linear(&lo.den) else {
                    return Ok(Verdict::undecided(
                        ReasonCode::Unsupported,
                        format!("the core meets the fiber over {z:?} in a point outside the basis span"),
                    ));
                };
                if dense_group_contains(generators, &t)? {
                    return Ok(Verdict::invalid(
                        ReasonCode::CoreMeetsSet,
                        format!("the core meets the fiber over {z:?} in a point of S"),
                    ));
                }
            }
        }
    }
    Ok(Verdict::Valid)
}
