//! Orientation, hull membership and strict convex position on [`Point`]s.

use num_traits::{One, Zero};

use super::kernel::{self, hull_hrep};
use super::lp::{solve_standard, Relation, Standard};
use super::number::Sign;
use super::point::{check_dims, common_basis, poly_rows, rational_rows, Point};
use super::rational::Rational;
use crate::error::{Error, Result};

pub fn orientation(points: &[Point]) -> Result<Sign> {
    let d = points.len().saturating_sub(1);
    if d == 0 {
        return Err(Error::Invalid("orientation needs d + 1 points with d >= 1".into()));
    }
    check_dims(points, d)?;
    if let Some(rows) = rational_rows(points) {
        return kernel::orientation(&rows);
    }
    let basis = common_basis(points)?;
    kernel::orientation(&poly_rows(points, &basis))
}

/// Closed convex hull membership, decided by LP feasibility of
/// `Σ λ_j v_j = p, Σ λ_j = 1, λ ≥ 0` for rational data and by the hull's
/// half-space description for symbolic data.
pub fn in_hull(p: &Point, vs: &[Point]) -> Result<bool> {
    if vs.is_empty() {
        return Err(Error::Invalid("hull of no points".into()));
    }
    check_dims(vs.iter().chain(std::iter::once(p)), p.dim())?;
    match (p.to_rational(), rational_rows(vs)) {
        (Some(q), Some(rows)) => Ok(in_hull_lp(&q, &rows)),
        _ => in_hull_facets(p, vs),
    }
}

pub(crate) fn in_hull_lp(p: &[Rational], vs: &[Vec<Rational>]) -> bool {
    let d = p.len();
    let m = vs.len();
    let mut a = Vec::with_capacity(d + 1);
    let mut b = Vec::with_capacity(d + 1);
    a.push(vec![Rational::one(); m]);
    b.push(Rational::one());
    for i in 0..d {
        a.push(vs.iter().map(|v| v[i].clone()).collect());
        b.push(p[i].clone());
    }
    let rel = vec![Relation::Eq; d + 1];
    let cost = vec![Rational::zero(); m];
    matches!(solve_standard(&a, &rel, &b, &cost), Standard::Optimal { .. })
}

/// Hull membership through the hull's half-space description; works for any
/// coordinates and serves as the second route for rational data.
pub fn in_hull_facets(p: &Point, vs: &[Point]) -> Result<bool> {
    check_dims(vs.iter().chain(std::iter::once(p)), p.dim())?;
    if let (Some(q), Some(rows)) = (p.to_rational(), rational_rows(vs)) {
        return hull_hrep(&rows)?.contains(&q);
    }
    let all: Vec<&Point> = vs.iter().chain(std::iter::once(p)).collect();
    let basis = common_basis(all.iter().copied())?;
    let rows = poly_rows(vs, &basis);
    let q = &poly_rows(std::iter::once(p), &basis)[0];
    hull_hrep(&rows)?.contains(q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexPosition {
    Strict,
    /// Indices of two equal points.
    Duplicate(usize, usize),
    /// Index of a point lying in the hull of the others.
    Captured(usize),
}

/// Classifies a point list; the first problem found is reported.
pub fn convex_position(vs: &[Point]) -> Result<ConvexPosition> {
    if let Some(first) = vs.first() {
        check_dims(vs, first.dim())?;
    }
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if vs[i] == vs[j] {
                return Ok(ConvexPosition::Duplicate(i, j));
            }
        }
    }
    if vs.len() <= 2 {
        return Ok(ConvexPosition::Strict);
    }
    for i in 0..vs.len() {
        let rest: Vec<Point> = vs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
        if in_hull(&vs[i], &rest)? {
            return Ok(ConvexPosition::Captured(i));
        }
    }
    Ok(ConvexPosition::Strict)
}

pub fn strict_convex_position(vs: &[Point]) -> Result<bool> {
    Ok(convex_position(vs)? == ConvexPosition::Strict)
}
