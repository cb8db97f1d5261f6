//! Exhaustive Helly-number oracles for finite sets, built on LP hull tests
//! and leave-one-out hull descriptions rather than the search kernels.

use crate::error::{Error, Result};
use crate::exactgeom::corepoly::rational_core_halfspaces;
use crate::exactgeom::hull::in_hull_lp;
use crate::exactgeom::Rational;
use crate::pointsets::SetDescriptor;

pub const DEFAULT_BUDGET: usize = 20;

fn finite_rows(s: &SetDescriptor, budget: usize) -> Result<Vec<Vec<Rational>>> {
    let SetDescriptor::ExplicitFinite { points } = s else {
        return Err(Error::Invalid(format!("oracles need an explicit finite set, got {}", s.kind())));
    };
    let mut rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| p.to_rational().ok_or_else(|| Error::UnsupportedCoordinates(format!("{p} is not rational"))))
        .collect::<Result<_>>()?;
    rows.sort();
    rows.dedup();
    if rows.is_empty() {
        return Err(Error::Invalid("empty set".into()));
    }
    if rows.len() > budget {
        return Err(Error::BudgetExceeded(format!("{} points exceed the oracle budget of {budget}", rows.len())));
    }
    Ok(rows)
}

fn pick(rows: &[Vec<Rational>], idx: &[usize]) -> Vec<Vec<Rational>> {
    idx.iter().map(|&i| rows[i].clone()).collect()
}

/// Exact rejection test: a point outside the bounding box of `vs` is not in
/// their hull.
fn outside_bbox(p: &[Rational], vs: &[Vec<Rational>]) -> bool {
    (0..p.len()).any(|c| vs.iter().all(|v| v[c] < p[c]) || vs.iter().all(|v| v[c] > p[c]))
}

fn in_hull(p: &[Rational], vs: &[Vec<Rational>]) -> bool {
    !outside_bbox(p, vs) && in_hull_lp(p, vs)
}

/// No point of `idx` lies in the hull of the others.
fn convex_position(rows: &[Vec<Rational>], idx: &[usize]) -> bool {
    idx.len() <= 2
        || (0..idx.len()).all(|k| {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &i)| i).collect();
            !in_hull(&rows[idx[k]], &pick(rows, &rest))
        })
}

fn hollow(rows: &[Vec<Rational>], idx: &[usize]) -> bool {
    let vs = pick(rows, idx);
    (0..rows.len()).filter(|i| !idx.contains(i)).all(|i| !in_hull(&rows[i], &vs))
}

/// `h(S)` for a finite set as the largest hollow subset in strict convex position.
pub fn helly_oracle_vertex(s: &SetDescriptor) -> Result<usize> {
    helly_oracle_vertex_with_budget(s, DEFAULT_BUDGET)
}

pub fn helly_oracle_vertex_with_budget(s: &SetDescriptor, budget: usize) -> Result<usize> {
    let rows = finite_rows(s, budget)?;
    let mut best = 1;
    let mut stack = vec![Vec::new()];
    while let Some(idx) = stack.pop() {
        best = best.max(idx.len());
        let from = idx.last().map_or(0, |&l| l + 1);
        for c in from..rows.len() {
            let mut next = idx.clone();
            next.push(c);
            if convex_position(&rows, &next) && hollow(&rows, &next) {
                stack.push(next);
            }
        }
    }
    Ok(best)
}

/// `h(S)` for a finite set as the largest `R` in strict convex position whose
/// core (the intersection of the hulls of `R` minus one point) misses `S`.
pub fn helly_oracle_hoffman(s: &SetDescriptor) -> Result<usize> {
    helly_oracle_hoffman_with_budget(s, DEFAULT_BUDGET)
}

pub fn helly_oracle_hoffman_with_budget(s: &SetDescriptor, budget: usize) -> Result<usize> {
    let rows = finite_rows(s, budget)?;
    let n = rows.len();
    let mut best = 1;
    let mut stack = vec![Vec::new()];
    while let Some(idx) = stack.pop() {
        if idx.len() > best && core_misses(&rows, &idx)? {
            best = idx.len();
        }
        let from = idx.last().map_or(0, |&l| l + 1);
        for c in from..n {
            if idx.len() + (n - c) <= best {
                break;
            }
            let mut next = idx.clone();
            next.push(c);
            if convex_position(&rows, &next) {
                stack.push(next);
            }
        }
    }
    Ok(best)
}

fn core_misses(rows: &[Vec<Rational>], idx: &[usize]) -> Result<bool> {
    if idx.len() < 2 {
        return Ok(false);
    }
    let hs = rational_core_halfspaces(&pick(rows, idx))?;
    Ok(!rows.iter().any(|p| hs.iter().all(|h| h.contains(p))))
}
