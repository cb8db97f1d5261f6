//! Two-phase dense simplex over ℚ with Bland's rule.

use num_traits::{One, Signed, Zero};

use super::number::ExactNumber;
use super::point::{HalfSpace, Point};
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: ExactNumber, point: Point },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Relation {
    Le,
    Eq,
    Ge,
}

/// Result of the standard-form solver on nonnegative variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Standard {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, x: Vec<Rational> },
}

struct Tableau {
    /// rows × (cols + 1); the last column is the right-hand side
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs of `cost` for the current basis.
    fn reduced(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut red: Vec<Rational> = cost.to_vec();
        red.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (x, a) in red.iter_mut().zip(row) {
                *x -= cb * a;
            }
        }
        red
    }

    /// Minimizes `cost` over columns allowed by `allowed`; `true` when bounded.
    fn run(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let red = self.reduced(cost);
            // Bland: lowest-index improving column, then lowest-index leaving basic variable
            let Some(c) = (0..self.cols).find(|&j| allowed[j] && red[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(Rational, usize, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[c];
                let better = match &best {
                    None => true,
                    Some((br, _, bb)) => ratio < *br || (ratio == *br && self.basis[i] < *bb),
                };
                if better {
                    best = Some((ratio, i, self.basis[i]));
                }
            }
            let Some((_, r, _)) = best else { return false };
            self.pivot(r, c);
        }
    }
}

/// Minimizes `cost · x` subject to `rows` and `x ≥ 0`.
pub(crate) fn solve_standard(
    a: &[Vec<Rational>],
    rel: &[Relation],
    b: &[Rational],
    cost: &[Rational],
) -> Standard {
    let n = cost.len();
    let m = a.len();
    // normalize to nonnegative right-hand sides
    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::with_capacity(m);
    for i in 0..m {
        if b[i].is_negative() {
            let flipped = match rel[i] {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
            rows.push((a[i].iter().map(|x| -x.clone()).collect(), flipped, -b[i].clone()));
        } else {
            rows.push((a[i].clone(), rel[i], b[i].clone()));
        }
    }
    let slacks = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let arts = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let cols = n + slacks + arts;
    let mut t = Tableau {
        rows: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
        cols,
    };
    let mut s = n;
    let mut art = n + slacks;
    for (coef, r, rhs) in &rows {
        let mut row = vec![Rational::zero(); cols + 1];
        row[..n].clone_from_slice(coef);
        row[cols] = rhs.clone();
        match r {
            Relation::Le => {
                row[s] = Rational::one();
                t.basis.push(s);
                s += 1;
            }
            Relation::Ge => {
                row[s] = -Rational::one();
                s += 1;
                row[art] = Rational::one();
                t.basis.push(art);
                art += 1;
            }
            Relation::Eq => {
                row[art] = Rational::one();
                t.basis.push(art);
                art += 1;
            }
        }
        t.rows.push(row);
    }
    let is_art = |j: usize| j >= n + slacks;
    if arts > 0 {
        let phase1: Vec<Rational> = (0..cols).map(|j| if is_art(j) { Rational::one() } else { Rational::zero() }).collect();
        t.run(&phase1, &vec![true; cols]);
        let infeas: Rational = t.rows.iter().zip(&t.basis).filter(|(_, &b)| is_art(b)).map(|(r, _)| r[cols].clone()).sum();
        if infeas.is_positive() {
            return Standard::Infeasible;
        }
        // drive zero-level artificials out of the basis; drop redundant rows
        let mut i = 0;
        while i < t.rows.len() {
            if is_art(t.basis[i]) {
                match (0..n + slacks).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
    let mut full_cost = cost.to_vec();
    full_cost.resize(cols, Rational::zero());
    let allowed: Vec<bool> = (0..cols).map(|j| !is_art(j)).collect();
    if !t.run(&full_cost, &allowed) {
        return Standard::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        if bv < n {
            x[bv] = row[cols].clone();
        }
    }
    let value = cost.iter().zip(&x).map(|(c, v)| c * v).sum();
    Standard::Optimal { value, x }
}

/// Optimizes a rational objective over `{x : h.normal·x ≤ h.offset for all h}` with free `x`.
pub(crate) fn optimize_rational(
    constraints: &[HalfSpace],
    d: usize,
    objective: &[Rational],
    direction: Direction,
) -> Standard {
    // x = x⁺ − x⁻
    let a: Vec<Vec<Rational>> = constraints
        .iter()
        .map(|h| h.normal.iter().cloned().chain(h.normal.iter().map(|v| -v.clone())).collect())
        .collect();
    let b: Vec<Rational> = constraints.iter().map(|h| h.offset.clone()).collect();
    let rel = vec![Relation::Le; constraints.len()];
    let sign = match direction {
        Direction::Min => Rational::one(),
        Direction::Max => -Rational::one(),
    };
    let cost: Vec<Rational> = objective
        .iter()
        .map(|c| c * &sign)
        .chain(objective.iter().map(|c| -(c * &sign)))
        .collect();
    match solve_standard(&a, &rel, &b, &cost) {
        Standard::Optimal { value, x } => Standard::Optimal {
            value: value * sign,
            x: (0..d).map(|i| &x[i] - &x[d + i]).collect(),
        },
        other => other,
    }
}

/// Exact linear optimization over a polyhedron given by halfspaces.
pub fn lp_optimize(constraints: &[HalfSpace], objective: &[Rational], direction: Direction) -> Result<LpOutcome> {
    let d = objective.len();
    if d == 0 {
        return Err(Error::Invalid("empty objective".into()));
    }
    for h in constraints {
        if h.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: h.dim(),
            });
        }
    }
    Ok(match optimize_rational(constraints, d, objective, direction) {
        Standard::Infeasible => LpOutcome::Infeasible,
        Standard::Unbounded => LpOutcome::Unbounded,
        Standard::Optimal { value, x } => LpOutcome::Optimal {
            value: ExactNumber::rational(value),
            point: Point::rational(x),
        },
    })
}
