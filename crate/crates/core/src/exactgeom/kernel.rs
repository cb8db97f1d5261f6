//! Division-free polyhedral kernel, generic over the coordinate ring.
//!
//! Everything here uses only ring operations and certified signs, so the same
//! code runs on rationals, on fixed-width integers in the search, and on
//! polynomials in symbolic constants.

use std::collections::HashMap;

use super::number::Sign;
use super::scalar::{Ball, Scalar};
use crate::error::{Error, Result};

/// `normal · x ≤ offset`.
#[derive(Clone, Debug)]
pub struct Constraint<T> {
    pub normal: Vec<T>,
    pub offset: T,
}

impl<T: Scalar> Constraint<T> {
    pub fn dot(&self, x: &[T]) -> T {
        let mut acc = self.offset.zero_like();
        for (a, b) in self.normal.iter().zip(x) {
            if a.is_zero_struct() || b.is_zero_struct() {
                continue;
            }
            acc = acc.add(&a.mul(b));
        }
        acc
    }

    /// Sign of `offset − normal·x`.
    pub fn slack_sign(&self, x: &[T]) -> Result<Sign> {
        self.offset.sub(&self.dot(x)).sign()
    }

    /// Sign of `offset·den − normal·num`, i.e. of the slack at `num/den` when `den > 0`.
    pub fn slack_sign_frac(&self, num: &[T], den: &T) -> Result<Sign> {
        self.offset.mul(den).sub(&self.dot(num)).sign()
    }

    fn is_trivial(&self) -> bool {
        self.normal.iter().all(Scalar::is_zero_struct)
    }
}

/// Half-space description of a polytope: `equalities` hold with equality, `facets`
/// as inequalities.
#[derive(Clone, Debug)]
pub struct HRep<T> {
    pub dim: usize,
    pub equalities: Vec<Constraint<T>>,
    pub facets: Vec<Constraint<T>>,
}

impl<T: Scalar> HRep<T> {
    pub fn contains(&self, x: &[T]) -> Result<bool> {
        for e in &self.equalities {
            if e.slack_sign(x)? != Sign::Zero {
                return Ok(false);
            }
        }
        for f in &self.facets {
            if f.slack_sign(x)? == Sign::Negative {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All constraints as inequalities; each equality becomes two.
    pub fn inequalities(&self) -> Vec<Constraint<T>> {
        let mut out = Vec::with_capacity(2 * self.equalities.len() + self.facets.len());
        for e in &self.equalities {
            out.push(e.clone());
            out.push(Constraint {
                normal: e.normal.iter().map(Scalar::neg).collect(),
                offset: e.offset.neg(),
            });
        }
        out.extend(self.facets.iter().cloned());
        out
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Determinant by expansion over column subsets, `O(2^n n)` ring operations.
pub fn det<T: Scalar>(m: &[Vec<T>], unit: &T) -> T {
    let n = m.len();
    if n == 0 {
        return unit.one_like();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    if n == 2 {
        return m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]));
    }
    let mut prev: HashMap<u32, T> = HashMap::new();
    prev.insert(0, unit.one_like());
    for row in m {
        let mut next: HashMap<u32, T> = HashMap::new();
        for (mask, val) in &prev {
            if val.is_zero_struct() {
                continue;
            }
            for (j, entry) in row.iter().enumerate() {
                if mask & (1 << j) != 0 || entry.is_zero_struct() {
                    continue;
                }
                let larger = (mask >> (j + 1)).count_ones();
                let mut term = entry.mul(val);
                if larger % 2 == 1 {
                    term = term.neg();
                }
                let nm = mask | (1 << j);
                match next.get_mut(&nm) {
                    Some(v) => *v = v.add(&term),
                    None => {
                        next.insert(nm, term);
                    }
                }
            }
        }
        prev = next;
    }
    prev.remove(&((1u32 << n) - 1)).unwrap_or_else(|| unit.zero_like())
}

/// Row echelon data: `(pivot columns, original indices of independent rows)`.
pub fn echelon<T: Scalar>(rows: &[Vec<T>]) -> Result<(Vec<usize>, Vec<usize>)> {
    if rows.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let n = rows[0].len();
    let mut m: Vec<(usize, Vec<T>)> = rows.iter().cloned().enumerate().collect();
    let mut pivots = Vec::new();
    let mut sources = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m.len() {
            break;
        }
        let mut found = None;
        for i in r..m.len() {
            if !m[i].1[col].is_zero_struct() && m[i].1[col].sign()? != Sign::Zero {
                found = Some(i);
                break;
            }
        }
        let Some(p) = found else { continue };
        m.swap(r, p);
        let pivot_row = m[r].1.clone();
        for i in r + 1..m.len() {
            let f = m[i].1[col].clone();
            if f.is_zero_struct() {
                continue;
            }
            let piv = &pivot_row[col];
            let row = &mut m[i].1;
            for c in 0..n {
                row[c] = row[c].mul(piv).sub(&pivot_row[c].mul(&f));
            }
        }
        pivots.push(col);
        sources.push(m[r].0);
        r += 1;
    }
    Ok((pivots, sources))
}

pub fn rank<T: Scalar>(rows: &[Vec<T>]) -> Result<usize> {
    Ok(echelon(rows)?.0.len())
}

/// Sign of the homogeneous determinant of `d + 1` points in ℝ^d.
pub fn orientation<T: Scalar>(points: &[Vec<T>]) -> Result<Sign> {
    let d = points.len().saturating_sub(1);
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: points.iter().map(Vec::len).find(|&l| l != d).unwrap_or(0),
        });
    }
    let unit = points[0].first().cloned().expect("orientation needs d >= 1");
    let m: Vec<Vec<T>> = points
        .iter()
        .map(|p| {
            let mut row = p.clone();
            row.push(unit.one_like());
            row
        })
        .collect();
    det(&m, &unit).sign()
}

fn diff<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

/// Half-space description of the convex hull of a finite point set.
///
/// The affine hull is found from an independent set of difference vectors and a
/// coordinate set `I` with a nonzero minor; each other coordinate yields one
/// equality. Facets come from the projection onto `I`, where the set is
/// full-dimensional: every `|I|`-subset spans a candidate hyperplane, kept when
/// all points lie weakly on one side.
pub fn hull_hrep<T: Scalar>(points: &[Vec<T>]) -> Result<HRep<T>> {
    let p0 = points.first().ok_or_else(|| Error::Invalid("hull of no points".into()))?;
    let d = p0.len();
    let unit = p0[0].clone();
    let diffs: Vec<Vec<T>> = points[1..].iter().map(|p| diff(p, p0)).collect();
    let (cols, srcs) = echelon(&diffs)?;
    let k = cols.len();
    let basis_rows: Vec<&Vec<T>> = srcs.iter().map(|&i| &diffs[i]).collect();

    let mut equalities = Vec::new();
    for c in (0..d).filter(|c| !cols.contains(c)) {
        let mut used = cols.clone();
        used.push(c);
        let mut normal = vec![unit.zero_like(); d];
        for t in 0..=k {
            let minor: Vec<Vec<T>> = basis_rows
                .iter()
                .map(|r| {
                    used.iter()
                        .enumerate()
                        .filter(|&(s, _)| s != t)
                        .map(|(_, &col)| r[col].clone())
                        .collect()
                })
                .collect();
            let mut v = det(&minor, &unit);
            if (k + t) % 2 == 1 {
                v = v.neg();
            }
            normal[used[t]] = v;
        }
        let con = Constraint {
            offset: unit.zero_like(),
            normal,
        };
        let offset = con.dot(p0);
        equalities.push(Constraint { offset, ..con });
    }

    let mut facets: Vec<Constraint<T>> = Vec::new();
    if k >= 1 {
        let proj: Vec<Vec<T>> = points.iter().map(|p| cols.iter().map(|&c| p[c].clone()).collect()).collect();
        for subset in combinations(points.len(), k) {
            let base = &proj[subset[0]];
            let spans: Vec<Vec<T>> = subset[1..].iter().map(|&j| diff(&proj[j], base)).collect();
            let mut n = Vec::with_capacity(k);
            for i in 0..k {
                let minor: Vec<Vec<T>> = spans
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, x)| x.clone()).collect())
                    .collect();
                let mut v = det(&minor, &unit);
                if i % 2 == 1 {
                    v = v.neg();
                }
                n.push(v);
            }
            if n.iter().all(Scalar::is_zero_struct) {
                continue;
            }
            let probe = Constraint {
                normal: n.clone(),
                offset: unit.zero_like(),
            };
            let mut pos = false;
            let mut neg = false;
            for q in &proj {
                match probe.dot(&diff(q, base)).sign()? {
                    Sign::Positive => pos = true,
                    Sign::Negative => neg = true,
                    Sign::Zero => {}
                }
                if pos && neg {
                    break;
                }
            }
            if pos && neg || !pos && !neg {
                continue;
            }
            // orient so that the points satisfy normal·x ≤ offset
            let n: Vec<T> = if pos { n.iter().map(Scalar::neg).collect() } else { n };
            let mut normal = vec![unit.zero_like(); d];
            for (i, &c) in cols.iter().enumerate() {
                normal[c] = n[i].clone();
            }
            let con = Constraint {
                normal,
                offset: unit.zero_like(),
            };
            let offset = con.dot(&points[subset[0]]);
            let con = Constraint { offset, ..con };
            if !facets.iter().any(|f| same_constraint(f, &con).unwrap_or(false)) {
                facets.push(con);
            }
        }
    }
    Ok(HRep {
        dim: k,
        equalities,
        facets,
    })
}

/// Whether two constraints describe the same halfspace (positive multiples).
pub fn same_constraint<T: Scalar>(a: &Constraint<T>, b: &Constraint<T>) -> Result<bool> {
    let d = a.normal.len();
    let mut ext_a = a.normal.clone();
    ext_a.push(a.offset.clone());
    let mut ext_b = b.normal.clone();
    ext_b.push(b.offset.clone());
    for i in 0..=d {
        for j in i + 1..=d {
            if ext_a[i].mul(&ext_b[j]).sub(&ext_a[j].mul(&ext_b[i])).sign()? != Sign::Zero {
                return Ok(false);
            }
        }
    }
    for i in 0..d {
        let sa = a.normal[i].sign()?;
        if sa != Sign::Zero {
            return Ok(sa == b.normal[i].sign()?);
        }
    }
    Ok(false)
}

/// Removes constraints that repeat an earlier one up to a positive multiple.
pub fn dedupe<T: Scalar>(cons: Vec<Constraint<T>>) -> Result<Vec<Constraint<T>>> {
    let mut out: Vec<Constraint<T>> = Vec::new();
    for c in cons {
        if c.is_trivial() {
            continue;
        }
        let mut dup = false;
        for o in &out {
            if same_constraint(o, &c)? {
                dup = true;
                break;
            }
        }
        if !dup {
            out.push(c);
        }
    }
    Ok(out)
}

/// A point `num / den` with `den > 0`.
#[derive(Clone, Debug)]
pub struct FracPoint<T> {
    pub num: Vec<T>,
    pub den: T,
}

impl<T: Scalar> FracPoint<T> {
    fn same(&self, other: &FracPoint<T>) -> Result<bool> {
        for (a, b) in self.num.iter().zip(&other.num) {
            if a.mul(&other.den).sub(&b.mul(&self.den)).sign()? != Sign::Zero {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Vertices of a pointed polyhedron `{x : cons}` in ℝ^d, by Cramer's rule on
/// every `d`-subset of constraints.
pub fn enumerate_vertices<T: Scalar>(cons: &[Constraint<T>], d: usize, unit: &T) -> Result<Vec<FracPoint<T>>> {
    let mut out: Vec<FracPoint<T>> = Vec::new();
    let balls: Vec<Constraint<Ball>> = cons
        .iter()
        .map(|c| Constraint { normal: c.normal.iter().map(Scalar::ball).collect(), offset: c.offset.ball() })
        .collect();
    let ball_unit = unit.ball();
    for subset in combinations(cons.len(), d) {
        if certainly_infeasible(&balls, &subset, &ball_unit) {
            continue;
        }
        let a: Vec<Vec<T>> = subset.iter().map(|&i| cons[i].normal.clone()).collect();
        let mut den = det(&a, unit);
        let s = den.sign()?;
        if s == Sign::Zero {
            continue;
        }
        let mut num = Vec::with_capacity(d);
        for j in 0..d {
            let aj: Vec<Vec<T>> = subset
                .iter()
                .map(|&i| {
                    let mut row = cons[i].normal.clone();
                    row[j] = cons[i].offset.clone();
                    row
                })
                .collect();
            num.push(det(&aj, unit));
        }
        if s == Sign::Negative {
            den = den.neg();
            num = num.iter().map(Scalar::neg).collect();
        }
        let mut feasible = true;
        for (i, c) in cons.iter().enumerate() {
            if subset.contains(&i) {
                continue;
            }
            if c.slack_sign_frac(&num, &den)? == Sign::Negative {
                feasible = false;
                break;
            }
        }
        if !feasible {
            continue;
        }
        let v = FracPoint { num, den };
        let mut dup = false;
        for o in &out {
            if o.same(&v)? {
                dup = true;
                break;
            }
        }
        if !dup {
            out.push(v);
        }
    }
    Ok(out)
}

/// Floating-point screening of a vertex candidate: `true` only when the
/// intersection point of the subset's hyperplanes is provably unique and provably
/// violates another constraint.
fn certainly_infeasible(balls: &[Constraint<Ball>], subset: &[usize], unit: &Ball) -> bool {
    let a: Vec<Vec<Ball>> = subset.iter().map(|&i| balls[i].normal.clone()).collect();
    let den = det(&a, unit);
    let Ok(s) = den.sign() else { return false };
    if s == Sign::Zero {
        return false;
    }
    let mut num: Vec<Ball> = (0..subset.len())
        .map(|j| {
            let aj: Vec<Vec<Ball>> = subset
                .iter()
                .map(|&i| {
                    let mut row = balls[i].normal.clone();
                    row[j] = balls[i].offset;
                    row
                })
                .collect();
            det(&aj, unit)
        })
        .collect();
    let den = if s == Sign::Negative {
        num = num.iter().map(Scalar::neg).collect();
        den.neg()
    } else {
        den
    };
    balls
        .iter()
        .enumerate()
        .any(|(i, c)| !subset.contains(&i) && matches!(c.slack_sign_frac(&num, &den), Ok(Sign::Negative)))
}

/// Affine dimension of a finite set of fractional points (−1 encoded as `None`).
pub fn frac_affine_dim<T: Scalar>(pts: &[FracPoint<T>]) -> Result<Option<usize>> {
    let Some(p0) = pts.first() else { return Ok(None) };
    let rows: Vec<Vec<T>> = pts[1..]
        .iter()
        .map(|p| {
            p.num
                .iter()
                .zip(&p0.num)
                .map(|(a, b)| a.mul(&p0.den).sub(&b.mul(&p.den)))
                .collect()
        })
        .collect();
    Ok(Some(rank(&rows)?))
}
