//! The core `∩_i conv(R ∖ {x_i})` of a point configuration.
//!
//! Rational configurations are handled by LP over the union of the leave-one-out
//! hull descriptions. Symbolic configurations go through vertex enumeration with
//! certified signs, since the simplex would need division by symbolic pivots.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::basis::SymbolicBasis;
use super::kernel::{self, dedupe, enumerate_vertices, frac_affine_dim, hull_hrep, Constraint, FracPoint};
use super::linalg::{nullspace, primitive_integer};
use super::lp::{optimize_rational, Direction, Standard};
use super::number::{ExactNumber, Sign};
use super::point::{check_dims, common_basis, poly_rows, rational_rows, HalfSpace, Point};
use super::poly::Poly;
use super::rational::{ceil_i64, floor_i64, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct RationalSummary {
    dim: usize,
    witness: Vec<Rational>,
    bbox: Vec<(Rational, Rational)>,
}

#[derive(Clone, Debug)]
enum CoreData {
    Rational {
        halfspaces: Vec<HalfSpace>,
        summary: Option<RationalSummary>,
    },
    Symbolic {
        basis: Arc<SymbolicBasis>,
        constraints: Vec<Constraint<Poly>>,
        vertices: Vec<FracPoint<Poly>>,
    },
}

#[derive(Clone, Debug)]
pub struct CorePolytope {
    generators: Vec<Point>,
    d: usize,
    data: CoreData,
}

/// Shorthand for [`CorePolytope::new`].
pub fn core_of(r: &[Point]) -> Result<CorePolytope> {
    CorePolytope::new(r)
}

fn to_halfspace(c: &Constraint<Rational>) -> Option<HalfSpace> {
    let mut ext = c.normal.clone();
    ext.push(c.offset.clone());
    let ints = primitive_integer(&ext);
    let (off, normal) = ints.split_last().expect("nonempty");
    if normal.iter().all(Zero::is_zero) {
        return None;
    }
    Some(HalfSpace {
        normal: normal.iter().map(|v| Rational::from_integer(v.clone())).collect(),
        offset: Rational::from_integer(off.clone()),
    })
}

fn leave_one_out<T: Clone>(items: &[T], i: usize) -> Vec<T> {
    items.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect()
}

/// The union of the half-space descriptions of all leave-one-out hulls, over ℚ.
pub(crate) fn rational_core_halfspaces(rows: &[Vec<Rational>]) -> Result<Vec<HalfSpace>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in 0..rows.len() {
        let h = hull_hrep(&leave_one_out(rows, i))?;
        for c in h.inequalities() {
            if let Some(hs) = to_halfspace(&c) {
                if seen.insert(hs.clone()) {
                    out.push(hs);
                }
            }
        }
    }
    Ok(out)
}

/// Affine dimension of a nonempty bounded polyhedron by direction probing: each
/// round takes a direction orthogonal to everything found so far and either finds
/// a point moving along it or proves it constant (at most `2d` LPs).
pub(crate) fn polytope_dim(hs: &[HalfSpace], d: usize, x0: &[Rational]) -> usize {
    let mut found: Vec<Vec<Rational>> = Vec::new();
    let mut fixed: Vec<Vec<Rational>> = Vec::new();
    loop {
        let rows: Vec<Vec<Rational>> = found.iter().chain(fixed.iter()).cloned().collect();
        let ns = nullspace(&rows, d);
        let Some(w) = ns.into_iter().next() else { break };
        let base: Rational = w.iter().zip(x0).map(|(a, b)| a * b).sum();
        let mut moved = None;
        for dir in [Direction::Max, Direction::Min] {
            if let Standard::Optimal { value, x } = optimize_rational(hs, d, &w, dir) {
                if value != base {
                    moved = Some(x);
                    break;
                }
            }
        }
        match moved {
            Some(x) => found.push(x.iter().zip(x0).map(|(a, b)| a - b).collect()),
            None => fixed.push(w),
        }
    }
    found.len()
}

impl CorePolytope {
    pub fn new(r: &[Point]) -> Result<CorePolytope> {
        if r.len() < 2 {
            return Err(Error::Invalid("core needs at least two points".into()));
        }
        let d = r[0].dim();
        check_dims(r, d)?;
        let data = match rational_rows(r) {
            Some(rows) => Self::rational_data(&rows, d)?,
            None => Self::symbolic_data(r, d)?,
        };
        Ok(CorePolytope {
            generators: r.to_vec(),
            d,
            data,
        })
    }

    fn rational_data(rows: &[Vec<Rational>], d: usize) -> Result<CoreData> {
        let halfspaces = rational_core_halfspaces(rows)?;
        let zero = vec![Rational::zero(); d];
        let summary = match optimize_rational(&halfspaces, d, &zero, Direction::Min) {
            Standard::Optimal { x, .. } => {
                let dim = polytope_dim(&halfspaces, d, &x);
                let mut bbox = Vec::with_capacity(d);
                for i in 0..d {
                    let mut e = zero.clone();
                    e[i] = Rational::from_integer(1.into());
                    let lo = match optimize_rational(&halfspaces, d, &e, Direction::Min) {
                        Standard::Optimal { value, .. } => value,
                        _ => return Err(Error::Unbounded),
                    };
                    let hi = match optimize_rational(&halfspaces, d, &e, Direction::Max) {
                        Standard::Optimal { value, .. } => value,
                        _ => return Err(Error::Unbounded),
                    };
                    bbox.push((lo, hi));
                }
                Some(RationalSummary { dim, witness: x, bbox })
            }
            Standard::Infeasible => None,
            Standard::Unbounded => return Err(Error::Unbounded),
        };
        Ok(CoreData::Rational { halfspaces, summary })
    }

    fn symbolic_data(r: &[Point], d: usize) -> Result<CoreData> {
        let basis = common_basis(r)?;
        let rows = poly_rows(r, &basis);
        let mut all = Vec::new();
        for i in 0..rows.len() {
            all.extend(hull_hrep(&leave_one_out(&rows, i))?.inequalities());
        }
        let constraints = dedupe(all)?;
        let unit = Poly::constant(&basis, Rational::from_integer(1.into()));
        let vertices = enumerate_vertices(&constraints, d, &unit)?;
        Ok(CoreData::Symbolic {
            basis,
            constraints,
            vertices,
        })
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn is_empty(&self) -> bool {
        match &self.data {
            CoreData::Rational { summary, .. } => summary.is_none(),
            CoreData::Symbolic { vertices, .. } => vertices.is_empty(),
        }
    }

    /// Affine dimension; `None` for the empty core.
    pub fn dim(&self) -> Result<Option<usize>> {
        match &self.data {
            CoreData::Rational { summary, .. } => Ok(summary.as_ref().map(|s| s.dim)),
            CoreData::Symbolic { vertices, .. } => frac_affine_dim(vertices),
        }
    }

    /// The unique point of a zero-dimensional core.
    pub fn point(&self) -> Result<Option<Point>> {
        if self.dim()? != Some(0) {
            return Ok(None);
        }
        match &self.data {
            CoreData::Rational { summary, .. } => Ok(summary.as_ref().map(|s| Point::rational(s.witness.clone()))),
            CoreData::Symbolic { vertices, .. } => Ok(Some(frac_to_point(&vertices[0])?)),
        }
    }

    /// Exact coordinate bounds; `None` for the empty core.
    pub fn bbox(&self) -> Result<Option<Vec<(ExactNumber, ExactNumber)>>> {
        match &self.data {
            CoreData::Rational { summary, .. } => Ok(summary.as_ref().map(|s| {
                s.bbox
                    .iter()
                    .map(|(a, b)| (ExactNumber::rational(a.clone()), ExactNumber::rational(b.clone())))
                    .collect()
            })),
            CoreData::Symbolic { vertices, .. } => {
                if vertices.is_empty() {
                    return Ok(None);
                }
                let mut out = Vec::with_capacity(self.d);
                for i in 0..self.d {
                    let mut lo = &vertices[0];
                    let mut hi = &vertices[0];
                    for v in &vertices[1..] {
                        if cmp_coord(v, lo, i)? == Sign::Negative {
                            lo = v;
                        }
                        if cmp_coord(v, hi, i)? == Sign::Positive {
                            hi = v;
                        }
                    }
                    out.push((frac_coord(lo, i)?, frac_coord(hi, i)?));
                }
                Ok(Some(out))
            }
        }
    }

    /// Integer box containing the core: floors of the lower and ceilings of the upper bounds.
    pub fn integer_bbox(&self) -> Result<Option<Vec<(i64, i64)>>> {
        match &self.data {
            CoreData::Rational { summary, .. } => Ok(summary.as_ref().map(|s| {
                s.bbox
                    .iter()
                    .map(|(a, b)| (floor_i64(a).expect("core within i64"), ceil_i64(b).expect("core within i64")))
                    .collect()
            })),
            CoreData::Symbolic { vertices, .. } => {
                if vertices.is_empty() {
                    return Ok(None);
                }
                let mut out = Vec::with_capacity(self.d);
                for i in 0..self.d {
                    let vals: Vec<f64> = vertices.iter().map(|v| v.num[i].approx() / v.den.approx()).collect();
                    let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
                    let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                    // a unit margin absorbs the rounding of the approximations
                    out.push((lo.floor() as i64 - 1, hi.ceil() as i64 + 1));
                }
                Ok(Some(out))
            }
        }
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        check_dims(std::iter::once(p), self.d)?;
        match &self.data {
            CoreData::Rational { halfspaces, summary } => {
                if summary.is_none() {
                    return Ok(false);
                }
                if let Some(q) = p.to_rational() {
                    return Ok(halfspaces.iter().all(|h| h.contains(&q)));
                }
                let basis = p.basis().clone();
                let q = &poly_rows(std::iter::once(p), &basis)[0];
                for h in halfspaces {
                    let c = Constraint {
                        normal: h.normal.iter().map(|v| Poly::constant(&basis, v.clone())).collect(),
                        offset: Poly::constant(&basis, h.offset.clone()),
                    };
                    if c.slack_sign(q)? == Sign::Negative {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            CoreData::Symbolic {
                basis,
                constraints,
                vertices,
            } => {
                if vertices.is_empty() {
                    return Ok(false);
                }
                let b = common_basis([p].into_iter().chain(self.generators.iter()))?;
                if !Arc::ptr_eq(&b, basis) && *b != **basis {
                    return Err(Error::BasisMismatch);
                }
                let q = &poly_rows(std::iter::once(p), basis)[0];
                for c in constraints {
                    if c.slack_sign(q)? == Sign::Negative {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Rational half-space description, when the generators are rational.
    pub fn halfspaces(&self) -> Option<&[HalfSpace]> {
        match &self.data {
            CoreData::Rational { halfspaces, .. } => Some(halfspaces),
            CoreData::Symbolic { .. } => None,
        }
    }

    /// Core constraints as polynomials over `basis`.
    pub(crate) fn poly_constraints(&self, basis: &Arc<SymbolicBasis>) -> Vec<Constraint<Poly>> {
        match &self.data {
            CoreData::Rational { halfspaces, .. } => halfspaces
                .iter()
                .map(|h| Constraint {
                    normal: h.normal.iter().map(|v| Poly::constant(basis, v.clone())).collect(),
                    offset: Poly::constant(basis, h.offset.clone()),
                })
                .collect(),
            CoreData::Symbolic { constraints, .. } => constraints.clone(),
        }
    }

    /// Vertices as exact points; `None` when some coordinate is not a linear form
    /// over the basis.
    pub fn vertex_points(&self) -> Result<Option<Vec<Point>>> {
        match &self.data {
            CoreData::Rational { halfspaces, summary } => {
                if summary.is_none() {
                    return Ok(Some(Vec::new()));
                }
                let vs = enumerate_vertices(&rational_constraints(halfspaces), self.d, &Rational::from_integer(BigInt::from(1)))?;
                Ok(Some(
                    vs.iter()
                        .map(|v| Point::rational(v.num.iter().map(|x| x / &v.den).collect()))
                        .collect(),
                ))
            }
            CoreData::Symbolic { vertices, .. } => {
                let mut out = Vec::with_capacity(vertices.len());
                for v in vertices {
                    match frac_to_point(v) {
                        Ok(p) => out.push(p),
                        Err(Error::UnsupportedCoordinates(_)) => return Ok(None),
                        Err(e) => return Err(e),
                    }
                }
                Ok(Some(out))
            }
        }
    }

    /// Vertices, as floating-point approximations (for figures).
    pub fn vertices_approx(&self) -> Result<Vec<Vec<f64>>> {
        match &self.data {
            CoreData::Rational { halfspaces, summary } => {
                if summary.is_none() {
                    return Ok(Vec::new());
                }
                let unit = Rational::from_integer(1.into());
                let vs = enumerate_vertices(&rational_constraints(halfspaces), self.d, &unit)?;
                Ok(vs
                    .iter()
                    .map(|v| v.num.iter().map(|x| super::rational::to_f64(&(x / &v.den))).collect())
                    .collect())
            }
            CoreData::Symbolic { vertices, .. } => Ok(vertices
                .iter()
                .map(|v| v.num.iter().map(|x| x.approx() / v.den.approx()).collect())
                .collect()),
        }
    }
}

fn rational_constraints(hs: &[HalfSpace]) -> Vec<Constraint<Rational>> {
    hs.iter()
        .map(|h| Constraint {
            normal: h.normal.clone(),
            offset: h.offset.clone(),
        })
        .collect()
}

fn cmp_coord(a: &FracPoint<Poly>, b: &FracPoint<Poly>, i: usize) -> Result<Sign> {
    a.num[i].mul(&b.den).sub(&b.num[i].mul(&a.den)).sign()
}

fn frac_coord(v: &FracPoint<Poly>, i: usize) -> Result<ExactNumber> {
    v.num[i].quotient_as_linear(&v.den).ok_or_else(|| {
        Error::UnsupportedCoordinates("core coordinate is not a linear combination of the basis".into())
    })
}

fn frac_to_point(v: &FracPoint<Poly>) -> Result<Point> {
    Point::new((0..v.num.len()).map(|i| frac_coord(v, i)).collect::<Result<_>>()?)
}

/// Vertices of the rational core by enumeration, for cross-checking the LP route.
pub fn rational_core_vertices(r: &[Point]) -> Result<Vec<Vec<Rational>>> {
    let rows = rational_rows(r).ok_or_else(|| Error::UnsupportedCoordinates("rational points expected".into()))?;
    let hs = rational_core_halfspaces(&rows)?;
    let d = rows[0].len();
    let vs = enumerate_vertices(&rational_constraints(&hs), d, &Rational::from_integer(BigInt::from(1)))?;
    Ok(vs.iter().map(|v| v.num.iter().map(|x| x / &v.den).collect()).collect())
}

/// Affine dimension of a finite rational point set (`None` when empty).
pub fn affine_dim(points: &[Vec<Rational>]) -> Option<usize> {
    let p0 = points.first()?;
    let rows: Vec<Vec<Rational>> = points[1..].iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
    Some(kernel::rank(&rows).expect("rational rank"))
}
