use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::lattice::Lattice;
use super::primes::{is_prime_i64, primes_in};
use super::window::Window;
use crate::error::{Error, Result};
use crate::exactgeom::kernel::rank;
use crate::exactgeom::linalg::{integer_solve, solve_rational};
use crate::exactgeom::point::{common_basis, poly_rows};
use crate::exactgeom::rational::common_denominator;
use crate::exactgeom::{ExactNumber, Point, Rational, SymbolicBasis};

/// A structured subset `S ⊂ ℝ^d` with decidable membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetDescriptor {
    Lattice(Lattice),
    /// `ℤ^d ∖ (L_1 ∪ … ∪ L_k)`.
    LatticeDifference { d: usize, removed: Vec<Lattice> },
    /// Points whose coordinates are all prime.
    PrimeGrid { d: usize },
    ExplicitFinite { points: Vec<Point> },
    /// `ℝ^d` minus finitely many points.
    PuncturedSpace { d: usize, excluded: Vec<Point> },
    /// `ℤ^m × D` where `D ⊂ ℝ` is the group generated by `generators`.
    DiscreteDenseProduct { m: usize, generators: Vec<ExactNumber> },
    /// The ℚ-module generated by `generators`.
    QModule { generators: Vec<Point> },
}

/// Componentwise residue mod 2 of an integer point.
pub fn parity_class(p: &Point) -> Result<Vec<u8>> {
    let ints = p
        .to_integer()
        .ok_or_else(|| Error::UnsupportedCoordinates(format!("parity of non-integer point {p}")))?;
    Ok(ints.iter().map(|v| if (v % 2u8).is_zero() { 0 } else { 1 }).collect())
}

pub fn parity_class_int(p: &[i64]) -> Vec<u8> {
    p.iter().map(|v| v.rem_euclid(2) as u8).collect()
}

fn integer_coords(p: &Point) -> Option<Vec<i64>> {
    p.to_i64()
}

impl SetDescriptor {
    pub fn integer_lattice(d: usize) -> SetDescriptor {
        SetDescriptor::Lattice(Lattice::integer(d))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SetDescriptor::Lattice(_) => "lattice",
            SetDescriptor::LatticeDifference { .. } => "lattice-difference",
            SetDescriptor::PrimeGrid { .. } => "prime-grid",
            SetDescriptor::ExplicitFinite { .. } => "explicit-finite",
            SetDescriptor::PuncturedSpace { .. } => "punctured-space",
            SetDescriptor::DiscreteDenseProduct { .. } => "discrete-dense-product",
            SetDescriptor::QModule { .. } => "q-module",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SetDescriptor::Lattice(l) => l.dim(),
            SetDescriptor::LatticeDifference { d, .. } | SetDescriptor::PrimeGrid { d } | SetDescriptor::PuncturedSpace { d, .. } => *d,
            SetDescriptor::ExplicitFinite { points } => points.first().map_or(0, Point::dim),
            SetDescriptor::DiscreteDenseProduct { m, .. } => m + 1,
            SetDescriptor::QModule { generators } => generators.first().map_or(0, Point::dim),
        }
    }

    /// Checks the structural invariants of the variant.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        if d == 0 {
            return Err(Error::Invalid(format!("{} descriptor has dimension 0", self.kind())));
        }
        match self {
            SetDescriptor::Lattice(l) => {
                if l.det() == 0 {
                    return Err(Error::Invalid("singular lattice basis".into()));
                }
            }
            SetDescriptor::LatticeDifference { removed, .. } => {
                for (i, l) in removed.iter().enumerate() {
                    if l.dim() != d {
                        return Err(Error::DimensionMismatch { expected: d, found: l.dim() });
                    }
                    if l.index() <= 1 {
                        return Err(Error::Invalid(format!("removed lattice {i} is not a proper sublattice")));
                    }
                }
            }
            SetDescriptor::PrimeGrid { .. } => {}
            SetDescriptor::ExplicitFinite { points } => {
                for p in points {
                    if p.dim() != d {
                        return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
                    }
                    if !p.is_rational() {
                        return Err(Error::UnsupportedCoordinates("explicit finite sets take rational points".into()));
                    }
                }
            }
            SetDescriptor::PuncturedSpace { excluded, .. } => {
                for p in excluded {
                    if p.dim() != d {
                        return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
                    }
                }
            }
            SetDescriptor::DiscreteDenseProduct { generators, .. } => {
                let basis = number_basis(generators)?;
                let rows: Vec<Vec<Rational>> = generators
                    .iter()
                    .map(|g| g.lift(&basis).map(|x| x.coeffs().to_vec()))
                    .collect::<Result<_>>()?;
                if rank(&rows)? < 2 {
                    return Err(Error::Invalid(
                        "dense factor needs at least two Q-independent generators".into(),
                    ));
                }
            }
            SetDescriptor::QModule { generators } => {
                for p in generators {
                    if p.dim() != d {
                        return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
                    }
                }
                common_basis(generators)?;
            }
        }
        Ok(())
    }

    pub fn is_discrete(&self) -> bool {
        matches!(
            self,
            SetDescriptor::Lattice(_)
                | SetDescriptor::LatticeDifference { .. }
                | SetDescriptor::PrimeGrid { .. }
                | SetDescriptor::ExplicitFinite { .. }
        )
    }

    /// Whether every point of `S` has integer coordinates.
    pub fn is_integral(&self) -> bool {
        match self {
            SetDescriptor::Lattice(_) | SetDescriptor::LatticeDifference { .. } | SetDescriptor::PrimeGrid { .. } => true,
            SetDescriptor::ExplicitFinite { points } => points.iter().all(|p| p.to_integer().is_some()),
            _ => false,
        }
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        let d = self.dim();
        if p.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
        }
        match self {
            SetDescriptor::Lattice(l) => Ok(p.to_rational().is_some_and(|q| l.contains_rational(&q))),
            SetDescriptor::LatticeDifference { removed, .. } => Ok(match integer_coords(p) {
                Some(v) => !removed.iter().any(|l| l.contains_int(&v)),
                None => false,
            }),
            SetDescriptor::PrimeGrid { .. } => Ok(integer_coords(p).is_some_and(|v| v.iter().all(|&x| is_prime_i64(x)))),
            SetDescriptor::ExplicitFinite { points } => Ok(points.contains(p)),
            SetDescriptor::PuncturedSpace { excluded, .. } => Ok(!excluded.contains(p)),
            SetDescriptor::DiscreteDenseProduct { m, generators } => {
                for c in &p.coords()[..*m] {
                    match c.to_rational() {
                        Some(r) if r.is_integer() => {}
                        _ => return Ok(false),
                    }
                }
                dense_group_contains(generators, &p.coords()[*m])
            }
            SetDescriptor::QModule { generators } => module_contains(generators, p),
        }
    }

    /// Integer-coordinate membership for the integral discrete variants.
    pub fn contains_int(&self, p: &[i64]) -> bool {
        match self {
            SetDescriptor::Lattice(l) => l.contains_int(p),
            SetDescriptor::LatticeDifference { removed, .. } => !removed.iter().any(|l| l.contains_int(p)),
            SetDescriptor::PrimeGrid { .. } => p.iter().all(|&x| is_prime_i64(x)),
            _ => self.contains(&Point::integer(p)).unwrap_or(false),
        }
    }

    /// The points of `S` in the window, in lexicographic order.
    pub fn enumerate(&self, w: &Window) -> Result<Vec<Point>> {
        if w.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: w.dim() });
        }
        match self {
            SetDescriptor::ExplicitFinite { points } => {
                let mut inside: Vec<Point> = points.iter().filter(|p| w.contains(p)).cloned().collect();
                let mut keyed: Vec<(Vec<Rational>, Point)> =
                    inside.drain(..).map(|p| (p.to_rational().expect("rational"), p)).collect();
                keyed.sort_by(|a, b| a.0.cmp(&b.0));
                keyed.dedup_by(|a, b| a.0 == b.0);
                Ok(keyed.into_iter().map(|(_, p)| p).collect())
            }
            _ => Ok(self.enumerate_int(w)?.iter().map(|v| Point::integer(v)).collect()),
        }
    }

    /// Enumeration for the integral discrete variants, as integer vectors.
    pub fn enumerate_int(&self, w: &Window) -> Result<Vec<Vec<i64>>> {
        match self {
            SetDescriptor::Lattice(l) => Ok(l.enumerate(w)),
            SetDescriptor::LatticeDifference { removed, .. } => Ok(w
                .integer_points()
                .into_iter()
                .filter(|p| !removed.iter().any(|l| l.contains_int(p)))
                .collect()),
            SetDescriptor::PrimeGrid { d } => {
                let axes: Vec<Vec<i64>> = (0..*d).map(|i| primes_in(w.lower[i], w.upper[i])).collect();
                let mut out = vec![Vec::new()];
                for axis in &axes {
                    out = out
                        .into_iter()
                        .flat_map(|prefix: Vec<i64>| {
                            axis.iter().map(move |&x| {
                                let mut v = prefix.clone();
                                v.push(x);
                                v
                            })
                        })
                        .collect();
                }
                Ok(out)
            }
            SetDescriptor::ExplicitFinite { .. } => self
                .enumerate(w)?
                .iter()
                .map(|p| p.to_i64().ok_or_else(|| Error::UnsupportedCoordinates("non-integer explicit point".into())))
                .collect(),
            other => Err(Error::NotEnumerable(format!("{} is not discrete", other.kind()))),
        }
    }

    /// The image under `x ↦ A x + b` for an integer matrix `A` (lattice-family and finite variants).
    pub fn map_affine(&self, a: &[Vec<i64>], b: &[i64]) -> Result<SetDescriptor> {
        let map_point = |p: &Point| -> Result<Point> {
            let q = p.to_rational().ok_or_else(|| Error::UnsupportedCoordinates("rational points expected".into()))?;
            Ok(Point::rational(
                a.iter()
                    .zip(b)
                    .map(|(row, bi)| {
                        row.iter().zip(&q).map(|(x, y)| Rational::from_integer(BigInt::from(*x)) * y).sum::<Rational>()
                            + Rational::from_integer(BigInt::from(*bi))
                    })
                    .collect(),
            ))
        };
        Ok(match self {
            SetDescriptor::Lattice(l) => SetDescriptor::Lattice(l.map_affine(a, b)),
            SetDescriptor::LatticeDifference { d, removed } => {
                // ℤ^d maps onto itself only for unimodular A with integer b.
                SetDescriptor::LatticeDifference {
                    d: *d,
                    removed: removed.iter().map(|l| l.map_affine(a, b)).collect(),
                }
            }
            SetDescriptor::ExplicitFinite { points } => SetDescriptor::ExplicitFinite {
                points: points.iter().map(map_point).collect::<Result<_>>()?,
            },
            SetDescriptor::PuncturedSpace { d, excluded } => SetDescriptor::PuncturedSpace {
                d: *d,
                excluded: excluded.iter().map(map_point).collect::<Result<_>>()?,
            },
            other => {
                return Err(Error::Invalid(format!("affine images of {} are not supported", other.kind())));
            }
        })
    }
}

fn number_basis(numbers: &[ExactNumber]) -> Result<Arc<SymbolicBasis>> {
    let mut found: Option<Arc<SymbolicBasis>> = None;
    for n in numbers {
        if n.basis().is_trivial() {
            continue;
        }
        match &found {
            None => found = Some(n.basis().clone()),
            Some(f) if **f == **n.basis() => {}
            Some(_) => return Err(Error::BasisMismatch),
        }
    }
    Ok(found.unwrap_or_else(SymbolicBasis::trivial))
}

/// Whether `v` is an integer combination of `generators`.
pub fn dense_group_contains(generators: &[ExactNumber], v: &ExactNumber) -> Result<bool> {
    let basis = number_basis(generators)?;
    let v = match v.lift(&basis) {
        Ok(v) => v,
        // a label outside the generators' basis with a nonzero coefficient
        Err(Error::BasisMismatch) => return Ok(false),
        Err(e) => return Err(e),
    };
    let gens: Vec<ExactNumber> = generators.iter().map(|g| g.lift(&basis)).collect::<Result<_>>()?;
    let labels = basis.len();
    let mut a = Vec::with_capacity(labels);
    let mut b = Vec::with_capacity(labels);
    for l in 0..labels {
        let row: Vec<&Rational> = gens.iter().map(|g| &g.coeffs()[l]).chain(std::iter::once(&v.coeffs()[l])).collect();
        let den = common_denominator(row.iter().copied());
        let scale = Rational::from_integer(den);
        let ints: Vec<BigInt> = row.iter().map(|x| (*x * &scale).to_integer()).collect();
        let (last, head) = ints.split_last().expect("nonempty row");
        a.push(head.to_vec());
        b.push(last.clone());
    }
    Ok(integer_solve(&a, &b).is_some())
}

/// Whether `p` lies in the ℚ-span of `generators`.
///
/// One combined rational system over all coordinates and basis labels: the
/// unknown multipliers are shared between labels, so the per-label systems must
/// be solved together.
pub fn module_contains(generators: &[Point], p: &Point) -> Result<bool> {
    let all: Vec<&Point> = generators.iter().chain(std::iter::once(p)).collect();
    let basis = match common_basis(all.iter().copied()) {
        Ok(b) => b,
        Err(Error::BasisMismatch) => return Ok(false),
        Err(e) => return Err(e),
    };
    let lift = |q: &Point| -> Result<Vec<ExactNumber>> { q.coords().iter().map(|c| c.lift(&basis)).collect() };
    let gens: Vec<Vec<ExactNumber>> = generators.iter().map(lift).collect::<Result<_>>()?;
    let target = lift(p)?;
    let n = gens.len();
    let mut rows = Vec::new();
    for i in 0..p.dim() {
        for l in 0..basis.len() {
            let mut row: Vec<Rational> = gens.iter().map(|g| g[i].coeffs()[l].clone()).collect();
            row.push(target[i].coeffs()[l].clone());
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    Ok(solve_rational(rows, n).is_some())
}

/// Real dimension of the span of module generators.
pub fn module_real_rank(generators: &[Point]) -> Result<usize> {
    let basis = common_basis(generators)?;
    rank(&poly_rows(generators, &basis))
}
