use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::basis::SymbolicBasis;
use super::number::ExactNumber;
use super::poly::Poly;
use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// A point of ℝ^d whose coordinates share one basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    coords: Vec<ExactNumber>,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            match c.to_rational() {
                Some(r) => write!(f, "{}", format_rational(&r))?,
                None => write!(f, "{c}")?,
            }
        }
        write!(f, ")")
    }
}

impl Point {
    pub fn new(coords: Vec<ExactNumber>) -> Result<Point> {
        if coords.is_empty() {
            return Err(Error::Invalid("points need at least one coordinate".into()));
        }
        let basis = coords
            .iter()
            .map(|c| c.basis())
            .find(|b| !b.is_trivial())
            .cloned();
        let coords = match basis {
            None => coords,
            Some(b) => coords.iter().map(|c| c.lift(&b)).collect::<Result<_>>()?,
        };
        Ok(Point { coords })
    }

    pub fn rational(coords: Vec<Rational>) -> Point {
        assert!(!coords.is_empty(), "points need at least one coordinate");
        Point {
            coords: coords.into_iter().map(ExactNumber::rational).collect(),
        }
    }

    pub fn integer(coords: &[i64]) -> Point {
        Self::rational(coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[ExactNumber] {
        &self.coords
    }

    pub fn basis(&self) -> &Arc<SymbolicBasis> {
        self.coords[0].basis()
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(ExactNumber::is_rational)
    }

    pub fn to_rational(&self) -> Option<Vec<Rational>> {
        self.coords.iter().map(ExactNumber::to_rational).collect()
    }

    pub fn to_integer(&self) -> Option<Vec<BigInt>> {
        self.to_rational()?
            .into_iter()
            .map(|r| r.is_integer().then(|| r.to_integer()))
            .collect()
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.to_integer()?.iter().map(|v| i64::try_from(v).ok()).collect()
    }

    /// Lexicographic comparison by exact coordinate values.
    pub fn cmp_lex(&self, other: &Point) -> Result<Ordering> {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.cmp_exact(b)? {
                Ordering::Equal => continue,
                o => return Ok(o),
            }
        }
        Ok(self.dim().cmp(&other.dim()))
    }

    pub fn approx(&self) -> Vec<f64> {
        self.coords.iter().map(ExactNumber::approx).collect()
    }
}

/// The closed halfspace `normal · x ≤ offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<HalfSpace> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::Invalid("halfspace normal must be nonzero".into()));
        }
        Ok(HalfSpace { normal, offset })
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `offset − normal·x`; nonnegative exactly on the halfspace.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.offset - self.normal.iter().zip(x).map(|(a, b)| a * b).sum::<Rational>()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.slack(x) >= Rational::zero()
    }
}

/// Dimension check shared by the predicates.
pub(crate) fn check_dims<'a>(points: impl IntoIterator<Item = &'a Point>, d: usize) -> Result<()> {
    for p in points {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.dim(),
            });
        }
    }
    Ok(())
}

/// The first non-trivial basis among the points, or the trivial one.
pub(crate) fn common_basis<'a>(points: impl IntoIterator<Item = &'a Point>) -> Result<Arc<SymbolicBasis>> {
    let mut found: Option<Arc<SymbolicBasis>> = None;
    for p in points {
        let b = p.basis();
        if b.is_trivial() {
            continue;
        }
        match &found {
            None => found = Some(b.clone()),
            Some(f) if Arc::ptr_eq(f, b) || **f == **b => {}
            Some(_) => return Err(Error::BasisMismatch),
        }
    }
    Ok(found.unwrap_or_else(SymbolicBasis::trivial))
}

pub(crate) fn rational_rows<'a>(points: impl IntoIterator<Item = &'a Point>) -> Option<Vec<Vec<Rational>>> {
    points.into_iter().map(Point::to_rational).collect()
}

pub(crate) fn poly_rows<'a>(points: impl IntoIterator<Item = &'a Point>, basis: &Arc<SymbolicBasis>) -> Vec<Vec<Poly>> {
    points
        .into_iter()
        .map(|p| p.coords().iter().map(|c| Poly::from_exact(c, basis)).collect())
        .collect()
}
