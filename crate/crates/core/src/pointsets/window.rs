use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactgeom::Point;

/// The closed integer box `[lower, upper]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
}

impl Window {
    pub fn new(lower: Vec<i64>, upper: Vec<i64>) -> Result<Window> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(Error::Invalid("window bounds must have equal, nonzero length".into()));
        }
        if lower.iter().zip(&upper).any(|(a, b)| a > b) {
            return Err(Error::Invalid("window lower bound exceeds upper bound".into()));
        }
        Ok(Window { lower, upper })
    }

    pub fn cube(d: usize, lo: i64, hi: i64) -> Window {
        Window::new(vec![lo; d], vec![hi; d]).expect("valid cube")
    }

    /// Parses `"x0:x1,y0:y1,..."`.
    pub fn parse(text: &str) -> Result<Window> {
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for part in text.split(',') {
            let (a, b) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("window component {part:?} is not lo:hi")))?;
            let lo = a.trim().parse::<i64>().map_err(|e| Error::Parse(format!("window bound {a:?}: {e}")))?;
            let hi = b.trim().parse::<i64>().map_err(|e| Error::Parse(format!("window bound {b:?}: {e}")))?;
            lower.push(lo);
            upper.push(hi);
        }
        Window::new(lower, upper)
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn count(&self) -> u128 {
        self.lower.iter().zip(&self.upper).map(|(a, b)| (b - a + 1) as u128).product()
    }

    pub fn contains(&self, p: &Point) -> bool {
        if p.dim() != self.dim() {
            return false;
        }
        match p.to_rational() {
            Some(q) => q.iter().zip(self.lower.iter().zip(&self.upper)).all(|(x, (lo, hi))| {
                *x >= BigInt::from(*lo).into() && *x <= BigInt::from(*hi).into()
            }),
            None => false,
        }
    }

    pub fn contains_int(&self, p: &[i64]) -> bool {
        p.len() == self.dim() && p.iter().zip(self.lower.iter().zip(&self.upper)).all(|(x, (lo, hi))| lo <= x && x <= hi)
    }

    /// Integer points in lexicographic order.
    pub fn integer_points(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut cur = self.lower.clone();
        loop {
            out.push(cur.clone());
            let mut i = self.dim();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < self.upper[i] {
                    cur[i] += 1;
                    cur[i + 1..].copy_from_slice(&self.lower[i + 1..]);
                    break;
                }
            }
        }
    }

    pub fn intersect(&self, other: &Window) -> Option<Window> {
        let lower: Vec<i64> = self.lower.iter().zip(&other.lower).map(|(a, b)| *a.max(b)).collect();
        let upper: Vec<i64> = self.upper.iter().zip(&other.upper).map(|(a, b)| *a.min(b)).collect();
        Window::new(lower, upper).ok()
    }

    pub fn is_subset_of(&self, other: &Window) -> bool {
        self.dim() == other.dim()
            && self.lower.iter().zip(&other.lower).all(|(a, b)| a >= b)
            && self.upper.iter().zip(&other.upper).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lower.iter().zip(&self.upper).map(|(a, b)| format!("{a}:{b}")).collect();
        write!(f, "{}", parts.join(","))
    }
}
