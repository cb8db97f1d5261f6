use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::basis::{Interval, SymbolicBasis, INITIAL_PRECISION};
use super::rational::{format_rational, to_f64, Rational};
use super::scalar::{Ball, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rational(r: &Rational) -> Sign {
        if r.is_positive() {
            Sign::Positive
        } else if r.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// Refines `eval(bits)` from [`INITIAL_PRECISION`] up to `cap` bits, doubling
/// each round, until the enclosure excludes zero.
pub(crate) fn refine_sign(cap: u32, mut eval: impl FnMut(u32) -> Interval) -> Result<Sign> {
    let mut bits = INITIAL_PRECISION;
    loop {
        let iv = eval(bits);
        if iv.lo.is_positive() {
            return Ok(Sign::Positive);
        }
        if iv.hi.is_negative() {
            return Ok(Sign::Negative);
        }
        if bits >= cap {
            return Err(Error::PrecisionExhausted { bits });
        }
        bits = (bits * 2).min(cap);
    }
}

/// A ℚ-linear combination of the elements of a [`SymbolicBasis`].
///
/// Purely rational numbers live over the trivial basis `{1}`; combining one with a
/// number over a richer basis lifts it onto that basis.
#[derive(Clone)]
pub struct ExactNumber {
    basis: Arc<SymbolicBasis>,
    coeffs: Vec<Rational>,
}

impl PartialEq for ExactNumber {
    fn eq(&self, other: &Self) -> bool {
        match unify(self, other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for ExactNumber {}

impl std::hash::Hash for ExactNumber {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        // Trailing zeros are skipped so that a lifted rational hashes like the original.
        let last = self.coeffs.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
        self.coeffs[..last].hash(state);
    }
}

impl fmt::Debug for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, e) in self.coeffs.iter().zip(self.basis.elements()) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e.label == "1" {
                write!(f, "{}", format_rational(c))?;
            } else {
                write!(f, "{}·{}", format_rational(c), e.label)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn unify(a: &ExactNumber, b: &ExactNumber) -> Result<(ExactNumber, ExactNumber)> {
    if Arc::ptr_eq(&a.basis, &b.basis) || a.basis == b.basis {
        return Ok((a.clone(), b.clone()));
    }
    if a.is_rational() {
        return Ok((a.lift(&b.basis)?, b.clone()));
    }
    if b.is_rational() {
        return Ok((a.clone(), b.lift(&a.basis)?));
    }
    Err(Error::BasisMismatch)
}

impl ExactNumber {
    pub fn new(basis: Arc<SymbolicBasis>, coeffs: Vec<Rational>) -> Result<ExactNumber> {
        if coeffs.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: coeffs.len(),
            });
        }
        Ok(ExactNumber { basis, coeffs })
    }

    pub fn rational(value: Rational) -> ExactNumber {
        ExactNumber {
            basis: SymbolicBasis::trivial(),
            coeffs: vec![value],
        }
    }

    pub fn integer(v: i64) -> ExactNumber {
        Self::rational(super::rational::int(v))
    }

    pub fn zero_over(basis: &Arc<SymbolicBasis>) -> ExactNumber {
        ExactNumber {
            basis: basis.clone(),
            coeffs: vec![Rational::zero(); basis.len()],
        }
    }

    /// The basis element with the given label, as a number.
    pub fn element(basis: &Arc<SymbolicBasis>, label: &str) -> Result<ExactNumber> {
        let i = basis
            .index_of(label)
            .ok_or_else(|| Error::Invalid(format!("unknown basis label {label:?}")))?;
        let mut n = Self::zero_over(basis);
        n.coeffs[i] = Rational::one();
        Ok(n)
    }

    pub fn basis(&self) -> &Arc<SymbolicBasis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when every non-unit coefficient vanishes.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Re-expresses a number over `basis`, which must extend the current one.
    pub fn lift(&self, basis: &Arc<SymbolicBasis>) -> Result<ExactNumber> {
        if Arc::ptr_eq(&self.basis, basis) || *self.basis == **basis {
            return Ok(ExactNumber {
                basis: basis.clone(),
                coeffs: self.coeffs.clone(),
            });
        }
        let mut out = Self::zero_over(basis);
        for (c, e) in self.coeffs.iter().zip(self.basis.elements()) {
            if c.is_zero() {
                continue;
            }
            let j = basis.index_of(&e.label).ok_or(Error::BasisMismatch)?;
            if basis.elements()[j].constant != e.constant {
                return Err(Error::BasisMismatch);
            }
            out.coeffs[j] = c.clone();
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &ExactNumber) -> Result<ExactNumber> {
        let (a, b) = unify(self, other)?;
        Ok(ExactNumber {
            basis: a.basis,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn try_sub(&self, other: &ExactNumber) -> Result<ExactNumber> {
        let (a, b) = unify(self, other)?;
        Ok(ExactNumber {
            basis: a.basis,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        })
    }

    /// Panicking addition for numbers already known to share a basis.
    pub fn add(&self, other: &ExactNumber) -> ExactNumber {
        self.try_add(other).expect("numbers over incompatible bases")
    }

    pub fn sub(&self, other: &ExactNumber) -> ExactNumber {
        self.try_sub(other).expect("numbers over incompatible bases")
    }

    pub fn neg(&self) -> ExactNumber {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> ExactNumber {
        ExactNumber {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn enclosure(&self, bits: u32) -> Interval {
        let mut acc = Interval::point(self.coeffs[0].clone());
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&self.basis.enclosure(i, bits).scale(c));
        }
        acc
    }

    /// Sign of the number. Zero is decided symbolically from the coefficient
    /// vector; nonzero signs are certified by refining enclosures and never guessed.
    pub fn sign(&self) -> Result<Sign> {
        if self.is_zero() {
            return Ok(Sign::Zero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Sign::of_rational(&r));
        }
        let mut ball = Ball { value: 0.0, err: 0.0 };
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                ball = ball.add(&Ball::of_f64(to_f64(c) * self.basis.float(i), 3));
            }
        }
        if let Ok(s) = ball.sign() {
            return Ok(s);
        }
        refine_sign(self.basis.precision_cap(), |bits| self.enclosure(bits))
    }

    pub fn cmp_exact(&self, other: &ExactNumber) -> Result<std::cmp::Ordering> {
        Ok(match self.try_sub(other)?.sign()? {
            Sign::Negative => std::cmp::Ordering::Less,
            Sign::Zero => std::cmp::Ordering::Equal,
            Sign::Positive => std::cmp::Ordering::Greater,
        })
    }

    pub fn approx(&self) -> f64 {
        let iv = self.enclosure(INITIAL_PRECISION);
        super::rational::to_f64(&((&iv.lo + &iv.hi) / Rational::from_integer(2.into())))
    }
}
