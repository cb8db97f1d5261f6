//! Polynomials in the non-unit basis elements.
//!
//! Predicates on symbolic points multiply coordinates together, which leaves the
//! ℚ-span of the basis. Those intermediate values are kept as polynomials whose
//! sign is certified by interval refinement, exactly like [`ExactNumber`]s.
//! Products of square roots are reduced with `√n·√n = n`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::basis::{Interval, SymbolicBasis};
use super::scalar::{Ball, Scalar};
use super::number::{refine_sign, ExactNumber, Sign};
use super::rational::{to_f64, Rational};
use crate::error::Result;

/// Sorted list of `(variable, exponent)` pairs; variables are basis indices ≥ 1.
type Monomial = Vec<(usize, u32)>;

#[derive(Clone)]
pub struct Poly {
    basis: Arc<SymbolicBasis>,
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .map(|(v, e)| {
                        let l = &self.basis.elements()[*v].label;
                        if *e == 1 {
                            l.clone()
                        } else {
                            format!("{l}^{e}")
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", vars.join("*"))
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn mul_monomials(basis: &SymbolicBasis, a: &Monomial, b: &Monomial) -> (Monomial, Rational) {
    let mut exps: BTreeMap<usize, u32> = a.iter().cloned().collect();
    for (v, e) in b {
        *exps.entry(*v).or_insert(0) += e;
    }
    let mut factor = Rational::one();
    let mut out = Vec::with_capacity(exps.len());
    for (v, mut e) in exps {
        if let Some(sq) = basis.elements()[v].constant.rational_square() {
            while e >= 2 {
                factor *= Rational::from_integer(sq.into());
                e -= 2;
            }
        }
        if e > 0 {
            out.push((v, e));
        }
    }
    (out, factor)
}

impl Poly {
    pub fn zero(basis: &Arc<SymbolicBasis>) -> Poly {
        Poly {
            basis: basis.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(basis: &Arc<SymbolicBasis>, c: Rational) -> Poly {
        let mut p = Poly::zero(basis);
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn from_exact(n: &ExactNumber, basis: &Arc<SymbolicBasis>) -> Poly {
        let n = n.lift(basis).expect("coordinate over an incompatible basis");
        let mut p = Poly::zero(basis);
        for (i, c) in n.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = if i == 0 { Vec::new() } else { vec![(i, 1)] };
            p.terms.insert(m, c.clone());
        }
        p
    }

    pub fn basis(&self) -> &Arc<SymbolicBasis> {
        &self.basis
    }

    /// Structural zero test (the identically-zero polynomial).
    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|(_, e)| e).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// The polynomial as a linear form, when its degree is at most one.
    pub fn to_exact(&self) -> Option<ExactNumber> {
        if self.degree() > 1 {
            return None;
        }
        let mut coeffs = vec![Rational::zero(); self.basis.len()];
        for (m, c) in &self.terms {
            match m.as_slice() {
                [] => coeffs[0] = c.clone(),
                [(v, 1)] => coeffs[*v] = c.clone(),
                _ => return None,
            }
        }
        ExactNumber::new(self.basis.clone(), coeffs).ok()
    }

    fn insert(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            // BTreeMap has no entry-removal from a mutable ref, so re-find.
            let key: Vec<Monomial> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            basis: self.basis.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        if k.is_zero() {
            return Poly::zero(&self.basis);
        }
        Poly {
            basis: self.basis.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(&self.basis);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let (m, f) = mul_monomials(&self.basis, ma, mb);
                out.insert(m, ca * cb * f);
            }
        }
        out
    }

    pub fn enclosure(&self, bits: u32) -> Interval {
        let mut acc = Interval::point(Rational::zero());
        for (m, c) in &self.terms {
            let mut iv = Interval::point(c.clone());
            for (v, e) in m {
                let base = self.basis.enclosure(*v, bits);
                for _ in 0..*e {
                    iv = iv.mul(&base);
                }
            }
            acc = acc.add(&iv);
        }
        acc
    }

    /// Certified sign; the identically-zero polynomial is zero, anything else is
    /// refined until its enclosure excludes zero or the precision cap is hit.
    pub fn sign(&self) -> Result<Sign> {
        if self.terms.is_empty() {
            return Ok(Sign::Zero);
        }
        if let Some(c) = self.as_constant() {
            return Ok(Sign::of_rational(&c));
        }
        if let Ok(s) = Scalar::sign(&self.ball()) {
            return Ok(s);
        }
        refine_sign(self.basis.precision_cap(), |bits| self.enclosure(bits))
    }

    pub(crate) fn ball(&self) -> Ball {
        let mut acc = Ball { value: 0.0, err: 0.0 };
        for (m, c) in &self.terms {
            let mut t = to_f64(c);
            let mut k = 1;
            for (v, e) in m {
                for _ in 0..*e {
                    t *= self.basis.float(*v);
                    k += 2;
                }
            }
            acc = Scalar::add(&acc, &Ball::of_f64(t, k));
        }
        acc
    }

    pub fn approx(&self) -> f64 {
        let iv = self.enclosure(super::basis::INITIAL_PRECISION);
        super::rational::to_f64(&((&iv.lo + &iv.hi) / Rational::from_integer(2.into())))
    }

    /// Finds the linear form `L` with `self = den · L`, if one exists.
    ///
    /// Matching coefficients monomial by monomial gives a rational linear system
    /// in the coefficients of `L`.
    pub fn quotient_as_linear(&self, den: &Poly) -> Option<ExactNumber> {
        if den.is_structurally_zero() {
            return None;
        }
        if let Some(c) = den.as_constant() {
            return self.scale(&(Rational::one() / c)).to_exact();
        }
        let n = self.basis.len();
        let products: Vec<Poly> = (0..n)
            .map(|i| {
                let m = if i == 0 { Vec::new() } else { vec![(i, 1)] };
                let mut x = Poly::zero(&self.basis);
                x.terms.insert(m, Rational::one());
                den.mul(&x)
            })
            .collect();
        let mut monomials: Vec<Monomial> = self.terms.keys().cloned().collect();
        for p in &products {
            monomials.extend(p.terms.keys().cloned());
        }
        monomials.sort();
        monomials.dedup();
        let rows: Vec<Vec<Rational>> = monomials
            .iter()
            .map(|m| {
                let mut row: Vec<Rational> = products
                    .iter()
                    .map(|p| p.terms.get(m).cloned().unwrap_or_else(Rational::zero))
                    .collect();
                row.push(self.terms.get(m).cloned().unwrap_or_else(Rational::zero));
                row
            })
            .collect();
        let sol = super::linalg::solve_rational(rows, n)?;
        ExactNumber::new(self.basis.clone(), sol).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::basis::Constant;
    use crate::exactgeom::rational::int;

    fn roots() -> Arc<SymbolicBasis> {
        SymbolicBasis::new(vec![("a".into(), Constant::Sqrt(2)), ("b".into(), Constant::Sqrt(3))]).unwrap()
    }

    #[test]
    fn square_roots_reduce() {
        let b = roots();
        let a = Poly::from_exact(&ExactNumber::element(&b, "a").unwrap(), &b);
        let sq = a.mul(&a);
        assert_eq!(sq.as_constant(), Some(int(2)));
    }

    #[test]
    fn product_sign() {
        let b = roots();
        let a = Poly::from_exact(&ExactNumber::element(&b, "a").unwrap(), &b);
        let c = Poly::from_exact(&ExactNumber::element(&b, "b").unwrap(), &b);
        // sqrt6 - 5/2 < 0
        let p = a.mul(&c).sub(&Poly::constant(&b, Rational::new(5.into(), 2.into())));
        assert_eq!(p.sign().unwrap(), Sign::Negative);
    }

    #[test]
    fn quotient_recovers_linear_form() {
        let b = roots();
        let a = Poly::from_exact(&ExactNumber::element(&b, "a").unwrap(), &b);
        let c = Poly::from_exact(&ExactNumber::element(&b, "b").unwrap(), &b);
        let den = a.add(&Poly::constant(&b, int(3)));
        let lin = c.scale(&int(2)).sub(&Poly::constant(&b, int(1)));
        let num = den.mul(&lin);
        let q = num.quotient_as_linear(&den).unwrap();
        assert_eq!(q, lin.to_exact().unwrap());
        // c*c/a = 3/sqrt2 = (3/2) sqrt2 is still linear thanks to the reduction rule.
        let q2 = c.mul(&c).quotient_as_linear(&a).unwrap();
        assert_eq!(q2, ExactNumber::new(b.clone(), vec![int(0), Rational::new(3.into(), 2.into()), int(0)]).unwrap());
        // a*c / 2 is not a linear form.
        assert!(a.mul(&c).quotient_as_linear(&Poly::constant(&b, int(2))).is_none());
        // but a*c / (a + c) = 3a - 2c is
        assert_eq!(
            a.mul(&c).quotient_as_linear(&a.add(&c)).unwrap(),
            a.scale(&int(3)).sub(&c.scale(&int(2))).to_exact().unwrap()
        );
    }
}
