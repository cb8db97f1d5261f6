//! Declared ℚ-linearly independent real constants and their interval enclosures.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{invalid, Result};

/// Default cap on the number of fractional bits used by the sign oracle.
pub const DEFAULT_PRECISION_CAP: u32 = 4096;
/// Precision of the first enclosure tried by the sign oracle.
pub const INITIAL_PRECISION: u32 = 64;

/// A real constant with a refinable enclosure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Constant {
    /// The rational unit `1`; always element 0 of a basis.
    Unit,
    Pi,
    E,
    /// `√n` for a squarefree `n > 1`.
    Sqrt(u64),
}

impl Constant {
    pub fn parse(text: &str) -> Result<Constant> {
        let t = text.trim();
        match t {
            "1" | "unit" => Ok(Constant::Unit),
            "pi" | "π" => Ok(Constant::Pi),
            "e" => Ok(Constant::E),
            _ => {
                let inner = t
                    .strip_prefix("sqrt(")
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| crate::Error::Parse(format!("unknown constant {t:?}")))?;
                let n: u64 = inner
                    .trim()
                    .parse()
                    .map_err(|_| crate::Error::Parse(format!("bad sqrt argument in {t:?}")))?;
                Ok(Constant::Sqrt(n))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Constant::Unit => "1".into(),
            Constant::Pi => "pi".into(),
            Constant::E => "e".into(),
            Constant::Sqrt(n) => format!("sqrt({n})"),
        }
    }

    /// Square of the constant when it is rational (used to reduce products of square roots).
    pub(crate) fn rational_square(&self) -> Option<u64> {
        match self {
            Constant::Sqrt(n) => Some(*n),
            Constant::Unit => Some(1),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub label: String,
    pub constant: Constant,
}

/// Closed interval with rational endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn point(v: Rational) -> Interval {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if c.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn excludes_zero(&self) -> bool {
        self.lo.is_positive() || self.hi.is_negative()
    }
}

/// An ordered list of constants declared linearly independent over ℚ.
///
/// Element 0 is always the unit. Enclosures are cached per precision level, so a
/// basis can be shared freely between threads.
pub struct SymbolicBasis {
    elements: Vec<BasisElement>,
    precision_cap: u32,
    cache: Mutex<Vec<BTreeMap<u32, Interval>>>,
    floats: Vec<f64>,
}

impl fmt::Debug for SymbolicBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolicBasis")
            .field("elements", &self.elements)
            .field("precision_cap", &self.precision_cap)
            .finish()
    }
}

impl PartialEq for SymbolicBasis {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for SymbolicBasis {}

fn squarefree_part(mut n: u64) -> u64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out * n
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl SymbolicBasis {
    /// Builds a basis from `(label, constant)` pairs for the non-unit elements.
    ///
    /// Square roots must be of squarefree, pairwise coprime integers so that
    /// products of distinct roots stay independent of the declared elements.
    pub fn new(elements: Vec<(String, Constant)>) -> Result<Arc<SymbolicBasis>> {
        Self::with_cap(elements, DEFAULT_PRECISION_CAP)
    }

    pub fn with_cap(elements: Vec<(String, Constant)>, precision_cap: u32) -> Result<Arc<SymbolicBasis>> {
        let mut all = vec![BasisElement {
            label: "1".into(),
            constant: Constant::Unit,
        }];
        let mut roots: Vec<u64> = Vec::new();
        for (label, constant) in elements {
            if label.is_empty() {
                return invalid("empty basis label");
            }
            if all.iter().any(|e| e.label == label) {
                return invalid(format!("duplicate basis label {label:?}"));
            }
            if all.iter().any(|e| e.constant == constant) {
                return invalid(format!("constant {} declared twice", constant.name()));
            }
            match constant {
                Constant::Unit => return invalid("the unit is implicit and must not be redeclared"),
                Constant::Sqrt(n) => {
                    if n < 2 || squarefree_part(n) != n {
                        return invalid(format!("sqrt({n}) needs a squarefree argument > 1"));
                    }
                    if let Some(m) = roots.iter().find(|&&m| gcd(m, n) != 1) {
                        return invalid(format!("sqrt({n}) and sqrt({m}) must have coprime arguments"));
                    }
                    roots.push(n);
                }
                Constant::Pi | Constant::E => {}
            }
            all.push(BasisElement { label, constant });
        }
        if precision_cap < INITIAL_PRECISION {
            return invalid(format!("precision cap must be at least {INITIAL_PRECISION} bits"));
        }
        let n = all.len();
        let floats = all
            .iter()
            .map(|e| {
                let iv = compute_enclosure(&e.constant, INITIAL_PRECISION);
                super::rational::to_f64(&((&iv.lo + &iv.hi) / Rational::from_integer(2.into())))
            })
            .collect();
        Ok(Arc::new(SymbolicBasis {
            elements: all,
            precision_cap,
            cache: Mutex::new(vec![BTreeMap::new(); n]),
            floats,
        }))
    }

    /// The basis `{1}` used by purely rational numbers.
    pub fn trivial() -> Arc<SymbolicBasis> {
        static TRIVIAL: OnceLock<Arc<SymbolicBasis>> = OnceLock::new();
        TRIVIAL
            .get_or_init(|| SymbolicBasis::new(Vec::new()).expect("trivial basis"))
            .clone()
    }

    /// Same elements with a different precision cap.
    pub fn recapped(&self, precision_cap: u32) -> Result<Arc<SymbolicBasis>> {
        Self::with_cap(
            self.elements[1..]
                .iter()
                .map(|e| (e.label.clone(), e.constant.clone()))
                .collect(),
            precision_cap,
        )
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.elements.iter().map(|e| e.label.as_str())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.label == label)
    }

    pub fn precision_cap(&self) -> u32 {
        self.precision_cap
    }

    /// Enclosure of element `index` with width at most `2^-bits`.
    pub fn enclosure(&self, index: usize, bits: u32) -> Interval {
        if let Some((_, iv)) = self.cache.lock().unwrap()[index].range(bits..).next() {
            return iv.clone();
        }
        let iv = compute_enclosure(&self.elements[index].constant, bits);
        self.cache.lock().unwrap()[index].insert(bits, iv.clone());
        iv
    }

    /// Element `index` rounded to `f64`, with relative error below `2^-52`.
    pub(crate) fn float(&self, index: usize) -> f64 {
        self.floats[index]
    }

    pub fn approx(&self, index: usize) -> f64 {
        let iv = self.enclosure(index, INITIAL_PRECISION);
        super::rational::to_f64(&((&iv.lo + &iv.hi) / Rational::from_integer(2.into())))
    }
}

fn dyadic(num: BigInt, bits: u32) -> Rational {
    Rational::new(num, BigInt::one() << bits)
}

fn compute_enclosure(c: &Constant, bits: u32) -> Interval {
    match c {
        Constant::Unit => Interval::point(Rational::one()),
        Constant::Sqrt(n) => {
            let scaled = BigInt::from(*n) << (2 * bits);
            let s = scaled.sqrt();
            Interval {
                lo: dyadic(s.clone(), bits),
                hi: dyadic(s + 1, bits),
            }
        }
        Constant::Pi => pi_enclosure(bits),
        Constant::E => e_enclosure(bits),
    }
}

/// Fixed-point `atan(1/x)` scaled by `2^p`, with the number of terms used.
fn atan_inv(x: u64, p: u32) -> (BigInt, u64) {
    let x2 = BigInt::from(x * x);
    let mut power = (BigInt::one() << p) / BigInt::from(x);
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power /= &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    (sum, k)
}

// Machin: pi = 16 atan(1/5) - 4 atan(1/239). Each truncated division costs
// less than 3 units in the last place, and the tail is below one unit.
fn pi_enclosure(bits: u32) -> Interval {
    let p = bits + 32;
    let (a, ka) = atan_inv(5, p);
    let (b, kb) = atan_inv(239, p);
    let approx = a * 16 - b * 4;
    let err = BigInt::from(16 * 4 * (ka + 2) + 4 * 4 * (kb + 2));
    Interval {
        lo: dyadic(&approx - &err, p),
        hi: dyadic(&approx + &err, p),
    }
}

fn e_enclosure(bits: u32) -> Interval {
    let p = bits + 32;
    let mut term = BigInt::one() << p;
    let mut sum = term.clone();
    let mut k: u64 = 1;
    loop {
        term /= BigInt::from(k);
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    // k truncations of at most one unit each, plus a tail below one unit.
    let err = BigInt::from(k + 2);
    Interval {
        lo: dyadic(&sum - &err, p),
        hi: dyadic(&sum + &err, p),
    }
}
