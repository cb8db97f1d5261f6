//! Exact checks of Helly-type and colorful Helly-type statements on families of
//! bounded rational polytopes.

mod generate;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactgeom::corepoly::polytope_dim;
use crate::exactgeom::kernel::combinations;
use crate::exactgeom::rational::{ceil_i64, floor_i64};
use crate::exactgeom::{lp_optimize, Direction, HalfSpace, LpOutcome, Point, Rational};
use crate::pointsets::{SetDescriptor, Window};

pub use generate::{generate_instance, InstanceParams};

/// Default cap on the number of rainbow subfamilies.
pub const RAINBOW_BUDGET: u128 = 1_000_000;

/// A property of convex sets, evaluated exactly on bounded rational polytopes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropertySpec {
    /// `K ∩ S ≠ ∅`.
    MeetsSet(SetDescriptor),
    /// `K` holds at least this many integer points.
    LatticeCount(u64),
    /// `dim K ≥ k` (the empty set has dimension −1).
    Dimension(usize),
}

impl PropertySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            PropertySpec::MeetsSet(_) => "meets-set",
            PropertySpec::LatticeCount(_) => "lattice-count",
            PropertySpec::Dimension(_) => "dimension",
        }
    }

    /// Whether the property is known to be Helly, monotone and orderable, so
    /// the colorful statement applies to it.
    pub fn orderable(&self) -> bool {
        match self {
            PropertySpec::MeetsSet(s) => s.is_discrete(),
            PropertySpec::LatticeCount(_) => true,
            PropertySpec::Dimension(_) => false,
        }
    }
}

/// An intersection of closed half-spaces in `ℝ^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    pub dim: usize,
    pub halfspaces: Vec<HalfSpace>,
}

impl Polytope {
    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Polytope> {
        if let Some(h) = halfspaces.iter().find(|h| h.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: h.dim() });
        }
        Ok(Polytope { dim, halfspaces })
    }

    /// The box `∏ [lo_i, hi_i]`.
    pub fn boxed(lo: &[Rational], hi: &[Rational]) -> Polytope {
        let d = lo.len();
        let mut hs = Vec::with_capacity(2 * d);
        for i in 0..d {
            let e = |s: i64| (0..d).map(|j| if j == i { Rational::from_integer(s.into()) } else { Rational::zero() }).collect();
            hs.push(HalfSpace::new(e(1), hi[i].clone()).expect("unit normal"));
            hs.push(HalfSpace::new(e(-1), -lo[i].clone()).expect("unit normal"));
        }
        Polytope { dim: d, halfspaces: hs }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    pub fn intersect<'a>(parts: impl IntoIterator<Item = &'a Polytope>, dim: usize) -> Polytope {
        Polytope { dim, halfspaces: parts.into_iter().flat_map(|p| p.halfspaces.iter().cloned()).collect() }
    }

    /// Coordinate ranges, `None` when empty; errors when unbounded.
    pub fn bounds(&self) -> Result<Option<Vec<(Rational, Rational)>>> {
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let e: Vec<Rational> = (0..self.dim).map(|j| if j == i { Rational::one() } else { Rational::zero() }).collect();
            let mut range = Vec::with_capacity(2);
            for dir in [Direction::Min, Direction::Max] {
                match lp_optimize(&self.halfspaces, &e, dir)? {
                    LpOutcome::Infeasible => return Ok(None),
                    LpOutcome::Unbounded => return Err(Error::Unbounded),
                    LpOutcome::Optimal { point, .. } => {
                        range.push(point.to_rational().expect("rational LP")[i].clone());
                    }
                }
            }
            let hi = range.pop().expect("two ends");
            out.push((range.pop().expect("two ends"), hi));
        }
        Ok(Some(out))
    }

    fn some_point(&self) -> Result<Option<Vec<Rational>>> {
        let zero = vec![Rational::zero(); self.dim];
        match lp_optimize(&self.halfspaces, &zero, Direction::Min)? {
            LpOutcome::Optimal { point, .. } => Ok(point.to_rational()),
            _ => Ok(None),
        }
    }

    fn integer_window(ranges: &[(Rational, Rational)]) -> Option<Window> {
        let lo: Option<Vec<i64>> = ranges.iter().map(|r| ceil_i64(&r.0)).collect();
        let hi: Option<Vec<i64>> = ranges.iter().map(|r| floor_i64(&r.1)).collect();
        Window::new(lo?, hi?).ok()
    }
}

/// Why a property holds on a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Point(Vec<Rational>),
    Count(u64),
    Dimension(usize),
}

/// Evaluates `P(K)`; the witness is present when `P(K)` holds.
pub fn evaluate(p: &PropertySpec, k: &Polytope) -> Result<Option<Witness>> {
    let Some(ranges) = k.bounds()? else {
        return Ok(match p {
            PropertySpec::LatticeCount(0) => Some(Witness::Count(0)),
            _ => None,
        });
    };
    match p {
        PropertySpec::MeetsSet(s) => meets_set(s, k, &ranges),
        PropertySpec::LatticeCount(n) => {
            let mut count = 0;
            if let Some(w) = Polytope::integer_window(&ranges) {
                for q in w.integer_points() {
                    if count >= *n {
                        break;
                    }
                    if k.contains(&int_row(&q)) {
                        count += 1;
                    }
                }
            }
            Ok((count >= *n).then_some(Witness::Count(count)))
        }
        PropertySpec::Dimension(want) => {
            let x0 = k.some_point()?.expect("nonempty polytope has a point");
            let dim = polytope_dim(&k.halfspaces, k.dim, &x0);
            Ok((dim >= *want).then_some(Witness::Dimension(dim)))
        }
    }
}

pub fn eval_property(p: &PropertySpec, k: &Polytope) -> Result<bool> {
    Ok(evaluate(p, k)?.is_some())
}

fn int_row(q: &[i64]) -> Vec<Rational> {
    q.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

fn meets_set(s: &SetDescriptor, k: &Polytope, ranges: &[(Rational, Rational)]) -> Result<Option<Witness>> {
    if s.dim() != k.dim {
        return Err(Error::DimensionMismatch { expected: s.dim(), found: k.dim });
    }
    if s.is_discrete() {
        let lo: Vec<i64> = ranges.iter().map(|r| floor_i64(&r.0)).collect::<Option<_>>().ok_or(Error::Unbounded)?;
        let hi: Vec<i64> = ranges.iter().map(|r| ceil_i64(&r.1)).collect::<Option<_>>().ok_or(Error::Unbounded)?;
        for q in s.enumerate(&Window::new(lo, hi)?)? {
            let x = q.to_rational().expect("discrete sets are rational");
            if k.contains(&x) {
                return Ok(Some(Witness::Point(x)));
            }
        }
        return Ok(None);
    }
    match s {
        SetDescriptor::PuncturedSpace { excluded, .. } => {
            // a polytope of positive dimension has infinitely many points
            let x0 = k.some_point()?.expect("nonempty polytope has a point");
            if !excluded.contains(&Point::rational(x0.clone())) {
                return Ok(Some(Witness::Point(x0)));
            }
            let dim = polytope_dim(&k.halfspaces, k.dim, &x0);
            if dim == 0 {
                return Ok(None);
            }
            let far = second_point(k, &x0, excluded)?;
            Ok(Some(Witness::Point(far)))
        }
        other => Err(Error::Invalid(format!("cannot decide whether a polytope meets {}", other.kind()))),
    }
}

/// A point of `k` outside the finite set `excluded`, given that `k` is not a single point.
fn second_point(k: &Polytope, x0: &[Rational], excluded: &[Point]) -> Result<Vec<Rational>> {
    let d = k.dim;
    for i in 0..d {
        for dir in [Direction::Max, Direction::Min] {
            let e: Vec<Rational> = (0..d).map(|j| if j == i { Rational::one() } else { Rational::zero() }).collect();
            if let LpOutcome::Optimal { point, .. } = lp_optimize(&k.halfspaces, &e, dir)? {
                let v = point.to_rational().expect("rational LP");
                if v == x0 {
                    continue;
                }
                // the segment from x0 to v holds infinitely many points; try the
                // points x0 + (v - x0)/n in turn
                for n in 1..=(excluded.len() as i64 + 2) {
                    let t = Rational::new(1.into(), n.into());
                    let y: Vec<Rational> = x0.iter().zip(&v).map(|(a, b)| a + (b - a) * &t).collect();
                    if !excluded.contains(&Point::rational(y.clone())) {
                        return Ok(y);
                    }
                }
            }
        }
    }
    Err(Error::Invalid("polytope of positive dimension with no second point".into()))
}

/// Outcome of checking the Helly implication on one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HellyCheck {
    Consistent,
    /// `P` holds on every `h`-fold intersection but fails on the intersection
    /// of this subfamily (the smallest one, first in lexicographic order).
    Counterexample { subfamily: Vec<usize> },
}

/// If `P` holds on every intersection of `h` members, it must hold on the
/// intersection of the whole family.
pub fn check_helly_condition(p: &PropertySpec, family: &[Polytope], h: usize) -> Result<HellyCheck> {
    let m = family.len();
    if h == 0 || m < h {
        return Err(Error::Invalid(format!("family of {m} sets checked against h = {h}")));
    }
    let d = family[0].dim;
    let holds = |idx: &[usize]| eval_property(p, &Polytope::intersect(idx.iter().map(|&i| &family[i]), d));
    for idx in combinations(m, h) {
        if !holds(&idx)? {
            return Ok(HellyCheck::Consistent);
        }
    }
    for size in h + 1..=m {
        for idx in combinations(m, size) {
            if !holds(&idx)? {
                return Ok(HellyCheck::Counterexample { subfamily: idx });
            }
        }
    }
    Ok(HellyCheck::Consistent)
}

/// `N` color classes of polytopes and the property under test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredInstance {
    pub dim: usize,
    pub colors: Vec<Vec<Polytope>>,
    pub property: PropertySpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColorfulOutcome {
    /// A rainbow subfamily (one index per color) whose intersection fails `P`.
    HypothesisFails { rainbow: Vec<usize> },
    /// The intersection of color class `color` (0-based) satisfies `P`.
    ConclusionHolds { color: usize, witness: Witness },
    /// Every rainbow intersection satisfies `P` and no color class does.
    Counterexample { instance: ColoredInstance },
}

pub fn check_colorable_instance(inst: &ColoredInstance) -> Result<ColorfulOutcome> {
    check_colorable_instance_with_budget(inst, RAINBOW_BUDGET)
}

pub fn check_colorable_instance_with_budget(inst: &ColoredInstance, budget: u128) -> Result<ColorfulOutcome> {
    if inst.colors.is_empty() || inst.colors.iter().any(Vec::is_empty) {
        return Err(Error::Invalid("every color class must be nonempty".into()));
    }
    let total = inst.colors.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128));
    if total.is_none_or(|t| t > budget) {
        return Err(Error::BudgetExceeded(format!("more than {budget} rainbow subfamilies")));
    }
    let n = inst.colors.len();
    let mut pick = vec![0usize; n];
    'rainbows: loop {
        let k = Polytope::intersect(pick.iter().enumerate().map(|(c, &i)| &inst.colors[c][i]), inst.dim);
        if !eval_property(&inst.property, &k)? {
            return Ok(ColorfulOutcome::HypothesisFails { rainbow: pick });
        }
        // odometer over the product of the color classes
        for c in (0..n).rev() {
            pick[c] += 1;
            if pick[c] < inst.colors[c].len() {
                continue 'rainbows;
            }
            pick[c] = 0;
        }
        break;
    }
    for (color, class) in inst.colors.iter().enumerate() {
        if let Some(witness) = evaluate(&inst.property, &Polytope::intersect(class, inst.dim))? {
            return Ok(ColorfulOutcome::ConclusionHolds { color, witness });
        }
    }
    Ok(ColorfulOutcome::Counterexample { instance: inst.clone() })
}
