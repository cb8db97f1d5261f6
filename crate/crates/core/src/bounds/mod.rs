//! Known upper and lower bounds on `h(S)`, with the rules that produced them.

pub mod ramsey;

use crate::exactgeom::strict_convex_position;
use crate::pointsets::descriptor::module_real_rank;
use crate::pointsets::families::sharpness_module;
use crate::pointsets::{Lattice, SetDescriptor};

pub use ramsey::{ramsey, ramsey_with, Provenance, RamseyEntry, RamseyOverrides};

/// What a bound is computed for: a set descriptor, or a set the bound table
/// knows about that has no descriptor of its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundTarget {
    Set(SetDescriptor),
    /// `ℤ^{d−k} × ℝ^k`.
    MixedInteger { d: usize, k: usize },
    /// An arbitrary dense subset of `ℝ²`.
    DensePlanar,
    Union(Box<BoundTarget>, Box<BoundTarget>),
    /// `ℝ^d × M`.
    RealTimes { d: usize, factor: Box<BoundTarget> },
    Product(Box<BoundTarget>, Box<BoundTarget>),
}

impl From<SetDescriptor> for BoundTarget {
    fn from(s: SetDescriptor) -> BoundTarget {
        BoundTarget::Set(s)
    }
}

impl BoundTarget {
    pub fn dim(&self) -> usize {
        match self {
            BoundTarget::Set(s) => s.dim(),
            BoundTarget::MixedInteger { d, .. } => *d,
            BoundTarget::DensePlanar => 2,
            BoundTarget::Union(a, _) => a.dim(),
            BoundTarget::RealTimes { d, factor } => d + factor.dim(),
            BoundTarget::Product(a, b) => a.dim() + b.dim(),
        }
    }

    fn is_discrete(&self) -> bool {
        match self {
            BoundTarget::Set(s) => s.is_discrete(),
            BoundTarget::MixedInteger { k, .. } => *k == 0,
            BoundTarget::Union(a, b) | BoundTarget::Product(a, b) => a.is_discrete() && b.is_discrete(),
            BoundTarget::DensePlanar | BoundTarget::RealTimes { .. } => false,
        }
    }

    fn is_closed(&self) -> bool {
        match self {
            BoundTarget::Set(s) => s.is_discrete(),
            BoundTarget::MixedInteger { .. } => true,
            BoundTarget::DensePlanar => false,
            BoundTarget::Union(a, b) | BoundTarget::Product(a, b) => a.is_closed() && b.is_closed(),
            BoundTarget::RealTimes { factor, .. } => factor.is_closed(),
        }
    }

    /// At least two points, so `h ≥ 2`.
    fn has_two_points(&self) -> bool {
        match self {
            BoundTarget::Set(SetDescriptor::ExplicitFinite { points }) => {
                points.iter().skip(1).any(|p| p != &points[0])
            }
            BoundTarget::Union(a, b) => a.has_two_points() || b.has_two_points(),
            BoundTarget::Product(a, b) => a.has_two_points() || b.has_two_points(),
            _ => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleStep {
    /// Short rule identifier.
    pub rule: String,
    pub statement: String,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub target: BoundTarget,
    pub upper: Option<RuleStep>,
    pub lower: Option<RuleStep>,
    /// Every rule that applied, upper bounds first.
    pub rule_trace: Vec<RuleStep>,
}

fn step(rule: &'static str, statement: impl Into<String>, value: u64) -> RuleStep {
    RuleStep { rule: rule.into(), statement: statement.into(), value }
}

fn pow2(d: usize) -> u64 {
    1u64 << d
}

/// The smallest upper bound any rule gives.
pub fn upper_bound(t: &BoundTarget) -> BoundReport {
    upper_bound_with(t, &RamseyOverrides::new())
}

pub fn upper_bound_with(t: &BoundTarget, overrides: &RamseyOverrides) -> BoundReport {
    let rule_trace = upper_rules(t, overrides);
    let upper = rule_trace.iter().min_by_key(|s| s.value).cloned();
    BoundReport { target: t.clone(), upper, lower: None, rule_trace }
}

/// The largest lower bound the rules record (certificates are merged by the caller).
pub fn known_lower_bound(t: &BoundTarget) -> BoundReport {
    let rule_trace = lower_rules(t);
    let lower = rule_trace.iter().max_by_key(|s| s.value).cloned();
    BoundReport { target: t.clone(), upper: None, lower, rule_trace }
}

/// Upper and lower bounds together; the trace lists upper rules first.
pub fn bound_report(t: &BoundTarget, overrides: &RamseyOverrides) -> BoundReport {
    let up = upper_bound_with(t, overrides);
    let low = known_lower_bound(t);
    let mut rule_trace = up.rule_trace;
    rule_trace.extend(low.rule_trace);
    BoundReport { target: t.clone(), upper: up.upper, lower: low.lower, rule_trace }
}

fn upper_rules(t: &BoundTarget, overrides: &RamseyOverrides) -> Vec<RuleStep> {
    let mut out = Vec::new();
    let d = t.dim();
    if d == 1 {
        out.push(step("dimension-one", "any subset of the line has Helly number at most 2", 2));
    }
    match t {
        BoundTarget::Set(s) => set_upper(s, overrides, &mut out),
        BoundTarget::MixedInteger { d, k } => out.push(step(
            "mixed-integer",
            format!("Z^{} x R^{k} has Helly number 2^{} * {}", d - k, d - k, k + 1),
            pow2(d - k) * (*k as u64 + 1),
        )),
        BoundTarget::DensePlanar => out.push(step("dense-planar", "a dense subset of the plane has Helly number at most 4", 4)),
        BoundTarget::Union(a, b) => {
            if let (Some(x), Some(y)) = (upper_bound_with(a, overrides).upper, upper_bound_with(b, overrides).upper) {
                out.push(step("union", format!("h(S1 u S2) <= h(S1) + h(S2) = {} + {}", x.value, y.value), x.value + y.value));
            }
        }
        BoundTarget::RealTimes { d, factor } => {
            if factor.is_closed() {
                if let Some(x) = upper_bound_with(factor, overrides).upper {
                    out.push(step(
                        "real-product",
                        format!("h(R^{d} x M) <= ({d} + 1) h(M) for closed M, h(M) <= {}", x.value),
                        (*d as u64 + 1) * x.value,
                    ));
                }
            }
        }
        BoundTarget::Product(..) => {}
    }
    out
}

fn set_upper(s: &SetDescriptor, overrides: &RamseyOverrides, out: &mut Vec<RuleStep>) {
    let d = s.dim();
    match s {
        SetDescriptor::ExplicitFinite { points } => {
            let mut n = 0;
            for (i, p) in points.iter().enumerate() {
                if !points[..i].contains(p) {
                    n += 1;
                }
            }
            out.push(step("finite-cardinality", format!("a finite set has Helly number at most its size {n}"), n));
        }
        SetDescriptor::Lattice(_) => out.push(doignon(d)),
        SetDescriptor::LatticeDifference { removed, .. } => {
            if removed.is_empty() {
                out.push(doignon(d));
                return;
            }
            if d == 2 && removed.len() == 1 && removed[0].is_linear() {
                out.push(step("plane-minus-sublattice", "Z^2 minus a proper sublattice has Helly number at most 6", 6));
            }
            let k = removed.len();
            if let Ok(r) = ramsey_with(k, overrides) {
                out.push(step(
                    "lattice-difference",
                    format!(
                        "Z^{d} minus {k} sublattices has Helly number at most (R_{k} - 1) 2^{d}, R_{k} = {} ({})",
                        r.value,
                        r.provenance.name()
                    ),
                    (r.value - 1) * pow2(d),
                ));
            }
        }
        SetDescriptor::PuncturedSpace { .. } if d == 2 => {
            out.push(step("dense-planar", "a dense subset of the plane has Helly number at most 4", 4));
        }
        SetDescriptor::QModule { generators } => {
            let r = module_real_rank(generators).unwrap_or(d).max(1);
            out.push(step(
                "dense-module",
                format!("a module over a dense subgroup of R spanning a {r}-dimensional space has Helly number at most {}", 2 * r),
                2 * r as u64,
            ));
            if r == 2 {
                out.push(step("dense-planar", "a dense subset of the plane has Helly number at most 4", 4));
            }
        }
        _ => {}
    }
}

fn doignon(d: usize) -> RuleStep {
    step("integer-lattice", format!("a full-rank lattice in R^{d} has Helly number 2^{d}"), pow2(d))
}

fn lower_rules(t: &BoundTarget) -> Vec<RuleStep> {
    let mut out = Vec::new();
    if t.dim() >= 1 && t.has_two_points() {
        out.push(step("two-points", "two distinct points give Helly number at least 2", 2));
    }
    match t {
        BoundTarget::Set(s) => set_lower(s, &mut out),
        BoundTarget::MixedInteger { d, k } => out.push(step(
            "mixed-integer",
            format!("Z^{} x R^{k} has Helly number 2^{} * {}", d - k, d - k, k + 1),
            pow2(d - k) * (*k as u64 + 1),
        )),
        BoundTarget::Product(a, b) if a.is_discrete() && b.is_discrete() => {
            if let (Some(x), Some(y)) = (known_lower_bound(a).lower, known_lower_bound(b).lower) {
                out.push(step(
                    "discrete-product",
                    format!("h(S1 x S2) >= h(S1) h(S2) for discrete factors, {} * {}", x.value, y.value),
                    x.value * y.value,
                ));
            }
        }
        _ => {}
    }
    out
}

fn set_lower(s: &SetDescriptor, out: &mut Vec<RuleStep>) {
    let d = s.dim();
    match s {
        SetDescriptor::Lattice(_) => out.push(doignon(d)),
        SetDescriptor::LatticeDifference { removed, .. } => {
            if removed.is_empty() {
                out.push(doignon(d));
            } else if d == 2 && removed.len() == 1 && is_doubled_plane(&removed[0]) {
                out.push(step("plane-minus-even-lattice", "Z^2 minus a translate of 2Z^2 contains a hollow lattice hexagon", 6));
            }
        }
        SetDescriptor::PrimeGrid { d } if *d >= 2 => {
            // the plane value, times 2 for each further prime factor
            let v = 14 * pow2(d - 2);
            let note = if *d == 2 { String::new() } else { format!(", times 2^{} from discrete products", d - 2) };
            out.push(step("prime-grid", format!("reported value h(P^2) >= 14 (not certified locally){note}"), v));
        }
        SetDescriptor::ExplicitFinite { points } => {
            let mut distinct: Vec<_> = Vec::new();
            for p in points {
                if !distinct.contains(p) {
                    distinct.push(p.clone());
                }
            }
            if strict_convex_position(&distinct).unwrap_or(false) {
                out.push(step(
                    "convex-position",
                    format!("{} points in strict convex position have Helly number equal to their count", distinct.len()),
                    distinct.len() as u64,
                ));
            }
        }
        SetDescriptor::QModule { generators }
            if sharpness_module(d).is_ok_and(|(m, _)| matches!(m, SetDescriptor::QModule { generators: g } if &g == generators)) =>
        {
            out.push(step("module-sharpness", format!("the built-in {d}-dimensional sharpness module has Helly number at least {}", 2 * d), 2 * d as u64));
        }
        _ => {}
    }
}

/// Whether `l` is a translate of `2ℤ²`.
fn is_doubled_plane(l: &Lattice) -> bool {
    l.index() == 4 && l.basis.iter().flatten().all(|x| x % 2 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::Point;

    fn up(t: BoundTarget) -> u64 {
        upper_bound(&t).upper.unwrap().value
    }

    #[test]
    fn table_values() {
        assert_eq!(up(SetDescriptor::integer_lattice(3).into()), 8);
        assert_eq!(up(BoundTarget::MixedInteger { d: 3, k: 1 }), 8);
        assert_eq!(up(BoundTarget::MixedInteger { d: 4, k: 2 }), 12);
        assert_eq!(up(BoundTarget::DensePlanar), 4);
        let one = SetDescriptor::LatticeDifference { d: 2, removed: vec![Lattice::scaled(2, 3)] };
        assert_eq!(up(one.into()), 6);
        let two = SetDescriptor::LatticeDifference { d: 3, removed: vec![Lattice::scaled(3, 2), Lattice::scaled(3, 3)] };
        assert_eq!(up(two.into()), 40);
        assert_eq!(up(SetDescriptor::PrimeGrid { d: 1 }.into()), 2);
    }

    #[test]
    fn finite_set_counts_distinct_points() {
        let p = Point::integer(&[0, 0]);
        let s = SetDescriptor::ExplicitFinite { points: vec![p.clone(), p, Point::integer(&[1, 0])] };
        assert_eq!(up(s.into()), 2);
    }

    #[test]
    fn lower_table() {
        let low = |t: BoundTarget| known_lower_bound(&t).lower.map(|s| s.value);
        assert_eq!(low(SetDescriptor::PrimeGrid { d: 2 }.into()), Some(14));
        assert_eq!(low(SetDescriptor::integer_lattice(2).into()), Some(4));
        let (m, _) = sharpness_module(3).unwrap();
        assert_eq!(low(m.into()), Some(6));
        let even = SetDescriptor::LatticeDifference { d: 2, removed: vec![Lattice::scaled(2, 2)] };
        assert_eq!(low(even.into()), Some(6));
    }

    #[test]
    fn composite_targets() {
        let z2: BoundTarget = SetDescriptor::integer_lattice(2).into();
        let union = BoundTarget::Union(Box::new(z2.clone()), Box::new(z2.clone()));
        assert_eq!(up(union), 8);
        let rt = BoundTarget::RealTimes { d: 1, factor: Box::new(z2.clone()) };
        assert_eq!(up(rt), 8);
        let dense = BoundTarget::RealTimes { d: 1, factor: Box::new(BoundTarget::DensePlanar) };
        assert!(upper_bound(&dense).upper.is_none());
        let prod = BoundTarget::Product(Box::new(z2.clone()), Box::new(SetDescriptor::integer_lattice(1).into()));
        assert_eq!(known_lower_bound(&prod).lower.unwrap().value, 8);
    }
}
