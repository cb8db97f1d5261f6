use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactgeom::Point;
use crate::pointsets::{parity_class_int, SetDescriptor};

/// Color of an edge between two points of one parity class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeLabel {
    /// The midpoint lies in the removed lattice with this index (the lowest one).
    Sublattice(usize),
    /// The midpoint is an integer point outside every removed lattice.
    MidpointInS,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RamseyFinding {
    Clean,
    /// Two points of `V` whose midpoint lies in `S`, so `V` cannot be the vertex
    /// set of an `S`-empty polytope.
    MidpointInS { pair: (usize, usize), midpoint: Vec<i64> },
    /// Three points whose pairwise midpoints share a removed lattice; then
    /// `M_12 − M_23 + M_13` recovers the first vertex inside that lattice.
    MonochromaticTriangle {
        vertices: [usize; 3],
        color: usize,
        reconstruction: Vec<i64>,
        coordinates: Vec<i64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyDiagnostic {
    /// Parity vector and member indices, ordered by parity vector.
    pub parity_classes: Vec<(Vec<u8>, Vec<usize>)>,
    /// Same-parity pairs `(i, j)`, `i < j`, in lexicographic order.
    pub edge_colors: Vec<((usize, usize), EdgeLabel)>,
    pub finding: RamseyFinding,
}

/// Splits `V ⊂ ℤ^d ∖ (L_1 ∪ … ∪ L_k)` into parity classes and colors each
/// same-class pair by the removed lattice holding its midpoint.
pub fn ramsey_midpoint_diagnostic(s: &SetDescriptor, v: &[Point]) -> Result<RamseyDiagnostic> {
    let SetDescriptor::LatticeDifference { d, removed } = s else {
        return Err(Error::Invalid(format!("midpoint diagnostic needs a lattice difference, got {}", s.kind())));
    };
    let mut pts = Vec::with_capacity(v.len());
    for p in v {
        if p.dim() != *d {
            return Err(Error::DimensionMismatch { expected: *d, found: p.dim() });
        }
        let q = p
            .to_i64()
            .ok_or_else(|| Error::UnsupportedCoordinates(format!("{p} is not an integer point")))?;
        if !s.contains_int(&q) {
            return Err(Error::Invalid(format!("{p} is not in S")));
        }
        pts.push(q);
    }

    let mut classes: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
    for (i, p) in pts.iter().enumerate() {
        classes.entry(parity_class_int(p)).or_default().push(i);
    }

    let midpoint = |i: usize, j: usize| -> Vec<i64> { pts[i].iter().zip(&pts[j]).map(|(a, b)| (a + b) / 2).collect() };
    let label = |m: &[i64]| match removed.iter().position(|l| l.contains_int(m)) {
        Some(c) => EdgeLabel::Sublattice(c),
        None => EdgeLabel::MidpointInS,
    };

    let mut edge_colors = Vec::new();
    for members in classes.values() {
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                edge_colors.push(((i, j), label(&midpoint(i, j))));
            }
        }
    }
    edge_colors.sort_by_key(|e| e.0);

    let finding = find(&pts, &classes, &edge_colors, removed, &midpoint);
    Ok(RamseyDiagnostic { parity_classes: classes.into_iter().collect(), edge_colors, finding })
}

fn find(
    pts: &[Vec<i64>],
    classes: &BTreeMap<Vec<u8>, Vec<usize>>,
    edges: &[((usize, usize), EdgeLabel)],
    removed: &[crate::pointsets::Lattice],
    midpoint: &dyn Fn(usize, usize) -> Vec<i64>,
) -> RamseyFinding {
    if let Some(((i, j), _)) = edges.iter().find(|e| e.1 == EdgeLabel::MidpointInS) {
        return RamseyFinding::MidpointInS { pair: (*i, *j), midpoint: midpoint(*i, *j) };
    }
    let color: BTreeMap<(usize, usize), &EdgeLabel> = edges.iter().map(|(p, l)| (*p, l)).collect();
    let mut triangles = Vec::new();
    for members in classes.values() {
        for (a, &x) in members.iter().enumerate() {
            for (b, &y) in members.iter().enumerate().skip(a + 1) {
                for &z in &members[b + 1..] {
                    triangles.push([x, y, z]);
                }
            }
        }
    }
    triangles.sort();
    for [x, y, z] in triangles {
        let (c1, c2, c3) = (color[&(x, y)], color[&(y, z)], color[&(x, z)]);
        let EdgeLabel::Sublattice(c) = c1 else { continue };
        if c1 != c2 || c1 != c3 {
            continue;
        }
        let (m1, m2, m3) = (midpoint(x, y), midpoint(y, z), midpoint(x, z));
        let reconstruction: Vec<i64> = (0..m1.len()).map(|t| m1[t] - m2[t] + m3[t]).collect();
        debug_assert_eq!(reconstruction, pts[x]);
        if let Some(coordinates) = removed[*c].coordinates(&reconstruction) {
            return RamseyFinding::MonochromaticTriangle { vertices: [x, y, z], color: *c, reconstruction, coordinates };
        }
    }
    RamseyFinding::Clean
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointsets::Lattice;

    fn ip(v: &[i64]) -> Point {
        Point::integer(v)
    }

    #[test]
    fn two_removed_lattices_clean() {
        let x_even = Lattice::new(vec![vec![2, 0], vec![0, 1]], vec![0, 0]).unwrap();
        let y_even = Lattice::new(vec![vec![1, 0], vec![0, 2]], vec![0, 0]).unwrap();
        let s = SetDescriptor::LatticeDifference { d: 2, removed: vec![x_even, y_even] };
        let v = [ip(&[1, 1]), ip(&[3, 1]), ip(&[1, 3]), ip(&[3, 3])];
        let diag = ramsey_midpoint_diagnostic(&s, &v).unwrap();
        assert_eq!(diag.parity_classes, vec![(vec![1, 1], vec![0, 1, 2, 3])]);
        let colors: Vec<EdgeLabel> = diag.edge_colors.iter().map(|e| e.1.clone()).collect();
        use EdgeLabel::Sublattice as C;
        assert_eq!(colors, vec![C(0), C(1), C(0), C(0), C(1), C(0)]);
        assert_eq!(diag.finding, RamseyFinding::Clean);
    }

    #[test]
    fn midpoint_in_set() {
        let s = SetDescriptor::LatticeDifference { d: 2, removed: vec![Lattice::scaled(2, 2)] };
        let v = [ip(&[1, 1]), ip(&[5, 1]), ip(&[1, 5])];
        let diag = ramsey_midpoint_diagnostic(&s, &v).unwrap();
        assert_eq!(diag.finding, RamseyFinding::MidpointInS { pair: (0, 1), midpoint: vec![3, 1] });
    }

    #[test]
    fn rejects_points_outside() {
        let s = SetDescriptor::LatticeDifference { d: 2, removed: vec![Lattice::scaled(2, 2)] };
        assert!(ramsey_midpoint_diagnostic(&s, &[ip(&[0, 0])]).is_err());
    }
}
