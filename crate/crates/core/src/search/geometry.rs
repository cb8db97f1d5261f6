//! Validity of candidate vertex sets over a fixed finite ground set of integer points.

use crate::exactgeom::kernel::{hull_hrep, rank, Constraint};

/// Ground set of integer points with a hollowness test for index subsets.
pub(crate) trait Ground: Sync {
    fn len(&self) -> usize;
    /// `true` when the points `t` are in strict convex position and their hull
    /// holds no other ground point.
    fn valid(&self, t: &[usize]) -> bool;
}

fn bbox(pts: &[Vec<i64>], t: &[usize]) -> (Vec<i64>, Vec<i64>) {
    let d = pts[t[0]].len();
    let mut lo = pts[t[0]].clone();
    let mut hi = pts[t[0]].clone();
    for &i in &t[1..] {
        for k in 0..d {
            lo[k] = lo[k].min(pts[i][k]);
            hi[k] = hi[k].max(pts[i][k]);
        }
    }
    (lo, hi)
}

fn in_box(p: &[i64], lo: &[i64], hi: &[i64]) -> bool {
    p.iter().zip(lo.iter().zip(hi)).all(|(x, (a, b))| a <= x && x <= b)
}

/// Planar ground sets: monotone-chain hulls and orientation tests in `i128`.
pub(crate) struct Planar {
    pts: Vec<Vec<i64>>,
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i128 {
    let (ox, oy) = (o[0] as i128, o[1] as i128);
    (a[0] as i128 - ox) * (b[1] as i128 - oy) - (a[1] as i128 - oy) * (b[0] as i128 - ox)
}

impl Planar {
    pub(crate) fn new(pts: Vec<Vec<i64>>) -> Planar {
        Planar { pts }
    }

    /// Strict hull in counterclockwise order (collinear points dropped).
    fn hull(&self, t: &[usize]) -> Vec<usize> {
        let mut idx = t.to_vec();
        idx.sort_by(|&a, &b| self.pts[a].cmp(&self.pts[b]));
        idx.dedup_by(|a, b| self.pts[*a] == self.pts[*b]);
        if idx.len() < 3 {
            return idx;
        }
        let mut h: Vec<usize> = Vec::with_capacity(2 * idx.len());
        for pass in 0..2 {
            let start = h.len();
            let iter: Box<dyn Iterator<Item = &usize>> =
                if pass == 0 { Box::new(idx.iter()) } else { Box::new(idx.iter().rev()) };
            for &i in iter {
                while h.len() >= start + 2 && cross(&self.pts[h[h.len() - 2]], &self.pts[h[h.len() - 1]], &self.pts[i]) <= 0 {
                    h.pop();
                }
                h.push(i);
            }
            h.pop();
        }
        h
    }

    fn covers(&self, hull: &[usize], q: &[i64]) -> bool {
        let p = |i: usize| &self.pts[hull[i]][..];
        match hull.len() {
            1 => p(0) == q,
            2 => {
                cross(p(0), p(1), q) == 0
                    && (0..2).all(|k| p(0)[k].min(p(1)[k]) <= q[k] && q[k] <= p(0)[k].max(p(1)[k]))
            }
            n => (0..n).all(|i| cross(p(i), p((i + 1) % n), q) >= 0),
        }
    }
}

impl Ground for Planar {
    fn len(&self) -> usize {
        self.pts.len()
    }

    fn valid(&self, t: &[usize]) -> bool {
        if t.len() <= 1 {
            return true;
        }
        let hull = self.hull(t);
        if hull.len() != t.len() || (t.len() >= 3 && hull.len() < 3) {
            return false;
        }
        let (lo, hi) = bbox(&self.pts, t);
        !self
            .pts
            .iter()
            .enumerate()
            .any(|(i, q)| !t.contains(&i) && in_box(q, &lo, &hi) && self.covers(&hull, q))
    }
}

/// Any dimension: half-space descriptions from the exact kernel over `i128`.
pub(crate) struct General {
    pts: Vec<Vec<i64>>,
    wide: Vec<Vec<i128>>,
}

impl General {
    pub(crate) fn new(pts: Vec<Vec<i64>>) -> General {
        let wide = pts.iter().map(|p| p.iter().map(|&x| x as i128).collect()).collect();
        General { pts, wide }
    }
}

fn slack(c: &Constraint<i128>, x: &[i128]) -> i128 {
    c.offset - c.normal.iter().zip(x).map(|(a, b)| a * b).sum::<i128>()
}

impl Ground for General {
    fn len(&self) -> usize {
        self.pts.len()
    }

    fn valid(&self, t: &[usize]) -> bool {
        if t.len() <= 1 {
            return true;
        }
        let d = self.pts[0].len();
        let rows: Vec<Vec<i128>> = t.iter().map(|&i| self.wide[i].clone()).collect();
        let Ok(h) = hull_hrep(&rows) else { return false };
        // a point is a vertex when the constraints tight at it pin it down
        for x in &rows {
            let mut tight: Vec<Vec<i128>> = h.equalities.iter().map(|c| c.normal.clone()).collect();
            tight.extend(h.facets.iter().filter(|c| slack(c, x) == 0).map(|c| c.normal.clone()));
            if rank(&tight).map_or(true, |r| r < d) {
                return false;
            }
        }
        let (lo, hi) = bbox(&self.pts, t);
        for (i, q) in self.wide.iter().enumerate() {
            if t.contains(&i) || !in_box(&self.pts[i], &lo, &hi) {
                continue;
            }
            if h.equalities.iter().all(|c| slack(c, q) == 0) && h.facets.iter().all(|c| slack(c, q) >= 0) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: i64) -> Vec<Vec<i64>> {
        let mut v = Vec::new();
        for x in 0..n {
            for y in 0..n {
                v.push(vec![x, y]);
            }
        }
        v
    }

    #[test]
    fn planar_and_general_agree_on_small_grid() {
        let pts = grid(3);
        let p = Planar::new(pts.clone());
        let g = General::new(pts.clone());
        let n = pts.len();
        for mask in 0u32..(1 << n) {
            let t: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if t.len() > 5 {
                continue;
            }
            assert_eq!(p.valid(&t), g.valid(&t), "{t:?}");
        }
    }

    #[test]
    fn unit_square_valid_doubled_square_not() {
        let p = Planar::new(grid(3));
        // indices: (x, y) -> 3x + y
        assert!(p.valid(&[0, 1, 3, 4]));
        assert!(!p.valid(&[0, 2, 6, 8]));
        assert!(!p.valid(&[0, 1, 2]));
    }
}
