use num_bigint::BigInt;
use num_integer::Integer;

use super::window::Window;
use crate::error::{Error, Result};
use crate::exactgeom::kernel::det;
use crate::exactgeom::Rational;

/// The lattice `{ z_1 b_1 + … + z_d b_d + t : z ∈ ℤ^d }`; `basis` lists the rows `b_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub basis: Vec<Vec<i64>>,
    pub translate: Vec<i64>,
}

impl Lattice {
    pub fn new(basis: Vec<Vec<i64>>, translate: Vec<i64>) -> Result<Lattice> {
        let d = translate.len();
        if d == 0 || basis.len() != d || basis.iter().any(|r| r.len() != d) {
            return Err(Error::Invalid("lattice basis must be a d×d matrix matching the translate".into()));
        }
        let l = Lattice { basis, translate };
        if l.det() == 0 {
            return Err(Error::Invalid("lattice basis is singular".into()));
        }
        Ok(l)
    }

    pub fn integer(d: usize) -> Lattice {
        Self::scaled(d, 1)
    }

    /// `kℤ^d`.
    pub fn scaled(d: usize, k: i64) -> Lattice {
        let basis = (0..d).map(|i| (0..d).map(|j| if i == j { k } else { 0 }).collect()).collect();
        Lattice::new(basis, vec![0; d]).expect("nonzero scale")
    }

    pub fn dim(&self) -> usize {
        self.translate.len()
    }

    /// `M = Bᵀ`, whose columns are the basis vectors.
    fn column_matrix(&self) -> Vec<Vec<i128>> {
        let d = self.dim();
        (0..d).map(|i| (0..d).map(|j| self.basis[j][i] as i128).collect()).collect()
    }

    pub fn det(&self) -> i128 {
        det(&self.column_matrix(), &1i128)
    }

    /// Index of the lattice in ℤ^d (the absolute determinant).
    pub fn index(&self) -> u128 {
        self.det().unsigned_abs()
    }

    fn adjugate(&self) -> Vec<Vec<i128>> {
        let m = self.column_matrix();
        let d = m.len();
        if d == 1 {
            return vec![vec![1]];
        }
        let mut adj = vec![vec![0i128; d]; d];
        for i in 0..d {
            for j in 0..d {
                let minor: Vec<Vec<i128>> = (0..d)
                    .filter(|&r| r != j)
                    .map(|r| (0..d).filter(|&c| c != i).map(|c| m[r][c]).collect())
                    .collect();
                let v = det(&minor, &1i128);
                adj[i][j] = if (i + j) % 2 == 0 { v } else { -v };
            }
        }
        adj
    }

    /// Integer coordinates `z` with `p = Σ z_i b_i + t`, if `p` is a lattice point.
    pub fn coordinates(&self, p: &[i64]) -> Option<Vec<i64>> {
        if p.len() != self.dim() {
            return None;
        }
        let det = self.det();
        let v: Vec<i128> = p.iter().zip(&self.translate).map(|(a, b)| (*a as i128) - (*b as i128)).collect();
        self.adjugate()
            .iter()
            .map(|row| {
                let s: i128 = row.iter().zip(&v).map(|(a, b)| a * b).sum();
                (s % det == 0).then(|| (s / det) as i64)
            })
            .collect()
    }

    pub fn contains_int(&self, p: &[i64]) -> bool {
        self.coordinates(p).is_some()
    }

    pub fn contains_rational(&self, p: &[Rational]) -> bool {
        let ints: Option<Vec<i64>> = p
            .iter()
            .map(|x| x.is_integer().then(|| i64::try_from(x.to_integer()).ok()).flatten())
            .collect();
        ints.is_some_and(|v| self.contains_int(&v))
    }

    /// Lattice points in the window, lexicographically ordered.
    ///
    /// The coefficient box is bounded with the inverse basis, independently of
    /// [`Lattice::contains_int`].
    pub fn enumerate(&self, w: &Window) -> Vec<Vec<i64>> {
        let d = self.dim();
        let det = self.det();
        let adj = self.adjugate();
        let mut zlo = Vec::with_capacity(d);
        let mut zhi = Vec::with_capacity(d);
        for row in &adj {
            // z_i · det = Σ_j adj_ij (x_j − t_j)
            let mut lo: i128 = 0;
            let mut hi: i128 = 0;
            for j in 0..d {
                let a = row[j];
                let l = (w.lower[j] - self.translate[j]) as i128;
                let h = (w.upper[j] - self.translate[j]) as i128;
                lo += (a * l).min(a * h);
                hi += (a * l).max(a * h);
            }
            let (l, h) = if det > 0 { (lo, hi) } else { (-hi, -lo) };
            let den = det.abs();
            zlo.push(BigInt::from(l).div_floor(&BigInt::from(den)));
            zhi.push(BigInt::from(h).div_ceil(&BigInt::from(den)));
        }
        let zwin = Window::new(
            zlo.iter().map(|v| i64::try_from(v).expect("coefficient range")).collect(),
            zhi.iter().map(|v| i64::try_from(v).expect("coefficient range")).collect(),
        )
        .expect("ordered coefficient box");
        let mut out: Vec<Vec<i64>> = zwin
            .integer_points()
            .into_iter()
            .map(|z| {
                (0..d)
                    .map(|i| self.translate[i] + (0..d).map(|k| z[k] * self.basis[k][i]).sum::<i64>())
                    .collect::<Vec<i64>>()
            })
            .filter(|x| w.contains_int(x))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Image under `x ↦ A x + b`.
    pub fn map_affine(&self, a: &[Vec<i64>], b: &[i64]) -> Lattice {
        let apply = |v: &[i64]| -> Vec<i64> { a.iter().map(|row| row.iter().zip(v).map(|(p, q)| p * q).sum()).collect() };
        Lattice {
            basis: self.basis.iter().map(|r| apply(r)).collect(),
            translate: apply(&self.translate).iter().zip(b).map(|(x, y)| x + y).collect(),
        }
    }

    /// Whether the translate can be taken to be zero.
    pub fn is_linear(&self) -> bool {
        self.contains_int(&vec![0; self.dim()])
    }
}
