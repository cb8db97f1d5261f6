//! Exact linear algebra over ℚ and ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Reduced row echelon form in place; returns the pivot columns.
///
/// Only the first `cols` columns are eligible as pivots, which lets callers keep
/// an augmented right-hand side in the trailing columns.
pub fn rref(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Rational::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (head, tail) = if r < row {
                    let (a, b) = m.split_at_mut(row);
                    (&mut a[r], &b[0])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&mut b[0], &a[row])
                };
                for (x, y) in head.iter_mut().zip(tail.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = rows.to_vec();
    let cols = m[0].len();
    rref(&mut m, cols).len()
}

/// Solves an augmented system `[A | b]` with `n` unknowns. Returns some solution
/// (free variables set to zero) or `None` when the system is inconsistent.
pub fn solve_rational(mut rows: Vec<Vec<Rational>>, n: usize) -> Option<Vec<Rational>> {
    let pivots = rref(&mut rows, n);
    for r in pivots.len()..rows.len() {
        if !rows[r][n].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][n].clone();
    }
    Some(x)
}

/// A basis of `{x : A x = 0}`.
pub fn nullspace(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, n);
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][free].clone();
        }
        out.push(v);
    }
    out
}

/// Inverse of a square rational matrix, if it is nonsingular.
pub fn inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    if rref(&mut m, n).len() < n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(a: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum())
        .collect()
}

/// Integer solution of `A z = b` for an integer matrix, if one exists.
///
/// Column operations bring `A` to a lower echelon (Hermite-like) form `H = A U`
/// with `U` unimodular; `H y = b` is then solved by forward substitution.
pub fn integer_solve(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    // column operation helpers act on both h and u
    let col_combine = |h: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, i: usize, j: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt| {
        // (col_i, col_j) <- (p col_i + q col_j, r col_i + s col_j)
        for mat in [h, u] {
            for row in mat.iter_mut() {
                let ci = row[i].clone();
                let cj = row[j].clone();
                row[i] = p * &ci + q * &cj;
                row[j] = r * &ci + s * &cj;
            }
        }
    };
    let mut pivot_rows = Vec::new();
    let mut col = 0;
    for row in 0..m {
        if col == n {
            break;
        }
        for j in (col + 1)..n {
            if h[row][j].is_zero() {
                continue;
            }
            let x = h[row][col].clone();
            let y = h[row][j].clone();
            let g = x.extended_gcd(&y);
            // g.x*x + g.y*y = g.gcd; second column becomes (−y/g) col + (x/g) col_j which zeroes the entry
            let (p, q) = (g.x.clone(), g.y.clone());
            let (r, s) = (-(&y / &g.gcd), &x / &g.gcd);
            col_combine(&mut h, &mut u, col, j, &p, &q, &r, &s);
        }
        if !h[row][col].is_zero() {
            pivot_rows.push((row, col));
            col += 1;
        }
    }
    // forward substitution
    let mut y = vec![BigInt::zero(); n];
    let mut used = 0;
    for row in 0..m {
        let acc: BigInt = (0..n).map(|j| &h[row][j] * &y[j]).sum();
        let rest = &b[row] - acc;
        if used < pivot_rows.len() && pivot_rows[used].0 == row {
            let c = pivot_rows[used].1;
            let (q, r) = rest.div_rem(&h[row][c]);
            if !r.is_zero() {
                return None;
            }
            y[c] = q;
            used += 1;
        } else if !rest.is_zero() {
            return None;
        }
    }
    Some((0..n).map(|i| (0..n).map(|j| &u[i][j] * &y[j]).sum()).collect())
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let den = super::rational::common_denominator(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / g.abs()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::{int, ratio};

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn solves_and_detects_inconsistency() {
        let rows = vec![vec![int(1), int(1), int(3)], vec![int(1), int(-1), int(1)]];
        assert_eq!(solve_rational(rows, 2).unwrap(), vec![int(2), int(1)]);
        let bad = vec![vec![int(1), int(1), int(3)], vec![int(2), int(2), int(1)]];
        assert!(solve_rational(bad, 2).is_none());
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let rows = vec![vec![int(1), int(2), int(3)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(mat_vec(&rows, &v)[0].is_zero());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_vec(&inv, &[int(3), int(2)]), vec![int(1), int(1)]);
        assert!(inverse(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
        assert_eq!(inverse(&[vec![int(2)]]).unwrap(), vec![vec![ratio(1, 2)]]);
    }

    #[test]
    fn integer_solutions() {
        // 2x + 4y = 6 has integer solutions, 2x + 4y = 5 does not.
        assert!(integer_solve(&[vec![bi(2), bi(4)]], &[bi(6)]).is_some());
        assert!(integer_solve(&[vec![bi(2), bi(4)]], &[bi(5)]).is_none());
        // x/2-style lattice: rows 2x = 3 has no solution.
        assert!(integer_solve(&[vec![bi(2)]], &[bi(3)]).is_none());
        let a = vec![vec![bi(3), bi(5), bi(7)], vec![bi(1), bi(0), bi(2)]];
        let b = vec![bi(10), bi(4)];
        let z = integer_solve(&a, &b).unwrap();
        for (row, rhs) in a.iter().zip(&b) {
            let lhs: BigInt = row.iter().zip(&z).map(|(p, q)| p * q).sum();
            assert_eq!(&lhs, rhs);
        }
    }
}
