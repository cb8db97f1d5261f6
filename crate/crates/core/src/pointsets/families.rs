//! Ready-made sets and configurations used as lower-bound witnesses.

use std::sync::Arc;

use super::descriptor::SetDescriptor;
use super::primes::primes_in;
use crate::error::{invalid, Result};
use crate::exactgeom::rational::int;
use crate::exactgeom::{Constant, ExactNumber, Point, Rational, SymbolicBasis};

fn basis_of(constants: Vec<Constant>) -> Result<Arc<SymbolicBasis>> {
    SymbolicBasis::new(constants.into_iter().map(|c| (c.name(), c)).collect())
}

fn combo(basis: &Arc<SymbolicBasis>, coeffs: &[(usize, Rational)]) -> Result<ExactNumber> {
    let mut v = vec![Rational::from_integer(0.into()); basis.len()];
    for (i, c) in coeffs {
        v[*i] = c.clone();
    }
    ExactNumber::new(basis.clone(), v)
}

/// The ℚ-module generated by `A_i` and `B_i`, `i = 1..d`, where `A_i` (`B_i`)
/// is `C = (c_1, …, c_d)` with coordinate `i` replaced by `a_i` (`b_i`).
///
/// The `3d` numbers are square roots of the first `3d` primes, taken in
/// increasing order as `a_i < c_i < b_i`. Returns the module and
/// `R = [A_1, B_1, …, A_d, B_d]`, whose core is `{C}`.
pub fn sharpness_module(d: usize) -> Result<(SetDescriptor, Vec<Point>)> {
    let (_, r) = sharpness_parts(d)?;
    Ok((SetDescriptor::QModule { generators: r.clone() }, r))
}

/// The point `C` of [`sharpness_module`].
pub fn sharpness_center(d: usize) -> Result<Point> {
    Ok(sharpness_parts(d)?.0)
}

fn sharpness_parts(d: usize) -> Result<(Point, Vec<Point>)> {
    if d == 0 {
        return invalid("dimension must be positive");
    }
    let mut primes = Vec::new();
    let mut hi = 16;
    while primes.len() < 3 * d {
        primes = primes_in(2, hi);
        hi *= 2;
    }
    primes.truncate(3 * d);
    let basis = basis_of(primes.iter().map(|&p| Constant::Sqrt(p as u64)).collect())?;
    // basis index of the root of primes[j] is j + 1
    let elem = |j: usize| combo(&basis, &[(j + 1, int(1))]);
    let c: Vec<ExactNumber> = (0..d).map(|i| elem(3 * i + 1)).collect::<Result<_>>()?;
    let mut r = Vec::with_capacity(2 * d);
    for i in 0..d {
        for j in [3 * i, 3 * i + 2] {
            let mut coords = c.clone();
            coords[i] = elem(j)?;
            r.push(Point::new(coords)?);
        }
    }
    Ok((Point::new(c)?, r))
}

/// `ℤ² × G_0` with `G_0 = ⟨1, π, e⟩` and nine points in strict convex position
/// whose core misses it: `(0,1,3)`, `(2,1,e)`, `(2,3,π)`, plus points of the
/// group over `(0,2)`, `(1,0)`, `(3,3)` just above and just below the plane
/// `H` through the first three, each pair symmetric about `H`.
///
/// The core meets the fibers over the midpoints `(1,1)`, `(1,2)`, `(2,2)`. It
/// reduces to the midpoint of two of the first three points only when all six
/// offsets from `H` are equal, and the three offsets here differ (no choice in
/// `G_0` makes them equal), so the checker rejects this configuration.
pub fn nine_point_configuration() -> Result<(SetDescriptor, Vec<Point>)> {
    let basis = basis_of(vec![Constant::Pi, Constant::E])?;
    // (a, b, c) stands for a + bπ + ce
    let g = |a: i64, b: i64, c: i64| combo(&basis, &[(0, int(a)), (1, int(b)), (2, int(c))]);
    let pt = |x: i64, y: i64, z: ExactNumber| Point::new(vec![ExactNumber::integer(x), ExactNumber::integer(y), z]);
    let r = vec![
        pt(0, 1, g(3, 0, 0)?)?,
        pt(2, 1, g(0, 0, 1)?)?,
        pt(2, 3, g(0, 1, 0)?)?,
        pt(0, 2, g(-5, 13, -12)?)?,
        pt(1, 0, g(-2, 11, -11)?)?,
        pt(3, 3, g(7, -3, 2)?)?,
        pt(0, 2, g(11, -12, 11)?)?,
        pt(1, 0, g(5, -12, 13)?)?,
        pt(3, 3, g(-10, 5, -1)?)?,
    ];
    let generators = vec![g(1, 0, 0)?, g(0, 1, 0)?, g(0, 0, 1)?];
    Ok((SetDescriptor::DiscreteDenseProduct { m: 2, generators }, r))
}
