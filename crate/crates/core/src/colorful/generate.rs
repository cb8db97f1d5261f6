use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ColoredInstance, Polytope, PropertySpec};
use crate::error::{Error, Result};
use crate::exactgeom::Rational;
use crate::pointsets::SetDescriptor;

/// Shape of a random colored instance of boxes with corners on the grid `¼ℤ^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceParams {
    pub dim: usize,
    pub colors: usize,
    pub family_size: usize,
    /// Box corners stay in `[-range, range]^d`.
    pub range: i64,
    /// Plant one integer point in every box. `None` plants for even seeds.
    pub planted: Option<bool>,
}

impl InstanceParams {
    pub fn new(dim: usize, colors: usize) -> InstanceParams {
        InstanceParams { dim, colors, family_size: 3, range: 3, planted: None }
    }
}

fn quarter(n: i64) -> Rational {
    Rational::new(n.into(), 4.into())
}

/// A reproducible instance for `MeetsSet(ℤ^d)`.
///
/// Planted instances put one shared integer point in every box, so every
/// rainbow intersection meets `ℤ^d`. Other instances draw both corners freely.
pub fn generate_instance(seed: u64, params: &InstanceParams) -> Result<ColoredInstance> {
    if params.dim == 0 || params.colors == 0 || params.family_size == 0 || params.range < 1 {
        return Err(Error::Invalid(format!("bad instance parameters {params:?}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planted = params.planted.unwrap_or(seed % 2 == 0);
    let r = params.range;
    let anchor: Vec<i64> = (0..params.dim).map(|_| rng.gen_range(-r + 1..=r - 1)).collect();
    let mut colors = Vec::with_capacity(params.colors);
    for _ in 0..params.colors {
        let mut family = Vec::with_capacity(params.family_size);
        for _ in 0..params.family_size {
            let mut lo = Vec::with_capacity(params.dim);
            let mut hi = Vec::with_capacity(params.dim);
            for &a in &anchor {
                let (l, h) = if planted {
                    (rng.gen_range(4 * (-r)..=4 * a), rng.gen_range(4 * a..=4 * r))
                } else {
                    let x = rng.gen_range(4 * (-r)..=4 * r);
                    let y = rng.gen_range(4 * (-r)..=4 * r);
                    (x.min(y), x.max(y))
                };
                lo.push(quarter(l));
                hi.push(quarter(h));
            }
            family.push(Polytope::boxed(&lo, &hi));
        }
        colors.push(family);
    }
    Ok(ColoredInstance { dim: params.dim, colors, property: PropertySpec::MeetsSet(SetDescriptor::integer_lattice(params.dim)) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorful::{check_colorable_instance, ColorfulOutcome};

    #[test]
    fn deterministic() {
        let p = InstanceParams::new(2, 4);
        assert_eq!(generate_instance(1, &p).unwrap(), generate_instance(1, &p).unwrap());
        assert_ne!(generate_instance(1, &p).unwrap(), generate_instance(3, &p).unwrap());
    }

    #[test]
    fn planted_satisfies_hypothesis() {
        let p = InstanceParams::new(2, 4);
        for seed in [0, 2, 4] {
            let out = check_colorable_instance(&generate_instance(seed, &p).unwrap()).unwrap();
            assert!(matches!(out, ColorfulOutcome::ConclusionHolds { .. }), "{out:?}");
        }
    }
}
