//! `--set` arguments: a JSON file, or a short name such as `Z^2`, `P^2`,
//! `Z^2-2Z^2`, `Z^2xR^1` or `dense-planar`.

use std::path::Path;

use helly::bounds::BoundTarget;
use helly::format::{check_version, from_text, Decoder};
use helly::pointsets::{Lattice, SetDescriptor};
use helly::{Error, Result};

fn dim_after(text: &str, prefix: &str) -> Option<usize> {
    text.strip_prefix(prefix)?.parse().ok().filter(|&d| d > 0)
}

/// `Z^d-k1Z^d-k2Z^d...`: the integer lattice minus scaled copies of itself.
fn lattice_difference(text: &str) -> Option<SetDescriptor> {
    let mut parts = text.split('-');
    let d = dim_after(parts.next()?, "Z^")?;
    let mut removed = Vec::new();
    for part in parts {
        let (k, rest) = part.split_once('Z')?;
        let k: i64 = k.parse().ok().filter(|&k| k > 1)?;
        if rest != format!("^{d}") {
            return None;
        }
        removed.push(Lattice::scaled(d, k));
    }
    Some(if removed.is_empty() { SetDescriptor::integer_lattice(d) } else { SetDescriptor::LatticeDifference { d, removed } })
}

fn mixed(text: &str) -> Option<BoundTarget> {
    let (z, r) = text.split_once('x')?;
    let (a, k) = (z.strip_prefix("Z^")?.parse::<usize>().ok()?, r.strip_prefix("R^")?.parse::<usize>().ok()?);
    Some(BoundTarget::MixedInteger { d: a + k, k })
}

pub fn parse_target(arg: &str, decoder: &mut Decoder) -> Result<BoundTarget> {
    if Path::new(arg).is_file() {
        let v = from_text(&std::fs::read_to_string(arg)?)?;
        check_version(&v)?;
        return decoder.target(&v);
    }
    if arg == "dense-planar" {
        return Ok(BoundTarget::DensePlanar);
    }
    if let Some(d) = dim_after(arg, "P^") {
        return Ok(BoundTarget::Set(SetDescriptor::PrimeGrid { d }));
    }
    if let Some(t) = mixed(arg) {
        return Ok(t);
    }
    if let Some(s) = lattice_difference(arg) {
        return Ok(BoundTarget::Set(s));
    }
    Err(Error::Parse(format!("{arg:?} is neither a file nor a known set name")))
}

pub fn parse_set(arg: &str, decoder: &mut Decoder) -> Result<SetDescriptor> {
    match parse_target(arg, decoder)? {
        BoundTarget::Set(s) => Ok(s),
        other => Err(Error::Invalid(format!("{other:?} has no set descriptor"))),
    }
}
