//! JSON encodings for descriptors, certificates, reports and colored instances.
//!
//! Rationals are reduced `"p/q"` strings (`"p"` for integers). A symbolic
//! number is an object from constant name to coefficient, listing every element
//! of its basis in order, e.g. `{"1": "0", "pi": "1/2", "e": "-3"}`.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::bounds::{BoundReport, BoundTarget, Provenance, RamseyEntry, RuleStep};
use crate::certify::{CertificateKind, Configuration, ReasonCode, Verdict};
use crate::colorful::{ColoredInstance, Polytope, PropertySpec, Witness};
use crate::error::{Error, Result};
use crate::exactgeom::basis::DEFAULT_PRECISION_CAP;
use crate::exactgeom::rational::{format_rational, parse_rational};
use crate::exactgeom::{Constant, ExactNumber, HalfSpace, Point, Rational, SymbolicBasis};
use crate::pointsets::{Lattice, SetDescriptor, Window};

pub const FORMAT_VERSION: u64 = 1;

fn bad(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, found {v}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?} in {v}")))
}

fn as_u64(v: &Value) -> Result<u64> {
    v.as_u64().ok_or_else(|| bad("a nonnegative integer", v))
}

fn as_usize(v: &Value) -> Result<usize> {
    Ok(as_u64(v)? as usize)
}

fn as_i64(v: &Value) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad("an integer", v))
}

fn as_str(v: &Value) -> Result<&str> {
    v.as_str().ok_or_else(|| bad("a string", v))
}

fn as_array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| bad("an array", v))
}

fn list<T>(v: &Value, f: impl FnMut(&Value) -> Result<T>) -> Result<Vec<T>> {
    as_array(v)?.iter().map(f).collect()
}

fn ints(v: &Value) -> Result<Vec<i64>> {
    list(v, as_i64)
}

/// Checks the leading version field of a file.
pub fn check_version(v: &Value) -> Result<()> {
    match v.get("version").and_then(Value::as_u64) {
        Some(FORMAT_VERSION) => Ok(()),
        Some(other) => Err(Error::Parse(format!("unsupported format version {other}"))),
        None => Err(Error::Parse("missing version field".into())),
    }
}

/// Prepends the version field to an encoded object, for standalone files.
pub fn versioned(v: Value) -> Value {
    let Value::Object(m) = v else { return v };
    let mut out = Map::new();
    out.insert("version".into(), json!(FORMAT_VERSION));
    out.extend(m.into_iter().filter(|(k, _)| k != "version"));
    Value::Object(out)
}

pub fn encode_rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn encode_number(x: &ExactNumber) -> Value {
    if let Some(r) = x.to_rational() {
        return encode_rational(&r);
    }
    let mut m = Map::new();
    for (e, c) in x.basis().elements().iter().zip(x.coeffs()) {
        m.insert(e.constant.name(), encode_rational(c));
    }
    Value::Object(m)
}

pub fn encode_point(p: &Point) -> Value {
    Value::Array(p.coords().iter().map(encode_number).collect())
}

pub fn encode_halfspace(h: &HalfSpace) -> Value {
    json!({ "normal": h.normal.iter().map(encode_rational).collect::<Vec<_>>(), "offset": encode_rational(&h.offset) })
}

pub fn encode_window(w: &Window) -> Value {
    Value::String(w.lower.iter().zip(&w.upper).map(|(a, b)| format!("{a}:{b}")).collect::<Vec<_>>().join(","))
}

fn encode_lattice(l: &Lattice) -> Value {
    json!({ "basis": l.basis, "translate": l.translate })
}

pub fn encode_descriptor(s: &SetDescriptor) -> Value {
    let mut v = match s {
        SetDescriptor::Lattice(l) => encode_lattice(l),
        SetDescriptor::LatticeDifference { d, removed } => {
            json!({ "d": d, "removed": removed.iter().map(encode_lattice).collect::<Vec<_>>() })
        }
        SetDescriptor::PrimeGrid { d } => json!({ "d": d }),
        SetDescriptor::ExplicitFinite { points } => json!({ "points": points.iter().map(encode_point).collect::<Vec<_>>() }),
        SetDescriptor::PuncturedSpace { d, excluded } => {
            json!({ "d": d, "excluded": excluded.iter().map(encode_point).collect::<Vec<_>>() })
        }
        SetDescriptor::DiscreteDenseProduct { m, generators } => {
            json!({ "m": m, "generators": generators.iter().map(encode_number).collect::<Vec<_>>() })
        }
        SetDescriptor::QModule { generators } => json!({ "generators": generators.iter().map(encode_point).collect::<Vec<_>>() }),
    };
    with_type(&mut v, s.kind());
    v
}

fn with_type(v: &mut Value, kind: &str) {
    let Value::Object(m) = v else { unreachable!("encoders build objects") };
    let mut out = Map::new();
    out.insert("type".into(), Value::String(kind.into()));
    out.extend(std::mem::take(m));
    *m = out;
}

pub fn encode_verdict(v: &Verdict) -> Value {
    match v {
        Verdict::Valid => json!({ "verdict": "valid" }),
        Verdict::Invalid { code, reason } | Verdict::Undecided { code, reason } => {
            json!({ "verdict": v.label(), "code": code.name(), "reason": reason })
        }
    }
}

/// Search statistics recorded with a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchStats {
    pub best_size: usize,
    pub nodes_explored: u64,
    pub exhausted: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Metadata {
    pub window: Option<Window>,
    pub search: Option<SearchStats>,
    /// Seconds since the Unix epoch.
    pub timestamp: Option<u64>,
}

/// A configuration with its claimed bound, as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateFile {
    pub configuration: Configuration,
    pub claimed_bound: usize,
    pub metadata: Metadata,
}

pub fn encode_certificate(c: &CertificateFile) -> Value {
    let cfg = &c.configuration;
    let mut m = Map::new();
    m.insert("version".into(), json!(FORMAT_VERSION));
    m.insert("descriptor".into(), encode_descriptor(&cfg.descriptor));
    m.insert("kind".into(), json!(cfg.kind.name()));
    match cfg.kind {
        CertificateKind::FacePolytope => {
            m.insert("halfspaces".into(), Value::Array(cfg.halfspaces.iter().map(encode_halfspace).collect()));
        }
        _ => {
            m.insert("points".into(), Value::Array(cfg.points.iter().map(encode_point).collect()));
        }
    }
    m.insert("claimed_bound".into(), json!(c.claimed_bound));
    let mut meta = Map::new();
    if let Some(w) = &c.metadata.window {
        meta.insert("window".into(), encode_window(w));
    }
    if let Some(s) = &c.metadata.search {
        meta.insert(
            "search".into(),
            json!({ "best_size": s.best_size, "nodes_explored": s.nodes_explored, "exhausted": s.exhausted }),
        );
    }
    if let Some(t) = c.metadata.timestamp {
        meta.insert("timestamp".into(), json!(t));
    }
    m.insert("metadata".into(), Value::Object(meta));
    Value::Object(m)
}

fn encode_step(s: &RuleStep) -> Value {
    json!({ "rule": s.rule, "statement": s.statement, "value": s.value })
}

pub fn encode_target(t: &BoundTarget) -> Value {
    match t {
        BoundTarget::Set(s) => encode_descriptor(s),
        BoundTarget::MixedInteger { d, k } => json!({ "type": "mixed-integer", "d": d, "k": k }),
        BoundTarget::DensePlanar => json!({ "type": "dense-planar" }),
        BoundTarget::Union(a, b) => json!({ "type": "union", "parts": [encode_target(a), encode_target(b)] }),
        BoundTarget::RealTimes { d, factor } => json!({ "type": "real-times", "d": d, "factor": encode_target(factor) }),
        BoundTarget::Product(a, b) => json!({ "type": "product", "factors": [encode_target(a), encode_target(b)] }),
    }
}

pub fn encode_bound_report(r: &BoundReport) -> Value {
    json!({
        "version": FORMAT_VERSION,
        "target": encode_target(&r.target),
        "upper": r.upper.as_ref().map(encode_step),
        "lower": r.lower.as_ref().map(encode_step),
        "rule_trace": r.rule_trace.iter().map(encode_step).collect::<Vec<_>>(),
    })
}

pub fn encode_ramsey(e: &RamseyEntry) -> Value {
    json!({ "version": FORMAT_VERSION, "k": e.k, "value": e.value, "provenance": e.provenance.name() })
}

pub fn encode_polytope(p: &Polytope) -> Value {
    json!({ "dim": p.dim, "halfspaces": p.halfspaces.iter().map(encode_halfspace).collect::<Vec<_>>() })
}

pub fn encode_property(p: &PropertySpec) -> Value {
    match p {
        PropertySpec::MeetsSet(s) => json!({ "type": p.kind(), "set": encode_descriptor(s) }),
        PropertySpec::LatticeCount(k) => json!({ "type": p.kind(), "k": k }),
        PropertySpec::Dimension(k) => json!({ "type": p.kind(), "k": k }),
    }
}

pub fn encode_instance(inst: &ColoredInstance) -> Value {
    json!({
        "version": FORMAT_VERSION,
        "dim": inst.dim,
        "property": encode_property(&inst.property),
        "colors": inst.colors.iter().map(|c| c.iter().map(encode_polytope).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn encode_witness(w: &Witness) -> Value {
    match w {
        Witness::Point(x) => json!({ "point": x.iter().map(encode_rational).collect::<Vec<_>>() }),
        Witness::Count(n) => json!({ "count": n }),
        Witness::Dimension(d) => json!({ "dimension": d }),
    }
}

/// Parses encoded values, sharing one basis object per distinct basis.
pub struct Decoder {
    precision_cap: u32,
    bases: HashMap<Vec<String>, Arc<SymbolicBasis>>,
}

impl Default for Decoder {
    fn default() -> Decoder {
        Decoder::new(DEFAULT_PRECISION_CAP)
    }
}

impl Decoder {
    /// `precision_cap` bounds the enclosure precision of every basis read.
    pub fn new(precision_cap: u32) -> Decoder {
        Decoder { precision_cap, bases: HashMap::new() }
    }

    pub fn rational(&mut self, v: &Value) -> Result<Rational> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().expect("i64").into())),
            _ => Err(bad("a rational string", v)),
        }
    }

    fn basis(&mut self, labels: Vec<String>) -> Result<Arc<SymbolicBasis>> {
        if let Some(b) = self.bases.get(&labels) {
            return Ok(b.clone());
        }
        let elements = labels[1..]
            .iter()
            .map(|l| Ok((l.clone(), Constant::parse(l)?)))
            .collect::<Result<Vec<_>>>()?;
        let b = SymbolicBasis::with_cap(elements, self.precision_cap)?;
        self.bases.insert(labels, b.clone());
        Ok(b)
    }

    pub fn number(&mut self, v: &Value) -> Result<ExactNumber> {
        let Value::Object(m) = v else { return Ok(ExactNumber::rational(self.rational(v)?)) };
        let mut labels = vec!["1".to_string()];
        let mut coeffs = vec![Rational::from_integer(0.into())];
        for (k, c) in m {
            let c = self.rational(c)?;
            if matches!(Constant::parse(k)?, Constant::Unit) {
                coeffs[0] = c;
            } else {
                labels.push(k.clone());
                coeffs.push(c);
            }
        }
        let basis = self.basis(labels)?;
        ExactNumber::new(basis, coeffs)
    }

    pub fn point(&mut self, v: &Value) -> Result<Point> {
        let coords = list(v, |c| self.number(c))?;
        Point::new(coords)
    }

    pub fn halfspace(&mut self, v: &Value) -> Result<HalfSpace> {
        let normal = list(field(v, "normal")?, |x| self.rational(x))?;
        let offset = self.rational(field(v, "offset")?)?;
        HalfSpace::new(normal, offset)
    }

    fn lattice(&mut self, v: &Value) -> Result<Lattice> {
        let basis = list(field(v, "basis")?, ints)?;
        Lattice::new(basis, ints(field(v, "translate")?)?)
    }

    pub fn descriptor(&mut self, v: &Value) -> Result<SetDescriptor> {
        let kind = as_str(field(v, "type")?)?;
        let s = match kind {
            "lattice" => SetDescriptor::Lattice(self.lattice(v)?),
            "lattice-difference" => SetDescriptor::LatticeDifference {
                d: as_usize(field(v, "d")?)?,
                removed: list(field(v, "removed")?, |l| self.lattice(l))?,
            },
            "prime-grid" => SetDescriptor::PrimeGrid { d: as_usize(field(v, "d")?)? },
            "explicit-finite" => SetDescriptor::ExplicitFinite { points: list(field(v, "points")?, |p| self.point(p))? },
            "punctured-space" => SetDescriptor::PuncturedSpace {
                d: as_usize(field(v, "d")?)?,
                excluded: list(field(v, "excluded")?, |p| self.point(p))?,
            },
            "discrete-dense-product" => SetDescriptor::DiscreteDenseProduct {
                m: as_usize(field(v, "m")?)?,
                generators: list(field(v, "generators")?, |x| self.number(x))?,
            },
            "q-module" => SetDescriptor::QModule { generators: list(field(v, "generators")?, |p| self.point(p))? },
            other => return Err(Error::Parse(format!("unknown descriptor type {other:?}"))),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn window(&mut self, v: &Value) -> Result<Window> {
        Window::parse(as_str(v)?)
    }

    pub fn verdict(&mut self, v: &Value) -> Result<Verdict> {
        let code = || -> Result<ReasonCode> {
            let c = as_str(field(v, "code")?)?;
            ReasonCode::parse(c).ok_or_else(|| Error::Parse(format!("unknown reason code {c:?}")))
        };
        let reason = || -> Result<String> { Ok(as_str(field(v, "reason")?)?.to_string()) };
        match as_str(field(v, "verdict")?)? {
            "valid" => Ok(Verdict::Valid),
            "invalid" => Ok(Verdict::Invalid { code: code()?, reason: reason()? }),
            "undecided" => Ok(Verdict::Undecided { code: code()?, reason: reason()? }),
            other => Err(Error::Parse(format!("unknown verdict {other:?}"))),
        }
    }

    pub fn certificate(&mut self, v: &Value) -> Result<CertificateFile> {
        check_version(v)?;
        let descriptor = self.descriptor(field(v, "descriptor")?)?;
        let k = as_str(field(v, "kind")?)?;
        let kind = CertificateKind::parse(k).ok_or_else(|| Error::Parse(format!("unknown certificate kind {k:?}")))?;
        let configuration = match kind {
            CertificateKind::FacePolytope => {
                Configuration::face_polytope(descriptor, list(field(v, "halfspaces")?, |h| self.halfspace(h))?)
            }
            _ => Configuration { descriptor, kind, points: list(field(v, "points")?, |p| self.point(p))?, halfspaces: Vec::new() },
        };
        let claimed_bound = as_usize(field(v, "claimed_bound")?)?;
        let mut metadata = Metadata::default();
        if let Some(m) = v.get("metadata") {
            if let Some(w) = m.get("window") {
                metadata.window = Some(self.window(w)?);
            }
            if let Some(s) = m.get("search") {
                metadata.search = Some(SearchStats {
                    best_size: as_usize(field(s, "best_size")?)?,
                    nodes_explored: as_u64(field(s, "nodes_explored")?)?,
                    exhausted: field(s, "exhausted")?.as_bool().ok_or_else(|| bad("a boolean", s))?,
                });
            }
            if let Some(t) = m.get("timestamp") {
                metadata.timestamp = Some(as_u64(t)?);
            }
        }
        Ok(CertificateFile { configuration, claimed_bound, metadata })
    }

    pub fn target(&mut self, v: &Value) -> Result<BoundTarget> {
        let pair = |me: &mut Self, key: &str| -> Result<(Box<BoundTarget>, Box<BoundTarget>)> {
            let parts = as_array(field(v, key)?)?;
            if parts.len() != 2 {
                return Err(Error::Parse(format!("{key} needs exactly two entries")));
            }
            Ok((Box::new(me.target(&parts[0])?), Box::new(me.target(&parts[1])?)))
        };
        match as_str(field(v, "type")?)? {
            "mixed-integer" => {
                let (d, k) = (as_usize(field(v, "d")?)?, as_usize(field(v, "k")?)?);
                if k > d || d == 0 {
                    return Err(Error::Invalid(format!("mixed-integer needs 0 <= k <= d and d >= 1, got d = {d}, k = {k}")));
                }
                Ok(BoundTarget::MixedInteger { d, k })
            }
            "dense-planar" => Ok(BoundTarget::DensePlanar),
            "union" => {
                let (a, b) = pair(self, "parts")?;
                if a.dim() != b.dim() {
                    return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
                }
                Ok(BoundTarget::Union(a, b))
            }
            "real-times" => Ok(BoundTarget::RealTimes {
                d: as_usize(field(v, "d")?)?,
                factor: Box::new(self.target(field(v, "factor")?)?),
            }),
            "product" => {
                let (a, b) = pair(self, "factors")?;
                Ok(BoundTarget::Product(a, b))
            }
            _ => Ok(BoundTarget::Set(self.descriptor(v)?)),
        }
    }

    fn step(&mut self, v: &Value) -> Result<RuleStep> {
        Ok(RuleStep {
            rule: as_str(field(v, "rule")?)?.to_string(),
            statement: as_str(field(v, "statement")?)?.to_string(),
            value: as_u64(field(v, "value")?)?,
        })
    }

    pub fn bound_report(&mut self, v: &Value) -> Result<BoundReport> {
        check_version(v)?;
        let opt = |me: &mut Self, key: &str| -> Result<Option<RuleStep>> {
            match v.get(key) {
                None | Some(Value::Null) => Ok(None),
                Some(s) => me.step(s).map(Some),
            }
        };
        Ok(BoundReport {
            target: self.target(field(v, "target")?)?,
            upper: opt(self, "upper")?,
            lower: opt(self, "lower")?,
            rule_trace: list(field(v, "rule_trace")?, |s| self.step(s))?,
        })
    }

    pub fn ramsey(&mut self, v: &Value) -> Result<RamseyEntry> {
        check_version(v)?;
        let provenance = match as_str(field(v, "provenance")?)? {
            "verified-exhaustively" => Provenance::VerifiedExhaustively,
            "literature" => Provenance::Literature,
            "user-override" => Provenance::UserOverride,
            other => return Err(Error::Parse(format!("unknown provenance {other:?}"))),
        };
        Ok(RamseyEntry { k: as_usize(field(v, "k")?)?, value: as_u64(field(v, "value")?)?, provenance })
    }

    pub fn polytope(&mut self, v: &Value) -> Result<Polytope> {
        let dim = as_usize(field(v, "dim")?)?;
        Polytope::new(dim, list(field(v, "halfspaces")?, |h| self.halfspace(h))?)
    }

    pub fn property(&mut self, v: &Value) -> Result<PropertySpec> {
        match as_str(field(v, "type")?)? {
            "meets-set" => Ok(PropertySpec::MeetsSet(self.descriptor(field(v, "set")?)?)),
            "lattice-count" => Ok(PropertySpec::LatticeCount(as_u64(field(v, "k")?)?)),
            "dimension" => Ok(PropertySpec::Dimension(as_usize(field(v, "k")?)?)),
            other => Err(Error::Parse(format!("unknown property {other:?}"))),
        }
    }

    pub fn instance(&mut self, v: &Value) -> Result<ColoredInstance> {
        check_version(v)?;
        Ok(ColoredInstance {
            dim: as_usize(field(v, "dim")?)?,
            property: self.property(field(v, "property")?)?,
            colors: list(field(v, "colors")?, |c| list(c, |p| self.polytope(p)))?,
        })
    }
}

/// Pretty JSON text with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn from_text(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}
