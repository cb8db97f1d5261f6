//! Checkers for the three lower-bound witness forms and the parity/midpoint
//! diagnostic for lattice differences.

mod face;
mod hoffman;
mod midpoint;
mod vertex;

use std::fmt;

pub use face::check_face_polytope;
pub use hoffman::check_hoffman;
pub use midpoint::{ramsey_midpoint_diagnostic, EdgeLabel, RamseyDiagnostic, RamseyFinding};
pub use vertex::check_vertex_polytope;

use crate::error::Result;
use crate::exactgeom::{HalfSpace, Point};
use crate::pointsets::SetDescriptor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    VertexPolytope,
    Hoffman,
    FacePolytope,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::VertexPolytope => "vertex-polytope",
            CertificateKind::Hoffman => "hoffman",
            CertificateKind::FacePolytope => "face-polytope",
        }
    }

    pub fn parse(s: &str) -> Option<CertificateKind> {
        match s {
            "vertex-polytope" => Some(CertificateKind::VertexPolytope),
            "hoffman" => Some(CertificateKind::Hoffman),
            "face-polytope" => Some(CertificateKind::FacePolytope),
            _ => None,
        }
    }
}

/// Machine-readable reason attached to non-valid verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReasonCode {
    NotInSet,
    DuplicatePoint,
    NotConvexPosition,
    CapturedPoint,
    BoundMismatch,
    EmptyPolytope,
    RedundantHalfspace,
    WrongCount,
    NotRelativeInterior,
    CoreMeetsSet,
    DensityUnknown,
    Unsupported,
    Precision,
}

impl ReasonCode {
    pub fn name(self) -> &'static str {
        match self {
            ReasonCode::NotInSet => "not-in-set",
            ReasonCode::DuplicatePoint => "duplicate-point",
            ReasonCode::NotConvexPosition => "not-convex-position",
            ReasonCode::CapturedPoint => "captured-point",
            ReasonCode::BoundMismatch => "bound-mismatch",
            ReasonCode::EmptyPolytope => "empty-polytope",
            ReasonCode::RedundantHalfspace => "redundant-halfspace",
            ReasonCode::WrongCount => "wrong-count",
            ReasonCode::NotRelativeInterior => "not-relative-interior",
            ReasonCode::CoreMeetsSet => "core-meets-set",
            ReasonCode::DensityUnknown => "density-unknown",
            ReasonCode::Unsupported => "unsupported",
            ReasonCode::Precision => "precision-exhausted",
        }
    }

    pub fn parse(s: &str) -> Option<ReasonCode> {
        use ReasonCode::*;
        [
            NotInSet,
            DuplicatePoint,
            NotConvexPosition,
            CapturedPoint,
            BoundMismatch,
            EmptyPolytope,
            RedundantHalfspace,
            WrongCount,
            NotRelativeInterior,
            CoreMeetsSet,
            DensityUnknown,
            Unsupported,
            Precision,
        ]
        .into_iter()
        .find(|c| c.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid { code: ReasonCode, reason: String },
    Undecided { code: ReasonCode, reason: String },
}

impl Verdict {
    pub(crate) fn invalid(code: ReasonCode, reason: impl Into<String>) -> Verdict {
        Verdict::Invalid { code, reason: reason.into() }
    }

    pub(crate) fn undecided(code: ReasonCode, reason: impl Into<String>) -> Verdict {
        Verdict::Undecided { code, reason: reason.into() }
    }

    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Valid => "valid",
            Verdict::Invalid { .. } => "invalid",
            Verdict::Undecided { .. } => "undecided",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => write!(f, "valid"),
            Verdict::Invalid { code, reason } => write!(f, "invalid ({}): {reason}", code.name()),
            Verdict::Undecided { code, reason } => write!(f, "undecided ({}): {reason}", code.name()),
        }
    }
}

/// Points (or halfspaces) asserted to witness a lower bound for `descriptor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub descriptor: SetDescriptor,
    pub kind: CertificateKind,
    pub points: Vec<Point>,
    pub halfspaces: Vec<HalfSpace>,
}

impl Configuration {
    pub fn vertex_polytope(descriptor: SetDescriptor, points: Vec<Point>) -> Configuration {
        Configuration { descriptor, kind: CertificateKind::VertexPolytope, points, halfspaces: Vec::new() }
    }

    pub fn hoffman(descriptor: SetDescriptor, points: Vec<Point>) -> Configuration {
        Configuration { descriptor, kind: CertificateKind::Hoffman, points, halfspaces: Vec::new() }
    }

    pub fn face_polytope(descriptor: SetDescriptor, halfspaces: Vec<HalfSpace>) -> Configuration {
        Configuration { descriptor, kind: CertificateKind::FacePolytope, points: Vec::new(), halfspaces }
    }

    /// The bound the configuration witnesses when valid.
    pub fn size(&self) -> usize {
        match self.kind {
            CertificateKind::FacePolytope => self.halfspaces.len(),
            _ => self.points.len(),
        }
    }
}

/// A checked witness that `h(S) ≥ claimed_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundCertificate {
    pub configuration: Configuration,
    pub claimed_bound: usize,
    pub verdict: Verdict,
}

/// Runs the checker for the configuration's kind and compares the claimed bound
/// with the configuration size.
pub fn check_certificate(config: &Configuration, claimed_bound: usize) -> Result<LowerBoundCertificate> {
    let checked = match config.kind {
        CertificateKind::VertexPolytope => check_vertex_polytope(&config.descriptor, &config.points)?,
        CertificateKind::Hoffman => check_hoffman(&config.descriptor, &config.points)?,
        CertificateKind::FacePolytope => check_face_polytope(&config.descriptor, &config.halfspaces)?,
    };
    let verdict = if claimed_bound != config.size() {
        Verdict::invalid(
            ReasonCode::BoundMismatch,
            format!("claimed bound {claimed_bound} but the configuration has size {}", config.size()),
        )
    } else {
        checked.verdict
    };
    Ok(LowerBoundCertificate { configuration: config.clone(), claimed_bound, verdict })
}

/// Integer box around rational points (floors and ceilings).
pub(crate) fn integer_bbox(points: &[Point]) -> Option<crate::pointsets::Window> {
    use crate::exactgeom::rational::{ceil_i64, floor_i64};
    let rows: Vec<Vec<crate::exactgeom::Rational>> = points.iter().map(Point::to_rational).collect::<Option<_>>()?;
    let d = rows.first()?.len();
    let lower = (0..d).map(|i| rows.iter().map(|r| floor_i64(&r[i])).min().flatten()).collect::<Option<Vec<_>>>()?;
    let upper = (0..d).map(|i| rows.iter().map(|r| ceil_i64(&r[i])).max().flatten()).collect::<Option<Vec<_>>>()?;
    crate::pointsets::Window::new(lower, upper).ok()
}
