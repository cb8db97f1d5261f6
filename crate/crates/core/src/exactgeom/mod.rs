//! Exact numbers and exact geometric predicates.

pub mod basis;
pub mod corepoly;
pub mod hull;
pub mod kernel;
pub mod linalg;
pub mod lp;
pub mod number;
pub mod point;
pub mod poly;
pub mod rational;
pub mod scalar;

pub use basis::{Constant, SymbolicBasis, DEFAULT_PRECISION_CAP};
pub use corepoly::{core_of, CorePolytope};
pub use hull::{convex_position, in_hull, in_hull_facets, orientation, strict_convex_position, ConvexPosition};
pub use lp::{lp_optimize, Direction, LpOutcome};
pub use number::{ExactNumber, Sign};
pub use point::{HalfSpace, Point};
pub use rational::Rational;
