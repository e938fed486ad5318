//! Models of L(∞Q) for the rational function field and Hermitian curves.

mod curve;
mod registry;

pub use curve::{Curve, CurveKind, FunctionElement, Place};
pub use registry::{BasisRegistry, FrozenRegistry};
