//! Radon measures on intervals built from closed-form pieces.

pub mod cantor;
pub mod density;
pub mod interval;
pub mod measure;
pub mod ranges;

pub use cantor::{CantorCascade, CantorComponent, CantorKind, CantorSet, GapDensity, DEFAULT_EVAL_DEPTH};
pub use density::{DensitySegment, Primitive, Side};
pub use interval::Interval;
pub use measure::{Atom, MassReport, MeasureSpec, Reciprocal};
