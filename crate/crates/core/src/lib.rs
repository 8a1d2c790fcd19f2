//! Computable hyperbolic geometry on finite models: exact four-point
//! hyperbolicity constants, quasi-convexity, hyperbolic cones and cone-offs,
//! rotation families with certified quotient metrics, small-cancellation
//! analyzers for presentations and labelled graphs, and the numeric parameter
//! arithmetic behind iterated small cancellation.
//!
//! Spaces are weighted graphs with their shortest-path metric. Whenever every
//! edge weight is rational the whole pipeline runs in exact arithmetic, so
//! statements like "trees have δ = 0" come out exactly, not up to 1e-16.

#![forbid(unsafe_code)]

pub mod cone;
pub mod coneoff;
pub mod convexity;
pub mod delta;
pub mod error;
pub mod group_actions;
pub mod length;
pub mod rotation;
pub mod small_cancellation;
pub mod space;
pub mod words;

pub use error::Error;
pub use length::{Dist, Length};
pub use space::{FiniteLengthSpace, SubsetHandle};
