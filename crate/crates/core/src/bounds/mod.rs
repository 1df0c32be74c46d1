//! Closed-form bound values, the entropy min-max optimiser, the threshold
//! solver for primitive elements in hyperplane-avoiding sets, and the
//! number-theoretic helpers they rely on.
//!
//! Everything real-valued is generic over [`Real`](crate::Real); callers
//! pick `f64` for speed or [`Extended`](crate::Extended) for margin.

pub mod closed;
pub mod entropy;
pub mod lemma41;
pub mod nt;
pub mod threshold;

pub use closed::*;
pub use entropy::*;
pub use lemma41::*;
pub use threshold::*;
