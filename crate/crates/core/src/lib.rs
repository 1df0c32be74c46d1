//! Exact multiplicative character sums over structured subsets of finite
//! fields `F_{q^r}`, `r` even.
//!
//! The crate builds the tower `F_p ⊆ F_q ⊆ F_{q^{r/2}} ⊆ F_{q^r}` with an
//! adapted basis ([`field`]), enumerates restricted-coordinate and sparse
//! subsets ([`subsets`]), evaluates character sums as exact integer tallies
//! over roots of unity ([`characters`], [`sums`]), and computes every bound
//! those sums are measured against ([`bounds`]). [`verify`] bundles the
//! exhaustive consistency suites.
//!
//! Real-valued code is generic over [`Real`]; use `f64` or [`Extended`].

pub mod bounds;
pub mod characters;
pub mod error;
pub mod field;
pub mod parallel;
pub mod poly;
pub mod real;
pub mod subsets;
pub mod sums;
pub mod verify;

pub use bounds::nt::{factorize, Factorization};
pub use characters::{characters_of_order, MulChar, SumAccumulator};
pub use error::{Error, Result};
pub use field::{Elt, FieldCtx, FieldManifest, TowerParams};
pub use poly::Poly;
pub use real::{CompensatedSum, Real};
pub use subsets::{RestrictedFamily, SparseSpec};
pub use sums::{BoundReport, SumResult, SumSet};

/// IEEE binary128 scalar (113-bit mantissa).
pub type Extended = f128::f128;

pub type EntropyPoint64 = bounds::EntropyPoint<f64>;
pub type EntropyPointExt = bounds::EntropyPoint<Extended>;
pub type EtaPrime64 = bounds::EtaPrime<f64>;
pub type EtaPrimeExt = bounds::EtaPrime<Extended>;
pub type ThresholdResult64 = bounds::ThresholdResult<f64>;
pub type ThresholdResultExt = bounds::ThresholdResult<Extended>;
pub type Thm35Bound64 = bounds::Thm35Bound<f64>;
pub type Thm35BoundExt = bounds::Thm35Bound<Extended>;
