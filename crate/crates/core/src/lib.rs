//! Formal deformation quantization at desk scale.
//!
//! Truncated Weyl algebra bundles over `ℝ²ⁿ` and `𝕋²ⁿ`, Fedosov connections
//! with prescribed curvature class, star products through flat sections,
//! lifts of affine symplectomorphisms and the cohomological invariants used
//! to tell extensions of group actions apart.

#![allow(clippy::needless_range_loop)]

pub mod base;
pub mod cohomology;
pub mod equivariance;
pub mod error;
pub mod fedosov;
pub mod geometry;
pub mod json;
pub mod linalg;
pub mod scalar;
pub mod weyl;

pub use base::{BaseFunction, BaseSeries, Ring};
pub use error::{Error, Result};
pub use scalar::{Approx, Exact, Scalar, ScalarKind};
pub use weyl::{FiberPoisson, WeylElement, WeylKey, WeylSpace};
