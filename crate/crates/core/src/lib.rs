//! Exact symbolic engine for derivation-based differential calculi on
//! Lie-type subalgebras of the four-dimensional Moyal algebra.
//!
//! The crate is organized bottom-up:
//! - [`scalar`]: Gaussian rationals and theta-Laurent coefficients
//! - [`linalg`]: exact linear solves with infeasibility certificates
//! - [`weyl`]: the polynomial Moyal algebra (star product, brackets)
//! - [`algebra`]: the catalog of quadratic realizations, structure-constant
//!   extraction, Casimir and centralizer checks, localization
//! - [`calculus`]: forms over a four-dimensional derivation basis, exterior
//!   derivative, wedge, contraction, frames, structure-equation tables
//! - [`gauge`]: metric, Hodge duality, curvature, Yang-Mills identities,
//!   Laplacian
//! - [`expr`]: the surface expression language (parser and printer)
//! - [`report`]: check records and deterministic text/JSON rendering
//! - [`suites`]: the per-algebra verification suites used by the CLI and
//!   the acceptance tests

pub mod algebra;
pub mod calculus;
pub mod expr;
pub mod gauge;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod weyl;

// re-exports are added as modules land

pub use scalar::{GaussianRational, Scalar};
pub use weyl::{Mono, Var, WeylElement};

/// Engine version string embedded in reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
