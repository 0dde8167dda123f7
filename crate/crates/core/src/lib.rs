//! Approximate computation of statistical data depths that satisfy the
//! projection property (Mahalanobis, zonoid, halfspace, projection and
//! asymmetric projection depth).
//!
//! The depth of `z` w.r.t. a sample `X` is the minimum over unit directions
//! `p` of the univariate depth of `<p, z>` w.r.t. `<p, X>`. The [`approx`]
//! module minimizes this objective over the sphere with eight algorithms under
//! a fixed evaluation budget; [`depths`] holds the univariate kernels and exact
//! oracles, [`geometry`] the sphere primitives and [`bench`] the benchmark
//! harness.
//!
//! All numeric code is generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`.

pub mod approx;
pub mod bench;
pub mod depths;
pub mod error;
pub mod geometry;
pub mod random;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub use approx::{approximate, Algorithm, ApproxConfig, ApproxResult};
pub use depths::{DepthNotion, EvalCounter};
pub use random::RngStream;

/// Unit direction in double precision.
pub type Direction = geometry::Direction<f64>;
/// Sample matrix in double precision.
pub type Dataset = depths::Dataset<f64>;
/// Projected sample in double precision.
pub type UnivariateSample = depths::UnivariateSample<f64>;
/// Approximation outcome in double precision.
pub type DepthApprox = approx::ApproxResult<f64>;
