//! Passive approximation of complex-valued targets on frequency bands.
//!
//! The library approximates a continuous target function on a band by the
//! boundary values of a Herglotz function (the transfer-function class of
//! passive linear systems) whose generating measure is a finite B-spline
//! expansion. The approximation problem is convex and is solved here with
//! self-contained dense solvers: a primal-dual interior-point LP for weighted
//! minimax and L1 objectives, and an active-set nonnegative least-squares
//! routine for L2.
//!
//! Module map:
//!
//! - [`bspline`]: uniform partitions, prototype B-splines of arbitrary order
//!   by box convolution, and spline expansions, all as exact piecewise
//!   polynomials.
//! - [`cauchy`]: closed-form principal-value Cauchy integrals and Hilbert
//!   transforms of piecewise polynomials.
//! - [`herglotz`]: generating measures, upper half-plane and boundary
//!   evaluation, Stieltjes inversion, sum rules, and bandwidth lower bounds.
//! - [`approx`]: assembly of the sampled passive approximation problem into
//!   solver-ready forms.
//! - [`solver`]: dense interior-point LP and Lawson-Hanson NNLS.
//! - [`cli`]: the experiment runner behind the `passive-approx` binary.
//!
//! See the `examples/` directory for one runnable example per capability.

// `!(x > 0.0)` rejects NaN along with the out-of-range values; a plain `<=`
// would let NaN through. Indexed loops mirror the dense-kernel math.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod approx;
pub mod bspline;
pub mod cauchy;
pub mod cli;
pub mod error;
pub mod herglotz;
pub mod linalg;
pub mod quad;
pub mod solver;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
