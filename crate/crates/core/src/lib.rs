//! Evaluation of the wavelike (far-field, oscillatory) term of the Green's
//! function of a source moving steadily beneath a free surface (Kelvin wave
//! source), in dimensionless coordinates with wave number one.
//!
//! The central object is
//!
//! ```text
//! I(x, y, z) = ∫₀^∞ exp(ϖ(t, x, y, z)) dt,
//! ϖ(t, x, y, z) = y(1 + t²) + i(x + zt)√(1 + t²),
//! ```
//!
//! defined for `x ≤ 0`, `y ≤ 0`, from which the wavelike term is assembled as
//! `I∞(x, y, z) = π⁻¹ H(−x) Im{I(x, y, z) + I(x, y, −z)}`.
//!
//! Two independent engines are provided:
//!
//! * [`levin`]: the integral is recast as the bounded solution of a first
//!   order ODE on `[0, 1]` which is collocated with a barycentric Lagrange
//!   polynomial on Chebyshev points, optionally augmented by a closed-form
//!   term built on the Faddeeva function. A residual-based error estimate is
//!   provided.
//! * [`clenshaw_curtis`]: the contour is rotated towards steepest descent and
//!   the resulting integrals are computed with nested Clenshaw–Curtis rules
//!   whose weights come from a DFT, doubling the node count until a
//!   Cauchy-type stopping rule is met.
//!
//! [`derivatives`] extends both engines to directional derivatives and
//! [`wavelike`] holds the public dispatching API. [`reference`] is an
//! adaptive Gauss–Kronrod evaluator kept independent of both engines for
//! validation.

// `!(a < b)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chebyshev;
pub mod clenshaw_curtis;
pub mod derivatives;
mod error;
pub mod levin;
pub mod numerics;
mod point;
pub mod reference;
pub mod special;
pub mod wavelike;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use point::FieldPoint;

/// Complex scalar used for every complex intermediate.
pub type ComplexScalar = Complex64;

pub(crate) fn ensure_finite(value: f64, what: &'static str) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}
