use thiserror::Error;

/// Errors raised by the engines and the public evaluation API.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain on which the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The point lies on the source track `y = 0, z = 0, x < 0`, a line of
    /// essential singularities.
    #[error("point ({x}, 0, 0) lies on the source track y = z = 0, x < 0")]
    TrackSingularity { x: f64 },

    /// `y + iz = 0`: the collocation boundary value and the contour angle are undefined.
    #[error("degenerate point: y and z are both zero")]
    Degenerate,

    /// A floating point intermediate overflowed.
    #[error("overflow: {0}")]
    Overflow(String),

    /// LU factorisation met a negligible pivot.
    #[error("singular matrix: pivot {pivot:e} at column {column} below threshold {threshold:e}")]
    SingularMatrix {
        column: usize,
        pivot: f64,
        threshold: f64,
    },

    /// An integrand returned NaN or infinity.
    #[error("non-finite integrand value at node {node}")]
    NonFiniteIntegrand { node: f64 },

    /// An input contained NaN or infinity.
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    /// Malformed argument (wrong dimensions, orders out of range, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
