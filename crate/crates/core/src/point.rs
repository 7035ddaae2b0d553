use num_complex::Complex64;

use crate::{ensure_finite, Error, Result};

/// A field point `(x, y, z)` in the frame moving with the source, in units
/// where the wave number is one. `x` is streamwise, `y` vertical (upwards,
/// already combined with the source depth where relevant), `z` transverse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FieldPoint {
    /// Builds a point, rejecting NaN and infinities. No sign constraints are
    /// imposed here; see [`FieldPoint::check_domain`].
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        ensure_finite(x, "x")?;
        ensure_finite(y, "y")?;
        ensure_finite(z, "z")?;
        Ok(Self { x, y, z })
    }

    /// Domain of `I`: `x ≤ 0`, `y ≤ 0`, and not on the source track.
    /// The origin `(0, 0, 0)` is also rejected since `I`
    /// diverges there.
    pub fn check_domain(&self) -> Result<()> {
        ensure_finite(self.x, "x")?;
        ensure_finite(self.y, "y")?;
        ensure_finite(self.z, "z")?;
        if self.x > 0.0 {
            return Err(Error::Domain(format!("x = {} must be ≤ 0", self.x)));
        }
        if self.y > 0.0 {
            return Err(Error::Domain(format!("y = {} must be ≤ 0", self.y)));
        }
        if self.y == 0.0 && self.z == 0.0 {
            if self.x < 0.0 {
                return Err(Error::TrackSingularity { x: self.x });
            }
            return Err(Error::Domain("I diverges at the origin".into()));
        }
        Ok(())
    }

    /// `y + iz`.
    pub fn y_plus_iz(&self) -> Complex64 {
        Complex64::new(self.y, self.z)
    }

    /// `√(y² + z²)`.
    pub fn rho(&self) -> f64 {
        self.y.hypot(self.z)
    }

    /// Difficulty parameter `D = x² / (4√(y² + z²))`; `None` when `y = z = 0`.
    pub fn d_param(&self) -> Option<f64> {
        let rho = self.rho();
        (rho > 0.0).then(|| self.x * self.x / (4.0 * rho))
    }

    /// The mirrored point `(x, y, −z)`.
    pub fn mirrored(&self) -> Self {
        Self {
            z: -self.z,
            ..*self
        }
    }
}

/// Exponent `ϖ(t, x, y, z) = y(1 + t²) + i(x + zt)√(1 + t²)` of the integrand
/// of `I`, for complex `t` (principal square root).
pub(crate) fn exponent(t: Complex64, x: f64, y: f64, z: f64) -> Complex64 {
    let s = Complex64::new(1.0, 0.0) + t * t;
    let root = s.sqrt();
    y * s + Complex64::i() * (x + z * t) * root
}
