//! Directional derivatives `J(ℓ) = ∇I · ℓ` of `I(x, y, z)`.
//!
//! Differentiating under the integral sign gives
//! `J(ℓ) = ∫₀^∞ ϖ(t, ℓ₁, ℓ₂, ℓ₃) exp(ϖ(t, x, y, z)) dt`, which the quadrature
//! engine handles with an extra amplitude factor. For the collocation
//! engine the same substitution `t = τ/(1 − τ)` leads to
//!
//! ```text
//! (1 − τ)³ Φ′ + [(1 − τ)² + σ(τ)] Φ = ϖ°(τ, ℓ),   J = −Φ(0) exp(y + ix),
//! ϖ°(τ, ℓ) = ℓ₂ r² + i(ℓ₁(1 − τ) + ℓ₃τ) r,   Φ(1) = (ℓ₂ + iℓ₃)/(2(y + iz)),
//! ```
//!
//! which is bounded only for `y < 0`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::chebyshev::ChebyshevGrid;
use crate::clenshaw_curtis::{integrate_weighted, CCConfig, CCResult};
use crate::levin::{collocation_matrix, residual_norms, sigma_split, LevinCoefficients, LevinResult, LevinVariant};
use crate::numerics::solve_refined;
use crate::point::exponent;
use crate::special::faddeeva_w;
use crate::{Error, FieldPoint, Result};

/// Direction vector `ℓ = (ℓ₁, ℓ₂, ℓ₃)` in `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
}

impl Direction {
    pub fn new(l1: f64, l2: f64, l3: f64) -> Result<Self> {
        crate::ensure_finite(l1, "l1")?;
        crate::ensure_finite(l2, "l2")?;
        crate::ensure_finite(l3, "l3")?;
        if l1 == 0.0 && l2 == 0.0 && l3 == 0.0 {
            return Err(Error::InvalidArgument("direction must not be the zero vector".into()));
        }
        Ok(Self { l1, l2, l3 })
    }

    pub const X: Direction = Direction { l1: 1.0, l2: 0.0, l3: 0.0 };
    pub const Y: Direction = Direction { l1: 0.0, l2: 1.0, l3: 0.0 };
    pub const Z: Direction = Direction { l1: 0.0, l2: 0.0, l3: 1.0 };

    /// `ℓ₂ + iℓ₃`.
    fn c0(&self) -> Complex64 {
        Complex64::new(self.l2, self.l3)
    }
}

/// `J(ℓ)` by the rotated-contour quadrature, with the same plan and
/// stopping rule as for `I`.
pub fn deriv_cc(p: &FieldPoint, d: &Direction, eps: f64) -> Result<CCResult> {
    deriv_cc_with(p, d, &CCConfig::new(eps))
}

pub fn deriv_cc_with(p: &FieldPoint, d: &Direction, cfg: &CCConfig) -> Result<CCResult> {
    let d = Direction::new(d.l1, d.l2, d.l3)?;
    integrate_weighted(p, cfg, |t| exponent(t, d.l1, d.l2, d.l3))
}

/// Right-hand side `ϖ°(τ, ℓ) = (1 − τ)² ϖ(τ/(1 − τ), ℓ)`.
pub fn rhs(tau: f64, d: &Direction) -> Complex64 {
    rhs_split(tau, 1.0 - tau, d)
}

fn rhs_split(tau: f64, om: f64, d: &Direction) -> Complex64 {
    let r2 = tau * tau + om * om;
    let r = r2.sqrt();
    Complex64::new(d.l2 * r2, (d.l1 * om + d.l3 * tau) * r)
}

/// Closed-form part `φ̂_ℓ` of the derivative solution,
/// `c₀(τ−1)[√π(γ₁² + 2γ₂)/(8γ₂^{5/2}) w(η) + (γ₁ + 2γ₂/(1−τ))/(4γ₂²)]`
/// with `c₀ = ℓ₂ + iℓ₃` and `η` as for `I`. Equals `c₀/(2(y + iz))` at `τ = 1`.
pub fn hat_phi(tau: f64, p: &FieldPoint, d: &Direction) -> Result<Complex64> {
    let k = LevinCoefficients::new(p)?;
    check_tau(tau)?;
    hat_phi_with(1.0 - tau, p, d, &k)
}

/// `φ̂_ℓ` as a function of `om = 1 − τ`.
fn hat_phi_with(om: f64, p: &FieldPoint, d: &Direction, k: &LevinCoefficients) -> Result<Complex64> {
    let c0 = d.c0();
    if om == 0.0 {
        return Ok(c0 / (2.0 * p.y_plus_iz()));
    }
    let i = Complex64::i();
    let (g1, g2) = (k.gamma1, k.gamma2);
    let sg = k.sqrt_gamma2();
    let w = faddeeva_w(i * sg / om - i * g1 / (2.0 * sg))?;
    let lead = PI.sqrt() * (g1 * g1 + 2.0 * g2) / (8.0 * g2 * g2 * sg) * w;
    let rest = (g1 + 2.0 * g2 / om) / (4.0 * g2 * g2);
    Ok(-c0 * om * (lead + rest))
}

/// Operator image `(1−τ)³ φ̂′ + [(1−τ)² + σ] φ̂ = c₀ + φ̂·(σ + 2γ₂ + γ₁(τ − 1))`.
pub fn lhat(tau: f64, p: &FieldPoint, d: &Direction) -> Result<Complex64> {
    let k = LevinCoefficients::new(p)?;
    check_tau(tau)?;
    lhat_with(tau, 1.0 - tau, p, d, &k)
}

fn lhat_with(tau: f64, om: f64, p: &FieldPoint, d: &Direction, k: &LevinCoefficients) -> Result<Complex64> {
    let phi = hat_phi_with(om, p, d, k)?;
    Ok(d.c0() + phi * (sigma_split(tau, om, p) + 2.0 * k.gamma2 - k.gamma1 * om))
}

fn check_tau(tau: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::Domain(format!("tau = {tau} outside [0, 1]")));
    }
    Ok(())
}

/// Boundary value `Φ_ℓ(1) = (ℓ₂ + iℓ₃)/(2(y + iz))`.
pub fn phi_at_one(p: &FieldPoint, d: &Direction) -> Result<Complex64> {
    if p.y == 0.0 && p.z == 0.0 {
        return Err(Error::Degenerate);
    }
    Ok(d.c0() / (2.0 * p.y_plus_iz()))
}

/// `J(ℓ)` by collocation of order `m`, with the closed-form part split off.
pub fn deriv_levin(p: &FieldPoint, d: &Direction, m: usize) -> Result<LevinResult> {
    deriv_levin_variant(p, d, m, LevinVariant::Corrected)
}

/// As [`deriv_levin`] with an explicit variant. `Auto` resolves to plain
/// since `y < 0` is required here.
pub fn deriv_levin_variant(p: &FieldPoint, d: &Direction, m: usize, variant: LevinVariant) -> Result<LevinResult> {
    let d = Direction::new(d.l1, d.l2, d.l3)?;
    crate::ensure_finite(p.x, "x")?;
    crate::ensure_finite(p.y, "y")?;
    crate::ensure_finite(p.z, "z")?;
    if !(p.y < 0.0) {
        return Err(Error::Domain(format!(
            "collocated derivatives need y < 0, got y = {}",
            p.y
        )));
    }
    if !(2..=crate::levin::MAX_ORDER).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "collocation order must lie in 2..={}, got {m}",
            crate::levin::MAX_ORDER
        )));
    }
    let corrected = variant.resolve(p) == LevinVariant::Corrected;
    let k = LevinCoefficients::new(p)?;
    let grid = ChebyshevGrid::second_kind(m)?;
    let a = collocation_matrix(&grid, p, 1.0);
    let target = |t: f64, om: f64| -> Result<Complex64> {
        let base = rhs_split(t, om, &d);
        if corrected {
            Ok(base - lhat_with(t, om, p, &d, &k)?)
        } else {
            Ok(base)
        }
    };
    let b: Vec<Complex64> = grid
        .nodes()
        .iter()
        .zip(grid.complements())
        .map(|(&t, &om)| target(t, om))
        .collect::<Result<_>>()?;
    let phi = solve_refined(a, &b)?;

    let mut phi0 = phi[0];
    if corrected {
        phi0 += hat_phi_with(1.0, p, &d, &k)?;
    }
    let value = -phi0 * Complex64::new(p.y, p.x).exp();
    let (_, big_r) = residual_norms(p, m, &phi, 1.0, target)?;
    Ok(LevinResult {
        m,
        phi_values: phi,
        value,
        error_estimate: p.y.exp() * big_r,
        corrected,
    })
}
