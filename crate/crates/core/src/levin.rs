//! Levin-type evaluation of `I(x, y, z)`.
//!
//! With `t = τ/(1 − τ)` the integral becomes
//! `I = −Φ(0) exp(y + ix)`, where `Φ` is the bounded solution on `[0, 1]` of
//!
//! ```text
//! (1 − τ)³ Φ′ + [σ(τ) − (1 − τ)²] Φ = 1,    Φ(1) = 1/(2(y + iz)).
//! ```
//!
//! `Φ` is sought as a barycentric Lagrange polynomial on second-kind
//! Chebyshev points and the ODE is collocated at the nodes. Optionally the
//! closed-form term `φ̂` (the leading asymptotics of `Φ` at `τ = 1`, written
//! through the Faddeeva function) is split off first, which absorbs the sharp
//! peaks that appear close to the source track.
//!
//! The residual of the collocated solution is sampled on the interleaved
//! first-kind grid and propagated through the same ODE to give the error
//! estimate carried by [`LevinResult`].

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::chebyshev::ChebyshevGrid;
use crate::numerics::{lu_solve, solve_refined, ComplexMatrix};
use crate::special::faddeeva_w;
use crate::{Error, FieldPoint, Result};

/// Orders beyond this are refused; the dense solve is `O(m³)`.
pub const MAX_ORDER: usize = 4096;

/// Coefficients of the expansion `Λ(τ) = γ₂/(τ−1)² + γ₁/(τ−1) + γ₀ + O(τ−1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevinCoefficients {
    pub gamma0: Complex64,
    pub gamma1: Complex64,
    pub gamma2: Complex64,
}

impl LevinCoefficients {
    pub fn new(p: &FieldPoint) -> Result<Self> {
        if p.y == 0.0 && p.z == 0.0 {
            return Err(Error::Degenerate);
        }
        let i = Complex64::i();
        Ok(Self {
            gamma2: Complex64::new(-p.y, -p.z),
            gamma1: i * p.x - 2.0 * p.y - 2.0 * i * p.z,
            gamma0: i * p.x - 1.5 * i * p.z,
        })
    }

    /// Principal square root of `γ₂`; `Re √γ₂ ≥ 0` since `Re γ₂ = −y ≥ 0`.
    pub fn sqrt_gamma2(&self) -> Complex64 {
        self.gamma2.sqrt()
    }
}

/// Which representation of `Φ` to collocate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevinVariant {
    /// `Φ ≈ Φ_M`.
    Plain,
    /// `Φ ≈ φ̂ + Φ_M`.
    Corrected,
    /// Corrected when `y = 0` and the critical value `τ*` exists and exceeds
    /// 0.9, plain otherwise.
    Auto,
}

impl LevinVariant {
    /// Resolves [`LevinVariant::Auto`] for the given point.
    pub fn resolve(self, p: &FieldPoint) -> LevinVariant {
        match self {
            LevinVariant::Auto => {
                if p.y == 0.0 && critical_tau(p).is_some_and(|t| t > 0.9) {
                    LevinVariant::Corrected
                } else {
                    LevinVariant::Plain
                }
            }
            v => v,
        }
    }
}

/// Collocation solution and the resulting approximation of `I`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevinResult {
    /// Polynomial order `M`.
    pub m: usize,
    /// Values of the polynomial part `Φ_M` at the second-kind nodes.
    pub phi_values: Vec<Complex64>,
    pub value: Complex64,
    /// Residual-based estimate of `|I − value|`.
    pub error_estimate: f64,
    /// Whether `φ̂` was split off.
    pub corrected: bool,
}

/// `σ(τ) = ix τ(1−τ)/r + 2yτ + iz(3τ² − 2τ + 1)/r`, `r = √(2τ² − 2τ + 1)`.
pub fn sigma(tau: f64, p: &FieldPoint) -> Complex64 {
    sigma_split(tau, 1.0 - tau, p)
}

/// [`sigma`] with `1 − τ` supplied separately (`om`), so that nodes close to
/// `τ = 1` keep full relative accuracy.
pub(crate) fn sigma_split(tau: f64, om: f64, p: &FieldPoint) -> Complex64 {
    let r2 = tau * tau + om * om;
    let r = r2.sqrt();
    let im = (p.x * tau * om + p.z * (2.0 * tau * tau + om * om)) / r;
    Complex64::new(2.0 * p.y * tau, im)
}

/// Boundary value `Φ(1) = 1/(2(y + iz))` of the bounded solution.
pub fn phi_at_one(p: &FieldPoint) -> Result<Complex64> {
    if p.y == 0.0 && p.z == 0.0 {
        return Err(Error::Degenerate);
    }
    Ok((2.0 * p.y_plus_iz()).inv())
}

/// The point `τ*` where `Im σ(τ*) = 0`, around which `Φ` develops peaks
/// near the source track. Exists for `z > 0`, `x ≤ −2√2 z`.
pub fn critical_tau(p: &FieldPoint) -> Option<f64> {
    let disc = p.x * p.x - 8.0 * p.z * p.z;
    if p.z <= 0.0 || p.x > 0.0 || disc < 0.0 {
        return None;
    }
    Some((2.0 * p.z - p.x + disc.sqrt()) / (6.0 * p.z - 2.0 * p.x))
}

/// Collocation matrix of `(1 − τ)³ Φ′ + [σ(τ) + s(1 − τ)²] Φ` on `grid`,
/// with `s = −1` for `I` and `s = +1` for the derivative problem:
/// `diag{(1−τ)³}(Å − diag{s_i}) + diag{σ(τ) + s(1−τ)²}`,
/// `Å_ij = −ω_j/(ω_i(τ_j − τ_i))`, `s_i = Σ_j Å_ij`.
pub(crate) fn collocation_matrix(grid: &ChebyshevGrid, p: &FieldPoint, square_sign: f64) -> ComplexMatrix {
    let n = grid.len();
    let nodes = grid.nodes();
    let complements = grid.complements();
    let mut a = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let one_minus = complements[i];
        let cube = one_minus * one_minus * one_minus;
        let row = a.row_mut(i);
        let mut row_sum = 0.0;
        for (j, entry) in row.iter_mut().enumerate() {
            if j != i {
                let a0 = -grid.diff_entry(i, j);
                row_sum += a0;
                *entry = Complex64::new(cube * a0, 0.0);
            }
        }
        row[i] = Complex64::new(-cube * row_sum + square_sign * one_minus * one_minus, 0.0)
            + sigma_split(nodes[i], one_minus, p);
    }
    a
}

fn check_order(m: usize) -> Result<()> {
    if !(2..=MAX_ORDER).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "collocation order must lie in 2..={MAX_ORDER}, got {m}"
        )));
    }
    Ok(())
}

fn check_point(p: &FieldPoint) -> Result<()> {
    crate::ensure_finite(p.x, "x")?;
    crate::ensure_finite(p.y, "y")?;
    crate::ensure_finite(p.z, "z")?;
    if p.y == 0.0 && p.z == 0.0 {
        return Err(Error::Degenerate);
    }
    Ok(())
}

/// Matrix `A` of the collocation system `AΦ = b` for order `m`.
pub fn assemble_system(p: &FieldPoint, m: usize) -> Result<ComplexMatrix> {
    check_order(m)?;
    check_point(p)?;
    let grid = ChebyshevGrid::second_kind(m)?;
    Ok(collocation_matrix(&grid, p, -1.0))
}

/// `φ̂(τ) = √π / (2(τ−1)√γ₂) · w(i√γ₂/(1−τ) − iγ₁/(2√γ₂))`; at `τ = 1` the
/// limit `1/(2(y + iz))` is returned.
pub fn hat_phi(tau: f64, p: &FieldPoint) -> Result<Complex64> {
    let coeffs = LevinCoefficients::new(p)?;
    check_tau(tau)?;
    hat_phi_with(1.0 - tau, p, &coeffs)
}

/// `φ̂` as a function of `om = 1 − τ`.
pub(crate) fn hat_phi_with(om: f64, p: &FieldPoint, c: &LevinCoefficients) -> Result<Complex64> {
    if om == 0.0 {
        return phi_at_one(p);
    }
    let i = Complex64::i();
    let sg = c.sqrt_gamma2();
    let eta = i * sg / om - i * c.gamma1 / (2.0 * sg);
    let w = faddeeva_w(eta)?;
    Ok(-PI.sqrt() / (2.0 * om * sg) * w)
}

/// `L̂(τ) = (1−τ)³ φ̂′ + [σ − (1−τ)²] φ̂`, evaluated in closed form as
/// `1 + φ̂(τ)·(σ(τ) + 2γ₂ + γ₁(τ − 1))`. Equal to 1 at `τ = 1`.
pub fn lhat(tau: f64, p: &FieldPoint) -> Result<Complex64> {
    let coeffs = LevinCoefficients::new(p)?;
    check_tau(tau)?;
    lhat_with(tau, 1.0 - tau, p, &coeffs)
}

fn lhat_with(tau: f64, om: f64, p: &FieldPoint, c: &LevinCoefficients) -> Result<Complex64> {
    if om == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let phi = hat_phi_with(om, p, c)?;
    Ok(1.0 + phi * (sigma_split(tau, om, p) + 2.0 * c.gamma2 - c.gamma1 * om))
}

fn check_tau(tau: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::Domain(format!("tau = {tau} outside [0, 1]")));
    }
    Ok(())
}

/// Solves `AΦ = (1, …, 1)ᵀ` and returns `I ≈ −Φ_0 exp(y + ix)`.
pub fn solve_plain(p: &FieldPoint, m: usize) -> Result<LevinResult> {
    solve(p, m, LevinVariant::Plain)
}

/// Solves `AΦ = 1 − L̂(τ_k)` and returns `I ≈ −(Φ_0 + φ̂(0)) exp(y + ix)`.
pub fn solve_corrected(p: &FieldPoint, m: usize) -> Result<LevinResult> {
    solve(p, m, LevinVariant::Corrected)
}

/// Solves with the requested variant ([`LevinVariant::Auto`] is resolved
/// per point) and attaches the error estimate.
pub fn solve(p: &FieldPoint, m: usize, variant: LevinVariant) -> Result<LevinResult> {
    check_order(m)?;
    check_point(p)?;
    let corrected = variant.resolve(p) == LevinVariant::Corrected;
    let coeffs = LevinCoefficients::new(p)?;
    let grid = ChebyshevGrid::second_kind(m)?;
    let a = collocation_matrix(&grid, p, -1.0);

    let rhs: Vec<Complex64> = if corrected {
        grid.nodes()
            .iter()
            .zip(grid.complements())
            .map(|(&t, &om)| lhat_with(t, om, p, &coeffs).map(|l| 1.0 - l))
            .collect::<Result<_>>()?
    } else {
        vec![Complex64::new(1.0, 0.0); grid.len()]
    };
    let phi = solve_refined(a, &rhs)?;

    let mut phi0 = phi[0];
    if corrected {
        phi0 += hat_phi_with(1.0, p, &coeffs)?;
    }
    let value = -phi0 * Complex64::new(p.y, p.x).exp();

    let mut result = LevinResult {
        m,
        phi_values: phi,
        value,
        error_estimate: 0.0,
        corrected,
    };
    result.error_estimate = error_estimate(p, m, &result)?;
    Ok(result)
}

/// Residual `r(τ) = L(Φ_M [+ φ̂])(τ) − 1` of a computed solution.
pub fn residual(p: &FieldPoint, result: &LevinResult, tau: f64) -> Result<Complex64> {
    check_tau(tau)?;
    let grid = ChebyshevGrid::second_kind(result.m)?;
    let coeffs = LevinCoefficients::new(p)?;
    let (val, der) = grid.eval_with_derivative(&result.phi_values, tau)?;
    let one_minus = 1.0 - tau;
    let mut r = one_minus.powi(3) * der + (sigma(tau, p) - one_minus * one_minus) * val - 1.0;
    if result.corrected {
        r += lhat_with(tau, one_minus, p, &coeffs)?;
    }
    Ok(r)
}

/// Residual norms of a collocated solution: `r` is sampled on the first-kind
/// grid of order `m − 1` and `LR = r` is collocated there. The closure
/// receives `τ` and `1 − τ`.
/// Returns `(‖r‖∞, ‖R‖∞)`.
pub(crate) fn residual_norms(
    p: &FieldPoint,
    m: usize,
    phi_values: &[Complex64],
    square_sign: f64,
    rhs_minus_correction: impl Fn(f64, f64) -> Result<Complex64>,
) -> Result<(f64, f64)> {
    let grid = ChebyshevGrid::second_kind(m)?;
    let check = ChebyshevGrid::first_kind(m - 1)?;
    let r: Vec<Complex64> = check
        .nodes()
        .iter()
        .zip(check.complements())
        .map(|(&t, &om)| {
            let (val, der) = grid.eval_with_derivative(phi_values, t)?;
            let lhs = om.powi(3) * der + (sigma_split(t, om, p) + square_sign * om * om) * val;
            Ok(lhs - rhs_minus_correction(t, om)?)
        })
        .collect::<Result<_>>()?;
    let b = collocation_matrix(&check, p, square_sign);
    let big_r = lu_solve(b, &r)?;
    let norm = |v: &[Complex64]| v.iter().map(|c| c.norm()).fold(0.0, f64::max);
    Ok((norm(&r), norm(&big_r)))
}

/// `ε = e^y min{‖R‖∞, ½√(π/|y|)‖r‖∞}`; only the `‖R‖∞` branch when `y = 0`.
pub fn error_estimate(p: &FieldPoint, m: usize, result: &LevinResult) -> Result<f64> {
    check_order(m)?;
    if result.phi_values.len() != m + 1 {
        return Err(Error::InvalidArgument(format!(
            "solution has {} values, expected {}",
            result.phi_values.len(),
            m + 1
        )));
    }
    let coeffs = LevinCoefficients::new(p)?;
    let corrected = result.corrected;
    let (r_norm, big_r_norm) = residual_norms(p, m, &result.phi_values, -1.0, |t, om| {
        if corrected {
            lhat_with(t, om, p, &coeffs).map(|l| 1.0 - l)
        } else {
            Ok(Complex64::new(1.0, 0.0))
        }
    })?;
    let mut bound = big_r_norm;
    if p.y < 0.0 {
        bound = bound.min(0.5 * (PI / p.y.abs()).sqrt() * r_norm);
    }
    Ok(p.y.exp() * bound)
}

/// Settings for [`evaluate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevinConfig {
    pub variant: LevinVariant,
    /// Starting (or only) polynomial order.
    pub order: usize,
    /// When set, the order is doubled until the error estimate drops to this
    /// value or `max_order` is reached.
    pub tolerance: Option<f64>,
    pub max_order: usize,
}

impl Default for LevinConfig {
    fn default() -> Self {
        Self {
            variant: LevinVariant::Corrected,
            order: 100,
            tolerance: None,
            max_order: 1600,
        }
    }
}

/// Outcome of [`evaluate`].
#[derive(Debug, Clone, PartialEq)]
pub struct LevinOutcome {
    pub result: LevinResult,
    /// `false` when a tolerance was requested and not met by `max_order`.
    pub converged: bool,
}

/// Fixed-order solve, or the order-doubling loop when a tolerance is set.
/// The loop returns the result with the smallest error estimate seen.
pub fn evaluate(p: &FieldPoint, cfg: &LevinConfig) -> Result<LevinOutcome> {
    let Some(tol) = cfg.tolerance else {
        let result = solve(p, cfg.order, cfg.variant)?;
        return Ok(LevinOutcome {
            result,
            converged: true,
        });
    };
    let mut m = cfg.order.max(2);
    let mut best: Option<LevinResult> = None;
    loop {
        let result = solve(p, m, cfg.variant)?;
        let done = result.error_estimate <= tol;
        if best
            .as_ref()
            .is_none_or(|b| result.error_estimate <= b.error_estimate)
        {
            best = Some(result);
        }
        if done {
            return Ok(LevinOutcome {
                result: best.expect("set above"),
                converged: true,
            });
        }
        if m >= cfg.max_order {
            return Ok(LevinOutcome {
                result: best.expect("set above"),
                converged: false,
            });
        }
        m = (2 * m).min(cfg.max_order);
    }
}
