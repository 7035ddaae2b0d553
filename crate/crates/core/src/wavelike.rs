//! Public evaluation API: domain checks, closed forms, diagnostics, engine
//! dispatch and assembly of `I∞(x, y, z) = π⁻¹ H(−x) Im{I(x, y, z) + I(x, y, −z)}`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::clenshaw_curtis::{integrate_I, steepest_angle};
use crate::levin::{self, LevinConfig, LevinVariant};
use crate::{Error, FieldPoint, Result};

/// `I(0, y, 0) = (√π/2) e^y / √(−y)` for `y < 0`.
pub fn closed_form_axis(y: f64) -> Result<Complex64> {
    crate::ensure_finite(y, "y")?;
    if !(y < 0.0) {
        return Err(Error::Domain(format!("closed form needs y < 0, got {y}")));
    }
    Ok(Complex64::new(PI.sqrt() / 2.0 * y.exp() / (-y).sqrt(), 0.0))
}

/// Stationary points `t± = −x/(4z) ± √((x/(4z))² − 1/2)` of the phase,
/// present for `z > 0` inside the wedge `x ≤ −2√2 z`. A single point is
/// returned on the wedge boundary.
pub fn critical_points(p: &FieldPoint) -> Vec<f64> {
    if !(p.z > 0.0) {
        return Vec::new();
    }
    let c = -p.x / (4.0 * p.z);
    let disc = c * c - 0.5;
    if disc.abs() <= 4.0 * f64::EPSILON {
        vec![c]
    } else if disc < 0.0 {
        Vec::new()
    } else {
        let r = disc.sqrt();
        vec![c - r, c + r]
    }
}

/// Engine selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Collocation for `y ≤ levin_max_y` and `D ≤ levin_max_d`, quadrature
    /// otherwise or when the collocation loop misses the tolerance.
    Auto,
    Levin(LevinVariant),
    ClenshawCurtis,
}

/// What actually produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodUsed {
    LevinPlain,
    LevinCorrected,
    ClenshawCurtis,
    ClosedForm,
}

impl MethodUsed {
    pub fn as_str(&self) -> &'static str {
        match self {
            MethodUsed::LevinPlain => "levin_plain",
            MethodUsed::LevinCorrected => "levin_corrected",
            MethodUsed::ClenshawCurtis => "cc",
            MethodUsed::ClosedForm => "closed_form",
        }
    }
}

impl fmt::Display for MethodUsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Evaluation settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub method: Method,
    /// Quadrature tolerance, and target of the collocation doubling loop.
    pub eps: f64,
    /// Fixed collocation order; `None` runs the doubling loop.
    pub order: Option<usize>,
    pub levin_start_order: usize,
    pub levin_max_order: usize,
    pub levin_max_y: f64,
    pub levin_max_d: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            method: Method::Auto,
            eps: 1e-10,
            order: None,
            levin_start_order: 25,
            levin_max_order: 1600,
            levin_max_y: -0.05,
            levin_max_d: 40.0,
        }
    }
}

impl EvalConfig {
    pub fn with_method(method: Method, eps: f64) -> Self {
        Self {
            method,
            eps,
            ..Self::default()
        }
    }
}

/// Value of `I` with diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub point: FieldPoint,
    pub value: Complex64,
    pub method: MethodUsed,
    pub error_estimate: f64,
    /// Integrand evaluations for the quadrature, collocation nodes summed
    /// over all solves for the Levin engine, 1 for the closed form.
    pub eval_count: usize,
    pub converged: bool,
    pub d_param: Option<f64>,
    pub theta: Option<f64>,
    pub critical_points: Vec<f64>,
}

/// `I(x, y, z)` by the configured engine.
#[allow(non_snake_case)]
pub fn eval_I(p: &FieldPoint, cfg: &EvalConfig) -> Result<EvalReport> {
    p.check_domain()?;
    if !(cfg.eps > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", cfg.eps)));
    }
    let mut report = EvalReport {
        point: *p,
        value: Complex64::new(0.0, 0.0),
        method: MethodUsed::ClosedForm,
        error_estimate: 0.0,
        eval_count: 1,
        converged: true,
        d_param: p.d_param(),
        theta: steepest_angle(p.y, p.z).ok(),
        critical_points: critical_points(p),
    };
    if p.x == 0.0 && p.z == 0.0 {
        report.value = closed_form_axis(p.y)?;
        return Ok(report);
    }

    let use_levin = match cfg.method {
        Method::Auto => {
            p.y <= cfg.levin_max_y && report.d_param.is_some_and(|d| d <= cfg.levin_max_d)
        }
        Method::Levin(_) => true,
        Method::ClenshawCurtis => false,
    };
    if use_levin {
        let variant = match cfg.method {
            Method::Levin(v) => v,
            _ => LevinVariant::Corrected,
        };
        let levin_cfg = LevinConfig {
            variant,
            order: cfg.order.unwrap_or(cfg.levin_start_order),
            tolerance: if cfg.order.is_some() { None } else { Some(cfg.eps) },
            max_order: cfg.levin_max_order,
        };
        let attempt = levin::evaluate(p, &levin_cfg);
        let fall_back = cfg.method == Method::Auto
            && attempt.as_ref().map_or(true, |o| !o.converged);
        if !fall_back {
            let out = attempt?;
            let r = out.result;
            report.value = r.value;
            report.method = if r.corrected {
                MethodUsed::LevinCorrected
            } else {
                MethodUsed::LevinPlain
            };
            report.error_estimate = r.error_estimate;
            report.eval_count = levin_node_count(&levin_cfg, r.m);
            report.converged = r.error_estimate <= cfg.eps;
            return Ok(report);
        }
    }

    let r = integrate_I(p, cfg.eps)?;
    report.value = r.value;
    report.method = MethodUsed::ClenshawCurtis;
    report.error_estimate = cfg.eps;
    report.eval_count = r.eval_count;
    report.converged = r.converged;
    Ok(report)
}

/// Nodes used by the doubling loop up to and including order `last`.
fn levin_node_count(cfg: &LevinConfig, last: usize) -> usize {
    if cfg.tolerance.is_none() {
        return last + 1;
    }
    let mut m = cfg.order.max(2);
    let mut total = 0;
    loop {
        total += m + 1;
        if m >= last {
            return total;
        }
        m = (2 * m).min(cfg.max_order);
    }
}

/// `I∞` with the two contributing evaluations.
#[derive(Debug, Clone, PartialEq)]
pub struct InfinityReport {
    pub value: f64,
    /// `π⁻¹` times the summed error estimates of the two parts.
    pub error_estimate: f64,
    pub converged: bool,
    /// Reports for `+z` and `−z`; `None` when `x ≥ 0` and nothing was evaluated.
    pub parts: Option<[EvalReport; 2]>,
}

/// `I∞(x, y_sum, z) = π⁻¹ H(−x) Im{I(x, y_sum, z) + I(x, y_sum, −z)}` with
/// `H(0) = 0`, where `y_sum` is the combined vertical coordinate.
#[allow(non_snake_case)]
pub fn eval_I_infinity(x: f64, y_sum: f64, z: f64, cfg: &EvalConfig) -> Result<InfinityReport> {
    let p = FieldPoint::new(x, y_sum, z)?;
    if y_sum > 0.0 {
        return Err(Error::Domain(format!("y must be ≤ 0, got {y_sum}")));
    }
    if x >= 0.0 {
        return Ok(InfinityReport {
            value: 0.0,
            error_estimate: 0.0,
            converged: true,
            parts: None,
        });
    }
    // evaluated in |z| order so that the result is exactly even in z
    let upper = FieldPoint { z: z.abs(), ..p };
    let plus = eval_I(&upper, cfg)?;
    let minus = if z == 0.0 {
        plus.clone()
    } else {
        eval_I(&upper.mirrored(), cfg)?
    };
    let (a, b) = if z < 0.0 { (minus, plus) } else { (plus, minus) };
    Ok(InfinityReport {
        value: (a.value.im + b.value.im) / PI,
        error_estimate: (a.error_estimate + b.error_estimate) / PI,
        converged: a.converged && b.converged,
        parts: Some([a, b]),
    })
}
