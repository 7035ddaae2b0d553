//! Contour rotation plus nested Clenshaw–Curtis quadrature for `I(x, y, z)`.
//!
//! The ray `t ∈ [0, ∞)` is turned by the steepest-descent angle `θ` so that
//! the integrand decays monotonically in modulus. For `z ≤ 0` one rotated
//! integral is taken from the origin; for `z > 0` the real interval
//! `[0, t*]` is integrated separately and the rotated ray starts at `t*`.
//! Each integral is mapped to `[−1, 1]` and computed with `n = 2^ℓ N₀` node
//! intervals, reusing the coarse values at every doubling, until
//!
//! ```text
//! max{c_r |F_ℓ − F_{ℓ−1}|, |F_ℓ − F_{ℓ−2}|, |F_{ℓ−1} − F_{ℓ−2}|} ≤ ε,   c_r = 10.
//! ```

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;

use crate::numerics::dft;
use crate::point::exponent;
use crate::{Error, FieldPoint, Result};

/// Initial number of node intervals.
pub const N0: usize = 2;
/// Highest level; `2^18 N₀ + 1 = 2^19 + 1` evaluations per integral.
pub const MAX_LEVEL: u32 = 18;
/// Reserve coefficient of the stopping rule.
pub const RESERVE: f64 = 10.0;

/// Integration path for one field point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourPlan {
    /// Rotation angle, `sign(z) θ ∈ [0, π/4]`.
    pub theta: f64,
    /// End of the real piece; zero unless `split`.
    pub t_star: f64,
    /// `true` iff `z > 0`.
    pub split: bool,
}

impl ContourPlan {
    pub fn new(p: &FieldPoint) -> Result<Self> {
        let theta = steepest_angle(p.y, p.z)?;
        let split = p.z > 0.0;
        let t_star = if split { t_star(p)? } else { 0.0 };
        Ok(Self {
            theta,
            t_star,
            split,
        })
    }
}

/// Steepest-descent angle for large `t`:
/// `cos θ = √((1 + |y|/ρ)/2)`, `sin θ = sign(z) √((1 − |y|/ρ)/2)`, `ρ = √(y² + z²)`.
pub fn steepest_angle(y: f64, z: f64) -> Result<f64> {
    if y == 0.0 && z == 0.0 {
        return Err(Error::Degenerate);
    }
    let ratio = y.abs() / y.hypot(z);
    let c = ((1.0 + ratio) / 2.0).sqrt();
    let s = ((1.0 - ratio) / 2.0).max(0.0).sqrt();
    let theta = s.atan2(c);
    Ok(if z < 0.0 { -theta } else { theta })
}

/// Split point `t* = |x| sin θ / (2(|y| cos θ + z sin θ))`, for `z > 0`.
pub fn t_star(p: &FieldPoint) -> Result<f64> {
    if p.z <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "split point needs z > 0, got z = {}",
            p.z
        )));
    }
    let theta = steepest_angle(p.y, p.z)?;
    let (s, c) = theta.sin_cos();
    Ok(p.x.abs() * s / (2.0 * (p.y.abs() * c + p.z * s)))
}

/// Clenshaw–Curtis weights for `n` node intervals on `[−1, 1]`, nodes
/// `cos(kπ/n)`, `k = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CCWeights {
    pub n: usize,
    pub weights: Vec<f64>,
}

impl CCWeights {
    /// Builds the weights from the DFT of the moment sequence `κ`.
    pub fn compute(n: usize) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "Clenshaw-Curtis rule needs an even n >= 2, got {n}"
            )));
        }
        let half = n / 2;
        let kappa: Vec<Complex64> = (0..n)
            .map(|j| {
                let j = if j > half { n - j } else { j } as f64;
                Complex64::new(1.0 / (1.0 - 4.0 * j * j), 0.0)
            })
            .collect();
        let scale = 2.0 / n as f64;
        let v: Vec<f64> = dft(&kappa).iter().map(|c| scale * c.re).collect();
        let mut weights = Vec::with_capacity(n + 1);
        weights.push(v[0] / 2.0);
        weights.extend_from_slice(&v[1..]);
        weights.push(v[0] / 2.0);
        // the transform of the even sequence κ is even up to rounding
        for k in 1..half {
            let avg = 0.5 * (weights[k] + weights[n - k]);
            weights[k] = avg;
            weights[n - k] = avg;
        }
        Ok(Self { n, weights })
    }

    /// Node `k`, `cos(kπ/n)`, computed as `sin((n − 2k)π/(2n))` so that the
    /// middle node is exactly zero and the set is exactly symmetric.
    pub fn node(&self, k: usize) -> f64 {
        node(self.n, k)
    }
}

fn node(n: usize, k: usize) -> f64 {
    ((n as f64 - 2.0 * k as f64) * PI / (2.0 * n as f64)).sin()
}

type WeightCache = RwLock<HashMap<usize, Arc<CCWeights>>>;

fn cache() -> &'static WeightCache {
    static CACHE: OnceLock<WeightCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Cached weights for `n` node intervals.
pub fn cc_weights(n: usize) -> Result<Arc<CCWeights>> {
    if let Some(w) = cache().read().expect("weight cache poisoned").get(&n) {
        return Ok(Arc::clone(w));
    }
    let w = Arc::new(CCWeights::compute(n)?);
    let mut guard = cache().write().expect("weight cache poisoned");
    Ok(Arc::clone(guard.entry(n).or_insert(w)))
}

/// `Σ w_k f(cos(kπ/n))`.
pub fn cc_apply(w: &CCWeights, mut f: impl FnMut(f64) -> Complex64) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    for (k, &wk) in w.weights.iter().enumerate() {
        let u = w.node(k);
        let v = f(u);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFiniteIntegrand { node: u });
        }
        sum += wk * v;
    }
    Ok(sum)
}

/// Stopping and capping parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CCConfig {
    /// Absolute tolerance of the stopping rule, applied to each integral.
    pub eps: f64,
    pub max_level: u32,
}

impl CCConfig {
    pub fn new(eps: f64) -> Self {
        Self {
            eps,
            max_level: MAX_LEVEL,
        }
    }
}

/// Outcome of a nested quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CCResult {
    pub value: Complex64,
    /// Total integrand evaluations.
    pub eval_count: usize,
    /// Final level `ℓ*`; the larger of the two for a split contour.
    pub level: u32,
    pub converged: bool,
    /// Largest `Re ϖ` met at any evaluated node.
    pub max_exponent_re: f64,
}

/// One nested Clenshaw–Curtis sequence over `[−1, 1]`.
struct Nested {
    value: Complex64,
    level: u32,
    evals: usize,
    converged: bool,
}

fn nested(cfg: &CCConfig, mut f: impl FnMut(f64) -> Result<Complex64>) -> Result<Nested> {
    let mut values: Vec<Complex64> = Vec::new();
    let mut history: Vec<Complex64> = Vec::new();
    let mut level = 0u32;
    loop {
        let n = N0 << level;
        let w = cc_weights(n)?;
        // fine grid: coarse values land on even indices
        let mut fine = vec![Complex64::new(0.0, 0.0); n + 1];
        for k in 0..=n {
            fine[k] = if level > 0 && k % 2 == 0 {
                values[k / 2]
            } else {
                let u = node(n, k);
                let v = f(u)?;
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::NonFiniteIntegrand { node: u });
                }
                v
            };
        }
        values = fine;
        let estimate: Complex64 = w.weights.iter().zip(&values).map(|(&wk, &v)| wk * v).sum();
        history.push(estimate);

        let converged = level >= 2 && {
            let l = history.len();
            let (a, b, c) = (history[l - 1], history[l - 2], history[l - 3]);
            let spread = (RESERVE * (a - b).norm()).max((a - c).norm()).max((b - c).norm());
            spread <= cfg.eps
        };
        if converged || level >= cfg.max_level {
            return Ok(Nested {
                value: estimate,
                level,
                evals: n + 1,
                converged,
            });
        }
        level += 1;
    }
}

/// Integrates `amp(t) e^{ϖ(t, x, y, z)}` over `t ∈ [0, ∞)` along the plan's
/// contour.
pub(crate) fn integrate_weighted(
    p: &FieldPoint,
    cfg: &CCConfig,
    amp: impl Fn(Complex64) -> Complex64,
) -> Result<CCResult> {
    check_point(p)?;
    if !(cfg.eps > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", cfg.eps)));
    }
    let plan = ContourPlan::new(p)?;
    let rot = Complex64::from_polar(1.0, plan.theta);
    let start = Complex64::new(plan.t_star, 0.0);
    let mut max_re = f64::NEG_INFINITY;
    let mut q = |t: Complex64| {
        let e = exponent(t, p.x, p.y, p.z);
        max_re = max_re.max(e.re);
        amp(t) * e.exp()
    };

    // rotated ray from t*, mapped by t = (1 + u)/(1 − u)
    let tail = nested(cfg, |u| {
        if u == 1.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let s = (1.0 + u) / (1.0 - u);
        let jac = 2.0 / ((1.0 - u) * (1.0 - u));
        Ok(jac * rot * q(start + rot * s))
    })?;

    if !plan.split {
        return Ok(CCResult {
            value: tail.value,
            eval_count: tail.evals,
            level: tail.level,
            converged: tail.converged,
            max_exponent_re: max_re,
        });
    }

    let half = plan.t_star / 2.0;
    let finite = nested(cfg, |u| Ok(half * q(Complex64::new(half * (u + 1.0), 0.0))))?;
    Ok(CCResult {
        value: finite.value + tail.value,
        eval_count: finite.evals + tail.evals,
        level: finite.level.max(tail.level),
        converged: finite.converged && tail.converged,
        max_exponent_re: max_re,
    })
}

fn check_point(p: &FieldPoint) -> Result<()> {
    crate::ensure_finite(p.x, "x")?;
    crate::ensure_finite(p.y, "y")?;
    crate::ensure_finite(p.z, "z")?;
    if p.y == 0.0 && p.z == 0.0 {
        return Err(Error::Degenerate);
    }
    if p.x > 0.0 || p.y > 0.0 {
        return Err(Error::Domain(format!(
            "quadrature needs x <= 0 and y <= 0, got ({}, {}, {})",
            p.x, p.y, p.z
        )));
    }
    Ok(())
}

/// `I(x, y, z)` to absolute tolerance `eps` per integral.
#[allow(non_snake_case)]
pub fn integrate_I(p: &FieldPoint, eps: f64) -> Result<CCResult> {
    integrate_I_with(p, &CCConfig::new(eps))
}

/// As [`integrate_I`] with explicit caps.
#[allow(non_snake_case)]
pub fn integrate_I_with(p: &FieldPoint, cfg: &CCConfig) -> Result<CCResult> {
    integrate_weighted(p, cfg, |_| Complex64::new(1.0, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64, z: f64) -> FieldPoint {
        FieldPoint::new(x, y, z).unwrap()
    }

    #[test]
    fn angles() {
        assert_eq!(steepest_angle(-1.0, 0.0).unwrap(), 0.0);
        assert!((steepest_angle(0.0, 2.0).unwrap() - PI / 4.0).abs() < 1e-15);
        assert!((steepest_angle(0.0, -2.0).unwrap() + PI / 4.0).abs() < 1e-15);
        assert!((steepest_angle(-1.0, 1.0).unwrap() - PI / 8.0).abs() < 1e-15);
        assert_eq!(steepest_angle(0.0, 0.0), Err(Error::Degenerate));
    }

    #[test]
    fn split_points() {
        assert!((t_star(&pt(-1.0, 0.0, 0.5)).unwrap() - 1.0).abs() < 1e-15);
        assert!((t_star(&pt(-2.0, 0.0, 0.5)).unwrap() - 2.0).abs() < 1e-15);
        assert!((t_star(&pt(-1.0, -1.0, 1.0)).unwrap() - 0.146_446_609_406_726_24).abs() < 1e-15);
        assert!(t_star(&pt(-1.0, -1.0, 0.0)).is_err());
        let plan = ContourPlan::new(&pt(-1.0, -1.0, -1.0)).unwrap();
        assert!(!plan.split && plan.t_star == 0.0);
    }

    #[test]
    fn small_rules() {
        let w = cc_weights(2).unwrap();
        let expect = [1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0];
        for (a, b) in w.weights.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        let w4 = cc_weights(4).unwrap();
        let expect = [1.0 / 15.0, 8.0 / 15.0, 12.0 / 15.0, 8.0 / 15.0, 1.0 / 15.0];
        for (a, b) in w4.weights.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        let sq = cc_apply(&w4, |u| Complex64::new(u * u, 0.0)).unwrap();
        assert!((sq.re - 2.0 / 3.0).abs() < 1e-15);
        let s8: f64 = cc_weights(8).unwrap().weights.iter().sum();
        assert!((s8 - 2.0).abs() < 1e-15);
        assert!(cc_weights(3).is_err());
        assert!(cc_weights(0).is_err());
    }

    #[test]
    fn apply_basic_integrands() {
        let w = cc_weights(16).unwrap();
        let one = cc_apply(&w, |_| Complex64::new(1.0, 0.0)).unwrap();
        assert!((one.re - 2.0).abs() < 1e-14);
        let odd = cc_apply(&w, |u| Complex64::new(u, 0.0)).unwrap();
        assert!(odd.norm() < 1e-15);
        let e = cc_apply(&w, |u| Complex64::new(u.exp(), 0.0)).unwrap();
        assert!((e.re - (1f64.exp() - (-1f64).exp())).abs() < 1e-12);
        let bad = cc_apply(&w, |u| Complex64::new(1.0 / u, 0.0));
        assert!(matches!(bad, Err(Error::NonFiniteIntegrand { .. })));
    }

    #[test]
    fn axis_closed_form() {
        let r = integrate_I(&pt(0.0, -1.0, 0.0), 1e-12).unwrap();
        let exact = PI.sqrt() / 2.0 * (-1f64).exp();
        assert!(r.converged);
        assert!((r.value - exact).norm() < 1e-12);
        assert_eq!(r.eval_count, (N0 << r.level) + 1);
    }

    #[test]
    fn split_eval_count_and_decay() {
        let r = integrate_I(&pt(-1.0, -0.5, 0.5), 1e-10).unwrap();
        assert!(r.converged);
        let n = r.eval_count - 2;
        assert_eq!(n % N0, 0);
        assert!(r.max_exponent_re <= 0.0);
    }

    #[test]
    fn rejects_bad_points() {
        assert_eq!(integrate_I(&pt(-1.0, 0.0, 0.0), 1e-8).unwrap_err(), Error::Degenerate);
        assert!(matches!(integrate_I(&pt(1.0, -1.0, 0.0), 1e-8), Err(Error::Domain(_))));
        assert!(matches!(integrate_I(&pt(-1.0, 0.5, 0.0), 1e-8), Err(Error::Domain(_))));
        assert!(integrate_I(&pt(-1.0, -1.0, 0.0), 0.0).is_err());
    }
}
