//! Independent reference evaluator for `I` and its directional derivatives.
//!
//! Adaptive 7/15-point Gauss–Kronrod quadrature with global bisection of the
//! worst panel, applied along the same rotated path as the quadrature engine
//! (the rotation is an exact identity) but sharing none of its code: the
//! angle, split point and exponent are recomputed here. The rotated ray is
//! truncated where `|e^ϖ|` has dropped below `1e-18`; a bound on the
//! discarded tail enters the reported error. Panel sums are accumulated with
//! Neumaier compensation.
//!
//! Meant for validation, not speed.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::{Error, FieldPoint, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
/// Gauss weights at `XGK[1], XGK[3], XGK[5], XGK[7]`.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Truncation threshold on `Re ϖ`: `e^{-41.5} < 1e-18`.
const TRUNCATION_EXPONENT: f64 = -41.5;

/// Tolerances and limits of the reference quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Target absolute error of the whole integral, at least `1e-13`.
    pub abs_tol: f64,
    /// Panel budget `2^max_depth`, `max_depth ≤ 22`.
    pub max_depth: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            max_depth: 16,
        }
    }
}

/// Reference value with its error budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    pub value: Complex64,
    /// Sum of panel error estimates plus the truncated tail bound.
    pub achieved_tol: f64,
    pub panels: usize,
    /// `false` when the panel budget ran out before `abs_tol` was met.
    pub complete: bool,
}

fn phase(t: Complex64, x: f64, y: f64, z: f64) -> Complex64 {
    let one_plus = t * t + 1.0;
    Complex64::new(y, 0.0) * one_plus + Complex64::new(0.0, 1.0) * (z * t + x) * one_plus.sqrt()
}

#[derive(Debug, Clone, Copy)]
struct Path {
    /// End of the real segment (0 when absent).
    real_end: f64,
    /// Unit direction of the ray.
    dir: Complex64,
    /// Length of the ray kept before truncation.
    ray_len: f64,
    tail_bound: f64,
}

fn path(p: &FieldPoint) -> Result<Path> {
    let rho = (p.y * p.y + p.z * p.z).sqrt();
    if rho == 0.0 {
        return Err(Error::Degenerate);
    }
    // cos 2θ = |y|/ρ, sin 2θ = z/ρ
    let half = 0.5 * (p.z / rho).atan2(p.y.abs() / rho);
    let dir = Complex64::new(half.cos(), half.sin());
    let real_end = if p.z > 0.0 {
        p.x.abs() * half.sin() / (2.0 * (p.y.abs() * half.cos() + p.z * half.sin()))
    } else {
        0.0
    };
    let start = Complex64::new(real_end, 0.0);
    let re_at = |s: f64| phase(start + dir * s, p.x, p.y, p.z).re;
    let mut s = 1.0;
    while !(re_at(s) < TRUNCATION_EXPONENT && re_at(2.0 * s) < 2.0 * TRUNCATION_EXPONENT) {
        s *= 2.0;
        if s > 1e9 {
            return Err(Error::Domain("integrand does not decay along the ray".into()));
        }
    }
    // beyond s the exponent decays at least like −ρ(σ² − s²) asymptotically;
    // the bound is padded by a factor 10
    let tail_bound = 10.0 * re_at(s).exp() / (2.0 * rho * s).max(1e-300) * 2.0;
    Ok(Path {
        real_end,
        dir,
        ray_len: s,
        tail_bound,
    })
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// 15-point Kronrod value on `[a, b]` and its distance from the embedded
/// 7-point Gauss value.
fn gauss_kronrod(f: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> Result<(Complex64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        k += pair * WGK[j];
        if j % 2 == 1 {
            g += pair * WG[j / 2];
        }
    }
    let (k, g) = (k * h, g * h);
    if !(k.re.is_finite() && k.im.is_finite()) {
        return Err(Error::NonFiniteIntegrand { node: c });
    }
    Ok((k, (k - g).norm()))
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }
    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Adaptive integration of `f` over the segments, sharing one error budget.
fn adaptive(
    segments: &[(f64, f64)],
    f: &impl Fn(usize, f64) -> Complex64,
    tol: f64,
    max_panels: usize,
) -> Result<(Complex64, f64, usize, bool)> {
    let mut heaps: Vec<BinaryHeap<Panel>> = Vec::with_capacity(segments.len());
    let mut total_err = 0.0;
    let mut count = 0;
    for (idx, &(a, b)) in segments.iter().enumerate() {
        let mut heap = BinaryHeap::new();
        let pieces = 8;
        let g = |t: f64| f(idx, t);
        for i in 0..pieces {
            let pa = a + (b - a) * i as f64 / pieces as f64;
            let pb = a + (b - a) * (i + 1) as f64 / pieces as f64;
            let (value, err) = gauss_kronrod(&g, pa, pb)?;
            total_err += err;
            heap.push(Panel { a: pa, b: pb, value, err });
            count += 1;
        }
        heaps.push(heap);
    }
    while total_err > tol && count < max_panels {
        let (idx, _) = heaps
            .iter()
            .enumerate()
            .filter_map(|(i, h)| h.peek().map(|p| (i, p.err)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("at least one panel");
        let worst = heaps[idx].pop().expect("peeked above");
        let g = |t: f64| f(idx, t);
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            heaps[idx].push(Panel { err: 0.0, ..worst });
            total_err -= worst.err;
            continue;
        }
        let (v1, e1) = gauss_kronrod(&g, worst.a, mid)?;
        let (v2, e2) = gauss_kronrod(&g, mid, worst.b)?;
        total_err += e1 + e2 - worst.err;
        heaps[idx].push(Panel { a: worst.a, b: mid, value: v1, err: e1 });
        heaps[idx].push(Panel { a: mid, b: worst.b, value: v2, err: e2 });
        count += 1;
    }
    // error sum recomputed from scratch to shed drift
    let mut re = Neumaier::default();
    let mut im = Neumaier::default();
    let mut err = Neumaier::default();
    for heap in &heaps {
        for p in heap.iter() {
            re.add(p.value.re);
            im.add(p.value.im);
            err.add(p.err);
        }
    }
    let err = err.total();
    Ok((Complex64::new(re.total(), im.total()), err, count, err <= tol))
}

fn check(p: &FieldPoint, cfg: &OracleConfig) -> Result<()> {
    if !(cfg.abs_tol >= 1e-13) || cfg.max_depth > 22 {
        return Err(Error::InvalidArgument(format!(
            "oracle needs abs_tol >= 1e-13 and max_depth <= 22, got {} and {}",
            cfg.abs_tol, cfg.max_depth
        )));
    }
    if ![p.x, p.y, p.z].iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("point"));
    }
    if p.x > 0.0 || p.y > 0.0 {
        return Err(Error::Domain(format!("oracle needs x <= 0, y <= 0, got ({}, {}, {})", p.x, p.y, p.z)));
    }
    let rho = (p.y * p.y + p.z * p.z).sqrt();
    if rho == 0.0 {
        return Err(Error::Degenerate);
    }
    let d = p.x * p.x / (4.0 * rho);
    if !(p.y <= -0.01 || d <= 200.0) {
        return Err(Error::Domain(format!("outside the oracle envelope (y = {}, D = {d})", p.y)));
    }
    Ok(())
}

fn integrate(p: &FieldPoint, cfg: &OracleConfig, amp: impl Fn(Complex64) -> Complex64) -> Result<OracleValue> {
    check(p, cfg)?;
    let path = path(p)?;
    let start = Complex64::new(path.real_end, 0.0);
    let f = |seg: usize, s: f64| {
        let t = if seg == 0 {
            start + path.dir * s
        } else {
            Complex64::new(s, 0.0)
        };
        let jac = if seg == 0 { path.dir } else { Complex64::new(1.0, 0.0) };
        jac * amp(t) * phase(t, p.x, p.y, p.z).exp()
    };
    let mut segments = vec![(0.0, path.ray_len)];
    if path.real_end > 0.0 {
        segments.push((0.0, path.real_end));
    }
    let budget = (cfg.abs_tol - path.tail_bound).max(0.5 * cfg.abs_tol);
    let (value, err, panels, complete) = adaptive(&segments, &f, budget, 1usize << cfg.max_depth)?;
    Ok(OracleValue {
        value,
        achieved_tol: err + path.tail_bound,
        panels,
        complete,
    })
}

/// Reference value of `I(x, y, z)`.
#[allow(non_snake_case)]
pub fn oracle_I(p: &FieldPoint, cfg: &OracleConfig) -> Result<OracleValue> {
    integrate(p, cfg, |_| Complex64::new(1.0, 0.0))
}

/// Reference value of the derivative of `I` along `(ℓ₁, ℓ₂, ℓ₃)`.
#[allow(non_snake_case)]
pub fn oracle_J(p: &FieldPoint, direction: [f64; 3], cfg: &OracleConfig) -> Result<OracleValue> {
    let [l1, l2, l3] = direction;
    integrate(p, cfg, |t| phase(t, l1, l2, l3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_rule_exact_for_degree_22() {
        let f = |t: f64| Complex64::new(t.powi(22) + t.powi(3), 0.0);
        let (v, _) = gauss_kronrod(&f, -1.0, 1.0).unwrap();
        assert!((v.re - 2.0 / 23.0).abs() < 1e-15);
        let w: f64 = 2.0 * WGK[..7].iter().sum::<f64>() + WGK[7];
        assert!((w - 2.0).abs() < 1e-15);
        let wg: f64 = 2.0 * WG[..3].iter().sum::<f64>() + WG[3];
        assert!((wg - 2.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_part_exact_for_degree_13() {
        let f = |t: f64| Complex64::new(t.powi(12), 0.0);
        let (_, e) = gauss_kronrod(&f, 0.0, 1.0).unwrap();
        assert!(e < 1e-15);
    }

    #[test]
    fn compensated_sum() {
        let mut s = Neumaier::default();
        for v in [1.0, 1e100, 1.0, -1e100] {
            s.add(v);
        }
        assert_eq!(s.total(), 2.0);
    }

    #[test]
    fn axis_value() {
        let p = FieldPoint::new(0.0, -1.0, 0.0).unwrap();
        let r = oracle_I(&p, &OracleConfig::default()).unwrap();
        let exact = std::f64::consts::PI.sqrt() / 2.0 * (-1f64).exp();
        assert!(r.complete);
        assert!((r.value - exact).norm() < 1e-12);
    }

    #[test]
    fn config_and_envelope_checks() {
        let p = FieldPoint::new(-1.0, -1.0, 0.0).unwrap();
        let cfg = OracleConfig { abs_tol: 1e-15, max_depth: 10 };
        assert!(oracle_I(&p, &cfg).is_err());
        let far = FieldPoint::new(-40.0, 0.0, 0.01).unwrap();
        assert!(matches!(oracle_I(&far, &OracleConfig::default()), Err(Error::Domain(_))));
    }
}
