//! Chebyshev point sets on `[0, 1]`, their barycentric weights, barycentric
//! interpolation and the entries of the associated differentiation matrix.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// Extrema of `T_m` mapped to `[0, 1]`, endpoints included.
    SecondKind,
    /// Roots of `T_{m+1}` mapped to `[0, 1]`, strictly interior.
    FirstKind,
}

/// Nodes (ascending) and barycentric weights of a Chebyshev point set on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevGrid {
    kind: GridKind,
    order: usize,
    nodes: Vec<f64>,
    /// `1 − τ_k`, computed without cancellation.
    complements: Vec<f64>,
    weights: Vec<f64>,
    /// `τ_k = sin²((k + shift)π/denom)`.
    shift: f64,
    denom: f64,
}

impl ChebyshevGrid {
    /// `τ_k = (1 − cos(kπ/m))/2`, `k = 0..=m`, with weights `(−1)^k ς_k`,
    /// `ς_k = 1` at both endpoints and `2` elsewhere.
    pub fn second_kind(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!(
                "second-kind grid needs order m >= 2, got {m}"
            )));
        }
        let denom = 2.0 * m as f64;
        let half_node = |k: usize| {
            if k == 0 {
                0.0
            } else if k == m {
                1.0
            } else if 2 * k == m {
                0.5
            } else {
                let s = (k as f64 * PI / denom).sin();
                s * s
            }
        };
        let nodes = (0..=m).map(half_node).collect();
        let complements = (0..=m).map(|k| half_node(m - k)).collect();
        let weights = (0..=m)
            .map(|k| {
                let mag = if k == 0 || k == m { 1.0 } else { 2.0 };
                if k % 2 == 0 {
                    mag
                } else {
                    -mag
                }
            })
            .collect();
        Ok(Self {
            kind: GridKind::SecondKind,
            order: m,
            nodes,
            complements,
            weights,
            shift: 0.0,
            denom,
        })
    }

    /// `τ̌_k = (1 − cos((k + ½)π/(m̌ + 1)))/2`, `k = 0..=m̌`, with weights
    /// `(−1)^k sin((k + ½)π/(m̌ + 1))`.
    pub fn first_kind(m_check: usize) -> Result<Self> {
        if m_check < 1 {
            return Err(Error::InvalidArgument(
                "first-kind grid needs order >= 1".into(),
            ));
        }
        let n = (m_check + 1) as f64;
        let sin2 = |k: usize| {
            let s = ((k as f64 + 0.5) * PI / (2.0 * n)).sin();
            s * s
        };
        let nodes = (0..=m_check).map(sin2).collect();
        let complements = (0..=m_check).map(|k| sin2(m_check - k)).collect();
        let weights = (0..=m_check)
            .map(|k| {
                let mag = ((k as f64 + 0.5) * PI / n).sin();
                if k % 2 == 0 {
                    mag
                } else {
                    -mag
                }
            })
            .collect();
        Ok(Self {
            kind: GridKind::FirstKind,
            order: m_check,
            nodes,
            complements,
            weights,
            shift: 0.5,
            denom: 2.0 * n,
        })
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    /// Polynomial order; the grid has `order + 1` nodes.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `1 − τ_k` for every node, accurate near `τ = 1`.
    pub fn complements(&self) -> &[f64] {
        &self.complements
    }

    /// `τ_k − τ_l` as `sin(φ_k + φ_l) sin(φ_k − φ_l)` with `τ_k = sin²φ_k`,
    /// free of cancellation for clustered nodes.
    pub fn node_difference(&self, k: usize, l: usize) -> f64 {
        let sum = (k + l) as f64 + 2.0 * self.shift;
        let diff = k as f64 - l as f64;
        (sum * PI / self.denom).sin() * (diff * PI / self.denom).sin()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn coincident_node(&self, tau: f64) -> Option<usize> {
        if let Some(k) = self.nodes.iter().position(|&t| t == tau) {
            return Some(k);
        }
        let snap = 4.0 * f64::EPSILON;
        self.nodes.iter().position(|&t| (t - tau).abs() <= snap)
    }

    /// Second barycentric formula. At (or within 4ε of) a node the stored
    /// value is returned.
    pub fn eval(&self, values: &[Complex64], tau: f64) -> Result<Complex64> {
        self.check_len(values)?;
        if let Some(k) = self.coincident_node(tau) {
            return Ok(values[k]);
        }
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = 0.0;
        for ((&t, &w), &v) in self.nodes.iter().zip(&self.weights).zip(values) {
            let c = w / (tau - t);
            num += c * v;
            den += c;
        }
        Ok(num / den)
    }

    /// Value and first derivative of the interpolant at `tau`.
    ///
    /// Away from the nodes the derivative is
    /// `Σ_k ω_k (p(τ) − p_k)/(τ − τ_k)² / Σ_k ω_k/(τ − τ_k)`; at a node the
    /// differentiation-matrix row is used.
    pub fn eval_with_derivative(&self, values: &[Complex64], tau: f64) -> Result<(Complex64, Complex64)> {
        self.check_len(values)?;
        if let Some(l) = self.coincident_node(tau) {
            let mut d = Complex64::new(0.0, 0.0);
            for k in 0..self.len() {
                if k != l {
                    d += self.diff_entry(l, k) * (values[l] - values[k]);
                }
            }
            return Ok((values[l], d));
        }
        let p = self.eval(values, tau)?;
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = 0.0;
        for ((&t, &w), &v) in self.nodes.iter().zip(&self.weights).zip(values) {
            let c = w / (tau - t);
            num += c / (tau - t) * (p - v);
            den += c;
        }
        Ok((p, num / den))
    }

    /// Coefficient of `(p_l − p_k)` in the derivative of the interpolant at
    /// node `l`: `ω_k / (ω_l (τ_k − τ_l))`, zero on the diagonal.
    pub fn diff_entry(&self, l: usize, k: usize) -> f64 {
        if l == k {
            return 0.0;
        }
        self.weights[k] / (self.weights[l] * self.node_difference(k, l))
    }

    fn check_len(&self, values: &[Complex64]) -> Result<()> {
        if values.len() != self.len() {
            return Err(Error::InvalidArgument(format!(
                "{} values supplied for a grid of {} nodes",
                values.len(),
                self.len()
            )));
        }
        Ok(())
    }
}
