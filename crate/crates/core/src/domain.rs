//! Core domain types: the fractional order, the interval, log-monomials and
//! grid functions sampled on log-uniform nodes.

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Fractional order σ with 1 < σ ≤ 2.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Order(f64);

impl Order {
    pub fn new(sigma: f64) -> Result<Self> {
        if sigma.is_finite() && sigma > 1.0 && sigma <= 2.0 {
            Ok(Order(sigma))
        } else {
            domain(format!("order requires 1 < sigma <= 2, got {sigma}"))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// The closed interval [a, b] with 0 < a < b.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a.is_finite() && b.is_finite() && a > 0.0 && a < b {
            Ok(Interval { a, b })
        } else {
            domain(format!("interval requires 0 < a < b, got a = {a}, b = {b}"))
        }
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    /// ln(b/a), strictly positive.
    #[inline]
    pub fn log_length(&self) -> f64 {
        (self.b / self.a).ln()
    }

    #[inline]
    pub fn ratio(&self) -> f64 {
        self.b / self.a
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        x >= self.a && x <= self.b
    }

    pub(crate) fn check(&self, x: f64, what: &str) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            domain(format!(
                "{what} = {x} lies outside [{}, {}]",
                self.a, self.b
            ))
        }
    }
}

/// `coefficient · (ln(x/a))^beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogMonomial {
    pub coefficient: f64,
    pub beta: f64,
}

impl LogMonomial {
    pub fn new(coefficient: f64, beta: f64) -> Self {
        LogMonomial { coefficient, beta }
    }

    pub fn eval(&self, interval: &Interval, x: f64) -> f64 {
        self.coefficient * pow_nonneg((x / interval.a()).ln().max(0.0), self.beta)
    }
}

/// `base^exp` for `base ≥ 0`, with `0^p = 0` for `p > 0` and `0^0 = 1`.
#[inline]
pub(crate) fn pow_nonneg(base: f64, exp: f64) -> f64 {
    if base == 0.0 {
        if exp > 0.0 {
            0.0
        } else if exp == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        base.powf(exp)
    }
}

/// `p^p` with the limiting value 1 as `p → 0⁺`.
#[inline]
pub(crate) fn self_power(p: f64) -> f64 {
    if p < 1e-300 {
        1.0
    } else {
        (p * p.ln()).exp()
    }
}

/// A function sampled on log-uniform nodes over an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFn {
    interval: Interval,
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl SampledFn {
    /// `n` log-uniform nodes with both endpoints represented exactly.
    pub fn log_uniform_nodes(interval: &Interval, n: usize) -> Vec<f64> {
        let (a, b) = (interval.a(), interval.b());
        let step = interval.log_length() / (n - 1) as f64;
        (0..n)
            .map(|i| match i {
                0 => a,
                i if i == n - 1 => b,
                i => a * (i as f64 * step).exp(),
            })
            .collect()
    }

    pub fn new(interval: Interval, nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let n = nodes.len();
        if n < 2 {
            return domain("a sampled function needs at least two nodes");
        }
        if values.len() != n {
            return Err(Error::GridMismatch(format!(
                "{} nodes but {} values",
                n,
                values.len()
            )));
        }
        if nodes[0] != interval.a() || nodes[n - 1] != interval.b() {
            return domain("sampled nodes must start at a and end at b");
        }
        let step = interval.log_length() / (n - 1) as f64;
        for (i, w) in nodes.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return domain("sampled nodes must be strictly increasing");
            }
            let t = (w[1] / interval.a()).ln();
            if (t - (i + 1) as f64 * step).abs() > 1e-9 * interval.log_length() {
                return domain("sampled nodes must be log-uniform");
            }
        }
        Ok(SampledFn {
            interval,
            nodes,
            values,
        })
    }

    pub fn from_values(interval: Interval, values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return domain("a sampled function needs at least two nodes");
        }
        let nodes = Self::log_uniform_nodes(&interval, values.len());
        Ok(SampledFn {
            interval,
            nodes,
            values,
        })
    }

    pub fn from_fn(interval: Interval, n: usize, mut f: impl FnMut(f64) -> f64) -> Result<Self> {
        if n < 2 {
            return domain("a sampled function needs at least two nodes");
        }
        let nodes = Self::log_uniform_nodes(&interval, n);
        let values = nodes.iter().map(|&x| f(x)).collect();
        Ok(SampledFn {
            interval,
            nodes,
            values,
        })
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Spacing of the nodes in t = ln(x/a).
    pub fn log_step(&self) -> f64 {
        self.interval.log_length() / (self.len() - 1) as f64
    }

    /// Piecewise-cubic interpolation in t = ln(x/a).
    pub fn interpolate(&self, x: f64) -> Result<f64> {
        self.interval.check(x, "x")?;
        let t = (x / self.interval.a()).ln();
        let (start, coeffs) = cubic_stencil(self.len(), self.log_step(), t);
        Ok(coeffs
            .iter()
            .zip(&self.values[start..])
            .map(|(c, v)| c * v)
            .sum())
    }

    /// Sup-norm distance between two samplings of the same grid.
    pub fn sup_distance(&self, other: &SampledFn) -> Result<f64> {
        if self.len() != other.len() || self.interval != other.interval {
            return Err(Error::GridMismatch(
                "sup distance between functions on different grids".into(),
            ));
        }
        Ok(sup_diff(&self.values, &other.values))
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

pub(crate) fn sup_diff(lhs: &[f64], rhs: &[f64]) -> f64 {
    lhs.iter()
        .zip(rhs)
        .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
}

/// Local Lagrange stencil on a uniform grid `t_j = j·h`, `j = 0..n`.
///
/// Returns the first stencil index and the weights of up to four
/// consecutive nodes (trailing weights are zero when `n < 4`).
pub(crate) fn cubic_stencil(n: usize, h: f64, t: f64) -> (usize, [f64; 4]) {
    stencil_in_range(0, n, h, t)
}

/// Same as [`cubic_stencil`] but only nodes `first..n` may be used.
pub(crate) fn stencil_in_range(first: usize, n: usize, h: f64, t: f64) -> (usize, [f64; 4]) {
    let avail = n - first;
    let width = avail.min(4);
    let panel = ((t / h).floor() as isize).clamp(0, n as isize - 2) as usize;
    let start = (panel.saturating_sub(1)).clamp(first, n - width);
    let xi = t / h - start as f64;
    let mut coeffs = [0.0; 4];
    for (k, c) in coeffs.iter_mut().enumerate().take(width) {
        let mut l = 1.0;
        for m in 0..width {
            if m != k {
                l *= (xi - m as f64) / (k as f64 - m as f64);
            }
        }
        *c = l;
    }
    (start, coeffs)
}
