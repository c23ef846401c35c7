//! Gauss–Jacobi quadrature on [0, 1] and the weakly singular logarithmic
//! integral built on it.
//!
//! Nodes come from the Golub–Welsch eigenvalue problem and are then polished
//! by Newton's method on the three-term recurrence. Weights come from the
//! Christoffel formula `1/(P_n'·P_{n-1})` normalized to the exact zeroth
//! moment, not from eigenvector components, so small weights near the
//! endpoints keep their relative accuracy.

use nalgebra::DMatrix;

use crate::error::{domain, Result};
use crate::gamma::beta as beta_fn;

/// An `n`-point Gauss rule for `∫_0^1 (1 - s)^alpha · s^beta · f(s) ds`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    alpha: f64,
    beta: f64,
}

impl JacobiRule {
    pub fn new(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        if n == 0 {
            return domain("a Gauss-Jacobi rule needs at least one node");
        }
        if !(alpha > -1.0 && alpha.is_finite()) || !(beta > -1.0 && beta.is_finite()) {
            return domain(format!(
                "Jacobi exponents must exceed -1, got alpha = {alpha}, beta = {beta}"
            ));
        }
        let (xs, ws) = gauss_jacobi_symmetric(n, alpha, beta);
        let scale = (-(alpha + beta + 1.0) * std::f64::consts::LN_2).exp();
        let nodes = xs.iter().map(|x| 0.5 * (1.0 + x)).collect();
        let weights = ws.iter().map(|w| w * scale).collect();
        Ok(JacobiRule {
            nodes,
            weights,
            alpha,
            beta,
        })
    }

    /// Nodes in (0, 1), ascending.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&s, &w)| w * f(s))
            .sum()
    }
}

/// Nodes and weights on [-1, 1] for the weight `(1 - x)^alpha (1 + x)^beta`.
fn gauss_jacobi_symmetric(n: usize, alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = alpha + beta;
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let diag = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        jacobi[(k, k)] = diag;
        if k + 1 < n {
            let j = kf + 1.0;
            let sq = if k == 0 {
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                let d = 2.0 * j + ab;
                4.0 * j * (j + alpha) * (j + beta) * (j + ab) / (d * d * (d + 1.0) * (d - 1.0))
            };
            let off = sq.sqrt();
            jacobi[(k, k + 1)] = off;
            jacobi[(k + 1, k)] = off;
        }
    }
    let mut xs: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    xs.sort_by(|p, q| p.total_cmp(q));

    let mut ws = Vec::with_capacity(n);
    for x in xs.iter_mut() {
        let mut z = x.clamp(-1.0 + f64::EPSILON, 1.0 - f64::EPSILON);
        let mut eval = jacobi_recurrence(n, alpha, beta, z);
        for _ in 0..8 {
            let dz = eval.0 / eval.2;
            z -= dz;
            eval = jacobi_recurrence(n, alpha, beta, z);
            if dz.abs() <= 4.0 * f64::EPSILON * z.abs().max(1e-3) {
                break;
            }
        }
        let (_, p_prev, dp) = eval;
        *x = z;
        // Christoffel numbers up to a common factor
        ws.push(1.0 / (dp * p_prev));
    }
    // the common factor is fixed by the zeroth moment 2^{α+β+1} B(α+1, β+1)
    let moment = ((ab + 1.0) * std::f64::consts::LN_2).exp() * beta_fn(alpha + 1.0, beta + 1.0);
    let total: f64 = ws.iter().sum();
    for w in ws.iter_mut() {
        *w *= moment / total;
    }
    (xs, ws)
}

/// Returns `(P_n(z), P_{n-1}(z), P_n'(z))` for the Jacobi polynomials.
fn jacobi_recurrence(n: usize, alpha: f64, beta: f64, z: f64) -> (f64, f64, f64) {
    let ab = alpha + beta;
    let mut p1 = 0.5 * (alpha - beta + (2.0 + ab) * z);
    let mut p2 = 1.0;
    for j in 2..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        let temp = 2.0 * jf + ab;
        let a = 2.0 * jf * (jf + ab) * (temp - 2.0);
        let b = (temp - 1.0) * (alpha * alpha - beta * beta + temp * (temp - 2.0) * z);
        let c = 2.0 * (jf - 1.0 + alpha) * (jf - 1.0 + beta) * temp;
        p1 = (b * p2 - c * p3) / a;
    }
    let nf = n as f64;
    let temp = 2.0 * nf + ab;
    let dp = (nf * (alpha - beta - temp * z) * p1 + 2.0 * (nf + alpha) * (nf + beta) * p2)
        / (temp * (1.0 - z * z));
    (p1, p2, dp)
}

/// `∫_a^x (ln(x/τ))^{σ-1} h(τ) dτ/τ` by an `node_count`-point Gauss–Jacobi rule.
///
/// With `t = ln(τ/a)` and `T = ln(x/a)` the integral is
/// `T^σ ∫_0^1 (1-s)^{σ-1} h(a·e^{Ts}) ds`, so the kernel singularity at
/// `τ = x` is absorbed exactly into the rule's weight.
pub fn singular_integral(
    h: impl Fn(f64) -> f64,
    sigma: f64,
    a: f64,
    x: f64,
    node_count: usize,
) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return domain(format!("singular_integral requires a > 0, got {a}"));
    }
    if !(x >= a) || !x.is_finite() {
        return domain(format!(
            "singular_integral requires x >= a, got x = {x}, a = {a}"
        ));
    }
    if !(sigma > 0.0) || !sigma.is_finite() {
        return domain(format!("singular_integral requires sigma > 0, got {sigma}"));
    }
    if x == a {
        return Ok(0.0);
    }
    let rule = JacobiRule::new(node_count, sigma - 1.0, 0.0)?;
    Ok(log_kernel_integral(&rule, &h, a, (x / a).ln(), sigma))
}

/// `T^{σ+γ} ∫_0^1 (1-s)^{σ-1} s^γ h(a·e^{Ts}) ds` where the rule carries
/// weight exponents `(σ-1, γ)`.
pub(crate) fn log_kernel_integral(
    rule: &JacobiRule,
    h: &impl Fn(f64) -> f64,
    a: f64,
    log_x: f64,
    sigma: f64,
) -> f64 {
    if log_x == 0.0 {
        return 0.0;
    }
    let sum = rule.integrate(|s| h(a * (log_x * s).exp()));
    log_x.powf(sigma + rule.beta()) * sum
}
