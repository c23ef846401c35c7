//! Hadamard fractional operators.
//!
//! The integral of order σ > 0 is
//! `(1/Γ(σ)) ∫_a^x (ln(x/τ))^{σ-1} f(τ) dτ/τ`; the derivative is provided
//! in closed form on log-monomials only.

use crate::domain::{pow_nonneg, Interval, LogMonomial, Order};
use crate::error::{domain, Result};
use crate::gamma::{gamma, recip_gamma};
use crate::quadrature::{log_kernel_integral, JacobiRule};

/// Default Gauss–Jacobi node count for the Hadamard integral.
pub const DEFAULT_NODES: usize = 64;

/// `ln(x/a)`, the coordinate that turns Hadamard operators into
/// Riemann–Liouville operators on `[0, ln(b/a)]`.
pub fn to_log_coordinates(x: f64, interval: &Interval) -> Result<f64> {
    interval.check(x, "x")?;
    Ok((x / interval.a()).ln().max(0.0))
}

/// Reusable Hadamard integral of a fixed order.
///
/// Building the Gauss–Jacobi rule dominates the cost, so callers that
/// evaluate many points should keep one of these around.
#[derive(Debug, Clone)]
pub struct HadamardIntegrator {
    order: f64,
    endpoint_exponent: f64,
    rule: JacobiRule,
    inv_gamma: f64,
}

impl HadamardIntegrator {
    pub fn new(order: f64, node_count: usize) -> Result<Self> {
        Self::with_endpoint_exponent(order, 0.0, node_count)
    }

    /// Integrator for loads of the form `(ln(τ/a))^gamma · f(τ)` with `f`
    /// smooth; the factor is moved into the quadrature weight.
    pub fn with_endpoint_exponent(order: f64, gamma_exp: f64, node_count: usize) -> Result<Self> {
        if !(order > 0.0) || !order.is_finite() {
            return domain(format!("Hadamard integral requires order > 0, got {order}"));
        }
        if !(gamma_exp > -1.0) {
            return domain(format!("endpoint exponent must exceed -1, got {gamma_exp}"));
        }
        Ok(HadamardIntegrator {
            order,
            endpoint_exponent: gamma_exp,
            rule: JacobiRule::new(node_count, order - 1.0, gamma_exp)?,
            inv_gamma: recip_gamma(order),
        })
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    /// `(1/Γ(σ)) ∫_a^x (ln(x/τ))^{σ-1} (ln(τ/a))^γ f(τ) dτ/τ`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64, interval: &Interval, x: f64) -> Result<f64> {
        interval.check(x, "x")?;
        let log_x = (x / interval.a()).ln().max(0.0);
        Ok(self.inv_gamma * log_kernel_integral(&self.rule, &f, interval.a(), log_x, self.order))
    }

    pub fn endpoint_exponent(&self) -> f64 {
        self.endpoint_exponent
    }
}

/// Hadamard fractional integral of order `order > 0` at `x ∈ [a, b]`.
pub fn hadamard_integral(
    f: impl Fn(f64) -> f64,
    order: f64,
    interval: &Interval,
    x: f64,
) -> Result<f64> {
    interval.check(x, "x")?;
    HadamardIntegrator::new(order, DEFAULT_NODES)?.integrate(f, interval, x)
}

/// Hadamard derivative of `c·(ln(x/a))^β`:
/// `c·Γ(β+1)/Γ(β+1-σ)·(ln(x/a))^{β-σ}`, zero when `β+1-σ` is a pole.
pub fn hadamard_derivative_log_monomial(
    m: LogMonomial,
    order: Order,
    interval: &Interval,
    x: f64,
) -> Result<f64> {
    let sigma = order.value();
    if !(m.beta > sigma - 2.0) || !m.beta.is_finite() {
        return domain(format!(
            "log-monomial exponent must exceed sigma - 2 = {}, got {}",
            sigma - 2.0,
            m.beta
        ));
    }
    if !(x > interval.a()) || x > interval.b() {
        return domain(format!(
            "derivative requires a < x <= b, got x = {x} on [{}, {}]",
            interval.a(),
            interval.b()
        ));
    }
    let z = m.beta + 1.0 - sigma;
    let nearest = z.round();
    let tie = 8.0 * f64::EPSILON * m.beta.abs().max(sigma).max(1.0);
    if nearest <= 0.0 && (z - nearest).abs() <= tie {
        return Ok(0.0);
    }
    let log_x = (x / interval.a()).ln();
    Ok(m.coefficient * gamma(m.beta + 1.0) * recip_gamma(z) * pow_nonneg(log_x, m.beta - sigma))
}
