//! Green's function of `D^σ u = -y`, `u(a) = 0`, `u(b) = B`.
//!
//! With `T = ln(x/a)`, `t = ln(τ/a)` and `L = ln(b/a)`:
//!
//! ```text
//!   Γ(σ)·τ·G(x,τ) = (T/L)^{σ-1} (L-t)^{σ-1} - [t ≤ T]·(T-t)^{σ-1}
//! ```
//!
//! The row integral `∫_a^b G(x,τ) dτ` is `(L·T^{σ-1} - T^σ)/Γ(σ+1)`, maximized
//! at `T* = L(σ-1)/σ`.

use crate::domain::{pow_nonneg, self_power, Interval, Order};
use crate::error::Result;
use crate::gamma::gamma;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenKernel {
    order: Order,
    interval: Interval,
    log_length: f64,
    gamma_sigma: f64,
}

impl GreenKernel {
    pub fn new(order: Order, interval: Interval) -> Self {
        GreenKernel {
            order,
            interval,
            log_length: interval.log_length(),
            gamma_sigma: gamma(order.value()),
        }
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    /// ln(b/a).
    pub fn log_length(&self) -> f64 {
        self.log_length
    }

    #[inline]
    fn sigma(&self) -> f64 {
        self.order.value()
    }

    #[inline]
    fn log_of(&self, x: f64) -> f64 {
        (x / self.interval.a()).ln().clamp(0.0, self.log_length)
    }

    /// `(ln(x/a)/ln(b/a))^{σ-1}`, the profile multiplying the boundary value B.
    pub fn boundary_profile(&self, x: f64) -> Result<f64> {
        self.interval.check(x, "x")?;
        Ok(self.profile_at_log(self.log_of(x)))
    }

    pub(crate) fn profile_at_log(&self, log_x: f64) -> f64 {
        if log_x >= self.log_length {
            1.0
        } else {
            pow_nonneg(log_x / self.log_length, self.sigma() - 1.0)
        }
    }

    /// G(x, τ).
    pub fn eval(&self, x: f64, tau: f64) -> Result<f64> {
        self.interval.check(x, "x")?;
        self.interval.check(tau, "tau")?;
        let p = self.sigma() - 1.0;
        let big_t = self.log_of(x);
        let t = self.log_of(tau);
        let l = self.log_length;
        let scaled = if t <= big_t {
            // (T/L)(L-t) = (T-t) + t(L-T)/L, which keeps the difference ≥ 0
            let near = big_t - t;
            let far = near + t * (l - big_t) / l;
            pow_nonneg(far, p) - pow_nonneg(near, p)
        } else {
            pow_nonneg(big_t * (l - t) / l, p)
        };
        Ok(scaled / (self.gamma_sigma * tau))
    }

    /// ∫_a^b G(x, τ) dτ in closed form.
    pub fn row_integral(&self, x: f64) -> Result<f64> {
        self.interval.check(x, "x")?;
        Ok(self.row_integral_at_log(self.log_of(x)))
    }

    fn row_integral_at_log(&self, big_t: f64) -> f64 {
        let sigma = self.sigma();
        // T^{σ-1}(L - T) ≥ 0
        pow_nonneg(big_t, sigma - 1.0) * (self.log_length - big_t) / (sigma * self.gamma_sigma)
    }

    /// x* = a·(b/a)^{(σ-1)/σ}.
    pub fn argmax(&self) -> f64 {
        let sigma = self.sigma();
        self.interval.a() * (self.log_length * (sigma - 1.0) / sigma).exp()
    }

    /// max_x ∫|G(x,τ)| dτ = (σ-1)^{σ-1} (ln(b/a))^σ / (σ^{σ+1} Γ(σ)).
    pub fn max_integral(&self) -> f64 {
        let sigma = self.sigma();
        self_power(sigma - 1.0) * self.log_length.powf(sigma)
            / (sigma.powf(sigma + 1.0) * self.gamma_sigma)
    }
}
