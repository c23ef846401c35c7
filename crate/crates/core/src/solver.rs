//! Picard iteration for `u = ℜu`, where
//!
//! ```text
//!   ℜu(x) = ∫_a^b G(x,τ) F(τ, u(τ)) dτ + B·(ln(x/a)/ln(b/a))^{σ-1}.
//! ```
//!
//! In `t = ln(τ/a)` coordinates the integral splits into two weakly singular
//! pieces with the same kernel shape,
//!
//! ```text
//!   Γ(σ)·∫G y dτ = φ(x)·∫_0^L (L-t)^{σ-1} y dt - ∫_0^T (T-t)^{σ-1} y dt,
//! ```
//!
//! each integrated by one Gauss–Jacobi rule whose weight carries the
//! singularity. The load is evaluated directly at the quadrature points; the
//! current iterate is carried there by piecewise-cubic interpolation in `t`.
//! All quadrature points, weights and interpolation stencils are built once
//! per [`GreenOperator`], so each iteration is a fixed-order weighted sum.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::domain::{cubic_stencil, stencil_in_range, sup_diff, Interval, Order, SampledFn};
use crate::error::{domain, Error, Result};
use crate::gamma::recip_gamma;
use crate::green::GreenKernel;
use crate::quadrature::JacobiRule;

/// Discretization parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuadratureConfig {
    /// Gauss–Jacobi nodes per singular integral.
    pub node_count: usize,
    /// Log-uniform solution grid size, endpoints included.
    pub grid_size: usize,
    /// Exponent γ > -1 of a known `(ln(τ/a))^γ` endpoint factor of the load,
    /// absorbed into the quadrature weight. Zero for regular loads.
    pub load_exponent: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            node_count: 64,
            grid_size: 129,
            load_exponent: 0.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.node_count < 4 {
            return domain(format!(
                "node count must be at least 4, got {}",
                self.node_count
            ));
        }
        if self.grid_size < 3 {
            return domain(format!(
                "grid size must be at least 3, got {}",
                self.grid_size
            ));
        }
        if !(self.load_exponent > -1.0) || !self.load_exponent.is_finite() {
            return domain(format!(
                "load exponent must exceed -1, got {}",
                self.load_exponent
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveConfig {
    /// Sup-norm stopping tolerance.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            tolerance: 1e-10,
            max_iterations: 1000,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            return domain(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            ));
        }
        if self.max_iterations == 0 {
            return domain("iteration budget must be positive");
        }
        Ok(())
    }
}

/// The nonlinearity F(x, u).
pub trait Forcing {
    fn eval(&self, x: f64, u: f64) -> Result<f64>;
}

impl<F> Forcing for F
where
    F: Fn(f64, f64) -> f64,
{
    fn eval(&self, x: f64, u: f64) -> Result<f64> {
        Ok(self(x, u))
    }
}

/// `D^σ u = -F(x, u)` on (a, b), `u(a) = 0`, `u(b) = B`.
#[derive(Debug, Clone)]
pub struct Problem<F> {
    pub order: Order,
    pub interval: Interval,
    pub boundary_value: f64,
    pub forcing: F,
    /// Lipschitz constant K of F in u, when known.
    pub lipschitz: Option<f64>,
}

impl<F: Forcing> Problem<F> {
    pub fn new(order: Order, interval: Interval, boundary_value: f64, forcing: F) -> Result<Self> {
        if !boundary_value.is_finite() {
            return domain(format!(
                "boundary value must be finite, got {boundary_value}"
            ));
        }
        Ok(Problem {
            order,
            interval,
            boundary_value,
            forcing,
            lipschitz: None,
        })
    }

    pub fn with_lipschitz(mut self, k: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return domain(format!("Lipschitz constant requires K > 0, got {k}"));
        }
        self.lipschitz = Some(k);
        Ok(self)
    }

    pub fn kernel(&self) -> GreenKernel {
        GreenKernel::new(self.order, self.interval)
    }

    /// K·max∫G, when K is known.
    pub fn contraction_constant(&self) -> Option<f64> {
        self.lipschitz.map(|k| k * self.kernel().max_integral())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub solution: SampledFn,
    pub iterations: usize,
    /// Last sup-norm update.
    pub final_delta: f64,
    /// Largest observed ratio of successive updates.
    pub contraction_estimate: f64,
    pub converged: bool,
    /// Sup-norm update of every iteration, in order.
    pub deltas: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct QuadPoint {
    x: f64,
    t: f64,
    weight: f64,
    stencil: usize,
    coeffs: [f64; 4],
}

/// The discretized solution operator for one kernel and configuration.
#[derive(Debug, Clone)]
pub struct GreenOperator {
    kernel: GreenKernel,
    config: QuadratureConfig,
    nodes: Vec<f64>,
    logs: Vec<f64>,
    profile: Vec<f64>,
    full: Vec<QuadPoint>,
    rows: Vec<QuadPoint>,
    row_offsets: Vec<usize>,
}

impl GreenOperator {
    pub fn new(kernel: GreenKernel, config: QuadratureConfig) -> Result<Self> {
        config.validate()?;
        let sigma = kernel.order().value();
        let interval = *kernel.interval();
        let a = interval.a();
        let n = config.grid_size;
        let l = kernel.log_length();
        let h = l / (n - 1) as f64;
        let gamma_exp = config.load_exponent;
        let rule = JacobiRule::new(config.node_count, sigma - 1.0, gamma_exp)?;
        let inv_gamma = recip_gamma(sigma);

        let nodes = SampledFn::log_uniform_nodes(&interval, n);
        let logs: Vec<f64> = (0..n)
            .map(|i| if i == n - 1 { l } else { i as f64 * h })
            .collect();
        let profile = logs.iter().map(|&t| kernel.profile_at_log(t)).collect();

        // ∫_0^T (T-t)^{σ-1} y(t) dt ≈ Σ w_q T^σ s_q^{-γ} y(T s_q)
        let points_for = |big_t: f64, sign: f64| -> Vec<QuadPoint> {
            let scale = sign * inv_gamma * big_t.powf(sigma);
            rule.nodes()
                .iter()
                .zip(rule.weights())
                .map(|(&s, &w)| {
                    let t = big_t * s;
                    let (stencil, coeffs) = cubic_stencil(n, h, t);
                    let weight = if gamma_exp == 0.0 {
                        w * scale
                    } else {
                        w * scale / s.powf(gamma_exp)
                    };
                    QuadPoint {
                        x: a * t.exp(),
                        t,
                        weight,
                        stencil,
                        coeffs,
                    }
                })
                .collect()
        };

        let full = points_for(l, 1.0);
        let mut rows = Vec::with_capacity((n - 2) * rule.len());
        let mut row_offsets = Vec::with_capacity(n + 1);
        row_offsets.push(0);
        for (i, &t) in logs.iter().enumerate() {
            if i != 0 && i != n - 1 {
                rows.extend(points_for(t, 1.0));
            }
            row_offsets.push(rows.len());
        }

        Ok(GreenOperator {
            kernel,
            config,
            nodes,
            logs,
            profile,
            full,
            rows,
            row_offsets,
        })
    }

    pub fn kernel(&self) -> &GreenKernel {
        &self.kernel
    }

    pub fn config(&self) -> &QuadratureConfig {
        &self.config
    }

    /// Grid nodes x_i.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Grid nodes in log coordinates, t_i = ln(x_i/a).
    pub fn log_nodes(&self) -> &[f64] {
        &self.logs
    }

    /// φ(x_i) = (t_i/L)^{σ-1}.
    pub fn boundary_profile(&self) -> &[f64] {
        &self.profile
    }

    fn grid_size(&self) -> usize {
        self.nodes.len()
    }

    /// `∫ G(x_i, τ) y(τ) dτ` at every grid node; `load` is called once per
    /// quadrature point in a fixed order.
    fn integrate<E>(
        &self,
        mut load: impl FnMut(&QuadPoint) -> std::result::Result<f64, E>,
    ) -> std::result::Result<Vec<f64>, E> {
        let n = self.grid_size();
        let mut total = 0.0;
        for p in &self.full {
            total += p.weight * load(p)?;
        }
        let mut out = vec![0.0; n];
        for (i, slot) in out.iter_mut().enumerate().take(n - 1).skip(1) {
            let mut partial = 0.0;
            for p in &self.rows[self.row_offsets[i]..self.row_offsets[i + 1]] {
                partial += p.weight * load(p)?;
            }
            *slot = self.profile[i] * total - partial;
        }
        Ok(out)
    }

    fn check_grid(&self, f: &SampledFn) -> Result<()> {
        let interval = self.kernel.interval();
        if f.interval() != interval || f.len() != self.grid_size() {
            return Err(Error::GridMismatch(format!(
                "function sampled with {} nodes on [{}, {}], operator expects {} nodes on [{}, {}]",
                f.len(),
                f.interval().a(),
                f.interval().b(),
                self.grid_size(),
                interval.a(),
                interval.b()
            )));
        }
        Ok(())
    }

    fn with_boundary(&self, mut integral: Vec<f64>, boundary_value: f64) -> Result<SampledFn> {
        let n = integral.len();
        for (v, phi) in integral.iter_mut().zip(&self.profile) {
            *v += boundary_value * phi;
        }
        integral[0] = 0.0;
        integral[n - 1] = boundary_value;
        SampledFn::new(*self.kernel.interval(), self.nodes.clone(), integral)
    }

    /// ℜ for a load given as grid samples.
    ///
    /// The load is interpolated cubically in t. With a nonzero load exponent
    /// γ, the interpolated quantity is `y/t^γ` on the nodes away from `t = 0`.
    pub fn apply_sampled(&self, y: &SampledFn, boundary_value: f64) -> Result<SampledFn> {
        self.check_grid(y)?;
        let values = y.values();
        let gamma_exp = self.config.load_exponent;
        let integral = if gamma_exp == 0.0 {
            self.integrate(|p| Ok::<_, Error>(interp(p, values)))?
        } else {
            let n = self.grid_size();
            let h = self.logs[1];
            let reduced: Vec<f64> = values
                .iter()
                .zip(&self.logs)
                .map(|(v, &t)| if t > 0.0 { v / t.powf(gamma_exp) } else { 0.0 })
                .collect();
            self.integrate(|p| {
                let (start, coeffs) = stencil_in_range(1, n, h, p.t);
                let z: f64 = coeffs
                    .iter()
                    .zip(&reduced[start..])
                    .map(|(c, v)| c * v)
                    .sum();
                Ok::<_, Error>(z * p.t.powf(gamma_exp))
            })?
        };
        self.with_boundary(integral, boundary_value)
    }

    /// ℜ for a load given as a function of x.
    pub fn apply_fn(&self, y: impl Fn(f64) -> f64, boundary_value: f64) -> Result<SampledFn> {
        let integral = self.integrate(|p| Ok::<_, Error>(y(p.x)))?;
        self.with_boundary(integral, boundary_value)
    }

    /// One application of ℜ to the grid function `u`.
    pub fn apply_problem<F: Forcing>(
        &self,
        problem: &Problem<F>,
        u: &SampledFn,
    ) -> Result<SampledFn> {
        self.check_grid(u)?;
        let values = u.values();
        let integral = self.integrate(|p| {
            let uq = interp(p, values);
            let y = problem.forcing.eval(p.x, uq)?;
            if y.is_finite() {
                Ok(y)
            } else {
                Err(Error::Evaluation {
                    x: p.x,
                    u: uq,
                    message: format!("forcing term evaluated to {y}"),
                })
            }
        })?;
        self.with_boundary(integral, problem.boundary_value)
    }

    /// Matrix M with `(M v)_i = ∫ G(x_i, τ) ṽ(τ) dτ`, where ṽ is the cubic
    /// interpolant of the grid values v. Rows for the two endpoints are zero.
    pub fn matrix(&self) -> Result<DMatrix<f64>> {
        if self.config.load_exponent != 0.0 {
            return domain("the operator matrix is only defined for a zero load exponent");
        }
        let n = self.grid_size();
        let mut full_row = vec![0.0; n];
        for p in &self.full {
            for (k, c) in p.coeffs.iter().enumerate() {
                if *c != 0.0 {
                    full_row[p.stencil + k] += p.weight * c;
                }
            }
        }
        let mut m = DMatrix::zeros(n, n);
        for i in 1..n - 1 {
            for j in 0..n {
                m[(i, j)] = self.profile[i] * full_row[j];
            }
            for p in &self.rows[self.row_offsets[i]..self.row_offsets[i + 1]] {
                for (k, c) in p.coeffs.iter().enumerate() {
                    if *c != 0.0 {
                        m[(i, p.stencil + k)] -= p.weight * c;
                    }
                }
            }
        }
        Ok(m)
    }
}

#[inline]
fn interp(p: &QuadPoint, values: &[f64]) -> f64 {
    p.coeffs
        .iter()
        .zip(&values[p.stencil..])
        .map(|(c, v)| c * v)
        .sum()
}

/// `∫_a^b G(x,τ) y(τ) dτ + B·φ(x)` on the configured grid.
pub fn apply_green_operator(
    kernel: &GreenKernel,
    y: &SampledFn,
    boundary_value: f64,
    cfg: &QuadratureConfig,
) -> Result<SampledFn> {
    GreenOperator::new(*kernel, *cfg)?.apply_sampled(y, boundary_value)
}

/// Picard iteration from `u₀ = B·φ`.
pub fn picard_solve<F: Forcing>(
    problem: &Problem<F>,
    cfg: &QuadratureConfig,
    scfg: &SolveConfig,
) -> Result<SolveResult> {
    let op = GreenOperator::new(problem.kernel(), *cfg)?;
    let start = SampledFn::new(
        problem.interval,
        op.nodes().to_vec(),
        op.boundary_profile()
            .iter()
            .map(|phi| problem.boundary_value * phi)
            .collect(),
    )?;
    iterate(&op, problem, start, scfg)
}

/// Picard iteration from a caller-supplied start on the configured grid.
pub fn picard_solve_from<F: Forcing>(
    problem: &Problem<F>,
    initial: &SampledFn,
    cfg: &QuadratureConfig,
    scfg: &SolveConfig,
) -> Result<SolveResult> {
    let op = GreenOperator::new(problem.kernel(), *cfg)?;
    op.check_grid(initial)?;
    iterate(&op, problem, initial.clone(), scfg)
}

fn iterate<F: Forcing>(
    op: &GreenOperator,
    problem: &Problem<F>,
    mut current: SampledFn,
    scfg: &SolveConfig,
) -> Result<SolveResult> {
    scfg.validate()?;
    // a posteriori bound ‖u_n - u*‖ ≤ δ_n·L/(1-L) when L < 1 is known
    let stop_at = match problem.contraction_constant() {
        Some(l) if l < 1.0 => scfg.tolerance * (1.0 - l) / l.max(1e-300),
        _ => scfg.tolerance,
    };
    let mut deltas: Vec<f64> = Vec::new();
    let mut converged = false;
    for _ in 0..scfg.max_iterations {
        let next = op.apply_problem(problem, &current)?;
        let delta = sup_diff(next.values(), current.values());
        deltas.push(delta);
        current = next;
        if delta <= stop_at {
            converged = true;
            break;
        }
    }
    let contraction_estimate = deltas
        .windows(2)
        .filter(|w| w[0] > 0.0)
        .map(|w| w[1] / w[0])
        .fold(0.0_f64, f64::max);
    Ok(SolveResult {
        solution: current,
        iterations: deltas.len(),
        final_delta: deltas.last().copied().unwrap_or(0.0),
        contraction_estimate,
        converged,
        deltas,
    })
}

/// `max_i |u(x_i) - ℜu(x_i)|`.
pub fn residual_check<F: Forcing>(
    problem: &Problem<F>,
    u: &SampledFn,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let op = GreenOperator::new(problem.kernel(), *cfg)?;
    let image = op.apply_problem(problem, u)?;
    Ok(sup_diff(u.values(), image.values()))
}
