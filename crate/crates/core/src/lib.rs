//! Numerical solver and analytic certificates for two-point boundary value
//! problems driven by the Hadamard fractional derivative of order σ ∈ (1, 2]:
//!
//! ```text
//!     D^σ u(x) = -F(x, u(x)),   0 < a < x < b,
//!     u(a) = 0,  u(b) = B.
//! ```
//!
//! The problem is recast as the fixed point of `u ↦ ∫ G(x,τ) F(τ,u(τ)) dτ + B·φ(x)`
//! with the Green's function `G` of [`green`], solved by Picard iteration in
//! [`solver`], and accompanied by closed-form uniqueness and eigenvalue
//! certificates from [`certificate`].

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod certificate;
pub mod cli;
pub mod domain;
pub mod error;
pub mod expr;
pub mod fractional;
pub mod gamma;
pub mod green;
pub mod quadrature;
pub mod solver;

pub use certificate::{
    certify_uniqueness, eigen_lower_bound, nonexistence_verdict, uniqueness_threshold,
    EigenCertificate, EigenVerdict, UniquenessCertificate, UniquenessVerdict,
};
pub use domain::{Interval, LogMonomial, Order, SampledFn};
pub use error::{Error, Result};
pub use expr::Expr;
pub use fractional::{
    hadamard_derivative_log_monomial, hadamard_integral, to_log_coordinates, HadamardIntegrator,
};
pub use gamma::gamma_fn;
pub use green::GreenKernel;
pub use quadrature::{singular_integral, JacobiRule};
pub use solver::{
    apply_green_operator, picard_solve, picard_solve_from, residual_check, Forcing, GreenOperator,
    Problem, QuadratureConfig, SolveConfig, SolveResult,
};
