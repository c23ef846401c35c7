mod common;

use common::{rel_err, tanh_sinh};
use hadamard_bvp::{GreenKernel, GreenOperator, Interval, Order, QuadratureConfig};
use std::f64::consts::E;

const ORDERS: [f64; 5] = [1.1, 1.25, 1.5, 1.75, 2.0];

fn intervals() -> [Interval; 3] {
    [
        Interval::new(1.0, E).unwrap(),
        Interval::new(2.0, 5.0).unwrap(),
        Interval::new(0.5, 3.0).unwrap(),
    ]
}

/// ∫_a^b G(x,τ)dτ by double-exponential quadrature of the kernel itself,
/// split at the diagonal where the integrand has a derivative singularity.
fn row_by_oracle(kernel: &GreenKernel, x: f64) -> f64 {
    let i = kernel.interval();
    let g = |tau: f64| kernel.eval(x, tau).unwrap();
    let left = tanh_sinh(|tau, _, _| g(tau), i.a(), x, 1e-14);
    let right = tanh_sinh(|tau, _, _| g(tau), x, i.b(), 1e-14);
    left + right
}

#[test]
fn row_integral_matches_direct_integration_of_kernel() {
    for sigma in ORDERS {
        for interval in intervals() {
            let kernel = GreenKernel::new(Order::new(sigma).unwrap(), interval);
            let l = interval.log_length();
            for k in 1..9 {
                let x = interval.a() * (l * k as f64 / 9.0).exp();
                let expected = kernel.row_integral(x).unwrap();
                let got = row_by_oracle(&kernel, x);
                assert!(
                    rel_err(got, expected) < 1e-9,
                    "σ={sigma} x={x}: {got} vs {expected}"
                );
            }
        }
    }
}

#[test]
fn operator_quadrature_matches_row_integral() {
    let cfg = QuadratureConfig {
        node_count: 64,
        grid_size: 65,
        load_exponent: 0.0,
    };
    for sigma in ORDERS {
        for interval in intervals() {
            let kernel = GreenKernel::new(Order::new(sigma).unwrap(), interval);
            let op = GreenOperator::new(kernel, cfg).unwrap();
            let rows = op.apply_fn(|_| 1.0, 0.0).unwrap();
            for (&x, &v) in rows.nodes().iter().zip(rows.values()).skip(1).take(63) {
                let expected = kernel.row_integral(x).unwrap();
                assert!(rel_err(v, expected) < 1e-6, "σ={sigma} x={x}");
            }
        }
    }
}

#[test]
fn kernel_is_a_density_for_the_boundary_problem() {
    // G(x,·) integrates y ≡ 1 to the row integral and vanishes on the boundary rows
    for sigma in ORDERS {
        let interval = Interval::new(1.0, E).unwrap();
        let kernel = GreenKernel::new(Order::new(sigma).unwrap(), interval);
        assert_eq!(kernel.row_integral(1.0).unwrap(), 0.0);
        assert!(kernel.row_integral(E).unwrap().abs() < 1e-15);
        let max = kernel.max_integral();
        let at_argmax = row_by_oracle(&kernel, kernel.argmax());
        assert!(rel_err(at_argmax, max) < 1e-9);
    }
}
