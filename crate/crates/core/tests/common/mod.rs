//! Reference quadrature independent of the Gauss–Jacobi machinery under test.
#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

/// Double-exponential (tanh–sinh) quadrature of `f` over `[lo, hi]`.
///
/// `f` receives the abscissa together with its distances to both endpoints,
/// computed without cancellation, so endpoint singularities such as
/// `(hi - x)^{-1/2}` can be evaluated accurately.
pub fn tanh_sinh(f: impl Fn(f64, f64, f64) -> f64, lo: f64, hi: f64, tol: f64) -> f64 {
    let width = hi - lo;
    let node = |u: f64| -> Option<(f64, f64)> {
        let v = FRAC_PI_2 * u.sinh();
        // ξ = (1 + tanh v)/2 and 1 - ξ, both without cancellation
        let left = 1.0 / (1.0 + (-2.0 * v).exp());
        let right = 1.0 / (1.0 + (2.0 * v).exp());
        let dl = width * left;
        let dr = width * right;
        if dl == 0.0 || dr == 0.0 {
            return None;
        }
        let cosh = v.cosh();
        let w = width * 0.5 * FRAC_PI_2 * u.cosh() / (cosh * cosh);
        let x = if left < 0.5 { lo + dl } else { hi - dr };
        Some((w * f(x, dl, dr), w))
    };
    let max_u = 4.0;
    let mut h = 0.5;
    let mut sum = node(0.0).map_or(0.0, |p| p.0);
    let mut k = 1;
    while (k as f64) * h <= max_u {
        let u = k as f64 * h;
        sum += node(u).map_or(0.0, |p| p.0) + node(-u).map_or(0.0, |p| p.0);
        k += 1;
    }
    let mut estimate = sum * h;
    for _ in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= max_u {
            let u = k as f64 * h;
            sum += node(u).map_or(0.0, |p| p.0) + node(-u).map_or(0.0, |p| p.0);
            k += 2;
        }
        let next = sum * h;
        let done = (next - estimate).abs() <= tol * next.abs().max(1e-300);
        estimate = next;
        if done {
            break;
        }
    }
    estimate
}

/// Γ(z) for small positive z via its integral over (0, ∞) after the
/// substitution x = s/(1-s); only used to cross-check closed forms.
pub fn gamma_by_quadrature(z: f64) -> f64 {
    tanh_sinh(
        |_, s, dr| {
            let x = s / dr;
            x.powf(z - 1.0) * (-x).exp() / (dr * dr)
        },
        0.0,
        1.0,
        1e-15,
    )
}

pub fn rel_err(got: f64, expected: f64) -> f64 {
    ((got - expected) / expected).abs()
}
