//! Closed-form uniqueness and eigenvalue certificates.
//!
//! Uniqueness: with `L = K·max_x ∫G(x,τ)dτ`, the solution operator is a
//! contraction in the sup norm iff `L < 1`, which rearranges to
//! `b/a < exp(σ^{(σ+1)/σ} Γ(σ)^{1/σ} / ((σ-1)^{(σ-1)/σ} K^{1/σ}))`.
//! Both forms are computed and cross-checked.
//!
//! Eigenvalues: any nontrivial solution of `D^σ u = λu`, `u(a) = u(b) = 0`
//! has `|λ| ≥ 1 / max_x ∫G(x,τ)dτ`.

use serde::Serialize;

use crate::domain::{Interval, Order};
use crate::error::{domain, Error, Result};
use crate::gamma::{gamma, ln_gamma};
use crate::green::GreenKernel;

/// Relative width of the floating-point tie zone around equality.
pub const TIE_ZONE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UniquenessVerdict {
    Satisfied,
    NotSatisfied,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EigenVerdict {
    PossiblyEigenvalue,
    NoNontrivialSolution,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct UniquenessCertificate {
    pub sigma: f64,
    pub a: f64,
    pub b: f64,
    #[serde(rename = "lipschitzK")]
    pub lipschitz_k: f64,
    pub threshold: f64,
    pub ratio: f64,
    pub contraction: f64,
    pub verdict: UniquenessVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EigenCertificate {
    pub sigma: f64,
    pub a: f64,
    pub b: f64,
    pub bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<EigenVerdict>,
}

fn check_lipschitz(k: f64) -> Result<()> {
    if k.is_finite() && k > 0.0 {
        Ok(())
    } else {
        domain(format!("Lipschitz constant requires K > 0, got {k}"))
    }
}

/// ln of the (σ-1)^{σ-1} factor, zero in the σ → 1⁺ limit.
fn ln_self_power(p: f64) -> f64 {
    if p < 1e-300 {
        0.0
    } else {
        p * p.ln()
    }
}

/// Largest admissible ratio b/a for which the contraction argument applies.
pub fn uniqueness_threshold(sigma: Order, lipschitz_k: f64) -> Result<f64> {
    check_lipschitz(lipschitz_k)?;
    let s = sigma.value();
    let ln_exponent =
        ((s + 1.0) * s.ln() + ln_gamma(s) - ln_self_power(s - 1.0) - lipschitz_k.ln()) / s;
    Ok(ln_exponent.exp().exp())
}

pub fn certify_uniqueness(
    sigma: Order,
    interval: Interval,
    lipschitz_k: f64,
) -> Result<UniquenessCertificate> {
    let threshold = uniqueness_threshold(sigma, lipschitz_k)?;
    let ratio = interval.ratio();
    let contraction = lipschitz_k * GreenKernel::new(sigma, interval).max_integral();

    let by_ratio = ratio < threshold;
    let by_contraction = contraction < 1.0;
    let verdict = if by_ratio == by_contraction {
        by_ratio
    } else {
        let near_ratio = (ratio / threshold - 1.0).abs() <= TIE_ZONE;
        let near_unit = (contraction - 1.0).abs() <= TIE_ZONE;
        if !(near_ratio || near_unit) {
            return Err(Error::InconsistentCertificate(format!(
                "ratio test ({ratio} < {threshold}) = {by_ratio} but contraction test \
                 ({contraction} < 1) = {by_contraction}"
            )));
        }
        // equality is not covered by the strict inequality
        false
    };

    Ok(UniquenessCertificate {
        sigma: sigma.value(),
        a: interval.a(),
        b: interval.b(),
        lipschitz_k,
        threshold,
        ratio,
        contraction,
        verdict: if verdict {
            UniquenessVerdict::Satisfied
        } else {
            UniquenessVerdict::NotSatisfied
        },
    })
}

/// `σ^{σ+1} Γ(σ) / ((σ-1)^{σ-1} (ln(b/a))^σ)`.
pub fn eigen_lower_bound(sigma: Order, interval: Interval) -> f64 {
    let s = sigma.value();
    let l = interval.log_length();
    s.powf(s + 1.0) * gamma(s) / (ln_self_power(s - 1.0).exp() * l.powf(s))
}

pub fn nonexistence_verdict(sigma: Order, interval: Interval, lambda: f64) -> EigenCertificate {
    let bound = eigen_lower_bound(sigma, interval);
    let verdict = if lambda.abs() < bound {
        EigenVerdict::NoNontrivialSolution
    } else {
        EigenVerdict::PossiblyEigenvalue
    };
    EigenCertificate {
        sigma: sigma.value(),
        a: interval.a(),
        b: interval.b(),
        bound,
        lambda: Some(lambda),
        verdict: Some(verdict),
    }
}

/// Bound only, without a λ to test.
pub fn eigen_certificate(sigma: Order, interval: Interval) -> EigenCertificate {
    EigenCertificate {
        sigma: sigma.value(),
        a: interval.a(),
        b: interval.b(),
        bound: eigen_lower_bound(sigma, interval),
        lambda: None,
        verdict: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn order(s: f64) -> Order {
        Order::new(s).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    const UNIT_THRESHOLD: f64 = 9.824_265_724_251_312_3;
    const UNIT_BOUND: f64 = 3.453_727_639_319_398_6;

    #[test]
    fn threshold_values() {
        assert!(
            rel(
                uniqueness_threshold(order(1.5), 1.0).unwrap(),
                UNIT_THRESHOLD
            ) < 1e-13
        );
        assert!(rel(uniqueness_threshold(order(2.0), 8.0).unwrap(), E) < 1e-14);
        assert!(
            rel(
                uniqueness_threshold(order(2.0), 32.0).unwrap(),
                0.5f64.exp()
            ) < 1e-14
        );
    }

    #[test]
    fn threshold_rejects_bad_k() {
        assert!(uniqueness_threshold(order(1.5), 0.0).is_err());
        assert!(uniqueness_threshold(order(1.5), -1.0).is_err());
        assert!(uniqueness_threshold(order(1.5), f64::INFINITY).is_err());
    }

    #[test]
    fn unit_interval_is_satisfied() {
        let c = certify_uniqueness(order(1.5), Interval::new(1.0, E).unwrap(), 1.0).unwrap();
        assert_eq!(c.verdict, UniquenessVerdict::Satisfied);
        assert!(rel(c.contraction, 1.0 / UNIT_BOUND) < 1e-13);
        let shifted =
            certify_uniqueness(order(1.5), Interval::new(2.0, 2.0 * E).unwrap(), 1.0).unwrap();
        assert_eq!(shifted.verdict, UniquenessVerdict::Satisfied);
        assert!(rel(shifted.contraction, c.contraction) < 1e-14);
    }

    #[test]
    fn wide_interval_is_not_satisfied() {
        let c = certify_uniqueness(order(2.0), Interval::new(1.0, E * E).unwrap(), 8.0).unwrap();
        assert_eq!(c.verdict, UniquenessVerdict::NotSatisfied);
        assert!(rel(c.contraction, 4.0) < 1e-14);
    }

    #[test]
    fn exact_tie_is_not_satisfied() {
        // σ = 2, K = 8: threshold e, contraction (ln(b/a))²
        let c = certify_uniqueness(order(2.0), Interval::new(1.0, E).unwrap(), 8.0).unwrap();
        assert_eq!(c.verdict, UniquenessVerdict::NotSatisfied);
    }

    #[test]
    fn eigen_bound_values() {
        let i = Interval::new(1.0, E).unwrap();
        assert!(rel(eigen_lower_bound(order(1.5), i), UNIT_BOUND) < 1e-13);
        assert!(rel(eigen_lower_bound(order(2.0), i), 8.0) < 1e-14);
        let shifted = Interval::new(10.0, 10.0 * E).unwrap();
        assert!(rel(eigen_lower_bound(order(1.5), shifted), UNIT_BOUND) < 1e-13);
    }

    #[test]
    fn nonexistence_verdicts() {
        let i = Interval::new(1.0, E).unwrap();
        let v = |l| nonexistence_verdict(order(1.5), i, l).verdict.unwrap();
        assert_eq!(v(3.0), EigenVerdict::NoNontrivialSolution);
        assert_eq!(v(-3.0), EigenVerdict::NoNontrivialSolution);
        assert_eq!(v(4.0), EigenVerdict::PossiblyEigenvalue);
        assert_eq!(v(0.0), EigenVerdict::NoNontrivialSolution);
    }

    #[test]
    fn reciprocity_sweep() {
        for s in [1.1, 1.25, 1.5, 1.75, 2.0] {
            for (a, b) in [(1.0, E), (2.0, 5.0), (0.5, 3.0)] {
                let i = Interval::new(a, b).unwrap();
                let prod =
                    eigen_lower_bound(order(s), i) * GreenKernel::new(order(s), i).max_integral();
                assert!((prod - 1.0).abs() < 1e-12, "σ={s} [{a},{b}]");
            }
        }
    }

    #[test]
    fn monotonicity() {
        let ks = [0.1, 0.5, 1.0, 2.0, 10.0];
        for s in [1.1, 1.5, 2.0] {
            let th: Vec<f64> = ks
                .iter()
                .map(|&k| uniqueness_threshold(order(s), k).unwrap())
                .collect();
            assert!(th.windows(2).all(|w| w[1] < w[0]));
            let bounds: Vec<f64> = [1.5, 2.0, 4.0, 9.0]
                .iter()
                .map(|&b| eigen_lower_bound(order(s), Interval::new(1.0, b).unwrap()))
                .collect();
            assert!(bounds.windows(2).all(|w| w[1] < w[0]));
        }
    }

    #[test]
    fn serializes_all_fields() {
        let c = certify_uniqueness(order(1.5), Interval::new(1.0, E).unwrap(), 1.0).unwrap();
        let json = serde_json::to_value(&c).unwrap();
        for key in [
            "sigma",
            "a",
            "b",
            "lipschitzK",
            "threshold",
            "ratio",
            "contraction",
            "verdict",
        ] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["verdict"], "Satisfied");
    }
}
