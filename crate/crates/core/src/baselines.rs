//! Shipped baseline distributions: exponential, uniform and Pareto, giving
//! the T2GWE, T2GWU and T2GWP special cases of the family.

use std::sync::Arc;

use crate::baseline::{Baseline, DataSummary, ParamDomain};
use crate::real::{ln_one_minus_exp_neg, Real};

/// H at which the family median sits when α = β = 1, i.e. 1/(1 + ln 2).
/// Starting-value heuristics place the sample median there.
fn median_target<T: Real>() -> T {
    T::one() / (T::one() + T::LN_2())
}

/// Exponential baseline with rate γ: H(x) = 1 − e^{−γx} on (0, ∞).
#[derive(Debug, Clone, Copy, Default)]
pub struct Exponential;

impl<T: Real> Baseline<T> for Exponential {
    fn name(&self) -> &'static str {
        "exponential"
    }

    fn param_count(&self) -> usize {
        1
    }

    fn param_names(&self) -> &'static [&'static str] {
        &["gamma"]
    }

    fn support(&self, _psi: &[T]) -> (T, T) {
        (T::zero(), T::infinity())
    }

    fn density(&self, x: T, psi: &[T]) -> T {
        psi[0] * (-psi[0] * x).exp()
    }

    fn cdf(&self, x: T, psi: &[T]) -> T {
        -(-psi[0] * x).exp_m1()
    }

    fn survival(&self, x: T, psi: &[T]) -> T {
        (-psi[0] * x).exp()
    }

    fn log_density(&self, x: T, psi: &[T]) -> T {
        psi[0].ln() - psi[0] * x
    }

    fn log_cdf(&self, x: T, psi: &[T]) -> T {
        ln_one_minus_exp_neg(psi[0] * x)
    }

    fn log_survival(&self, x: T, psi: &[T]) -> T {
        -psi[0] * x
    }

    fn inverse_cdf(&self, q: T, psi: &[T]) -> T {
        -(-q).ln_1p() / psi[0]
    }

    fn inverse_survival(&self, s: T, psi: &[T]) -> T {
        -s.ln() / psi[0]
    }

    fn cdf_partial(&self, x: T, psi: &[T], _k: usize) -> T {
        x * (-psi[0] * x).exp()
    }

    fn log_density_partial(&self, x: T, psi: &[T], _k: usize) -> T {
        psi[0].recip() - x
    }

    fn seed_psi(&self, summary: &DataSummary<T>) -> Vec<T> {
        // Solve H(median) = 1/(1 + ln 2) for γ.
        let q: T = median_target();
        vec![-(T::one() - q).ln() / summary.median]
    }
}

/// Uniform baseline on (0, γ): H(x) = x/γ.
#[derive(Debug, Clone, Copy, Default)]
pub struct Uniform;

impl<T: Real> Baseline<T> for Uniform {
    fn name(&self) -> &'static str {
        "uniform"
    }

    fn param_count(&self) -> usize {
        1
    }

    fn param_names(&self) -> &'static [&'static str] {
        &["gamma"]
    }

    fn param_domain(&self, _index: usize) -> ParamDomain {
        ParamDomain::AboveDataMax
    }

    fn support(&self, psi: &[T]) -> (T, T) {
        (T::zero(), psi[0])
    }

    fn density(&self, _x: T, psi: &[T]) -> T {
        psi[0].recip()
    }

    fn cdf(&self, x: T, psi: &[T]) -> T {
        x / psi[0]
    }

    fn survival(&self, x: T, psi: &[T]) -> T {
        (psi[0] - x) / psi[0]
    }

    fn inverse_cdf(&self, q: T, psi: &[T]) -> T {
        psi[0] * q
    }

    fn inverse_survival(&self, s: T, psi: &[T]) -> T {
        psi[0] * (T::one() - s)
    }

    fn cdf_partial(&self, x: T, psi: &[T], _k: usize) -> T {
        -x / (psi[0] * psi[0])
    }

    fn log_density_partial(&self, _x: T, psi: &[T], _k: usize) -> T {
        -psi[0].recip()
    }

    fn seed_psi(&self, summary: &DataSummary<T>) -> Vec<T> {
        let q: T = median_target();
        let from_median = summary.median / q;
        vec![from_median.max(summary.max * T::of(1.05))]
    }
}

/// Pareto baseline with scale θ and shape k: H(x) = 1 − (θ/x)^k on (θ, ∞).
#[derive(Debug, Clone, Copy, Default)]
pub struct Pareto;

impl<T: Real> Baseline<T> for Pareto {
    fn name(&self) -> &'static str {
        "pareto"
    }

    fn param_count(&self) -> usize {
        2
    }

    fn param_names(&self) -> &'static [&'static str] {
        &["theta", "k"]
    }

    fn param_domain(&self, index: usize) -> ParamDomain {
        if index == 0 {
            ParamDomain::BelowDataMin
        } else {
            ParamDomain::Positive
        }
    }

    fn support(&self, psi: &[T]) -> (T, T) {
        (psi[0], T::infinity())
    }

    fn density(&self, x: T, psi: &[T]) -> T {
        let (theta, k) = (psi[0], psi[1]);
        k / x * (theta / x).powf(k)
    }

    fn cdf(&self, x: T, psi: &[T]) -> T {
        -(psi[1] * (psi[0] / x).ln()).exp_m1()
    }

    fn survival(&self, x: T, psi: &[T]) -> T {
        (psi[0] / x).powf(psi[1])
    }

    fn log_density(&self, x: T, psi: &[T]) -> T {
        let (theta, k) = (psi[0], psi[1]);
        k.ln() - x.ln() + k * (theta.ln() - x.ln())
    }

    fn log_cdf(&self, x: T, psi: &[T]) -> T {
        ln_one_minus_exp_neg(psi[1] * (x / psi[0]).ln())
    }

    fn log_survival(&self, x: T, psi: &[T]) -> T {
        psi[1] * (psi[0] / x).ln()
    }

    fn inverse_cdf(&self, q: T, psi: &[T]) -> T {
        psi[0] * (T::one() - q).powf(-psi[1].recip())
    }

    fn inverse_survival(&self, s: T, psi: &[T]) -> T {
        psi[0] * s.powf(-psi[1].recip())
    }

    fn cdf_partial(&self, x: T, psi: &[T], k: usize) -> T {
        let (theta, shape) = (psi[0], psi[1]);
        let sv = (theta / x).powf(shape);
        match k {
            // ∂H/∂θ = −(k/θ) (θ/x)^k
            0 => -shape / theta * sv,
            // ∂H/∂k = (θ/x)^k ln(x/θ)
            _ => sv * (x / theta).ln(),
        }
    }

    fn log_density_partial(&self, x: T, psi: &[T], k: usize) -> T {
        let (theta, shape) = (psi[0], psi[1]);
        match k {
            0 => shape / theta,
            _ => shape.recip() + (theta / x).ln(),
        }
    }

    fn seed_psi(&self, summary: &DataSummary<T>) -> Vec<T> {
        let theta = summary.min * T::of(0.95);
        let q: T = median_target();
        let shape = (T::one() - q).ln() / (theta / summary.median).ln();
        vec![theta, shape.max(T::of(0.05)).min(T::of(50.0))]
    }
}

/// Resolve a baseline by its CLI/config name.
pub fn baseline_by_name(name: &str) -> Option<Arc<dyn Baseline<f64>>> {
    match name {
        "exponential" => Some(Arc::new(Exponential)),
        "uniform" => Some(Arc::new(Uniform)),
        "pareto" => Some(Arc::new(Pareto)),
        _ => None,
    }
}
