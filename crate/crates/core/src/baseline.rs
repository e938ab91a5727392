//! Baseline distribution interface.
//!
//! A `Baseline` describes a parametric parent distribution H(x, ψ): density,
//! cdf, survival in closed complementary form, inverse cdf, and the partial
//! derivatives the estimation layer needs. The parameter block ψ is passed to
//! every call so optimizers can vary it without rebuilding the object.

use crate::error::{Error, Result};
use crate::real::Real;

/// Domain of one baseline parameter, used to build optimizer transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamDomain {
    /// Any positive real.
    Positive,
    /// Must stay strictly above the largest observation (support upper end).
    AboveDataMax,
    /// Must stay strictly below the smallest observation (support lower end).
    BelowDataMin,
}

/// Order statistics of a dataset consumed by starting-value heuristics.
#[derive(Debug, Clone, Copy)]
pub struct DataSummary<T> {
    pub min: T,
    pub median: T,
    pub max: T,
}

/// Parametric baseline distribution H(x, ψ).
pub trait Baseline<T: Real>: Send + Sync {
    fn name(&self) -> &'static str;

    fn param_count(&self) -> usize;

    fn param_names(&self) -> &'static [&'static str];

    fn param_domain(&self, _index: usize) -> ParamDomain {
        ParamDomain::Positive
    }

    /// Support (lower, upper) at the given ψ; either end may be infinite.
    fn support(&self, psi: &[T]) -> (T, T);

    /// Density h(x, ψ).
    fn density(&self, x: T, psi: &[T]) -> T;

    /// Cdf H(x, ψ).
    fn cdf(&self, x: T, psi: &[T]) -> T;

    /// Survival H̄ = 1 − H in closed complementary form (never `1 - cdf`),
    /// so that log H̄ stays accurate near the upper support end.
    fn survival(&self, x: T, psi: &[T]) -> T;

    fn log_density(&self, x: T, psi: &[T]) -> T {
        self.density(x, psi).ln()
    }

    fn log_cdf(&self, x: T, psi: &[T]) -> T {
        self.cdf(x, psi).ln()
    }

    fn log_survival(&self, x: T, psi: &[T]) -> T {
        self.survival(x, psi).ln()
    }

    /// Inverse cdf for q in [0, 1].
    fn inverse_cdf(&self, q: T, psi: &[T]) -> T;

    /// x such that the survival equals `s`; override when a closed form is
    /// better conditioned than `inverse_cdf(1 - s)`.
    fn inverse_survival(&self, s: T, psi: &[T]) -> T {
        self.inverse_cdf(T::one() - s, psi)
    }

    /// Analytic ∂H/∂ψ_k.
    fn cdf_partial(&self, x: T, psi: &[T], k: usize) -> T;

    /// Analytic ∂ log h / ∂ψ_k. The default central difference keeps
    /// user-registered baselines working; the shipped baselines override it.
    fn log_density_partial(&self, x: T, psi: &[T], k: usize) -> T {
        let step = T::of(1e-6) * psi[k].abs().max(T::one());
        let mut hi = psi.to_vec();
        let mut lo = psi.to_vec();
        hi[k] = hi[k] + step;
        lo[k] = lo[k] - step;
        (self.log_density(x, &hi) - self.log_density(x, &lo)) / (step + step)
    }

    /// Check ψ length and static domains.
    fn validate_psi(&self, psi: &[T]) -> Result<()> {
        if psi.len() != self.param_count() {
            return Err(Error::InvalidData(format!(
                "baseline `{}` expects {} parameters, got {}",
                self.name(),
                self.param_count(),
                psi.len()
            )));
        }
        for (i, &p) in psi.iter().enumerate() {
            if !(p > T::zero()) || !p.is_finite() {
                return Err(Error::InvalidParameter {
                    name: self.param_names()[i],
                    value: p.as_f64(),
                    reason: "must be a finite positive real",
                });
            }
        }
        Ok(())
    }

    /// Starting ψ for optimization, derived from the data summary under the
    /// convention that the family median falls at H = 1/(1 + ln 2).
    fn seed_psi(&self, summary: &DataSummary<T>) -> Vec<T>;
}

/// Validate that `index` addresses a parameter of `b`.
pub fn check_param_index<T: Real>(b: &dyn Baseline<T>, index: usize) -> Result<()> {
    if index >= b.param_count() {
        Err(Error::ParamIndex {
            index,
            count: b.param_count(),
        })
    } else {
        Ok(())
    }
}
