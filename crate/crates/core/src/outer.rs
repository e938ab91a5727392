//! The general generator: F(x) = R(α [H/H̄]^β) for an outer cdf R on [0, ∞).
//!
//! Any cdf R produces a family; the shipped presets are the Weibull outer
//! (whose unit case is the plain odds-ratio exponential form), the Type-2
//! Gumbel outer that generates the T2GWG family after reduction, and a
//! clamped uniform outer which is improper beyond its endpoint.

use crate::baseline::Baseline;
use crate::error::{Error, Result};
use crate::family::{locate, SupportPosition};
use crate::real::Real;

/// Outer distribution R(t) applied to the scaled exponentiated odds ratio.
pub trait Outer<T: Real>: Send + Sync {
    fn name(&self) -> &'static str;

    /// R(t) for t in [0, ∞]; implementations must accept `T::infinity()`.
    fn cdf(&self, t: T) -> T;

    /// False when R never reaches 1 (the mass is clamped), as for the
    /// uniform outer.
    fn is_proper(&self) -> bool {
        true
    }
}

/// Type-2 Gumbel outer, R(t) = exp(−λ t^{−δ}).
#[derive(Debug, Clone, Copy)]
pub struct Type2Gumbel<T> {
    lambda: T,
    delta: T,
}

impl<T: Real> Type2Gumbel<T> {
    pub fn new(lambda: T, delta: T) -> Result<Self> {
        for (name, v) in [("lambda", lambda), ("delta", delta)] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value: v.as_f64(),
                    reason: "must be a finite positive real",
                });
            }
        }
        Ok(Self { lambda, delta })
    }
}

impl<T: Real> Outer<T> for Type2Gumbel<T> {
    fn name(&self) -> &'static str {
        "type2-gumbel"
    }

    fn cdf(&self, t: T) -> T {
        // 0^{−δ} = ∞ and ∞^{−δ} = 0 give the correct limits 0 and 1.
        (-self.lambda * t.powf(-self.delta)).exp()
    }
}

/// Weibull outer, R(t) = 1 − exp(−(t/scale)^shape). With shape = scale = 1
/// this is the exponential outer R(t) = 1 − e^{−t}.
#[derive(Debug, Clone, Copy)]
pub struct WeibullOuter<T> {
    shape: T,
    scale: T,
}

impl<T: Real> WeibullOuter<T> {
    pub fn new(shape: T, scale: T) -> Result<Self> {
        for (name, v) in [("shape", shape), ("scale", scale)] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value: v.as_f64(),
                    reason: "must be a finite positive real",
                });
            }
        }
        Ok(Self { shape, scale })
    }

    pub fn unit() -> Self {
        Self {
            shape: T::one(),
            scale: T::one(),
        }
    }
}

impl<T: Real> Outer<T> for WeibullOuter<T> {
    fn name(&self) -> &'static str {
        "weibull"
    }

    fn cdf(&self, t: T) -> T {
        -(-(t / self.scale).powf(self.shape)).exp_m1()
    }
}

/// Uniform outer, R(t) = t/θ clamped at 1. Formally R is only a cdf on
/// [0, θ]; beyond θ the preset clamps, which keeps monotonicity but makes
/// the composed family improper (`is_proper` = false).
#[derive(Debug, Clone, Copy)]
pub struct UniformOuter<T> {
    theta: T,
}

impl<T: Real> UniformOuter<T> {
    pub fn new(theta: T) -> Result<Self> {
        if !(theta > T::zero()) || !theta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta.as_f64(),
                reason: "must be a finite positive real",
            });
        }
        Ok(Self { theta })
    }
}

impl<T: Real> Outer<T> for UniformOuter<T> {
    fn name(&self) -> &'static str {
        "uniform-clamped"
    }

    fn cdf(&self, t: T) -> T {
        (t / self.theta).min(T::one())
    }

    fn is_proper(&self) -> bool {
        false
    }
}

/// Compose an outer distribution with a baseline:
/// F(x) = R(α [H(x)/H̄(x)]^β), with the odds power taken in log space.
pub fn compose_cdf<T: Real>(
    outer: &(impl Outer<T> + ?Sized),
    baseline: &(impl Baseline<T> + ?Sized),
    psi: &[T],
    alpha: T,
    beta: T,
    x: T,
) -> Result<T> {
    for (name, v) in [("alpha", alpha), ("beta", beta)] {
        if !(v > T::zero()) || !v.is_finite() {
            return Err(Error::InvalidParameter {
                name,
                value: v.as_f64(),
                reason: "must be a finite positive real",
            });
        }
    }
    baseline.validate_psi(psi)?;
    match locate(baseline, psi, x)? {
        SupportPosition::Lower => Ok(outer.cdf(T::zero())),
        SupportPosition::Upper => Ok(outer.cdf(T::infinity())),
        SupportPosition::Interior => {
            let log_odds = baseline.log_cdf(x, psi) - baseline.log_survival(x, psi);
            let t = (alpha.ln() + beta * log_odds).exp();
            Ok(outer.cdf(t))
        }
    }
}
