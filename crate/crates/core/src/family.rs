//! The T2GWG family: F(x) = exp{−α [H/H̄]^{−β}} for a baseline H.
//!
//! All evaluation goes through log space. The quantity
//! A = exp(ln α − β (log H − log H̄)) stays finite where the naive power
//! [H/H̄]^{−β} would overflow, and the cdf/pdf/hazard are assembled from it.

use crate::baseline::Baseline;
use crate::error::{Error, Result};
use crate::real::Real;
use crate::rng::SplitMix64;

/// Family parameters: scale α > 0, odds exponent β > 0 and the baseline
/// block ψ.
#[derive(Debug, Clone, PartialEq)]
pub struct Params<T> {
    alpha: T,
    beta: T,
    psi: Vec<T>,
}

impl<T: Real> Params<T> {
    pub fn new(alpha: T, beta: T, psi: Vec<T>) -> Result<Self> {
        if !(alpha > T::zero()) || !alpha.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha.as_f64(),
                reason: "must be a finite positive real",
            });
        }
        if !(beta > T::zero()) || !beta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: beta.as_f64(),
                reason: "must be a finite positive real",
            });
        }
        Ok(Self { alpha, beta, psi })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn psi(&self) -> &[T] {
        &self.psi
    }

    /// Flat layout `[alpha, beta, psi...]` used by the optimizer.
    pub fn to_vec(&self) -> Vec<T> {
        let mut v = Vec::with_capacity(2 + self.psi.len());
        v.push(self.alpha);
        v.push(self.beta);
        v.extend_from_slice(&self.psi);
        v
    }

    pub fn from_slice(values: &[T]) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidData(
                "parameter vector needs at least alpha and beta".into(),
            ));
        }
        Self::new(values[0], values[1], values[2..].to_vec())
    }
}

/// Where a point sits relative to the closed support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportPosition {
    Lower,
    Interior,
    Upper,
}

/// Classify `x` against the baseline support, rejecting exterior points.
pub fn locate<T: Real>(baseline: &(impl Baseline<T> + ?Sized), psi: &[T], x: T) -> Result<SupportPosition> {
    let (lower, upper) = baseline.support(psi);
    if !x.is_finite() && !(x == upper) {
        return Err(Error::OutsideSupport {
            x: x.as_f64(),
            lower: lower.as_f64(),
            upper: upper.as_f64(),
        });
    }
    if x < lower || x > upper {
        return Err(Error::OutsideSupport {
            x: x.as_f64(),
            lower: lower.as_f64(),
            upper: upper.as_f64(),
        });
    }
    if x == lower {
        Ok(SupportPosition::Lower)
    } else if x == upper {
        Ok(SupportPosition::Upper)
    } else {
        Ok(SupportPosition::Interior)
    }
}

/// Per-point log-space cache: log H, log H̄, their difference, and
/// A = α [H/H̄]^{−β}.
#[derive(Debug, Clone, Copy)]
pub struct LogOdds<T> {
    pub log_cdf: T,
    pub log_survival: T,
    pub log_odds: T,
    pub a: T,
}

impl<T: Real> LogOdds<T> {
    /// Evaluate at an interior (or boundary) point; no domain checks.
    pub fn new(baseline: &(impl Baseline<T> + ?Sized), params: &Params<T>, x: T) -> Self {
        let log_cdf = baseline.log_cdf(x, &params.psi);
        let log_survival = baseline.log_survival(x, &params.psi);
        let log_odds = log_cdf - log_survival;
        // exp(ln α − β log_odds); ±inf log-odds collapse to A = ∞ / 0.
        let a = if log_odds == T::neg_infinity() {
            T::infinity()
        } else if log_odds == T::infinity() {
            T::zero()
        } else {
            (params.alpha.ln() - params.beta * log_odds).exp()
        };
        Self {
            log_cdf,
            log_survival,
            log_odds,
            a,
        }
    }
}

fn validate<T: Real>(params: &Params<T>, baseline: &(impl Baseline<T> + ?Sized)) -> Result<()> {
    baseline.validate_psi(&params.psi)
}

/// Multiply avoiding 0 × ∞ = NaN (treat a zero coefficient as exactly zero).
#[inline]
fn guarded_mul<T: Real>(coeff: T, value: T) -> T {
    if coeff == T::zero() {
        T::zero()
    } else {
        coeff * value
    }
}

/// Cdf of the family, exp{−α [H/H̄]^{−β}}.
pub fn cdf<T: Real>(params: &Params<T>, baseline: &(impl Baseline<T> + ?Sized), x: T) -> Result<T> {
    validate(params, baseline)?;
    match locate(baseline, &params.psi, x)? {
        SupportPosition::Lower => Ok(T::zero()),
        SupportPosition::Upper => Ok(T::one()),
        SupportPosition::Interior => Ok((-LogOdds::new(baseline, params, x).a).exp()),
    }
}

/// Log-density. Support boundaries yield −∞ rather than an error so line
/// searches can probe them.
pub fn log_pdf<T: Real>(params: &Params<T>, baseline: &(impl Baseline<T> + ?Sized), x: T) -> Result<T> {
    validate(params, baseline)?;
    locate(baseline, &params.psi, x)?;
    Ok(log_pdf_unchecked(params, baseline, x))
}

/// Log-density without domain validation; used by the estimation objectives
/// after their own feasibility checks.
pub fn log_pdf_unchecked<T: Real>(params: &Params<T>, baseline: &(impl Baseline<T> + ?Sized), x: T) -> T {
    let cache = LogOdds::new(baseline, params, x);
    log_pdf_from_cache(params, baseline, x, &cache)
}

pub(crate) fn log_pdf_from_cache<T: Real>(
    params: &Params<T>,
    baseline: &(impl Baseline<T> + ?Sized),
    x: T,
    cache: &LogOdds<T>,
) -> T {
    if cache.a == T::infinity() {
        return T::neg_infinity();
    }
    let one = T::one();
    params.alpha.ln() + params.beta.ln() + baseline.log_density(x, &params.psi)
        - guarded_mul(params.beta + one, cache.log_cdf)
        + guarded_mul(params.beta - one, cache.log_survival)
        - cache.a
}

/// Density, exp of `log_pdf`.
pub fn pdf<T: Real>(params: &Params<T>, baseline: &(impl Baseline<T> + ?Sized), x: T) -> Result<T> {
    Ok(log_pdf(params, baseline, x)?.exp())
}

/// Hazard rate f/(1−F), with the survival computed as −expm1(−A) so no
/// cancellation occurs when F ≈ 1. Returns +∞ once survival underflows.
pub fn hazard<T: Real>(params: &Params<T>, baseline: &(impl Baseline<T> + ?Sized), x: T) -> Result<T> {
    validate(params, baseline)?;
    match locate(baseline, &params.psi, x)? {
        SupportPosition::Lower => Ok(T::zero()),
        SupportPosition::Upper => Ok(T::infinity()),
        SupportPosition::Interior => {
            let cache = LogOdds::new(baseline, params, x);
            let survival = -(-cache.a).exp_m1();
            if survival <= T::zero() {
                return Ok(T::infinity());
            }
            let lp = log_pdf_from_cache(params, baseline, x, &cache);
            Ok(lp.exp() / survival)
        }
    }
}

/// Reverse hazard rate f/F = αβ h H^{−β−1} H̄^{β−1}.
pub fn reverse_hazard<T: Real>(params: &Params<T>, baseline: &(impl Baseline<T> + ?Sized), x: T) -> Result<T> {
    validate(params, baseline)?;
    locate(baseline, &params.psi, x)?;
    let cache = LogOdds::new(baseline, params, x);
    let one = T::one();
    let log_tau = params.alpha.ln() + params.beta.ln() + baseline.log_density(x, &params.psi)
        - guarded_mul(params.beta + one, cache.log_cdf)
        + guarded_mul(params.beta - one, cache.log_survival);
    Ok(log_tau.exp())
}

/// Quantile. Solves H(x) = 1 / ((−ln p / α)^{1/β} + 1) and hands the better
/// conditioned of (q, 1−q) to the baseline inverse.
pub fn quantile<T: Real>(params: &Params<T>, baseline: &(impl Baseline<T> + ?Sized), p: T) -> Result<T> {
    validate(params, baseline)?;
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::InvalidProbability { p: p.as_f64() });
    }
    let (lower, upper) = baseline.support(&params.psi);
    if p == T::zero() {
        return Ok(lower);
    }
    if p == T::one() {
        return Ok(upper);
    }
    let t = -p.ln() / params.alpha;
    // u = t^{1/β}; H = 1/(1+u), H̄ = u/(1+u), both exact in u.
    let u = (t.ln() / params.beta).exp();
    if u >= T::one() {
        Ok(baseline.inverse_cdf((T::one() + u).recip(), &params.psi))
    } else {
        Ok(baseline.inverse_survival(u / (T::one() + u), &params.psi))
    }
}

/// Inverse-transform sampling from a deterministic seeded stream. Identical
/// (params, n, seed) produce bit-identical output.
pub fn sample<T: Real>(
    params: &Params<T>,
    baseline: &(impl Baseline<T> + ?Sized),
    n: usize,
    seed: u64,
) -> Result<Vec<T>> {
    validate(params, baseline)?;
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let p = T::of(rng.next_open01());
        out.push(quantile(params, baseline, p)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::{Exponential, Pareto, Uniform};
    use approx::assert_relative_eq;

    fn exp_params(alpha: f64, beta: f64, gamma: f64) -> Params<f64> {
        Params::new(alpha, beta, vec![gamma]).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Params::new(0.0, 1.0, vec![1.0]).is_err());
        assert!(Params::new(1.0, -2.0, vec![1.0]).is_err());
        assert!(Params::new(f64::NAN, 1.0, vec![1.0]).is_err());
        let p = Params::new(1.0, 1.0, vec![-1.0]).unwrap();
        assert!(cdf(&p, &Exponential, 1.0).is_err());
    }

    #[test]
    fn cdf_at_baseline_median_is_exp_neg_alpha() {
        // H = 1/2 ⇒ odds ratio 1 ⇒ F = e^{−α}
        let p = exp_params(1.0, 1.0, 1.0);
        let x = std::f64::consts::LN_2;
        assert_relative_eq!(cdf(&p, &Exponential, x).unwrap(), (-1.0f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn cdf_matches_high_precision_reference() {
        // Reference values computed with 50-digit arithmetic.
        let p = exp_params(2.5, 0.8, 1.3);
        assert_relative_eq!(
            cdf(&p, &Exponential, 1.0).unwrap(),
            0.3198881294265956592867,
            max_relative = 1e-13
        );

        let pu = Params::new(0.7, 1.5, vec![2.0]).unwrap();
        assert_relative_eq!(
            cdf(&pu, &Uniform, 0.8).unwrap(),
            0.2763790143327368245186,
            max_relative = 1e-13
        );

        let pp = Params::new(1.2, 0.6, vec![1.5, 2.0]).unwrap();
        assert_relative_eq!(
            cdf(&pp, &Pareto, 3.0).unwrap(),
            0.53754745765509268936,
            max_relative = 1e-13
        );
    }

    #[test]
    fn cdf_boundaries() {
        let p = exp_params(2.5, 0.8, 1.3);
        assert_eq!(cdf(&p, &Exponential, 0.0).unwrap(), 0.0);
        assert_eq!(cdf(&p, &Exponential, f64::INFINITY).unwrap(), 1.0);
        assert!(cdf(&p, &Exponential, -0.1).is_err());

        let pu = Params::new(0.7, 1.5, vec![2.0]).unwrap();
        assert_eq!(cdf(&pu, &Uniform, 2.0).unwrap(), 1.0);
        assert!(cdf(&pu, &Uniform, 2.0001).is_err());
    }

    #[test]
    fn log_pdf_closed_form_point() {
        // α = β = γ = 1, x = ln 2: pdf = 2/e, logpdf = ln 2 − 1
        let p = exp_params(1.0, 1.0, 1.0);
        let x = std::f64::consts::LN_2;
        assert_relative_eq!(
            log_pdf(&p, &Exponential, x).unwrap(),
            std::f64::consts::LN_2 - 1.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn log_pdf_matches_high_precision_reference() {
        let p = exp_params(2.5, 0.8, 1.3);
        assert_relative_eq!(
            log_pdf(&p, &Exponential, 1.0).unwrap(),
            -0.6515395260440550251677,
            max_relative = 1e-13
        );
        let pu = Params::new(0.7, 1.5, vec![2.0]).unwrap();
        assert_relative_eq!(
            log_pdf(&pu, &Uniform, 0.8).unwrap(),
            0.1049748864507105134506,
            max_relative = 1e-13
        );
        let pp = Params::new(1.2, 0.6, vec![1.5, 2.0]).unwrap();
        assert_relative_eq!(
            log_pdf(&pp, &Pareto, 3.0).unwrap(),
            -1.726192705395429196079,
            max_relative = 1e-13
        );
    }

    #[test]
    fn log_pdf_boundary_sentinel() {
        let p = exp_params(2.5, 0.8, 1.3);
        assert_eq!(log_pdf(&p, &Exponential, 0.0).unwrap(), f64::NEG_INFINITY);
        let pu = Params::new(1.0, 1.0, vec![2.0]).unwrap();
        assert_eq!(log_pdf(&pu, &Uniform, 0.0).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn hazard_closed_form_point() {
        let p = exp_params(1.0, 1.0, 1.0);
        let x = std::f64::consts::LN_2;
        assert_relative_eq!(
            hazard(&p, &Exponential, x).unwrap(),
            1.16395341373865284877,
            max_relative = 1e-13
        );
    }

    #[test]
    fn hazard_survival_identity_on_grid() {
        let p = exp_params(2.5, 0.8, 1.3);
        for i in 1..=100 {
            let x = i as f64 * 0.06;
            let f = pdf(&p, &Exponential, x).unwrap();
            let s = 1.0 - cdf(&p, &Exponential, x).unwrap();
            let h = hazard(&p, &Exponential, x).unwrap();
            assert_relative_eq!(h * s, f, max_relative = 1e-10);
        }
    }

    #[test]
    fn reverse_hazard_identities() {
        let p = exp_params(1.0, 1.0, 1.0);
        let x = std::f64::consts::LN_2;
        assert_relative_eq!(reverse_hazard(&p, &Exponential, x).unwrap(), 2.0, max_relative = 1e-13);

        // τ = f/F on a grid
        let p = exp_params(2.5, 0.8, 1.3);
        for i in 1..=100 {
            let x = i as f64 * 0.05;
            let tau = reverse_hazard(&p, &Exponential, x).unwrap();
            let ratio = pdf(&p, &Exponential, x).unwrap() / cdf(&p, &Exponential, x).unwrap();
            assert_relative_eq!(tau, ratio, max_relative = 1e-10);
        }

        // τ is linear in α at fixed x
        let p2 = exp_params(5.0, 0.8, 1.3);
        let tau1 = reverse_hazard(&p, &Exponential, 0.9).unwrap();
        let tau2 = reverse_hazard(&p2, &Exponential, 0.9).unwrap();
        assert_relative_eq!(tau2, 2.0 * tau1, max_relative = 1e-12);
    }

    #[test]
    fn quantile_special_points() {
        // p = e^{−α} puts the quantile at the baseline median ln 2 / γ.
        let p = exp_params(2.5, 0.8, 1.3);
        let x = quantile(&p, &Exponential, (-2.5f64).exp()).unwrap();
        assert_relative_eq!(x, std::f64::consts::LN_2 / 1.3, max_relative = 1e-12);

        assert_eq!(quantile(&p, &Exponential, 0.0).unwrap(), 0.0);
        assert_eq!(quantile(&p, &Exponential, 1.0).unwrap(), f64::INFINITY);
        assert!(quantile(&p, &Exponential, -0.1).is_err());
        assert!(quantile(&p, &Exponential, 1.1).is_err());

        assert_relative_eq!(
            quantile(&p, &Exponential, 0.37).unwrap(),
            1.097717090362089588168,
            max_relative = 1e-13
        );
    }

    #[test]
    fn quantile_cdf_round_trip() {
        let cases: Vec<(Params<f64>, Box<dyn Baseline<f64>>)> = vec![
            (exp_params(2.5, 0.8, 1.3), Box::new(Exponential)),
            (Params::new(0.5, 2.0, vec![1.0]).unwrap(), Box::new(Uniform)),
            (Params::new(1.2, 0.6, vec![1.5, 2.0]).unwrap(), Box::new(Pareto)),
        ];
        for (p, b) in &cases {
            let mut worst: f64 = 0.0;
            for i in 0..1000 {
                let frac = (i as f64 + 0.5) / 1000.0;
                let prob = 1e-8 + (1.0 - 2e-8) * frac;
                let x = quantile(p, b.as_ref(), prob).unwrap();
                let back = cdf(p, b.as_ref(), x).unwrap();
                worst = worst.max((back - prob).abs());
            }
            assert!(worst < 1e-10, "round trip error {worst} for {}", b.name());
        }
    }

    #[test]
    fn sampler_is_deterministic() {
        let p = exp_params(2.5, 0.8, 1.3);
        let a = sample(&p, &Exponential, 64, 99).unwrap();
        let b = sample(&p, &Exponential, 64, 99).unwrap();
        assert_eq!(a, b);
        let c = sample(&p, &Exponential, 64, 100).unwrap();
        assert_ne!(a, c);
        assert!(a.iter().all(|v| v.is_finite() && *v > 0.0));
    }
}
