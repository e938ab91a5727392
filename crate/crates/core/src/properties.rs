//! Distributional properties computed numerically: raw, incomplete and
//! conditional moments, generating functions, Rényi entropy, order
//! statistics and the likelihood-ratio ordering check.
//!
//! Integrals over the support are taken in the quantile domain,
//! ∫ g(x) f(x) dx = ∫₀¹ g(Q(u)) du, which maps every baseline onto (0, 1)
//! and lets the adaptive integrator concentrate effort near the tails.

use crate::baseline::Baseline;
use crate::error::{Error, Result};
use crate::family::{self, LogOdds, Params, SupportPosition};
use crate::quadrature::{integrate, QuadratureConfig};
use crate::real::ln_one_minus_exp_neg;
use crate::special::ln_gamma;

/// log(1 − F(x)) through the complementary form.
fn log_survival(params: &Params<f64>, baseline: &dyn Baseline<f64>, x: f64) -> f64 {
    ln_one_minus_exp_neg(LogOdds::new(baseline, params, x).a)
}

fn quantile_of<'a>(params: &'a Params<f64>, baseline: &'a dyn Baseline<f64>) -> impl Fn(f64) -> f64 + 'a {
    // Deep adaptive bisection can round quadrature nodes onto the exact
    // endpoints, where Q jumps to the support bound; clamp to the nearest
    // interior doubles instead.
    let top = 1.0 - f64::EPSILON / 2.0;
    move |u: f64| {
        family::quantile(params, baseline, u.clamp(f64::MIN_POSITIVE, top)).expect("interior probability")
    }
}

/// Estimated polynomial tail exponent: the log-log slope of the survival
/// function over the far upper tail. Superpolynomial (e.g. exponential)
/// tails report large values.
pub fn tail_exponent(params: &Params<f64>, baseline: &dyn Baseline<f64>) -> Result<f64> {
    let x1 = family::quantile(params, baseline, 1.0 - 1e-4)?;
    let x2 = family::quantile(params, baseline, 1.0 - 1e-6)?;
    let ls1 = log_survival(params, baseline, x1);
    let ls2 = log_survival(params, baseline, x2);
    Ok((ls1 - ls2) / (x2.ln() - x1.ln()))
}

fn ensure_moment_exists(params: &Params<f64>, baseline: &dyn Baseline<f64>, r: u32) -> Result<()> {
    if r == 0 {
        return Ok(());
    }
    let (_, upper) = baseline.support(params.psi());
    if upper.is_finite() {
        return Ok(());
    }
    let tail = tail_exponent(params, baseline)?;
    if tail <= r as f64 + 0.5 {
        return Err(Error::MomentDoesNotExist { order: r, tail });
    }
    Ok(())
}

/// E[Y^r] by quantile-domain quadrature, guarded against heavy tails for
/// which the moment does not exist.
pub fn moment_raw(
    params: &Params<f64>,
    baseline: &dyn Baseline<f64>,
    r: u32,
    quad: &QuadratureConfig,
) -> Result<f64> {
    ensure_moment_exists(params, baseline, r)?;
    let q = quantile_of(params, baseline);
    integrate(|u| q(u).powi(r as i32), 0.0, 1.0, quad)
}

/// Mean, variance and the standardized third and fourth moments.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct MomentSummary {
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub kurtosis: f64,
}

pub fn moment_summary(
    params: &Params<f64>,
    baseline: &dyn Baseline<f64>,
    quad: &QuadratureConfig,
) -> Result<MomentSummary> {
    let m: Vec<f64> = (1..=4)
        .map(|r| moment_raw(params, baseline, r, quad))
        .collect::<Result<_>>()?;
    let mean = m[0];
    let variance = m[1] - mean * mean;
    let sd = variance.sqrt();
    let mu3 = m[2] - 3.0 * mean * m[1] + 2.0 * mean.powi(3);
    let mu4 = m[3] - 4.0 * mean * m[2] + 6.0 * mean * mean * m[1] - 3.0 * mean.powi(4);
    Ok(MomentSummary {
        mean,
        variance,
        skewness: mu3 / sd.powi(3),
        kurtosis: mu4 / (variance * variance),
    })
}

/// Incomplete moment ∫_{lower}^{z} y^s f(y) dy.
pub fn incomplete_moment(
    params: &Params<f64>,
    baseline: &dyn Baseline<f64>,
    s: u32,
    z: f64,
    quad: &QuadratureConfig,
) -> Result<f64> {
    let position = family::locate(baseline, params.psi(), z)?;
    let upper_prob = match position {
        SupportPosition::Lower => return Ok(0.0),
        SupportPosition::Upper => {
            ensure_moment_exists(params, baseline, s)?;
            1.0
        }
        SupportPosition::Interior => family::cdf(params, baseline, z)?,
    };
    let q = quantile_of(params, baseline);
    integrate(|u| q(u).powi(s as i32), 0.0, upper_prob, quad)
}

/// Conditional moment E[Y^r | Y ≥ a].
pub fn conditional_moment(
    params: &Params<f64>,
    baseline: &dyn Baseline<f64>,
    r: u32,
    a: f64,
    quad: &QuadratureConfig,
) -> Result<f64> {
    let total = moment_raw(params, baseline, r, quad)?;
    let below = incomplete_moment(params, baseline, r, a, quad)?;
    let survival = -(-LogOdds::new(baseline, params, a).a).exp_m1();
    if survival < 1e-300 {
        return Err(Error::IntegralDiverged(
            "conditional moment undefined: survival underflows at the threshold".into(),
        ));
    }
    Ok((total - below) / survival)
}

/// True when the upper tail decays polynomially: the log-log survival
/// slope is flat across probe depths (an exponential-type tail steepens).
fn tail_is_polynomial(params: &Params<f64>, baseline: &dyn Baseline<f64>) -> Result<bool> {
    let probe = |p_lo: f64, p_hi: f64| -> Result<f64> {
        let x1 = family::quantile(params, baseline, p_lo)?;
        let x2 = family::quantile(params, baseline, p_hi)?;
        Ok((log_survival(params, baseline, x1) - log_survival(params, baseline, x2)) / (x2.ln() - x1.ln()))
    };
    let shallow = probe(1.0 - 1e-4, 1.0 - 1e-6)?;
    let deep = probe(1.0 - 1e-6, 1.0 - 1e-9)?;
    Ok(deep < shallow * 1.05)
}

/// Moment generating function E[e^{tY}]. For positive `t` the upper tail is
/// probed first: a polynomial tail (e.g. any Pareto baseline) diverges for
/// every t > 0, and an exponential-type tail diverges once t reaches its
/// decay rate.
pub fn mgf(params: &Params<f64>, baseline: &dyn Baseline<f64>, t: f64, quad: &QuadratureConfig) -> Result<f64> {
    let (_, upper) = baseline.support(params.psi());
    if t > 0.0 && upper.is_infinite() {
        if tail_is_polynomial(params, baseline)? {
            return Err(Error::IntegralDiverged(format!(
                "polynomial upper tail: E[e^(tY)] diverges for every t > 0 (t = {t})"
            )));
        }
        let y1 = family::quantile(params, baseline, 1.0 - 1e-6)?;
        let y2 = family::quantile(params, baseline, 1.0 - 1e-9)?;
        if t * y2 + family::log_pdf(params, baseline, y2)? >= t * y1 + family::log_pdf(params, baseline, y1)? {
            return Err(Error::IntegralDiverged(format!(
                "e^(ty) f(y) is not decaying in the upper tail at t = {t}"
            )));
        }
    }
    let q = quantile_of(params, baseline);
    integrate(|u| (t * q(u)).exp(), 0.0, 1.0, quad)
}

/// Characteristic function E[e^{itY}] as (re, im).
pub fn char_fn(
    params: &Params<f64>,
    baseline: &dyn Baseline<f64>,
    t: f64,
    quad: &QuadratureConfig,
) -> Result<(f64, f64)> {
    let q = quantile_of(params, baseline);
    let re = integrate(|u| (t * q(u)).cos(), 0.0, 1.0, quad)?;
    let q = quantile_of(params, baseline);
    let im = integrate(|u| (t * q(u)).sin(), 0.0, 1.0, quad)?;
    Ok((re, im))
}

/// Rényi entropy (1−ω)^{−1} log ∫ f^ω for ω > 0, ω ≠ 1, by direct
/// quadrature of f^{ω−1} in the quantile domain.
pub fn renyi_entropy(
    params: &Params<f64>,
    baseline: &dyn Baseline<f64>,
    omega: f64,
    quad: &QuadratureConfig,
) -> Result<f64> {
    if !(omega > 0.0) || omega == 1.0 {
        return Err(Error::InvalidParameter {
            name: "omega",
            value: omega,
            reason: "Rényi order must be positive and different from 1",
        });
    }
    let q = quantile_of(params, baseline);
    let integral = integrate(
        |u| ((omega - 1.0) * family::log_pdf(params, baseline, q(u)).expect("interior point")).exp(),
        0.0,
        1.0,
        quad,
    )?;
    Ok(integral.ln() / (1.0 - omega))
}

/// Shannon entropy −∫ f log f by quantile-domain quadrature.
pub fn shannon_entropy(
    params: &Params<f64>,
    baseline: &dyn Baseline<f64>,
    quad: &QuadratureConfig,
) -> Result<f64> {
    let q = quantile_of(params, baseline);
    integrate(
        |u| -family::log_pdf(params, baseline, q(u)).expect("interior point"),
        0.0,
        1.0,
        quad,
    )
}

fn check_order_indices(i: usize, n: usize) -> Result<()> {
    if i == 0 || n == 0 || i > n {
        return Err(Error::OrderIndex { i, n });
    }
    Ok(())
}

/// Density of the i-th order statistic of an n-sample, computed in log
/// space from the direct product formula.
pub fn order_statistic_pdf(
    params: &Params<f64>,
    baseline: &dyn Baseline<f64>,
    i: usize,
    n: usize,
    x: f64,
) -> Result<f64> {
    check_order_indices(i, n)?;
    let lp = family::log_pdf(params, baseline, x)?;
    if lp == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    let a = LogOdds::new(baseline, params, x).a;
    let log_f = -a;
    let log_sf = ln_one_minus_exp_neg(a);
    let ln_coeff = ln_gamma((n + 1) as f64) - ln_gamma(i as f64) - ln_gamma((n - i + 1) as f64);
    let mut log_value = ln_coeff + lp;
    if i > 1 {
        log_value += (i - 1) as f64 * log_f;
    }
    if n > i {
        log_value += (n - i) as f64 * log_sf;
    }
    Ok(log_value.exp())
}

/// The same density as a linear combination of family densities at scaled
/// α: n!/((i−1)!(n−i)!) Σ_m C(n−i, m) (−1)^m/(i+m) f(x; (i+m)α, β).
pub fn order_statistic_pdf_combination(
    params: &Params<f64>,
    baseline: &dyn Baseline<f64>,
    i: usize,
    n: usize,
    x: f64,
) -> Result<f64> {
    check_order_indices(i, n)?;
    let coeff = (ln_gamma((n + 1) as f64) - ln_gamma(i as f64) - ln_gamma((n - i + 1) as f64)).exp();
    let mut sum = 0.0;
    let mut binom = 1.0; // C(n−i, m), updated multiplicatively
    for m in 0..=(n - i) {
        let scaled = Params::new((i + m) as f64 * params.alpha(), params.beta(), params.psi().to_vec())?;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom / (i + m) as f64 * family::pdf(&scaled, baseline, x)?;
        binom *= (n - i - m) as f64 / (m + 1) as f64;
    }
    Ok(coeff * sum)
}

/// Likelihood-ratio ordering check: true when f_{α1}/f_{α2} is strictly
/// decreasing over the grid (α1 < α2 implies lr, hazard-rate and the usual
/// stochastic order). Degenerate equal-α inputs return false.
pub fn lr_ordering_check(
    alpha1: f64,
    alpha2: f64,
    beta: f64,
    psi: &[f64],
    baseline: &dyn Baseline<f64>,
    grid: &[f64],
) -> Result<bool> {
    let p1 = Params::new(alpha1, beta, psi.to_vec())?;
    if !(alpha2 > 0.0) || !alpha2.is_finite() {
        return Err(Error::InvalidParameter {
            name: "alpha2",
            value: alpha2,
            reason: "must be a finite positive real",
        });
    }
    let mut last = f64::INFINITY;
    for &x in grid {
        family::locate(baseline, psi, x)?;
        // ln(f1/f2) = ln(α1/α2) + (α2 − α1) [H/H̄]^{−β}; A/α = [H/H̄]^{−β}.
        let t = LogOdds::new(baseline, &p1, x).a / alpha1;
        let log_ratio = (alpha1 / alpha2).ln() + (alpha2 - alpha1) * t;
        if !(log_ratio < last) {
            return Ok(false);
        }
        last = log_ratio;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::{Exponential, Pareto, Uniform};
    use crate::rng::SplitMix64;
    use approx::assert_relative_eq;

    fn quad() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn t2gwe_params() -> Params<f64> {
        Params::new(2.5, 0.8, vec![1.3]).unwrap()
    }

    fn monte_carlo_mean<F: Fn(f64) -> f64>(params: &Params<f64>, baseline: &dyn Baseline<f64>, n: usize, seed: u64, f: F) -> (f64, f64) {
        let mut rng = SplitMix64::new(seed);
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..n {
            let x = family::quantile(params, baseline, rng.next_open01()).unwrap();
            let v = f(x);
            sum += v;
            sumsq += v * v;
        }
        let mean = sum / n as f64;
        let var = (sumsq / n as f64 - mean * mean).max(0.0);
        (mean, (var / n as f64).sqrt())
    }

    #[test]
    fn normalization_probe() {
        for (params, baseline) in [
            (t2gwe_params(), &Exponential as &dyn Baseline<f64>),
            (Params::new(1.0, 1.0, vec![1.0]).unwrap(), &Uniform as &dyn Baseline<f64>),
        ] {
            let v = moment_raw(&params, baseline, 0, &quad()).unwrap();
            assert_relative_eq!(v, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn mean_matches_monte_carlo() {
        let params = t2gwe_params();
        let m1 = moment_raw(&params, &Exponential, 1, &quad()).unwrap();
        // Independent high-precision reference for this parameter point.
        assert_relative_eq!(m1, 1.6418714969845516, max_relative = 1e-8);
        let (mc, se) = monte_carlo_mean(&params, &Exponential, 1_000_000, 77, |x| x);
        assert!((m1 - mc).abs() < 3.0 * se, "quad {m1} vs mc {mc} ± {se}");
    }

    #[test]
    fn second_moment_and_variance() {
        let params = t2gwe_params();
        let m2 = moment_raw(&params, &Exponential, 2, &quad()).unwrap();
        assert_relative_eq!(m2, 3.85451651642324953, max_relative = 1e-8);
        let s = moment_summary(&params, &Exponential, &quad()).unwrap();
        assert_relative_eq!(s.variance, 1.1587745038129571, max_relative = 1e-7);
    }

    #[test]
    fn uniform_baseline_mean_matches_monte_carlo() {
        let params = Params::new(1.0, 1.0, vec![1.0]).unwrap();
        let m1 = moment_raw(&params, &Uniform, 1, &quad()).unwrap();
        assert_relative_eq!(m1, 0.596347362323194074, max_relative = 1e-8);
        let (mc, se) = monte_carlo_mean(&params, &Uniform, 10_000_000, 3, |x| x);
        assert!((m1 - mc).abs() < 3.0 * se);
    }

    #[test]
    fn pareto_heavy_tail_moment_guard() {
        // Tail exponent is kβ = 1.2, so the mean barely fails the guard and
        // the second moment certainly does not exist.
        let params = Params::new(1.0, 0.6, vec![1.0, 2.0]).unwrap();
        let tail = tail_exponent(&params, &Pareto).unwrap();
        assert_relative_eq!(tail, 1.2, max_relative = 0.05);
        assert!(matches!(
            moment_raw(&params, &Pareto, 2, &quad()),
            Err(Error::MomentDoesNotExist { .. })
        ));
        // With kβ = 6 the first two moments exist.
        let params = Params::new(1.0, 3.0, vec![1.0, 2.0]).unwrap();
        assert!(moment_raw(&params, &Pareto, 2, &quad()).is_ok());
    }

    #[test]
    fn incomplete_moment_limits_and_monotonicity() {
        let params = t2gwe_params();
        assert_eq!(incomplete_moment(&params, &Exponential, 1, 0.0, &quad()).unwrap(), 0.0);
        let full = incomplete_moment(&params, &Exponential, 1, f64::INFINITY, &quad()).unwrap();
        let m1 = moment_raw(&params, &Exponential, 1, &quad()).unwrap();
        assert_relative_eq!(full, m1, epsilon = 1e-8);

        let mut last = 0.0;
        for i in 1..=20 {
            let z = i as f64 * 0.4;
            let v = incomplete_moment(&params, &Exponential, 1, z, &quad()).unwrap();
            assert!(v >= last - 1e-12);
            last = v;
        }

        // Against Monte Carlo truncated mean at the median.
        let median = family::quantile(&params, &Exponential, 0.5).unwrap();
        let v = incomplete_moment(&params, &Exponential, 1, median, &quad()).unwrap();
        let (mc, se) = monte_carlo_mean(&params, &Exponential, 1_000_000, 5, |x| if x <= median { x } else { 0.0 });
        assert!((v - mc).abs() < 3.0 * se);
    }

    #[test]
    fn conditional_moment_limits_and_bound() {
        let params = t2gwe_params();
        let m1 = moment_raw(&params, &Exponential, 1, &quad()).unwrap();
        let at_lower = conditional_moment(&params, &Exponential, 1, 0.0, &quad()).unwrap();
        assert_relative_eq!(at_lower, m1, epsilon = 1e-8);

        let median = family::quantile(&params, &Exponential, 0.5).unwrap();
        let v = conditional_moment(&params, &Exponential, 1, median, &quad()).unwrap();
        let (mc_num, se_num) =
            monte_carlo_mean(&params, &Exponential, 1_000_000, 6, |x| if x >= median { x } else { 0.0 });
        // Survival at the median is exactly 1/2.
        let mc = 2.0 * mc_num;
        assert!((v - mc).abs() < 3.0 * 2.0 * se_num, "{v} vs {mc}");

        // E[Y^r | Y ≥ a] ≥ a^r
        for &a in &[0.2, 0.8, 1.9, 3.0] {
            for r in [1u32, 2, 3] {
                let c = conditional_moment(&params, &Exponential, r, a, &quad()).unwrap();
                assert!(c >= a.powi(r as i32));
            }
        }
    }

    #[test]
    fn mgf_and_char_fn() {
        let params = t2gwe_params();
        assert_relative_eq!(mgf(&params, &Exponential, 0.0, &quad()).unwrap(), 1.0, epsilon = 1e-10);
        let (re, im) = char_fn(&params, &Exponential, 0.0, &quad()).unwrap();
        assert_relative_eq!(re, 1.0, epsilon = 1e-10);
        assert!(im.abs() < 1e-10);

        // d/dt MGF at 0 approximates the mean.
        let h = 1e-4;
        let up = mgf(&params, &Exponential, h, &quad()).unwrap();
        let dn = mgf(&params, &Exponential, -h, &quad()).unwrap();
        let m1 = moment_raw(&params, &Exponential, 1, &quad()).unwrap();
        assert_relative_eq!((up - dn) / (2.0 * h), m1, max_relative = 1e-4);

        // |φ(t)| ≤ 1 on a grid.
        for i in 1..=10 {
            let t = i as f64 * 0.7;
            let (re, im) = char_fn(&params, &Exponential, t, &quad()).unwrap();
            assert!((re * re + im * im).sqrt() <= 1.0 + 1e-9);
        }

        // Divergence: Pareto baseline rejects any t > 0.
        let pareto = Params::new(1.0, 3.0, vec![1.0, 2.0]).unwrap();
        assert!(mgf(&pareto, &Pareto, 0.1, &quad()).is_err());
        // Exponential baseline rejects t beyond the tail rate γβ.
        assert!(mgf(&params, &Exponential, 5.0, &quad()).is_err());
    }

    #[test]
    fn renyi_entropy_properties() {
        let params = t2gwe_params();
        // Two-sided ω → 1 limit brackets the Shannon value.
        let shannon = shannon_entropy(&params, &Exponential, &quad()).unwrap();
        assert_relative_eq!(shannon, 1.27044500163794439, max_relative = 1e-7);
        let lo = renyi_entropy(&params, &Exponential, 0.999, &quad()).unwrap();
        let hi = renyi_entropy(&params, &Exponential, 1.001, &quad()).unwrap();
        assert!((0.5 * (lo + hi) - shannon).abs() < 1e-3, "{lo} {hi} vs {shannon}");

        // Nonincreasing in ω.
        let omegas = [0.5, 0.8, 1.2, 2.0, 5.0];
        let values: Vec<f64> = omegas
            .iter()
            .map(|&w| renyi_entropy(&params, &Exponential, w, &quad()).unwrap())
            .collect();
        for pair in values.windows(2) {
            assert!(pair[1] <= pair[0] + 1e-9);
        }

        // Definitional consistency on the bounded-support case.
        let pu = Params::new(1.0, 1.0, vec![1.0]).unwrap();
        let r2 = renyi_entropy(&pu, &Uniform, 2.0, &quad()).unwrap();
        let qf = quantile_of(&pu, &Uniform);
        let f2 = integrate(
            |u| family::log_pdf(&pu, &Uniform, qf(u)).unwrap().exp(),
            0.0,
            1.0,
            &quad(),
        )
        .unwrap();
        assert_relative_eq!(r2, -f2.ln(), epsilon = 1e-8);
        assert_eq!(r2 <= 0.0, f2 >= 1.0);

        assert!(renyi_entropy(&params, &Exponential, 1.0, &quad()).is_err());
        assert!(renyi_entropy(&params, &Exponential, -0.5, &quad()).is_err());
    }

    #[test]
    fn order_statistics_two_routes_agree() {
        let params = t2gwe_params();
        for (i, n) in [(1usize, 5usize), (3, 5), (5, 5)] {
            for j in 1..=20 {
                let x = j as f64 * 0.25;
                let direct = order_statistic_pdf(&params, &Exponential, i, n, x).unwrap();
                let combo = order_statistic_pdf_combination(&params, &Exponential, i, n, x).unwrap();
                assert_relative_eq!(direct, combo, max_relative = 1e-10, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn order_statistic_reduces_to_pdf_and_normalizes() {
        let params = t2gwe_params();
        let x = 0.9;
        assert_relative_eq!(
            order_statistic_pdf(&params, &Exponential, 1, 1, x).unwrap(),
            family::pdf(&params, &Exponential, x).unwrap(),
            max_relative = 1e-12
        );

        let mass = crate::quadrature::integrate_semi_infinite(
            |x| order_statistic_pdf(&params, &Exponential, 2, 4, x).unwrap(),
            0.0,
            &quad(),
        )
        .unwrap();
        assert_relative_eq!(mass, 1.0, epsilon = 1e-7);

        assert!(order_statistic_pdf(&params, &Exponential, 0, 4, x).is_err());
        assert!(order_statistic_pdf(&params, &Exponential, 5, 4, x).is_err());
    }

    #[test]
    fn lr_ordering_and_cdf_domination() {
        let grid: Vec<f64> = (1..=1000).map(|i| i as f64 * 0.01).collect();
        assert!(lr_ordering_check(1.0, 2.0, 1.0, &[1.0], &Exponential, &grid).unwrap());
        // Degenerate equal-α case: the ratio is constant.
        assert!(!lr_ordering_check(1.5, 1.5, 1.0, &[1.0], &Exponential, &grid).unwrap());

        // Larger α gives pointwise smaller cdf.
        let p1 = Params::new(1.0, 1.0, vec![1.0]).unwrap();
        let p2 = Params::new(2.0, 1.0, vec![1.0]).unwrap();
        for &x in grid.iter().step_by(25) {
            let f1 = family::cdf(&p1, &Exponential, x).unwrap();
            let f2 = family::cdf(&p2, &Exponential, x).unwrap();
            assert!(f2 <= f1 + 1e-15);
        }
    }
}
