//! The six estimation objectives and their analytic gradients.
//!
//! Every objective is a minimization target over (α, β, ψ). Infeasible
//! points (parameter outside its domain, datum outside the support, zero
//! spacing that is not an exact tie) return the +∞ sentinel rather than an
//! error, so optimizers can treat them as rejected steps; none of them ever
//! returns NaN.

use serde::{Deserialize, Serialize};

use crate::baseline::Baseline;
use crate::dataset::Dataset;
use crate::family::{LogOdds, Params};
use crate::real::ln_one_minus_exp_neg;

/// Estimation method selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mle,
    Ls,
    Wls,
    Mps,
    Cvm,
    Ad,
}

impl Method {
    pub const ALL: [Method; 6] = [Method::Mle, Method::Ls, Method::Wls, Method::Mps, Method::Cvm, Method::Ad];

    pub fn name(self) -> &'static str {
        match self {
            Method::Mle => "mle",
            Method::Ls => "ls",
            Method::Wls => "wls",
            Method::Mps => "mps",
            Method::Cvm => "cvm",
            Method::Ad => "ad",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        match s.to_ascii_lowercase().as_str() {
            "mle" => Some(Method::Mle),
            "ls" => Some(Method::Ls),
            "wls" => Some(Method::Wls),
            "mps" => Some(Method::Mps),
            "cvm" => Some(Method::Cvm),
            "ad" => Some(Method::Ad),
            _ => None,
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-datum log-space quantities at the sorted observations.
struct PointCache {
    /// ln H(x_i)
    log_cdf: Vec<f64>,
    /// ln H̄(x_i)
    log_surv: Vec<f64>,
    /// ln H − ln H̄
    log_odds: Vec<f64>,
    /// t_i = [H/H̄]^{−β}
    t: Vec<f64>,
    /// A_i = α t_i
    a: Vec<f64>,
}

impl PointCache {
    /// None when parameters are infeasible or a datum leaves the closed
    /// support.
    fn build(params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset) -> Option<Self> {
        if baseline.validate_psi(params.psi()).is_err() {
            return None;
        }
        let (lower, upper) = baseline.support(params.psi());
        let n = data.n();
        let mut cache = PointCache {
            log_cdf: Vec::with_capacity(n),
            log_surv: Vec::with_capacity(n),
            log_odds: Vec::with_capacity(n),
            t: Vec::with_capacity(n),
            a: Vec::with_capacity(n),
        };
        let ln_alpha = params.alpha().ln();
        let beta = params.beta();
        for &x in data.sorted() {
            if x < lower || x > upper {
                return None;
            }
            let lo = LogOdds::new(baseline, params, x);
            let t = if lo.log_odds == f64::NEG_INFINITY {
                f64::INFINITY
            } else {
                (-beta * lo.log_odds).exp()
            };
            let a = if t == f64::INFINITY {
                f64::INFINITY
            } else {
                (ln_alpha - beta * lo.log_odds).exp()
            };
            cache.log_cdf.push(lo.log_cdf);
            cache.log_surv.push(lo.log_survival);
            cache.log_odds.push(lo.log_odds);
            cache.t.push(t);
            cache.a.push(a);
        }
        Some(cache)
    }

    fn n(&self) -> usize {
        self.a.len()
    }

    /// F(x_i) = exp(−A_i)
    fn cdf(&self, i: usize) -> f64 {
        (-self.a[i]).exp()
    }
}

/// Gradient building blocks evaluated once per call.
struct GradCache {
    /// ∂H/∂ψ_k at each sorted datum, one vector per k.
    cdf_partials: Vec<Vec<f64>>,
    /// ∂ ln h/∂ψ_k at each sorted datum.
    log_density_partials: Vec<Vec<f64>>,
    /// g_i = H^{−β−1} H̄^{β−1}
    g: Vec<f64>,
}

impl GradCache {
    fn build(params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset, points: &PointCache) -> Self {
        let beta = params.beta();
        let n = data.n();
        let g = (0..n)
            .map(|i| (-(beta + 1.0) * points.log_cdf[i] + (beta - 1.0) * points.log_surv[i]).exp())
            .collect();
        let mut cdf_partials = Vec::with_capacity(baseline.param_count());
        let mut log_density_partials = Vec::with_capacity(baseline.param_count());
        for k in 0..baseline.param_count() {
            cdf_partials.push(
                data.sorted()
                    .iter()
                    .map(|&x| baseline.cdf_partial(x, params.psi(), k))
                    .collect(),
            );
            log_density_partials.push(
                data.sorted()
                    .iter()
                    .map(|&x| baseline.log_density_partial(x, params.psi(), k))
                    .collect(),
            );
        }
        GradCache {
            cdf_partials,
            log_density_partials,
            g,
        }
    }

    /// ∂ ln F(x_i)/∂θ_j for the flat layout [α, β, ψ...]; ln F = −A.
    fn dlog_cdf(&self, params: &Params<f64>, points: &PointCache, i: usize, j: usize) -> f64 {
        let (alpha, beta) = (params.alpha(), params.beta());
        match j {
            0 => -points.t[i],
            1 => {
                if points.t[i] == 0.0 {
                    0.0
                } else {
                    alpha * points.t[i] * points.log_odds[i]
                }
            }
            _ => alpha * beta * self.g[i] * self.cdf_partials[j - 2][i],
        }
    }
}

fn dim(params: &Params<f64>) -> usize {
    2 + params.psi().len()
}

/// Neumaier compensated accumulator. The Anderson–Darling criterion cancels
/// two O(n) quantities down to O(1); a naive sum leaves noise large enough
/// to stall gradient-based refinement near the optimum.
#[derive(Default)]
struct Compensated {
    sum: f64,
    correction: f64,
}

impl Compensated {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.correction += (self.sum - t) + v;
        } else {
            self.correction += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.correction
    }
}

fn finite_or_inf(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// −ℓ(Δ): the negative log-likelihood.
pub fn neg_log_likelihood(params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset) -> f64 {
    let points = match PointCache::build(params, baseline, data) {
        Some(p) => p,
        None => return f64::INFINITY,
    };
    let (alpha, beta) = (params.alpha(), params.beta());
    let base = alpha.ln() + beta.ln();
    let mut nll = 0.0;
    for (i, &x) in data.sorted().iter().enumerate() {
        if points.a[i] == f64::INFINITY {
            return f64::INFINITY;
        }
        let lp = base + baseline.log_density(x, params.psi()) - (beta + 1.0) * points.log_cdf[i]
            + (beta - 1.0) * points.log_surv[i]
            - points.a[i];
        if lp == f64::NEG_INFINITY || lp.is_nan() {
            return f64::INFINITY;
        }
        nll -= lp;
    }
    finite_or_inf(nll)
}

/// Gradient of `neg_log_likelihood` over [α, β, ψ...].
pub fn mle_gradient(params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset) -> Vec<f64> {
    let points = PointCache::build(params, baseline, data).expect("gradient requested at infeasible point");
    let grads = GradCache::build(params, baseline, data, &points);
    let (alpha, beta) = (params.alpha(), params.beta());
    let n = data.n() as f64;

    let mut d_alpha = n / alpha;
    let mut d_beta = n / beta;
    for i in 0..points.n() {
        d_alpha -= points.t[i];
        d_beta += -points.log_cdf[i] + points.log_surv[i] + alpha * points.t[i] * points.log_odds[i];
    }

    let mut out = vec![-d_alpha, -d_beta];
    for k in 0..baseline.param_count() {
        let mut d_psi = 0.0;
        for i in 0..points.n() {
            let hp = grads.cdf_partials[k][i];
            d_psi += grads.log_density_partials[k][i]
                - (beta + 1.0) * hp * (-points.log_cdf[i]).exp()
                - (beta - 1.0) * hp * (-points.log_surv[i]).exp()
                + alpha * beta * grads.g[i] * hp;
        }
        out.push(-d_psi);
    }
    out
}

fn squared_distance_objective(
    params: &Params<f64>,
    baseline: &dyn Baseline<f64>,
    data: &Dataset,
    plot_pos: impl Fn(usize, f64) -> f64,
    weight: impl Fn(usize, f64) -> f64,
    constant: f64,
    scale: f64,
) -> f64 {
    let points = match PointCache::build(params, baseline, data) {
        Some(p) => p,
        None => return f64::INFINITY,
    };
    let n = data.n() as f64;
    let mut sum = 0.0;
    for i in 0..points.n() {
        let resid = points.cdf(i) - plot_pos(i, n);
        sum += weight(i, n) * resid * resid;
    }
    finite_or_inf(constant + scale * sum)
}

fn squared_distance_gradient(
    params: &Params<f64>,
    baseline: &dyn Baseline<f64>,
    data: &Dataset,
    plot_pos: impl Fn(usize, f64) -> f64,
    weight: impl Fn(usize, f64) -> f64,
    scale: f64,
) -> Vec<f64> {
    let points = PointCache::build(params, baseline, data).expect("gradient requested at infeasible point");
    let grads = GradCache::build(params, baseline, data, &points);
    let n = data.n() as f64;
    let mut out = vec![0.0; dim(params)];
    for i in 0..points.n() {
        let f = points.cdf(i);
        if f == 0.0 || f == 1.0 {
            // dF/dθ vanishes in both degenerate limits.
            continue;
        }
        let lead = 2.0 * scale * weight(i, n) * (f - plot_pos(i, n)) * f;
        for (j, slot) in out.iter_mut().enumerate() {
            *slot += lead * grads.dlog_cdf(params, &points, i, j);
        }
    }
    out
}

/// Least squares: Σ (F(x_(i)) − i/(n+1))².
pub fn ls_objective(params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset) -> f64 {
    squared_distance_objective(params, baseline, data, |i, n| (i + 1) as f64 / (n + 1.0), |_, _| 1.0, 0.0, 1.0)
}

pub fn ls_gradient(params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset) -> Vec<f64> {
    squared_distance_gradient(params, baseline, data, |i, n| (i + 1) as f64 / (n + 1.0), |_, _| 1.0, 1.0)
}

fn wls_weight(i: usize, n: f64) -> f64 {
    let rank = (i + 1) as f64;
    (n + 1.0) * (n + 1.0) * (n + 2.0) / (rank * (n - rank + 1.0))
}

/// Weighted least squares with w_i = (n+1)²(n+2)/(i(n−i+1)).
pub fn wls_objective(params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset) -> f64 {
    squared_distance_objective(params, baseline, data, |i, n| (i + 1) as f64 / (n + 1.0), wls_weight, 0.0, 1.0)
}

pub fn wls_gradient(params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset) -> Vec<f64> {
    squared_distance_gradient(params, baseline, data, |i, n| (i + 1) as f64 / (n + 1.0), wls_weight, 1.0)
}

/// Cramér–von Mises estimation objective,
/// 1/(12n²) + (1/n) Σ (F(x_(i)) − (2i−1)/(2n))².
///
/// The constant follows the estimation criterion as used here; the
/// goodness-of-fit statistic W* uses the classical 1/(12n) instead.
pub fn cvm_objective(params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset) -> f64 {
    let n = data.n() as f64;
    squared_distance_objective(
        params,
        baseline,
        data,
        |i, n| (2.0 * (i + 1) as f64 - 1.0) / (2.0 * n),
        |_, _| 1.0,
        1.0 / (12.0 * n * n),
        1.0 / n,
    )
}

pub fn cvm_gradient(params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset) -> Vec<f64> {
    let n = data.n() as f64;
    squared_distance_gradient(
        params,
        baseline,
        data,
        |i, n| (2.0 * (i + 1) as f64 - 1.0) / (2.0 * n),
        |_, _| 1.0,
        1.0 / n,
    )
}

/// Maximum product spacing objective: the negated mean log-spacing
/// −(1/(n+1)) Σ log D_i with D_1 = F(x_(1)), D_i = F(x_(i)) − F(x_(i−1)),
/// D_{n+1} = 1 − F(x_(n)).
///
/// Exact ties produce zero spacings; those spacings are replaced by the
/// density at the tied point. Any other nonpositive spacing is infeasible.
pub fn mps_objective(params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset) -> f64 {
    let points = match PointCache::build(params, baseline, data) {
        Some(p) => p,
        None => return f64::INFINITY,
    };
    let n = points.n();
    let sorted = data.sorted();
    let mut sum = -points.a[0]; // log D_1 = log F(x_(1)) = −A_1
    for i in 1..n {
        let log_d = if sorted[i] == sorted[i - 1] {
            log_density_at(params, baseline, &points, sorted, i)
        } else {
            let da = points.a[i - 1] - points.a[i];
            if da <= 0.0 {
                return f64::INFINITY;
            }
            -points.a[i] + ln_one_minus_exp_neg(da)
        };
        if log_d == f64::NEG_INFINITY || log_d.is_nan() {
            return f64::INFINITY;
        }
        sum += log_d;
    }
    let tail = ln_one_minus_exp_neg(points.a[n - 1]); // log(1 − F(x_(n)))
    if tail == f64::NEG_INFINITY {
        return f64::INFINITY;
    }
    sum += tail;
    finite_or_inf(-sum / (n as f64 + 1.0))
}

fn log_density_at(
    params: &Params<f64>,
    baseline: &dyn Baseline<f64>,
    points: &PointCache,
    sorted: &[f64],
    i: usize,
) -> f64 {
    params.alpha().ln() + params.beta().ln() + baseline.log_density(sorted[i], params.psi())
        - (params.beta() + 1.0) * points.log_cdf[i]
        + (params.beta() - 1.0) * points.log_surv[i]
        - points.a[i]
}

/// Gradient of `mps_objective`.
pub fn mps_gradient(params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset) -> Vec<f64> {
    let points = PointCache::build(params, baseline, data).expect("gradient requested at infeasible point");
    let grads = GradCache::build(params, baseline, data, &points);
    let (alpha, beta) = (params.alpha(), params.beta());
    let n = points.n();
    let sorted = data.sorted();
    let d = dim(params);
    let mut sum = vec![0.0; d];

    // ∂ log f(x_i)/∂θ_j, used for tied spacings.
    let dlog_pdf = |i: usize, j: usize| -> f64 {
        let hp = if j >= 2 { grads.cdf_partials[j - 2][i] } else { 0.0 };
        match j {
            0 => 1.0 / alpha - points.t[i],
            1 => 1.0 / beta - points.log_cdf[i] + points.log_surv[i] + alpha * points.t[i] * points.log_odds[i],
            _ => {
                grads.log_density_partials[j - 2][i]
                    - (beta + 1.0) * hp * (-points.log_cdf[i]).exp()
                    - (beta - 1.0) * hp * (-points.log_surv[i]).exp()
                    + alpha * beta * grads.g[i] * hp
            }
        }
    };

    // D_1 = F(x_(1))
    for (j, slot) in sum.iter_mut().enumerate() {
        *slot += grads.dlog_cdf(params, &points, 0, j);
    }
    // Interior spacings
    for i in 1..n {
        if sorted[i] == sorted[i - 1] {
            for (j, slot) in sum.iter_mut().enumerate() {
                *slot += dlog_pdf(i, j);
            }
        } else {
            let da = points.a[i - 1] - points.a[i];
            // F_i/D_i and F_{i−1}/D_i without forming the tiny quantities.
            let wi = 1.0 / (-(-da).exp_m1());
            let wim = 1.0 / da.exp_m1();
            for (j, slot) in sum.iter_mut().enumerate() {
                *slot += wi * grads.dlog_cdf(params, &points, i, j)
                    - wim * grads.dlog_cdf(params, &points, i - 1, j);
            }
        }
    }
    // D_{n+1} = 1 − F(x_(n)): ∂ log D = −∂ln F · F/(1−F) = −∂ln F / expm1(A)
    let w_tail = 1.0 / points.a[n - 1].exp_m1();
    for (j, slot) in sum.iter_mut().enumerate() {
        *slot -= w_tail * grads.dlog_cdf(params, &points, n - 1, j);
    }

    sum.iter().map(|s| -s / (n as f64 + 1.0)).collect()
}

/// Anderson–Darling estimation objective,
/// −n − (1/n) Σ (2i−1) [log F(x_(i)) + log(1 − F(x_(n+1−i)))].
pub fn ad_objective(params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset) -> f64 {
    let points = match PointCache::build(params, baseline, data) {
        Some(p) => p,
        None => return f64::INFINITY,
    };
    let n = points.n();
    let mut sum = Compensated::default();
    for i in 0..n {
        let j = n - 1 - i;
        if points.a[i] == f64::INFINITY || points.a[j] == 0.0 {
            return f64::INFINITY;
        }
        let log_f = -points.a[i];
        let log_sf = ln_one_minus_exp_neg(points.a[j]);
        if log_sf == f64::NEG_INFINITY {
            return f64::INFINITY;
        }
        sum.add((2.0 * (i + 1) as f64 - 1.0) * (log_f + log_sf));
    }
    finite_or_inf(-(n as f64) - sum.value() / n as f64)
}

/// Gradient of `ad_objective`.
pub fn ad_gradient(params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset) -> Vec<f64> {
    let points = PointCache::build(params, baseline, data).expect("gradient requested at infeasible point");
    let grads = GradCache::build(params, baseline, data, &points);
    let n = points.n();
    let d = dim(params);
    let mut out = vec![0.0; d];
    for i in 0..n {
        let j = n - 1 - i;
        let coeff = 2.0 * (i + 1) as f64 - 1.0;
        // F_j/(1−F_j) = 1/expm1(A_j)
        let odds_j = 1.0 / points.a[j].exp_m1();
        for (jj, slot) in out.iter_mut().enumerate() {
            let dln_f = grads.dlog_cdf(params, &points, i, jj);
            let dln_sf = -odds_j * grads.dlog_cdf(params, &points, j, jj);
            *slot -= coeff * (dln_f + dln_sf) / n as f64;
        }
    }
    out
}

/// Objective dispatcher.
pub fn objective(method: Method, params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset) -> f64 {
    match method {
        Method::Mle => neg_log_likelihood(params, baseline, data),
        Method::Ls => ls_objective(params, baseline, data),
        Method::Wls => wls_objective(params, baseline, data),
        Method::Mps => mps_objective(params, baseline, data),
        Method::Cvm => cvm_objective(params, baseline, data),
        Method::Ad => ad_objective(params, baseline, data),
    }
}

/// Gradient dispatcher; only valid at feasible points.
pub fn gradient(method: Method, params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset) -> Vec<f64> {
    match method {
        Method::Mle => mle_gradient(params, baseline, data),
        Method::Ls => ls_gradient(params, baseline, data),
        Method::Wls => wls_gradient(params, baseline, data),
        Method::Mps => mps_gradient(params, baseline, data),
        Method::Cvm => cvm_gradient(params, baseline, data),
        Method::Ad => ad_gradient(params, baseline, data),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::Exponential;
    use crate::family;
    use approx::assert_relative_eq;

    fn exp_params(alpha: f64, beta: f64, gamma: f64) -> Params<f64> {
        Params::new(alpha, beta, vec![gamma]).unwrap()
    }

    fn quantile_data(params: &Params<f64>, probs: &[f64]) -> Dataset {
        let xs = probs
            .iter()
            .map(|&p| family::quantile(params, &Exponential, p).unwrap())
            .collect();
        Dataset::new(xs).unwrap()
    }

    #[test]
    fn single_point_nll_is_negated_log_pdf() {
        let params = exp_params(1.0, 1.0, 1.0);
        let data = Dataset::new(vec![std::f64::consts::LN_2]).unwrap();
        assert_relative_eq!(
            neg_log_likelihood(&params, &Exponential, &data),
            1.0 - std::f64::consts::LN_2,
            max_relative = 1e-14
        );
    }

    #[test]
    fn nll_matches_log_pdf_sum() {
        let params = exp_params(2.5, 0.8, 1.3);
        let xs = family::sample(&params, &Exponential, 500, 42).unwrap();
        let data = Dataset::new(xs).unwrap();
        let direct: f64 = data
            .values()
            .iter()
            .map(|&x| -family::log_pdf(&params, &Exponential, x).unwrap())
            .sum();
        assert_relative_eq!(neg_log_likelihood(&params, &Exponential, &data), direct, epsilon = 1e-9);
    }

    #[test]
    fn nll_sentinel_for_infeasible() {
        let params = exp_params(2.5, 0.8, 1.3);
        let data = Dataset::new(vec![0.5, -0.1]).unwrap();
        assert_eq!(neg_log_likelihood(&params, &Exponential, &data), f64::INFINITY);
        // Boundary datum: density is zero there.
        let data = Dataset::new(vec![0.0, 0.5]).unwrap();
        assert_eq!(neg_log_likelihood(&params, &Exponential, &data), f64::INFINITY);
    }

    #[test]
    fn mle_gradient_alpha_component_closed_form() {
        let params = exp_params(2.0, 1.0, 1.0);
        let xs = family::sample(&params, &Exponential, 50, 3).unwrap();
        let data = Dataset::new(xs).unwrap();
        let g = mle_gradient(&params, &Exponential, &data);
        // ∂ℓ/∂α = n/α − Σ [H/H̄]^{−β}; the objective gradient is its negation.
        let direct: f64 = data
            .sorted()
            .iter()
            .map(|&x| {
                let h = Baseline::<f64>::cdf(&Exponential, x, &[1.0]);
                let hb = Baseline::<f64>::survival(&Exponential, x, &[1.0]);
                (h / hb).powf(-1.0)
            })
            .sum();
        let expected = -(data.n() as f64 / 2.0 - direct);
        assert_relative_eq!(g[0], expected, max_relative = 1e-12);
    }

    #[test]
    fn ls_objective_perfect_fit_is_zero() {
        let params = exp_params(1.5, 0.9, 1.1);
        let n = 15;
        let probs: Vec<f64> = (1..=n).map(|i| i as f64 / (n as f64 + 1.0)).collect();
        let data = quantile_data(&params, &probs);
        assert!(ls_objective(&params, &Exponential, &data) < 1e-20);
        assert!(wls_objective(&params, &Exponential, &data) < 1e-17);
    }

    #[test]
    fn ls_two_point_hand_value() {
        let params = exp_params(1.0, 1.0, 1.0);
        let data = quantile_data(&params, &[0.2, 0.9]);
        let expect = (0.2f64 - 1.0 / 3.0).powi(2) + (0.9f64 - 2.0 / 3.0).powi(2);
        assert_relative_eq!(ls_objective(&params, &Exponential, &data), expect, max_relative = 1e-10);
    }

    #[test]
    fn wls_weights_for_n3() {
        // n = 3: (n+1)²(n+2) = 80, weights 80/3, 20, 80/3.
        assert_relative_eq!(wls_weight(0, 3.0), 80.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(wls_weight(1, 3.0), 20.0, max_relative = 1e-14);
        assert_relative_eq!(wls_weight(2, 3.0), 80.0 / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn cvm_objective_attains_constant_floor() {
        let params = exp_params(1.5, 0.9, 1.1);
        let n = 8usize;
        let probs: Vec<f64> = (1..=n).map(|i| (2.0 * i as f64 - 1.0) / (2.0 * n as f64)).collect();
        let data = quantile_data(&params, &probs);
        let floor = 1.0 / (12.0 * (n * n) as f64);
        assert_relative_eq!(cvm_objective(&params, &Exponential, &data), floor, max_relative = 1e-9);
    }

    #[test]
    fn mps_single_observation() {
        // n = 1: objective = −(1/2)[ln F + ln(1−F)], minimized at F = 1/2.
        let params = exp_params(1.0, 1.0, 1.0);
        let x_med = family::quantile(&params, &Exponential, 0.5).unwrap();
        let at_median = mps_objective(&params, &Exponential, &Dataset::new(vec![x_med]).unwrap());
        assert_relative_eq!(at_median, 0.5f64.ln().abs() * 2.0 / 2.0, max_relative = 1e-12);
        for &p in &[0.2, 0.4, 0.7, 0.95] {
            let x = family::quantile(&params, &Exponential, p).unwrap();
            let v = mps_objective(&params, &Exponential, &Dataset::new(vec![x]).unwrap());
            assert!(v >= at_median - 1e-12, "p = {p}");
        }
    }

    #[test]
    fn mps_handles_ties_via_density() {
        let params = exp_params(1.2, 0.9, 1.0);
        let data = Dataset::new(vec![0.5, 0.5, 1.0]).unwrap();
        let v = mps_objective(&params, &Exponential, &data);
        assert!(v.is_finite());
        // Manual assembly: D = [F(0.5), f(0.5), F(1)−F(0.5), 1−F(1)]
        let f_05 = family::cdf(&params, &Exponential, 0.5).unwrap();
        let f_10 = family::cdf(&params, &Exponential, 1.0).unwrap();
        let pdf_05 = family::pdf(&params, &Exponential, 0.5).unwrap();
        let expect = -(f_05.ln() + pdf_05.ln() + (f_10 - f_05).ln() + (1.0 - f_10).ln()) / 4.0;
        assert_relative_eq!(v, expect, max_relative = 1e-10);
    }

    #[test]
    fn ad_transcription_check() {
        // With F(x_(i)) = (2i−1)/(2n) the objective must equal a direct loop
        // over the same formula.
        let params = exp_params(1.5, 0.9, 1.1);
        let n = 5usize;
        let probs: Vec<f64> = (1..=n).map(|i| (2.0 * i as f64 - 1.0) / (2.0 * n as f64)).collect();
        let data = quantile_data(&params, &probs);
        let mut direct = -(n as f64);
        for i in 1..=n {
            let fi = probs[i - 1];
            let f_rev = probs[n - i];
            direct -= (2.0 * i as f64 - 1.0) * (fi.ln() + (1.0 - f_rev).ln()) / n as f64;
        }
        assert_relative_eq!(ad_objective(&params, &Exponential, &data), direct, max_relative = 1e-12);
    }

    #[test]
    fn gradients_match_finite_differences() {
        let truth = exp_params(2.5, 0.8, 1.3);
        let xs = family::sample(&truth, &Exponential, 30, 11).unwrap();
        let data = Dataset::new(xs).unwrap();
        let eval_at = exp_params(2.0, 1.0, 1.0);

        for method in Method::ALL {
            let g = gradient(method, &eval_at, &Exponential, &data);
            let theta = eval_at.to_vec();
            for j in 0..theta.len() {
                let h = 1e-6 * theta[j].abs().max(1.0);
                let mut up = theta.clone();
                let mut dn = theta.clone();
                up[j] += h;
                dn[j] -= h;
                let fu = objective(method, &Params::from_slice(&up).unwrap(), &Exponential, &data);
                let fd_ = objective(method, &Params::from_slice(&dn).unwrap(), &Exponential, &data);
                let fd = (fu - fd_) / (2.0 * h);
                assert_relative_eq!(g[j], fd, max_relative = 2e-5, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn objectives_never_return_nan() {
        let data = Dataset::new(vec![0.3, 0.9, 2.7]).unwrap();
        let bad_points = [
            exp_params(1e-300, 1e3, 1e3),
            exp_params(1e300, 1e-8, 1e-300),
            exp_params(1.0, 500.0, 50.0),
        ];
        for params in &bad_points {
            for method in Method::ALL {
                let v = objective(method, params, &Exponential, &data);
                assert!(!v.is_nan(), "{method:?} produced NaN at {params:?}");
            }
        }
    }
}
