//! Goodness-of-fit statistics, information criteria and empirical curves.

use serde::Serialize;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::family::{self, Params};
use crate::special::kolmogorov_survival;
use crate::DynBaseline;

/// A fitted model exposing what the fit statistics need.
pub trait FittedModel: Send + Sync {
    fn label(&self) -> String;
    fn cdf(&self, x: f64) -> Result<f64>;
    fn log_pdf(&self, x: f64) -> Result<f64>;
    fn param_count(&self) -> usize;
}

/// A fitted member of the family.
#[derive(Clone)]
pub struct FamilyModel {
    pub params: Params<f64>,
    pub baseline: DynBaseline,
}

impl FamilyModel {
    pub fn new(params: Params<f64>, baseline: DynBaseline) -> Self {
        Self { params, baseline }
    }
}

impl FittedModel for FamilyModel {
    fn label(&self) -> String {
        match self.baseline.name() {
            "exponential" => "t2gwe".to_string(),
            "uniform" => "t2gwu".to_string(),
            "pareto" => "t2gwp".to_string(),
            other => format!("t2gw-{other}"),
        }
    }

    fn cdf(&self, x: f64) -> Result<f64> {
        family::cdf(&self.params, self.baseline.as_ref(), x)
    }

    fn log_pdf(&self, x: f64) -> Result<f64> {
        family::log_pdf(&self.params, self.baseline.as_ref(), x)
    }

    fn param_count(&self) -> usize {
        2 + self.baseline.param_count()
    }
}

/// Goodness-of-fit report: −2 log L, information criteria, W*, A* and the
/// Kolmogorov–Smirnov statistic with its asymptotic p-value.
#[derive(Debug, Clone, Serialize)]
pub struct GofReport {
    pub neg2_loglik: f64,
    pub aic: f64,
    pub caic: f64,
    pub bic: f64,
    pub hqic: f64,
    pub w_star: f64,
    pub a_star: f64,
    pub ks_stat: f64,
    pub ks_pvalue: f64,
    pub k: usize,
    pub n: usize,
}

/// Cramér–von Mises statistic W* = 1/(12n) + Σ (u_(i) − (2i−1)/(2n))² on
/// sorted probability-integral-transformed values.
pub fn w_star_statistic(u_sorted: &[f64]) -> f64 {
    let n = u_sorted.len() as f64;
    let mut sum = 1.0 / (12.0 * n);
    for (i, &u) in u_sorted.iter().enumerate() {
        let q = (2.0 * (i + 1) as f64 - 1.0) / (2.0 * n);
        sum += (u - q) * (u - q);
    }
    sum
}

/// Anderson–Darling statistic
/// A* = −n − (1/n) Σ (2i−1)[ln u_(i) + ln(1 − u_(n+1−i))].
pub fn a_star_statistic(u_sorted: &[f64]) -> f64 {
    let n = u_sorted.len();
    let nf = n as f64;
    let mut sum = 0.0;
    for i in 0..n {
        sum += (2.0 * (i + 1) as f64 - 1.0) * (u_sorted[i].ln() + (1.0 - u_sorted[n - 1 - i]).ln());
    }
    -nf - sum / nf
}

/// Two-sided Kolmogorov–Smirnov statistic
/// max_i max(i/n − u_(i), u_(i) − (i−1)/n).
pub fn ks_statistic(u_sorted: &[f64]) -> f64 {
    let n = u_sorted.len() as f64;
    let mut sup: f64 = 0.0;
    for (i, &u) in u_sorted.iter().enumerate() {
        let rank = (i + 1) as f64;
        sup = sup.max(rank / n - u).max(u - (rank - 1.0) / n);
    }
    sup
}

/// Asymptotic p-value of the K-S statistic at sample size n.
pub fn ks_pvalue(ks: f64, n: usize) -> f64 {
    kolmogorov_survival((n as f64).sqrt() * ks)
}

/// Full report for a fitted model on a dataset. Errors when any transformed
/// point is exactly 0 or 1 (boundary degeneracy) or when n ≤ k + 1.
pub fn gof_report(model: &dyn FittedModel, data: &Dataset) -> Result<GofReport> {
    let n = data.n();
    let k = model.param_count();
    if n <= k + 1 {
        return Err(Error::InvalidData(format!(
            "need n > k + 1 for the information criteria (n = {n}, k = {k})"
        )));
    }

    let mut u = Vec::with_capacity(n);
    let mut neg2 = 0.0;
    for &x in data.sorted() {
        let f = model.cdf(x)?;
        if f <= 0.0 || f >= 1.0 {
            return Err(Error::BoundaryDegeneracy { value: f });
        }
        u.push(f);
        neg2 -= 2.0 * model.log_pdf(x)?;
    }

    let (nf, kf) = (n as f64, k as f64);
    let aic = neg2 + 2.0 * kf;
    let caic = aic + 2.0 * kf * (kf + 1.0) / (nf - kf - 1.0);
    let bic = neg2 + kf * nf.ln();
    let hqic = neg2 + 2.0 * kf * nf.ln().ln();
    let ks = ks_statistic(&u);

    Ok(GofReport {
        neg2_loglik: neg2,
        aic,
        caic,
        bic,
        hqic,
        w_star: w_star_statistic(&u),
        a_star: a_star_statistic(&u),
        ks_stat: ks,
        ks_pvalue: ks_pvalue(ks, n),
        k,
        n,
    })
}

/// ECDF step points (x_(i), i/n).
pub fn ecdf_points(data: &Dataset) -> Vec<(f64, f64)> {
    let n = data.n() as f64;
    data.sorted()
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, (i + 1) as f64 / n))
        .collect()
}

/// Kaplan–Meier survival for uncensored data: the right-continuous ECDF
/// complement (x_(i), 1 − i/n).
pub fn km_survival_points(data: &Dataset) -> Vec<(f64, f64)> {
    let n = data.n() as f64;
    data.sorted()
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, 1.0 - (i + 1) as f64 / n))
        .collect()
}

/// Scaled total-time-on-test points (i/n, T_i/T_n) with
/// T_i = Σ_{j≤i} x_(j) + (n−i) x_(i).
pub fn ttt_points(data: &Dataset) -> Vec<(f64, f64)> {
    let sorted = data.sorted();
    let n = sorted.len();
    let total: f64 = sorted.iter().sum();
    let mut cumulative = 0.0;
    let mut out = Vec::with_capacity(n);
    for (i, &x) in sorted.iter().enumerate() {
        cumulative += x;
        let t_i = cumulative + (n - i - 1) as f64 * x;
        out.push(((i + 1) as f64 / n as f64, t_i / total));
    }
    out
}

/// Theoretical cdf/survival/hazard rows on an even grid.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurvePoint {
    pub x: f64,
    pub cdf: f64,
    pub survival: f64,
    pub hazard: f64,
}

pub fn theoretical_curves(model: &dyn FittedModel, lo: f64, hi: f64, points: usize) -> Result<Vec<CurvePoint>> {
    let mut out = Vec::with_capacity(points);
    for i in 0..points {
        let x = lo + (hi - lo) * (i as f64 + 0.5) / points as f64;
        let cdf = model.cdf(x)?;
        let survival = 1.0 - cdf;
        let hazard = if survival > 0.0 {
            model.log_pdf(x)?.exp() / survival
        } else {
            f64::INFINITY
        };
        out.push(CurvePoint {
            x,
            cdf,
            survival,
            hazard,
        });
    }
    Ok(out)
}

/// Histogram bin (left edge, right edge, empirical density).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HistogramBin {
    pub left: f64,
    pub right: f64,
    pub density: f64,
}

/// Freedman–Diaconis histogram; falls back to Sturges when the IQR
/// degenerates.
pub fn fd_histogram(data: &Dataset) -> Vec<HistogramBin> {
    let sorted = data.sorted();
    let n = sorted.len();
    let span = data.max() - data.min();
    if span <= 0.0 {
        return vec![HistogramBin {
            left: data.min(),
            right: data.max(),
            density: f64::INFINITY,
        }];
    }
    let iqr = percentile(sorted, 0.75) - percentile(sorted, 0.25);
    let width = if iqr > 0.0 {
        2.0 * iqr / (n as f64).cbrt()
    } else {
        span / (1.0 + (n as f64).log2()).ceil()
    };
    let bins = ((span / width).ceil() as usize).max(1);
    let width = span / bins as f64;

    let mut counts = vec![0usize; bins];
    for &x in sorted {
        let idx = (((x - data.min()) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| HistogramBin {
            left: data.min() + i as f64 * width,
            right: data.min() + (i + 1) as f64 * width,
            density: c as f64 / (n as f64 * width),
        })
        .collect()
}

/// Linear-interpolation percentile on sorted values.
fn percentile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let pos = p * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let frac = pos - lo as f64;
    if lo + 1 < n {
        sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac
    } else {
        sorted[n - 1]
    }
}
