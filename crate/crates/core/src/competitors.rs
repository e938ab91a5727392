//! Competitor distributions used in the model-comparison tables: EGT, WGE,
//! LGT, T2G and EWL, each with cdf/pdf and generic maximum-likelihood
//! fitting through the shared optimizer.

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::estimation::{multi_start, DriverOptions, FitConfig, FitResult, Method};
use crate::gof::FittedModel;
use crate::real::ln_one_minus_exp_neg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Competitor {
    /// Exponentiated Gumbel Type-2: F = 1 − (1 − e^{−θ x^{−φ}})^α.
    Egt,
    /// Weibull generalized exponential: F = 1 − e^{−a (e^{λx} − 1)^b}.
    Wge,
    /// Lomax Gumbel Type-2: F = 1 − β^α (β − ln[1 − e^{−θ x^{−k}}])^{−α}.
    Lgt,
    /// Type-2 Gumbel: F = e^{−θ x^{−ν}}.
    T2g,
    /// Exponentiated Weibull-logistic: F = (1 − e^{−α e^{λβx}})^θ.
    Ewl,
}

impl Competitor {
    pub const ALL: [Competitor; 5] = [
        Competitor::Egt,
        Competitor::Wge,
        Competitor::Lgt,
        Competitor::T2g,
        Competitor::Ewl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Competitor::Egt => "egt",
            Competitor::Wge => "wge",
            Competitor::Lgt => "lgt",
            Competitor::T2g => "t2g",
            Competitor::Ewl => "ewl",
        }
    }

    pub fn parse(s: &str) -> Option<Competitor> {
        match s.to_ascii_lowercase().as_str() {
            "egt" => Some(Competitor::Egt),
            "wge" => Some(Competitor::Wge),
            "lgt" => Some(Competitor::Lgt),
            "t2g" => Some(Competitor::T2g),
            "ewl" => Some(Competitor::Ewl),
            _ => None,
        }
    }

    pub fn param_count(self) -> usize {
        match self {
            Competitor::Egt | Competitor::Wge => 3,
            Competitor::Lgt | Competitor::Ewl => 4,
            Competitor::T2g => 2,
        }
    }

    /// Parameter order follows the comparison-table columns.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Competitor::Egt => &["alpha", "phi", "theta"],
            Competitor::Wge => &["a", "b", "lambda"],
            Competitor::Lgt => &["alpha", "beta", "theta", "k"],
            Competitor::T2g => &["theta", "nu"],
            Competitor::Ewl => &["alpha", "beta", "lambda", "theta"],
        }
    }

    fn validate(self, p: &[f64]) -> Result<()> {
        if p.len() != self.param_count() {
            return Err(Error::InvalidData(format!(
                "{} expects {} parameters, got {}",
                self.name(),
                self.param_count(),
                p.len()
            )));
        }
        for &v in p {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "competitor parameter",
                    value: v,
                    reason: "must be a finite positive real",
                });
            }
        }
        Ok(())
    }

    /// Cdf at x > 0; infeasible inputs simply evaluate the formula limits.
    pub fn cdf(self, x: f64, p: &[f64]) -> f64 {
        match self {
            Competitor::Egt => {
                let w = p[2] * x.powf(-p[1]);
                -(p[0] * ln_one_minus_exp_neg(w)).exp_m1()
            }
            Competitor::Wge => {
                let v = (p[2] * x).exp_m1();
                -(-p[0] * v.powf(p[1])).exp_m1()
            }
            Competitor::Lgt => {
                let w = p[2] * x.powf(-p[3]);
                let l = ln_one_minus_exp_neg(w);
                -(p[0] * (p[1].ln() - (p[1] - l).ln())).exp_m1()
            }
            Competitor::T2g => (-p[0] * x.powf(-p[1])).exp(),
            Competitor::Ewl => {
                let u = p[0] * (p[2] * p[1] * x).exp();
                (p[3] * ln_one_minus_exp_neg(u)).exp()
            }
        }
    }

    pub fn log_pdf(self, x: f64, p: &[f64]) -> f64 {
        if x <= 0.0 {
            return f64::NEG_INFINITY;
        }
        match self {
            Competitor::Egt => {
                let (alpha, phi, theta) = (p[0], p[1], p[2]);
                let w = theta * x.powf(-phi);
                alpha.ln() + phi.ln() + theta.ln() - (phi + 1.0) * x.ln() - w
                    + (alpha - 1.0) * ln_one_minus_exp_neg(w)
            }
            Competitor::Wge => {
                let (a, b, lambda) = (p[0], p[1], p[2]);
                let v = (lambda * x).exp_m1();
                a.ln() + b.ln() + lambda.ln() + lambda * x + (b - 1.0) * v.ln() - a * v.powf(b)
            }
            Competitor::Lgt => {
                let (alpha, beta, theta, k) = (p[0], p[1], p[2], p[3]);
                let w = theta * x.powf(-k);
                let l = ln_one_minus_exp_neg(w);
                alpha.ln() + alpha * beta.ln() + theta.ln() + k.ln() - (k + 1.0) * x.ln() - w - l
                    - (alpha + 1.0) * (beta - l).ln()
            }
            Competitor::T2g => {
                let (theta, nu) = (p[0], p[1]);
                nu.ln() + theta.ln() - (nu + 1.0) * x.ln() - theta * x.powf(-nu)
            }
            Competitor::Ewl => {
                let (alpha, beta, lambda, theta) = (p[0], p[1], p[2], p[3]);
                let e = (lambda * beta * x).exp();
                let u = alpha * e;
                theta.ln() + (theta - 1.0) * ln_one_minus_exp_neg(u) + (lambda * alpha * beta).ln()
                    + lambda * beta * x
                    - u
            }
        }
    }

    pub fn pdf(self, x: f64, p: &[f64]) -> f64 {
        self.log_pdf(x, p).exp()
    }
}

/// A competitor with fitted parameters, usable in goodness-of-fit reports.
#[derive(Debug, Clone)]
pub struct CompetitorModel {
    pub competitor: Competitor,
    pub params: Vec<f64>,
}

impl FittedModel for CompetitorModel {
    fn label(&self) -> String {
        self.competitor.name().to_string()
    }

    fn cdf(&self, x: f64) -> Result<f64> {
        self.competitor.validate(&self.params)?;
        Ok(self.competitor.cdf(x, &self.params))
    }

    fn log_pdf(&self, x: f64) -> Result<f64> {
        self.competitor.validate(&self.params)?;
        Ok(self.competitor.log_pdf(x, &self.params))
    }

    fn param_count(&self) -> usize {
        self.competitor.param_count()
    }
}

fn competitor_nll(competitor: Competitor, p: &[f64], data: &Dataset) -> f64 {
    if p.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
        return f64::INFINITY;
    }
    let mut nll = 0.0;
    for &x in data.sorted() {
        let lp = competitor.log_pdf(x, p);
        if lp == f64::NEG_INFINITY || lp.is_nan() {
            return f64::INFINITY;
        }
        nll -= lp;
    }
    if nll.is_nan() {
        f64::INFINITY
    } else {
        nll
    }
}

/// Maximum-likelihood fit of a competitor through the shared multi-start
/// simplex driver; all parameters are log-transformed and seeded at 1.
/// Only `Method::Mle` is supported (the comparison tables fit competitors
/// by MLE).
pub fn competitor_fit(competitor: Competitor, data: &Dataset, config: &FitConfig) -> Result<FitResult> {
    config.validate()?;
    if config.method != Method::Mle {
        return Err(Error::InvalidConfig(format!(
            "competitor fitting supports mle only, got {}",
            config.method
        )));
    }
    if data.n() < 3 {
        return Err(Error::InvalidData(format!(
            "fitting needs at least 3 observations, got {}",
            data.n()
        )));
    }
    if data.min() <= 0.0 {
        return Err(Error::InvalidData(format!(
            "{} requires strictly positive data",
            competitor.name()
        )));
    }

    let d = competitor.param_count();
    let objective_z = move |z: &[f64]| -> f64 {
        let p: Vec<f64> = z.iter().map(|v| v.exp()).collect();
        competitor_nll(competitor, &p, data)
    };
    // Central-difference gradient for the Newton polish.
    let gradient_z = move |z: &[f64]| -> Option<Vec<f64>> {
        let center = objective_z(z);
        if !center.is_finite() {
            return None;
        }
        let mut g = Vec::with_capacity(z.len());
        for i in 0..z.len() {
            let h = 1e-6 * z[i].abs().max(1.0);
            let mut up = z.to_vec();
            let mut dn = z.to_vec();
            up[i] += h;
            dn[i] -= h;
            let (fu, fd) = (objective_z(&up), objective_z(&dn));
            if !fu.is_finite() || !fd.is_finite() {
                return None;
            }
            g.push((fu - fd) / (2.0 * h));
        }
        Some(g)
    };

    let z0 = vec![0.0; d];
    let outcome = multi_start(
        &objective_z,
        Some(&gradient_z),
        &z0,
        &DriverOptions {
            starts: config.starts,
            max_iterations: config.max_iterations,
            tolerance: config.tolerance,
            seed: config.seed,
            polish_steps: 8,
        },
    );

    let estimates: Vec<f64> = outcome.z.iter().map(|v| v.exp()).collect();
    // The FD gradient is noisier than an analytic one; scale the
    // stationarity threshold with the objective size.
    let scale = outcome.value.abs().max(1.0);
    let converged = outcome.value.is_finite()
        && (outcome.grad_norm.map(|g| g <= 1e-4 * scale).unwrap_or(false)
            || outcome.simplex_diameter <= config.tolerance);

    Ok(FitResult {
        estimates,
        std_errors: None,
        objective_value: outcome.value,
        neg2_loglik: 2.0 * outcome.value,
        converged,
        iterations: outcome.iterations,
        method: Method::Mle,
    })
}
