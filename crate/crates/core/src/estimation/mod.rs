//! Parameter estimation: six objectives, a transform-aware multi-start
//! driver, and standard errors from the observed information.

mod objectives;
mod optimizer;
mod transforms;

pub use objectives::{
    ad_gradient, ad_objective, cvm_gradient, cvm_objective, gradient, ls_gradient, ls_objective, mle_gradient,
    mps_gradient, mps_objective, neg_log_likelihood, objective, wls_gradient, wls_objective, Method,
};
pub use optimizer::{multi_start, nelder_mead, newton_polish, DriverOptions, DriverOutcome};
pub use transforms::{family_transforms, to_natural, to_z, Transform};

use serde::{Deserialize, Serialize};

use crate::baseline::Baseline;
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::family::Params;
use crate::linalg::spd_inverse;

/// Options for a single fit.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FitConfig {
    pub method: Method,
    /// Total optimizer starts; start 0 is the quantile-matching seed, the
    /// rest jitter it multiplicatively in [1/4, 4] per coordinate.
    pub starts: usize,
    pub max_iterations: usize,
    /// Relative objective-change tolerance for the simplex.
    pub tolerance: f64,
    /// Seed of the jitter stream.
    pub seed: u64,
}

impl FitConfig {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            starts: 9,
            max_iterations: 2000,
            tolerance: 1e-10,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.starts == 0 {
            return Err(Error::InvalidConfig("starts must be at least 1".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig("tolerance must be positive".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be positive".into()));
        }
        Ok(())
    }
}

/// Outcome of a fit. `estimates` uses the model's flat parameter layout;
/// for the family that is [α, β, ψ...] (see [`FitResult::family_params`]).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitResult {
    pub estimates: Vec<f64>,
    /// Standard errors from the inverse observed information; present only
    /// for MLE and only when the Hessian is positive definite.
    pub std_errors: Option<Vec<f64>>,
    pub objective_value: f64,
    /// −2 log L at the estimates, whatever the estimation method.
    pub neg2_loglik: f64,
    pub converged: bool,
    pub iterations: usize,
    pub method: Method,
}

impl FitResult {
    /// Interpret the estimates as family parameters [α, β, ψ...].
    pub fn family_params(&self) -> Result<Params<f64>> {
        Params::from_slice(&self.estimates)
    }
}

/// Fit the family to data with the configured method.
///
/// Minimizes the objective in transformed space (positive parameters by log,
/// support-bounded baseline parameters by shifted-log or scaled-logit), with
/// deterministic multi-start and a Newton polish on the analytic gradient.
/// Non-convergence is reported through `converged = false`, never as an
/// error.
pub fn fit(data: &Dataset, baseline: &dyn Baseline<f64>, config: &FitConfig) -> Result<FitResult> {
    config.validate()?;
    if data.n() < 3 {
        return Err(Error::InvalidData(format!(
            "fitting needs at least 3 observations, got {}",
            data.n()
        )));
    }

    let transforms = family_transforms(baseline, data)?;
    let seed_params = seed_point(baseline, data);
    check_support_at_seed(baseline, data, &seed_params)?;
    let z0 = to_z(&transforms, &seed_params);

    let method = config.method;
    let objective_z = |z: &[f64]| -> f64 {
        let theta = to_natural(&transforms, z);
        match Params::from_slice(&theta) {
            Ok(p) => objective(method, &p, baseline, data),
            Err(_) => f64::INFINITY,
        }
    };
    let gradient_z = |z: &[f64]| -> Option<Vec<f64>> {
        let theta = to_natural(&transforms, z);
        let p = Params::from_slice(&theta).ok()?;
        if !objective(method, &p, baseline, data).is_finite() {
            return None;
        }
        let g = gradient(method, &p, baseline, data);
        Some(
            g.iter()
                .zip(transforms.iter().zip(z))
                .map(|(gi, (t, &zi))| gi * t.jacobian(zi))
                .collect(),
        )
    };

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

    let estimates = to_natural(&transforms, &outcome.z);
    let params = Params::from_slice(&estimates)?;
    let converged = outcome.value.is_finite()
        && (outcome.grad_norm.map(|g| g <= 1e-4).unwrap_or(false)
            || outcome.simplex_diameter <= config.tolerance);
    let neg2_loglik = 2.0 * neg_log_likelihood(&params, baseline, data);

    let std_errors = if method == Method::Mle && converged {
        observed_information_std_errors(&params, baseline, data)
    } else {
        None
    };

    Ok(FitResult {
        estimates,
        std_errors,
        objective_value: outcome.value,
        neg2_loglik,
        converged,
        iterations: outcome.iterations,
        method,
    })
}

/// Starting point in natural space: α = β = 1 and ψ from the baseline's
/// quantile heuristic.
fn seed_point(baseline: &dyn Baseline<f64>, data: &Dataset) -> Vec<f64> {
    let mut theta = vec![1.0, 1.0];
    theta.extend(baseline.seed_psi(&data.summary()));
    theta
}

fn check_support_at_seed(baseline: &dyn Baseline<f64>, data: &Dataset, theta: &[f64]) -> Result<()> {
    let (lower, upper) = baseline.support(&theta[2..]);
    if data.min() < lower || data.max() > upper {
        return Err(Error::InvalidData(format!(
            "data outside the {} baseline support",
            baseline.name()
        )));
    }
    Ok(())
}

/// Standard errors as sqrt of the diagonal of the inverse observed
/// information. The Hessian of −ℓ comes from central differences of the
/// analytic gradient in natural space; a non-positive-definite Hessian
/// yields `None`.
pub fn observed_information_std_errors(
    params: &Params<f64>,
    baseline: &dyn Baseline<f64>,
    data: &Dataset,
) -> Option<Vec<f64>> {
    let theta = params.to_vec();
    let n = theta.len();
    let grad_at = |t: &[f64]| -> Option<Vec<f64>> {
        let p = Params::from_slice(t).ok()?;
        if !neg_log_likelihood(&p, baseline, data).is_finite() {
            return None;
        }
        Some(mle_gradient(&p, baseline, data))
    };

    let mut hess = vec![0.0; n * n];
    for i in 0..n {
        let h = 1e-5 * theta[i].abs().max(0.01);
        let mut up = theta.clone();
        let mut dn = theta.clone();
        up[i] += h;
        dn[i] -= h;
        let (gu, gd) = (grad_at(&up)?, grad_at(&dn)?);
        for j in 0..n {
            hess[i * n + j] = (gu[j] - gd[j]) / (2.0 * h);
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (hess[i * n + j] + hess[j * n + i]);
            hess[i * n + j] = avg;
            hess[j * n + i] = avg;
        }
    }

    let inv = spd_inverse(&hess, n)?;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let v = inv[i * n + i];
        if v < 0.0 || !v.is_finite() {
            return None;
        }
        out.push(v.sqrt());
    }
    Some(out)
}

/// Observed-information Hessian of −ℓ at `params` (natural space), exposed
/// for definiteness diagnostics.
pub fn nll_hessian(params: &Params<f64>, baseline: &dyn Baseline<f64>, data: &Dataset) -> Option<Vec<f64>> {
    let theta = params.to_vec();
    let n = theta.len();
    let mut hess = vec![0.0; n * n];
    for i in 0..n {
        let h = 1e-5 * theta[i].abs().max(0.01);
        let mut up = theta.clone();
        let mut dn = theta.clone();
        up[i] += h;
        dn[i] -= h;
        let pu = Params::from_slice(&up).ok()?;
        let pd = Params::from_slice(&dn).ok()?;
        if !neg_log_likelihood(&pu, baseline, data).is_finite()
            || !neg_log_likelihood(&pd, baseline, data).is_finite()
        {
            return None;
        }
        let (gu, gd) = (mle_gradient(&pu, baseline, data), mle_gradient(&pd, baseline, data));
        for j in 0..n {
            hess[i * n + j] = (gu[j] - gd[j]) / (2.0 * h);
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (hess[i * n + j] + hess[j * n + i]);
            hess[i * n + j] = avg;
            hess[j * n + i] = avg;
        }
    }
    Some(hess)
}
