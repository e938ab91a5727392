//! Monte Carlo bias/MSE study: generate samples at a fixed truth, fit with
//! the requested methods, aggregate per (method, sample size, parameter).
//!
//! Every replication draws its sample from a seed that is a pure function
//! of (plan seed, sample size, replication index), so cells can run in any
//! order or in parallel and the report is identical.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::baseline_by_name;
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::estimation::{fit, FitConfig, Method};
use crate::family::{self, Params};
use crate::rng::mix_seed;

/// Simulation plan. `fit_starts`, `fit_max_iterations` and `fit_tolerance`
/// configure the per-replication fits (fewer starts than an interactive fit;
/// each replication reseeds its own jitter stream).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimPlan {
    pub alpha: f64,
    pub beta: f64,
    pub psi: Vec<f64>,
    pub baseline: String,
    pub sample_sizes: Vec<usize>,
    pub replications: usize,
    pub methods: Vec<Method>,
    pub seed: u64,
    #[serde(default = "default_fit_starts")]
    pub fit_starts: usize,
    #[serde(default = "default_fit_max_iterations")]
    pub fit_max_iterations: usize,
    #[serde(default = "default_fit_tolerance")]
    pub fit_tolerance: f64,
}

fn default_fit_starts() -> usize {
    3
}

fn default_fit_max_iterations() -> usize {
    1500
}

fn default_fit_tolerance() -> f64 {
    1e-10
}

impl SimPlan {
    /// The study design used throughout: N ∈ {50, 100, 250, 500, 1000},
    /// 1000 replications, all six methods.
    pub fn standard(alpha: f64, beta: f64, psi: Vec<f64>, baseline: &str, seed: u64) -> Self {
        Self {
            alpha,
            beta,
            psi,
            baseline: baseline.to_string(),
            sample_sizes: vec![50, 100, 250, 500, 1000],
            replications: 1000,
            methods: Method::ALL.to_vec(),
            seed,
            fit_starts: default_fit_starts(),
            fit_max_iterations: default_fit_max_iterations(),
            fit_tolerance: default_fit_tolerance(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::InvalidConfig("replications must be at least 1".into()));
        }
        if self.sample_sizes.is_empty() || self.sample_sizes.iter().any(|&n| n < 10) {
            return Err(Error::InvalidConfig("sample sizes must all be at least 10".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidConfig("at least one method is required".into()));
        }
        Ok(())
    }
}

/// Aggregate for one (method, sample size, parameter) cell.
#[derive(Debug, Clone, Serialize)]
pub struct CellStat {
    pub method: Method,
    pub sample_size: usize,
    pub parameter: String,
    pub bias: f64,
    pub mse: f64,
    /// Replications whose fit did not converge; excluded from the averages.
    pub failures: usize,
    /// Set when more than 20% of the replications failed.
    pub flagged: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimReport {
    pub cells: Vec<CellStat>,
    pub parameter_names: Vec<String>,
}

impl SimReport {
    pub fn cell(&self, method: Method, sample_size: usize, parameter: &str) -> Option<&CellStat> {
        self.cells
            .iter()
            .find(|c| c.method == method && c.sample_size == sample_size && c.parameter == parameter)
    }

    /// CSV with one row per (method, N, parameter).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,N,parameter,bias,mse,failures\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{:.6e},{:.6e},{}\n",
                c.method, c.sample_size, c.parameter, c.bias, c.mse, c.failures
            ));
        }
        out
    }
}

/// Run the plan. Replications are independent and run in parallel; the
/// aggregation is a deterministic reduction in replication order.
pub fn run_simulation(plan: &SimPlan) -> Result<SimReport> {
    plan.validate()?;
    let baseline = baseline_by_name(&plan.baseline).ok_or_else(|| Error::UnknownName(plan.baseline.clone()))?;
    let truth = Params::new(plan.alpha, plan.beta, plan.psi.clone())?;
    let truth_vec = truth.to_vec();

    let mut parameter_names: Vec<String> = vec!["alpha".into(), "beta".into()];
    parameter_names.extend(baseline.param_names().iter().map(|s| s.to_string()));

    let mut cells = Vec::new();
    for &n in &plan.sample_sizes {
        // One sample per replication, shared by every method.
        let per_rep: Vec<Vec<Option<Vec<f64>>>> = (0..plan.replications)
            .into_par_iter()
            .map(|rep| {
                let sample_seed = mix_seed(&[plan.seed, n as u64, rep as u64]);
                let xs = family::sample(&truth, baseline.as_ref(), n, sample_seed)
                    .expect("truth parameters validated");
                let data = Dataset::new(xs).expect("sampler produces finite values");
                plan.methods
                    .iter()
                    .enumerate()
                    .map(|(mi, &method)| {
                        let config = FitConfig {
                            method,
                            starts: plan.fit_starts,
                            max_iterations: plan.fit_max_iterations,
                            tolerance: plan.fit_tolerance,
                            seed: mix_seed(&[sample_seed, mi as u64 + 1]),
                        };
                        match fit(&data, baseline.as_ref(), &config) {
                            Ok(r) if r.converged => Some(r.estimates),
                            _ => None,
                        }
                    })
                    .collect()
            })
            .collect();

        for (mi, &method) in plan.methods.iter().enumerate() {
            let estimates: Vec<&Vec<f64>> = per_rep.iter().filter_map(|rep| rep[mi].as_ref()).collect();
            let failures = plan.replications - estimates.len();
            let flagged = failures * 5 > plan.replications;
            for (pi, pname) in parameter_names.iter().enumerate() {
                let (mut bias, mut mse) = (0.0, 0.0);
                for est in &estimates {
                    let err = est[pi] - truth_vec[pi];
                    bias += err;
                    mse += err * err;
                }
                let count = estimates.len().max(1) as f64;
                cells.push(CellStat {
                    method,
                    sample_size: n,
                    parameter: pname.clone(),
                    bias: bias / count,
                    mse: mse / count,
                    failures,
                    flagged,
                });
            }
        }
    }

    Ok(SimReport {
        cells,
        parameter_names,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::Exponential;

    #[test]
    fn single_replication_matches_hand_assembly() {
        let plan = SimPlan {
            alpha: 2.5,
            beta: 0.8,
            psi: vec![1.3],
            baseline: "exponential".into(),
            sample_sizes: vec![100],
            replications: 1,
            methods: vec![Method::Mle],
            seed: 11,
            fit_starts: 3,
            fit_max_iterations: 1500,
            fit_tolerance: 1e-10,
        };
        let report = run_simulation(&plan).unwrap();

        // Hand-assemble the same single fit.
        let truth = Params::new(2.5, 0.8, vec![1.3]).unwrap();
        let sample_seed = mix_seed(&[11, 100, 0]);
        let xs = family::sample(&truth, &Exponential, 100, sample_seed).unwrap();
        let data = Dataset::new(xs).unwrap();
        let config = FitConfig {
            method: Method::Mle,
            starts: 3,
            max_iterations: 1500,
            tolerance: 1e-10,
            seed: mix_seed(&[sample_seed, 1]),
        };
        let fitres = fit(&data, &Exponential, &config).unwrap();
        assert!(fitres.converged);

        for (pi, pname) in ["alpha", "beta", "gamma"].iter().enumerate() {
            let cell = report.cell(Method::Mle, 100, pname).unwrap();
            let expected_bias = fitres.estimates[pi] - truth.to_vec()[pi];
            assert!((cell.bias - expected_bias).abs() < 1e-12);
            assert!((cell.mse - expected_bias * expected_bias).abs() < 1e-12);
            assert_eq!(cell.failures, 0);
        }
    }

    #[test]
    fn determinism_and_mse_bias_inequality() {
        let plan = SimPlan {
            alpha: 2.5,
            beta: 0.8,
            psi: vec![1.3],
            baseline: "exponential".into(),
            sample_sizes: vec![40, 80],
            replications: 12,
            methods: vec![Method::Mle, Method::Ls],
            seed: 3,
            fit_starts: 2,
            fit_max_iterations: 800,
            fit_tolerance: 1e-9,
        };
        let a = run_simulation(&plan).unwrap();
        let b = run_simulation(&plan).unwrap();
        for (x, y) in a.cells.iter().zip(&b.cells) {
            assert_eq!(x.bias, y.bias);
            assert_eq!(x.mse, y.mse);
        }
        for c in &a.cells {
            assert!(c.mse >= c.bias * c.bias - 1e-12);
        }
    }

    #[test]
    fn csv_layout() {
        let plan = SimPlan {
            alpha: 2.5,
            beta: 0.8,
            psi: vec![1.3],
            baseline: "exponential".into(),
            sample_sizes: vec![30],
            replications: 2,
            methods: vec![Method::Mle],
            seed: 1,
            fit_starts: 2,
            fit_max_iterations: 600,
            fit_tolerance: 1e-9,
        };
        let report = run_simulation(&plan).unwrap();
        let csv = report.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "method,N,parameter,bias,mse,failures");
        assert_eq!(csv.lines().count(), 1 + 3);
        assert!(csv.lines().nth(1).unwrap().starts_with("mle,30,alpha,"));
    }

    #[test]
    fn plan_validation() {
        let mut plan = SimPlan::standard(2.5, 0.8, vec![1.3], "exponential", 0);
        plan.replications = 0;
        assert!(run_simulation(&plan).is_err());
        let mut plan = SimPlan::standard(2.5, 0.8, vec![1.3], "exponential", 0);
        plan.sample_sizes = vec![5];
        assert!(run_simulation(&plan).is_err());
        let mut plan = SimPlan::standard(2.5, 0.8, vec![1.3], "nope", 0);
        plan.sample_sizes = vec![50];
        plan.replications = 1;
        assert!(run_simulation(&plan).is_err());
    }
}
