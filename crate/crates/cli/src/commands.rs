//! The six CLI commands: fit, gof, compare, properties, simulate, curves.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use t2gwg::estimation::{fit, FitConfig, FitResult, Method};
use t2gwg::family;
use t2gwg::gof::{self, gof_report, FamilyModel, FittedModel};
use t2gwg::montecarlo::{run_simulation, SimPlan};
use t2gwg::properties;
use t2gwg::quadrature::QuadratureConfig;
use t2gwg::{baseline_by_name, competitor_fit, Competitor, CompetitorModel, Dataset, DynBaseline, Params};

use crate::output::{sig6, write_out};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(CliError::Args(format!("unknown format `{other}` (use json or csv)"))),
        }
    }
}

/// Resolve a family or baseline name into the baseline and family label.
pub fn resolve_family(family: Option<&str>, baseline: Option<&str>) -> Result<(DynBaseline, String), CliError> {
    let from_family = |name: &str| -> Result<&'static str, CliError> {
        match name.to_ascii_lowercase().as_str() {
            "t2gwe" => Ok("exponential"),
            "t2gwu" => Ok("uniform"),
            "t2gwp" => Ok("pareto"),
            other => Err(CliError::Args(format!(
                "unknown family `{other}` (t2gwe, t2gwu or t2gwp)"
            ))),
        }
    };
    let baseline_name = match (family, baseline) {
        (Some(f), Some(b)) => {
            let implied = from_family(f)?;
            if implied != b.to_ascii_lowercase() {
                return Err(CliError::Args(format!(
                    "family `{f}` implies baseline `{implied}`, but `{b}` was given"
                )));
            }
            implied.to_string()
        }
        (Some(f), None) => from_family(f)?.to_string(),
        (None, Some(b)) => b.to_ascii_lowercase(),
        (None, None) => "exponential".to_string(),
    };
    let baseline =
        baseline_by_name(&baseline_name).ok_or_else(|| CliError::Args(format!("unknown baseline `{baseline_name}`")))?;
    let label = match baseline_name.as_str() {
        "exponential" => "t2gwe",
        "uniform" => "t2gwu",
        "pareto" => "t2gwp",
        _ => unreachable!(),
    };
    Ok((baseline, label.to_string()))
}

pub fn parse_methods(spec: &[String]) -> Result<Vec<Method>, CliError> {
    let mut out = Vec::new();
    for entry in spec {
        for part in entry.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            out.push(
                Method::parse(part).ok_or_else(|| CliError::Args(format!("unknown method `{part}`")))?,
            );
        }
    }
    if out.is_empty() {
        out.push(Method::Mle);
    }
    Ok(out)
}

fn param_names(baseline: &DynBaseline) -> Vec<String> {
    let mut names = vec!["alpha".to_string(), "beta".to_string()];
    names.extend(baseline.param_names().iter().map(|s| s.to_string()));
    names
}

fn named_values(names: &[String], values: &[f64]) -> Value {
    let mut map = Map::new();
    for (n, v) in names.iter().zip(values) {
        map.insert(n.clone(), json!(v));
    }
    Value::Object(map)
}

fn params_from_flag(values: &[f64], baseline: &DynBaseline) -> Result<Params<f64>, CliError> {
    if values.len() != 2 + baseline.param_count() {
        return Err(CliError::Args(format!(
            "--params needs {} values (alpha, beta, {}), got {}",
            2 + baseline.param_count(),
            baseline.param_names().join(", "),
            values.len()
        )));
    }
    Params::from_slice(values).map_err(CliError::from)
}

pub struct FitOptions {
    pub data: PathBuf,
    pub family: Option<String>,
    pub baseline: Option<String>,
    pub methods: Vec<String>,
    pub seed: u64,
    pub starts: usize,
    pub tol: f64,
    pub max_iterations: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

fn fit_result_json(result: &FitResult, names: &[String], label: &str) -> Value {
    json!({
        "model": label,
        "method": result.method.name(),
        "estimates": named_values(names, &result.estimates),
        "std_errors": result.std_errors.as_ref().map(|se| named_values(names, se)),
        "objective_value": result.objective_value,
        "neg2_loglik": result.neg2_loglik,
        "converged": result.converged,
        "iterations": result.iterations,
    })
}

pub fn cmd_fit(opts: &FitOptions) -> Result<(), CliError> {
    let data = crate::ingest::ingest_csv(&opts.data)?;
    let (baseline, label) = resolve_family(opts.family.as_deref(), opts.baseline.as_deref())?;
    let methods = parse_methods(&opts.methods)?;
    let names = param_names(&baseline);

    let mut rows = Vec::new();
    for method in &methods {
        let config = FitConfig {
            method: *method,
            starts: opts.starts,
            max_iterations: opts.max_iterations,
            tolerance: opts.tol,
            seed: opts.seed,
        };
        rows.push(fit(&data, baseline.as_ref(), &config)?);
    }

    let content = match opts.format {
        Format::Json => {
            let arr: Vec<Value> = rows.iter().map(|r| fit_result_json(r, &names, &label)).collect();
            serde_json::to_string_pretty(&arr).expect("serializable")
        }
        Format::Csv => {
            let mut out = format!("model,method,converged,neg2_loglik,objective,{}\n", names.join(","));
            for r in &rows {
                let estimates: Vec<String> = r.estimates.iter().map(|v| sig6(*v)).collect();
                out.push_str(&format!(
                    "{label},{},{},{},{},{}\n",
                    r.method,
                    r.converged,
                    sig6(r.neg2_loglik),
                    sig6(r.objective_value),
                    estimates.join(",")
                ));
            }
            out
        }
    };
    write_out(opts.out.as_deref(), &content)
}

pub struct GofOptions {
    pub data: PathBuf,
    pub family: Option<String>,
    pub baseline: Option<String>,
    pub params: Option<Vec<f64>>,
    pub method: Vec<String>,
    pub seed: u64,
    pub starts: usize,
    pub tol: f64,
    pub max_iterations: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub fn cmd_gof(opts: &GofOptions) -> Result<(), CliError> {
    let data = crate::ingest::ingest_csv(&opts.data)?;
    let (baseline, label) = resolve_family(opts.family.as_deref(), opts.baseline.as_deref())?;
    let names = param_names(&baseline);

    let (params, fit_json) = match &opts.params {
        Some(values) => (params_from_flag(values, &baseline)?, None),
        None => {
            let method = *parse_methods(&opts.method)?.first().expect("defaulted");
            let config = FitConfig {
                method,
                starts: opts.starts,
                max_iterations: opts.max_iterations,
                tolerance: opts.tol,
                seed: opts.seed,
            };
            let result = fit(&data, baseline.as_ref(), &config)?;
            let j = fit_result_json(&result, &names, &label);
            (result.family_params()?, Some(j))
        }
    };

    let model = FamilyModel::new(params.clone(), baseline.clone());
    let report = gof_report(&model, &data)?;

    let content = match opts.format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "model": label,
            "params": named_values(&names, &params.to_vec()),
            "fit": fit_json,
            "gof": report,
        }))
        .expect("serializable"),
        Format::Csv => {
            let mut out =
                String::from("model,neg2_loglik,aic,caic,bic,hqic,w_star,a_star,ks_stat,ks_pvalue,n,k\n");
            out.push_str(&format!(
                "{label},{},{},{},{},{},{},{},{},{},{},{}\n",
                sig6(report.neg2_loglik),
                sig6(report.aic),
                sig6(report.caic),
                sig6(report.bic),
                sig6(report.hqic),
                sig6(report.w_star),
                sig6(report.a_star),
                sig6(report.ks_stat),
                sig6(report.ks_pvalue),
                report.n,
                report.k
            ));
            out
        }
    };
    write_out(opts.out.as_deref(), &content)
}

pub struct CompareOptions {
    pub data: PathBuf,
    pub models: Vec<String>,
    pub seed: u64,
    pub starts: usize,
    pub tol: f64,
    pub max_iterations: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

enum ModelChoice {
    Family(DynBaseline, String),
    Competitor(Competitor),
}

fn parse_models(spec: &[String]) -> Result<Vec<ModelChoice>, CliError> {
    let mut names = Vec::new();
    for entry in spec {
        for part in entry.split(',') {
            let part = part.trim().to_ascii_lowercase();
            if !part.is_empty() {
                names.push(part);
            }
        }
    }
    if names.is_empty() {
        names.push("t2gwe".into());
        names.extend(Competitor::ALL.iter().map(|c| c.name().to_string()));
    }
    names
        .iter()
        .map(|name| match name.as_str() {
            "t2gwe" | "t2gwu" | "t2gwp" => {
                let (baseline, label) = resolve_family(Some(name), None)?;
                Ok(ModelChoice::Family(baseline, label))
            }
            other => Competitor::parse(other)
                .map(ModelChoice::Competitor)
                .ok_or_else(|| CliError::Args(format!("unknown model `{other}`"))),
        })
        .collect()
}

struct CompareRow {
    model: String,
    outcome: Result<(Vec<String>, FitResult, gof::GofReport), String>,
}

pub fn cmd_compare(opts: &CompareOptions) -> Result<(), CliError> {
    let data = crate::ingest::ingest_csv(&opts.data)?;
    let models = parse_models(&opts.models)?;

    let mut rows: Vec<CompareRow> = Vec::new();
    for choice in &models {
        let config = FitConfig {
            method: Method::Mle,
            starts: opts.starts,
            max_iterations: opts.max_iterations,
            tolerance: opts.tol,
            seed: opts.seed,
        };
        match choice {
            ModelChoice::Family(baseline, label) => {
                let outcome = fit(&data, baseline.as_ref(), &config)
                    .map_err(|e| e.to_string())
                    .and_then(|result| {
                        let params = result.family_params().map_err(|e| e.to_string())?;
                        let model = FamilyModel::new(params, baseline.clone());
                        let report = gof_report(&model, &data).map_err(|e| e.to_string())?;
                        Ok((param_names(baseline), result, report))
                    });
                rows.push(CompareRow {
                    model: label.clone(),
                    outcome,
                });
            }
            ModelChoice::Competitor(competitor) => {
                let outcome = competitor_fit(*competitor, &data, &config)
                    .map_err(|e| e.to_string())
                    .and_then(|result| {
                        let model = CompetitorModel {
                            competitor: *competitor,
                            params: result.estimates.clone(),
                        };
                        let report = gof_report(&model, &data).map_err(|e| e.to_string())?;
                        let names = competitor.param_names().iter().map(|s| s.to_string()).collect();
                        Ok((names, result, report))
                    });
                rows.push(CompareRow {
                    model: competitor.name().to_string(),
                    outcome,
                });
            }
        }
    }

    // Successful rows sorted by AIC ascending, failures last.
    rows.sort_by(|a, b| {
        let key = |r: &CompareRow| match &r.outcome {
            Ok((_, _, report)) => report.aic,
            Err(_) => f64::INFINITY,
        };
        key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal)
    });

    let content = match opts.format {
        Format::Json => {
            let arr: Vec<Value> = rows
                .iter()
                .map(|row| match &row.outcome {
                    Ok((names, result, report)) => json!({
                        "model": row.model,
                        "estimates": named_values(names, &result.estimates),
                        "std_errors": result.std_errors.as_ref().map(|se| named_values(names, se)),
                        "converged": result.converged,
                        "gof": report,
                    }),
                    Err(message) => json!({ "model": row.model, "error": message }),
                })
                .collect();
            serde_json::to_string_pretty(&arr).expect("serializable")
        }
        Format::Csv => {
            let mut out = String::from(
                "model,estimates,neg2_loglik,aic,caic,bic,hqic,w_star,a_star,ks_stat,ks_pvalue\n",
            );
            for row in &rows {
                match &row.outcome {
                    Ok((names, result, report)) => {
                        let estimates: Vec<String> = names
                            .iter()
                            .zip(&result.estimates)
                            .enumerate()
                            .map(|(i, (n, v))| match &result.std_errors {
                                Some(se) => format!("{n}={} ({})", sig6(*v), sig6(se[i])),
                                None => format!("{n}={}", sig6(*v)),
                            })
                            .collect();
                        out.push_str(&format!(
                            "{},{},{},{},{},{},{},{},{},{},{}\n",
                            row.model,
                            estimates.join("; "),
                            sig6(report.neg2_loglik),
                            sig6(report.aic),
                            sig6(report.caic),
                            sig6(report.bic),
                            sig6(report.hqic),
                            sig6(report.w_star),
                            sig6(report.a_star),
                            sig6(report.ks_stat),
                            sig6(report.ks_pvalue)
                        ));
                    }
                    Err(message) => {
                        out.push_str(&format!("{},error: {},,,,,,,,,\n", row.model, message.replace(',', ";")));
                    }
                }
            }
            out
        }
    };
    write_out(opts.out.as_deref(), &content)
}

pub struct PropertiesOptions {
    pub family: Option<String>,
    pub baseline: Option<String>,
    pub params: Vec<f64>,
    pub moments: u32,
    pub renyi: Vec<f64>,
    pub mgf_t: Vec<f64>,
    pub quad_rel_tol: f64,
    pub quad_abs_tol: f64,
    pub out: Option<PathBuf>,
}

fn value_or_error<T: serde::Serialize>(r: Result<T, t2gwg::Error>) -> Value {
    match r {
        Ok(v) => json!(v),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

pub fn cmd_properties(opts: &PropertiesOptions) -> Result<(), CliError> {
    let (baseline, label) = resolve_family(opts.family.as_deref(), opts.baseline.as_deref())?;
    let params = params_from_flag(&opts.params, &baseline)?;
    let names = param_names(&baseline);
    let quad = QuadratureConfig {
        rel_tol: opts.quad_rel_tol,
        abs_tol: opts.quad_abs_tol,
        ..QuadratureConfig::default()
    };

    let mut doc = Map::new();
    doc.insert("model".into(), json!(label));
    doc.insert("params".into(), named_values(&names, &params.to_vec()));
    doc.insert(
        "median".into(),
        value_or_error(family::quantile(&params, baseline.as_ref(), 0.5)),
    );

    let mut raw = Map::new();
    for r in 1..=opts.moments {
        raw.insert(
            r.to_string(),
            value_or_error(properties::moment_raw(&params, baseline.as_ref(), r, &quad)),
        );
    }
    doc.insert("raw_moments".into(), Value::Object(raw));
    doc.insert(
        "summary".into(),
        value_or_error(properties::moment_summary(&params, baseline.as_ref(), &quad)),
    );
    doc.insert(
        "shannon_entropy".into(),
        value_or_error(properties::shannon_entropy(&params, baseline.as_ref(), &quad)),
    );

    if !opts.renyi.is_empty() {
        let mut renyi = Map::new();
        for &w in &opts.renyi {
            renyi.insert(
                format!("{w}"),
                value_or_error(properties::renyi_entropy(&params, baseline.as_ref(), w, &quad)),
            );
        }
        doc.insert("renyi_entropy".into(), Value::Object(renyi));
    }
    if !opts.mgf_t.is_empty() {
        let mut mgf = Map::new();
        for &t in &opts.mgf_t {
            mgf.insert(
                format!("{t}"),
                value_or_error(properties::mgf(&params, baseline.as_ref(), t, &quad)),
            );
        }
        doc.insert("mgf".into(), Value::Object(mgf));
    }

    let content = serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable");
    write_out(opts.out.as_deref(), &content)
}

pub struct SimulateOptions {
    pub truth: Vec<f64>,
    pub family: Option<String>,
    pub baseline: Option<String>,
    pub sizes: Vec<usize>,
    pub replications: usize,
    pub methods: Vec<String>,
    pub seed: u64,
    pub starts: usize,
    pub tol: f64,
    pub max_iterations: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub fn cmd_simulate(opts: &SimulateOptions) -> Result<(), CliError> {
    let (baseline, _) = resolve_family(opts.family.as_deref(), opts.baseline.as_deref())?;
    if opts.truth.len() != 2 + baseline.param_count() {
        return Err(CliError::Args(format!(
            "--truth needs {} values (alpha, beta, {})",
            2 + baseline.param_count(),
            baseline.param_names().join(", ")
        )));
    }
    let plan = SimPlan {
        alpha: opts.truth[0],
        beta: opts.truth[1],
        psi: opts.truth[2..].to_vec(),
        baseline: baseline.name().to_string(),
        sample_sizes: opts.sizes.clone(),
        replications: opts.replications,
        methods: parse_methods(&opts.methods)?,
        seed: opts.seed,
        fit_starts: opts.starts,
        fit_max_iterations: opts.max_iterations,
        fit_tolerance: opts.tol,
    };
    let report = run_simulation(&plan)?;
    let content = match opts.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable"),
        Format::Csv => report.to_csv(),
    };
    write_out(opts.out.as_deref(), &content)
}

pub struct CurvesOptions {
    pub data: PathBuf,
    pub family: Option<String>,
    pub baseline: Option<String>,
    pub params: Option<Vec<f64>>,
    pub seed: u64,
    pub starts: usize,
    pub tol: f64,
    pub max_iterations: usize,
    pub points: usize,
    pub out: PathBuf,
}

fn write_points(path: &Path, header: &str, rows: &[(f64, f64)]) -> Result<(), CliError> {
    let mut content = format!("{header}\n");
    for (x, y) in rows {
        content.push_str(&format!("{x},{y}\n"));
    }
    std::fs::write(path, content).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

pub fn cmd_curves(opts: &CurvesOptions) -> Result<(), CliError> {
    let data = crate::ingest::ingest_csv(&opts.data)?;
    let (baseline, _) = resolve_family(opts.family.as_deref(), opts.baseline.as_deref())?;

    let params = match &opts.params {
        Some(values) => params_from_flag(values, &baseline)?,
        None => {
            let config = FitConfig {
                method: Method::Mle,
                starts: opts.starts,
                max_iterations: opts.max_iterations,
                tolerance: opts.tol,
                seed: opts.seed,
            };
            fit(&data, baseline.as_ref(), &config)?.family_params()?
        }
    };

    std::fs::create_dir_all(&opts.out)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", opts.out.display())))?;

    write_points(&opts.out.join("ecdf.csv"), "x,ecdf", &gof::ecdf_points(&data))?;
    write_points(&opts.out.join("km_survival.csv"), "x,survival", &gof::km_survival_points(&data))?;
    write_points(&opts.out.join("ttt.csv"), "i_over_n,scaled_ttt", &gof::ttt_points(&data))?;

    let model = FamilyModel::new(params.clone(), baseline.clone());
    let (support_lo, support_hi) = baseline.support(params.psi());
    let lo = support_lo.max(data.min() * 1e-3);
    let hi = if support_hi.is_finite() {
        support_hi
    } else {
        data.max() * 1.05
    };
    let curve = gof::theoretical_curves(&model, lo, hi, opts.points)?;

    let mut theoretical = String::from("x,cdf,survival\n");
    let mut hazard_rows = String::from("x,hazard\n");
    for point in &curve {
        theoretical.push_str(&format!("{},{},{}\n", point.x, point.cdf, point.survival));
        hazard_rows.push_str(&format!("{},{}\n", point.x, point.hazard));
    }
    std::fs::write(opts.out.join("theoretical.csv"), theoretical)
        .map_err(|e| CliError::Io(format!("cannot write theoretical.csv: {e}")))?;
    std::fs::write(opts.out.join("hazard.csv"), hazard_rows)
        .map_err(|e| CliError::Io(format!("cannot write hazard.csv: {e}")))?;

    let mut histogram = String::from("left,right,density,fitted_pdf_at_mid\n");
    for bin in gof::fd_histogram(&data) {
        let mid = 0.5 * (bin.left + bin.right);
        let fitted = model.log_pdf(mid.clamp(support_lo, support_hi)).map(f64::exp).unwrap_or(f64::NAN);
        histogram.push_str(&format!("{},{},{},{}\n", bin.left, bin.right, bin.density, fitted));
    }
    std::fs::write(opts.out.join("histogram_density.csv"), histogram)
        .map_err(|e| CliError::Io(format!("cannot write histogram_density.csv: {e}")))?;

    println!(
        "wrote ecdf.csv, km_survival.csv, ttt.csv, theoretical.csv, hazard.csv, histogram_density.csv to {}",
        opts.out.display()
    );
    Ok(())
}
