//! Gradient suite: analytic gradients of all six objectives against central
//! finite differences at random interior points, for every baseline.

use std::sync::Arc;

use t2gwg::estimation::{gradient, objective, Method};
use t2gwg::family::sample;
use t2gwg::rng::SplitMix64;
use t2gwg::{Dataset, DynBaseline, Exponential, Params, Pareto, Uniform};

fn random_point(rng: &mut SplitMix64, dims: usize) -> Vec<f64> {
    (0..dims).map(|_| (rng.next_in(-1.0, 1.0)).exp()).collect()
}

/// Random parameter points kept feasible for the given data by construction:
/// uniform γ above the data max, Pareto θ below the data min.
fn feasible_params(rng: &mut SplitMix64, baseline: &str, data: &Dataset) -> Params<f64> {
    let alpha = rng.next_in(-1.0, 1.0).exp();
    let beta = rng.next_in(-0.7, 0.7).exp();
    match baseline {
        "exponential" => Params::new(alpha, beta, vec![rng.next_in(-1.0, 1.0).exp()]).unwrap(),
        "uniform" => Params::new(alpha, beta, vec![data.max() * rng.next_in(1.05, 3.0)]).unwrap(),
        "pareto" => Params::new(
            alpha,
            beta,
            vec![data.min() * rng.next_in(0.3, 0.95), rng.next_in(-0.5, 1.0).exp()],
        )
        .unwrap(),
        _ => unreachable!(),
    }
}

fn check_method(method: Method, baseline: &DynBaseline, data: &Dataset, rng: &mut SplitMix64, points: usize) {
    for trial in 0..points {
        let params = feasible_params(rng, baseline.name(), data);
        let value = objective(method, &params, baseline.as_ref(), data);
        if !value.is_finite() {
            continue;
        }
        let g = gradient(method, &params, baseline.as_ref(), data);
        let theta = params.to_vec();
        for j in 0..theta.len() {
            let h = 1e-6 * theta[j].abs().max(1.0);
            let mut up = theta.clone();
            let mut dn = theta.clone();
            up[j] += h;
            dn[j] -= h;
            let fu = objective(method, &Params::from_slice(&up).unwrap(), baseline.as_ref(), data);
            let fd_val = objective(method, &Params::from_slice(&dn).unwrap(), baseline.as_ref(), data);
            if !fu.is_finite() || !fd_val.is_finite() {
                continue;
            }
            let fd = (fu - fd_val) / (2.0 * h);
            let scale = g[j].abs().max(fd.abs()).max(1e-4);
            assert!(
                (g[j] - fd).abs() <= 1e-5 * scale,
                "{method} on {} trial {trial} component {j}: analytic {} vs fd {}",
                baseline.name(),
                g[j],
                fd
            );
        }
    }
}

#[test]
fn gradients_match_finite_differences_everywhere() {
    let mut rng = SplitMix64::new(20240517);
    let baselines: Vec<DynBaseline> = vec![Arc::new(Exponential), Arc::new(Uniform), Arc::new(Pareto)];
    for baseline in &baselines {
        let truth = match baseline.name() {
            "exponential" => Params::new(2.5, 0.8, vec![1.3]).unwrap(),
            "uniform" => Params::new(0.8, 1.2, vec![2.0]).unwrap(),
            _ => Params::new(1.5, 0.9, vec![1.0, 2.0]).unwrap(),
        };
        let xs = sample(&truth, baseline.as_ref(), 30, 99).unwrap();
        let data = Dataset::new(xs).unwrap();
        for method in Method::ALL {
            check_method(method, baseline, &data, &mut rng, 12);
        }
    }
}

#[test]
fn gradient_on_tied_data() {
    // MPS with exact duplicates switches the tied spacing to the density;
    // its gradient must still agree with finite differences.
    let data = Dataset::new(vec![0.4, 0.8, 0.8, 1.5, 2.0]).unwrap();
    let mut rng = SplitMix64::new(5);
    for _ in 0..6 {
        let v = random_point(&mut rng, 3);
        let params = Params::new(v[0], v[1], vec![v[2]]).unwrap();
        let value = objective(Method::Mps, &params, &Exponential, &data);
        assert!(value.is_finite());
        let g = gradient(Method::Mps, &params, &Exponential, &data);
        let theta = params.to_vec();
        for j in 0..3 {
            let h = 1e-6 * theta[j].max(1.0);
            let mut up = theta.clone();
            let mut dn = theta.clone();
            up[j] += h;
            dn[j] -= h;
            let fu = objective(Method::Mps, &Params::from_slice(&up).unwrap(), &Exponential, &data);
            let fdv = objective(Method::Mps, &Params::from_slice(&dn).unwrap(), &Exponential, &data);
            let fd = (fu - fdv) / (2.0 * h);
            let scale = g[j].abs().max(fd.abs()).max(1e-4);
            assert!((g[j] - fd).abs() <= 1e-5 * scale, "component {j}: {} vs {fd}", g[j]);
        }
    }
}

#[test]
fn stationarity_at_fitted_optimum() {
    use t2gwg::estimation::{fit, mle_gradient, FitConfig};
    let truth = Params::new(2.5, 0.8, vec![1.3]).unwrap();
    let xs = sample(&truth, &Exponential, 200, 31).unwrap();
    let data = Dataset::new(xs).unwrap();
    let cfg = FitConfig {
        starts: 4,
        ..FitConfig::new(Method::Mle)
    };
    let result = fit(&data, &Exponential, &cfg).unwrap();
    assert!(result.converged);
    let params = result.family_params().unwrap();
    let g = mle_gradient(&params, &Exponential, &data);
    let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
    assert!(norm < 1e-3, "gradient norm at optimum: {norm}");
}
