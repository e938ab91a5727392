//! Derivative-free simplex driver with multi-start and a Newton polish.
//!
//! Objectives are cheap and at most four-dimensional, so Nelder–Mead over
//! the transformed space is the workhorse; it tolerates the +∞ sentinel
//! regions that mark infeasible parameters. When a gradient is available the
//! best point is polished with damped Newton steps (Hessian from finite
//! differences of the gradient), which pins down stationarity far better
//! than the simplex alone.

use crate::linalg::spd_inverse;
use crate::rng::SplitMix64;

pub struct NelderMeadOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub simplex_diameter: f64,
}

/// Standard Nelder–Mead with reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2. Stops when the value spread falls below `tol` relative to the
/// best value, or after `max_iter` iterations.
pub fn nelder_mead(
    f: &dyn Fn(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    tol: f64,
    max_iter: usize,
) -> NelderMeadOutcome {
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    let mut iterations = 0;

    for _ in 0..max_iter {
        // Order: best first.
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(std::cmp::Ordering::Equal));
        let reordered: Vec<Vec<f64>> = order.iter().map(|&i| simplex[i].clone()).collect();
        let reordered_vals: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        simplex = reordered;
        values = reordered_vals;

        let best = values[0];
        let worst = values[n];
        if worst.is_finite() && (worst - best).abs() <= tol * (best.abs() + tol) {
            break;
        }
        iterations += 1;

        // Centroid of all but the worst.
        let mut centroid = vec![0.0; n];
        for v in simplex.iter().take(n) {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }

        let lerp = |from: &[f64], coeff: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(from)
                .map(|(c, x)| c + coeff * (c - x))
                .collect()
        };

        let reflected = lerp(&simplex[n], 1.0);
        let f_reflected = f(&reflected);

        if f_reflected < values[0] {
            let expanded = lerp(&simplex[n], 2.0);
            let f_expanded = f(&expanded);
            if f_expanded < f_reflected {
                simplex[n] = expanded;
                values[n] = f_expanded;
            } else {
                simplex[n] = reflected;
                values[n] = f_reflected;
            }
        } else if f_reflected < values[n - 1] {
            simplex[n] = reflected;
            values[n] = f_reflected;
        } else {
            let (contracted, f_contracted) = if f_reflected < values[n] {
                let c = lerp(&simplex[n], 0.5);
                let fc = f(&c);
                (c, fc)
            } else {
                let c = lerp(&simplex[n], -0.5);
                let fc = f(&c);
                (c, fc)
            };
            if f_contracted < values[n].min(f_reflected) {
                simplex[n] = contracted;
                values[n] = f_contracted;
            } else {
                // Shrink towards the best vertex.
                let best_vertex = simplex[0].clone();
                for i in 1..=n {
                    for (x, b) in simplex[i].iter_mut().zip(&best_vertex) {
                        *x = b + 0.5 * (*x - b);
                    }
                    values[i] = f(&simplex[i]);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..=n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(std::cmp::Ordering::Equal));
    let best = order[0];
    let diameter = simplex
        .iter()
        .map(|v| {
            v.iter()
                .zip(&simplex[best])
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max)
        })
        .fold(0.0f64, f64::max);
    NelderMeadOutcome {
        x: simplex[best].clone(),
        value: values[best],
        iterations,
        simplex_diameter: diameter,
    }
}

/// Damped Newton refinement. `grad` returns None where no gradient exists;
/// the Hessian is a symmetrized finite difference of the gradient. Falls
/// back to scaled steepest descent when the Hessian is not positive
/// definite. Returns the refined point, value and the final gradient norm.
pub fn newton_polish(
    f: &dyn Fn(&[f64]) -> f64,
    grad: &dyn Fn(&[f64]) -> Option<Vec<f64>>,
    mut x: Vec<f64>,
    mut value: f64,
    max_steps: usize,
) -> (Vec<f64>, f64, Option<f64>) {
    let n = x.len();
    let mut grad_norm = None;

    for _ in 0..max_steps {
        let g = match grad(&x) {
            Some(g) if g.iter().all(|v| v.is_finite()) => g,
            _ => break,
        };
        let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        grad_norm = Some(norm);
        if norm < 1e-12 {
            break;
        }

        // Hessian via central differences of the gradient.
        let mut hess = vec![0.0; n * n];
        let mut ok = true;
        for i in 0..n {
            let h = 1e-5 * x[i].abs().max(0.01);
            let mut up = x.clone();
            let mut dn = x.clone();
            up[i] += h;
            dn[i] -= h;
            match (grad(&up), grad(&dn)) {
                (Some(gu), Some(gd)) => {
                    for j in 0..n {
                        hess[i * n + j] = (gu[j] - gd[j]) / (2.0 * h);
                    }
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            break;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (hess[i * n + j] + hess[j * n + i]);
                hess[i * n + j] = avg;
                hess[j * n + i] = avg;
            }
        }

        // Newton direction, or steepest descent when not PD.
        let direction: Vec<f64> = match spd_inverse(&hess, n) {
            Some(inv) => (0..n)
                .map(|i| -(0..n).map(|j| inv[i * n + j] * g[j]).sum::<f64>())
                .collect(),
            None => g.iter().map(|v| -v / norm.max(1.0)).collect(),
        };

        // Backtracking line search.
        let mut scale = 1.0;
        let mut improved = false;
        for _ in 0..20 {
            let candidate: Vec<f64> = x.iter().zip(&direction).map(|(xi, di)| xi + scale * di).collect();
            let cv = f(&candidate);
            if cv < value {
                x = candidate;
                value = cv;
                improved = true;
                break;
            }
            scale *= 0.5;
        }
        if !improved {
            break;
        }
    }

    if let Some(g) = grad(&x) {
        if g.iter().all(|v| v.is_finite()) {
            grad_norm = Some(g.iter().map(|v| v * v).sum::<f64>().sqrt());
        }
    }
    (x, value, grad_norm)
}

pub struct DriverOptions {
    pub starts: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub polish_steps: usize,
}

pub struct DriverOutcome {
    pub z: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub simplex_diameter: f64,
    pub grad_norm: Option<f64>,
}

/// Multi-start Nelder–Mead with deterministic jitter and optional Newton
/// polish. Start 0 is the caller's seed point; later starts jitter each
/// coordinate by a log-uniform factor in [1/4, 4]. Ties between starts are
/// broken by the lower start index because strict `<` keeps the earlier
/// winner.
pub fn multi_start(
    f: &dyn Fn(&[f64]) -> f64,
    grad: Option<&dyn Fn(&[f64]) -> Option<Vec<f64>>>,
    z0: &[f64],
    opts: &DriverOptions,
) -> DriverOutcome {
    let mut rng = SplitMix64::new(opts.seed);
    let ln4 = 4.0f64.ln();

    let mut best: Option<NelderMeadOutcome> = None;
    let mut total_iterations = 0;
    for s in 0..opts.starts.max(1) {
        let start: Vec<f64> = if s == 0 {
            z0.to_vec()
        } else {
            z0.iter().map(|z| z + rng.next_in(-ln4, ln4)).collect()
        };
        let outcome = nelder_mead(f, &start, 0.3, opts.tolerance, opts.max_iterations);
        total_iterations += outcome.iterations;
        let better = match &best {
            None => true,
            Some(b) => outcome.value < b.value,
        };
        if better {
            best = Some(outcome);
        }
    }
    let best = best.expect("at least one start");

    let (z, value, grad_norm) = match grad {
        Some(g) => newton_polish(f, g, best.x, best.value, opts.polish_steps),
        None => (best.x, best.value, None),
    };

    DriverOutcome {
        z,
        value,
        iterations: total_iterations,
        simplex_diameter: best.simplex_diameter,
        grad_norm,
    }
}
