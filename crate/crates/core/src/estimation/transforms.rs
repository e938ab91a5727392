//! Parameter transforms mapping constrained parameters to the unconstrained
//! space the optimizer works in.

use crate::baseline::{Baseline, ParamDomain};
use crate::dataset::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub enum Transform {
    /// θ = e^z, for positive parameters.
    Log,
    /// θ = lo + e^z, for parameters that must stay above `lo`.
    LogShifted { lo: f64 },
    /// θ = hi · σ(z), for parameters confined to (0, hi).
    LogitScaled { hi: f64 },
}

impl Transform {
    pub fn to_natural(self, z: f64) -> f64 {
        match self {
            Transform::Log => z.exp(),
            Transform::LogShifted { lo } => lo + z.exp(),
            Transform::LogitScaled { hi } => hi / (1.0 + (-z).exp()),
        }
    }

    pub fn to_z(self, theta: f64) -> f64 {
        match self {
            Transform::Log => theta.ln(),
            Transform::LogShifted { lo } => (theta - lo).ln(),
            Transform::LogitScaled { hi } => (theta / (hi - theta)).ln(),
        }
    }

    /// dθ/dz, for chain-ruling gradients into z space.
    pub fn jacobian(self, z: f64) -> f64 {
        match self {
            Transform::Log => z.exp(),
            Transform::LogShifted { .. } => z.exp(),
            Transform::LogitScaled { hi } => {
                let s = 1.0 / (1.0 + (-z).exp());
                hi * s * (1.0 - s)
            }
        }
    }
}

/// Transforms for the family parameter vector [α, β, ψ...]: α and β are
/// log-transformed, ψ components follow their declared domains with the
/// data-dependent bounds the support constraints require.
pub fn family_transforms(baseline: &dyn Baseline<f64>, data: &Dataset) -> Result<Vec<Transform>> {
    let mut out = vec![Transform::Log, Transform::Log];
    for k in 0..baseline.param_count() {
        out.push(match baseline.param_domain(k) {
            ParamDomain::Positive => Transform::Log,
            ParamDomain::AboveDataMax => Transform::LogShifted {
                lo: data.max() * (1.0 + 1e-9),
            },
            ParamDomain::BelowDataMin => {
                let hi = data.min() * (1.0 - 1e-9);
                if hi <= 0.0 {
                    return Err(Error::InvalidData(format!(
                        "baseline `{}` requires strictly positive data",
                        baseline.name()
                    )));
                }
                Transform::LogitScaled { hi }
            }
        });
    }
    Ok(out)
}

pub fn to_natural(transforms: &[Transform], z: &[f64]) -> Vec<f64> {
    transforms.iter().zip(z).map(|(t, &zi)| t.to_natural(zi)).collect()
}

pub fn to_z(transforms: &[Transform], theta: &[f64]) -> Vec<f64> {
    transforms.iter().zip(theta).map(|(t, &ti)| t.to_z(ti)).collect()
}
