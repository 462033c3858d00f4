//! Fitting the fusion weights: L2-regularized logistic regression on the
//! three axis scores, full-batch projected gradient descent from a seeded
//! start. Axis weights are kept nonnegative throughout.

use log::info;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{fuse, FusionWeights};
use crate::error::{Error, Result};
use crate::stats::logistic;

pub const MIN_EXAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabeledScores {
    /// `[deception, coordination, agenda]`.
    pub x: [f64; 3],
    pub orchestrated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CalibrateParams {
    pub learning_rate: f64,
    pub max_iters: usize,
    /// Stop once the gradient's max-norm falls below this.
    pub tolerance: f64,
    /// Penalty on the three axis weights (not the bias).
    pub l2: f64,
    /// Set from the pipeline's top-level seed, not from config sections.
    #[serde(skip)]
    pub seed: u64,
    pub min_examples: usize,
}

impl Default for CalibrateParams {
    fn default() -> Self {
        Self {
            learning_rate: 1.0,
            max_iters: 20_000,
            tolerance: 1e-7,
            l2: 1e-3,
            seed: 7,
            min_examples: MIN_EXAMPLES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub weights: FusionWeights,
    pub training_accuracy: f64,
    pub log_loss: f64,
    pub iterations: usize,
    pub examples: usize,
    pub positives: usize,
    /// Axis weights held at zero by the nonnegativity constraint.
    pub projected: Vec<String>,
}

fn z(p: &[f64; 4], x: &[f64; 3]) -> f64 {
    p[0] * x[0] + p[1] * x[1] + p[2] * x[2] + p[3]
}

/// Mean negative log-likelihood plus `l2 / 2 * |w|^2` over the axis weights.
/// `p` is `[w_d, w_c, w_a, bias]`.
pub fn log_loss(p: &[f64; 4], data: &[LabeledScores], l2: f64) -> f64 {
    let n = data.len().max(1) as f64;
    let nll: f64 = data
        .iter()
        .map(|e| {
            let s = z(p, &e.x);
            // log(1 + e^s) - y*s, stable in both tails
            let softplus = if s > 0.0 {
                s + (-s).exp().ln_1p()
            } else {
                s.exp().ln_1p()
            };
            softplus - if e.orchestrated { s } else { 0.0 }
        })
        .sum();
    nll / n + 0.5 * l2 * (p[0] * p[0] + p[1] * p[1] + p[2] * p[2])
}

/// Analytic gradient of [`log_loss`].
pub fn gradient(p: &[f64; 4], data: &[LabeledScores], l2: f64) -> [f64; 4] {
    let n = data.len().max(1) as f64;
    let mut g = [0.0; 4];
    for e in data {
        let r = logistic(z(p, &e.x)) - if e.orchestrated { 1.0 } else { 0.0 };
        for (gk, xk) in g.iter_mut().zip(&e.x) {
            *gk += r * xk;
        }
        g[3] += r;
    }
    for gk in &mut g {
        *gk /= n;
    }
    for k in 0..3 {
        g[k] += l2 * p[k];
    }
    g
}

/// Gradient with components pushing a zero axis weight negative removed.
fn projected_gradient(p: &[f64; 4], g: &[f64; 4]) -> [f64; 4] {
    let mut out = *g;
    for k in 0..3 {
        if p[k] <= 0.0 && g[k] > 0.0 {
            out[k] = 0.0;
        }
    }
    out
}

pub fn accuracy(w: &FusionWeights, data: &[LabeledScores]) -> f64 {
    if data.is_empty() {
        return 0.0;
    }
    let correct = data
        .iter()
        .filter(|e| fuse(e.x[0], e.x[1], e.x[2], w).1.is_orchestrated() == e.orchestrated)
        .count();
    correct as f64 / data.len() as f64
}

pub fn calibrate(data: &[LabeledScores], params: &CalibrateParams) -> Result<Calibration> {
    let positives = data.iter().filter(|e| e.orchestrated).count();
    let negatives = data.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(Error::DegenerateLabels { positives, negatives });
    }
    if data.len() < params.min_examples {
        return Err(Error::Config(format!(
            "calibration needs at least {} labeled narratives, got {}",
            params.min_examples,
            data.len()
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut p = [0.0f64; 4];
    for v in &mut p {
        *v = rng.random_range(-0.01..0.01);
    }
    let mut iterations = 0;
    for it in 0..params.max_iters {
        let g = gradient(&p, data, params.l2);
        iterations = it + 1;
        if projected_gradient(&p, &g).iter().all(|v| v.abs() < params.tolerance) {
            break;
        }
        for k in 0..4 {
            p[k] -= params.learning_rate * g[k];
        }
        // keep axis weights in the nonnegative orthant
        for v in &mut p[..3] {
            *v = v.max(0.0);
        }
    }

    // axis weights the constraint holds at zero
    let g = gradient(&p, data, params.l2);
    let names = ["deception", "coordination", "agenda"];
    let mut projected = Vec::new();
    for k in 0..3 {
        if p[k] == 0.0 && g[k] > 0.0 {
            info!(
                "calibrate: {} weight held at 0 by the nonnegativity constraint",
                names[k]
            );
            projected.push(names[k].to_string());
        }
    }

    let weights = FusionWeights::from_array(p);
    Ok(Calibration {
        training_accuracy: accuracy(&weights, data),
        log_loss: log_loss(&p, data, params.l2),
        weights,
        iterations,
        examples: data.len(),
        positives,
        projected,
    })
}
