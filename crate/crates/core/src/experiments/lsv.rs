//! Least singular value of random matrices and the Edelman law.

use nalgebra::{DMatrix, DVector, SVD};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::{trial_rng, EnsembleKind, EnsembleSpec};
use crate::error::{Error, Result};

pub const LSV_LIMIT: usize = 400;
pub const LSV_TOLERANCE: f64 = 1e-10;
pub const LSV_MAX_ITERATIONS: usize = 2000;

/// `P(√n σ_n ≤ t)` in the Gaussian limit: `1 − e^{−t − t²/2}`.
pub fn edelman_cdf(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    -(-t - 0.5 * t * t).exp_m1()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SigmaMin {
    pub value: f64,
    pub iterations: usize,
    /// Inverse iteration did not settle and the full SVD was used.
    pub fallback: bool,
}

/// Smallest singular value: QR, then inverse iteration on `RᵀR`.
pub fn sigma_min(a: &DMatrix<f64>) -> Option<SigmaMin> {
    let n = a.ncols();
    if n == 0 || a.nrows() != n {
        return None;
    }
    let r = a.clone().qr().r();
    if (0..n).any(|i| r[(i, i)] == 0.0) {
        return Some(SigmaMin { value: 0.0, iterations: 0, fallback: false });
    }
    let mut x = DVector::from_fn(n, |i, _| 1.0 + (i % 7) as f64 / 7.0);
    x /= x.norm();
    let mut prev = f64::INFINITY;
    for it in 1..=LSV_MAX_ITERATIONS {
        let y = r.tr_solve_upper_triangular(&x)?;
        let z = r.solve_upper_triangular(&y)?;
        let norm = z.norm();
        if !norm.is_finite() || norm == 0.0 {
            break;
        }
        // Rayleigh-type estimate of σ²
        let lambda = 1.0 / norm;
        x = z / norm;
        if (lambda - prev).abs() <= LSV_TOLERANCE * lambda {
            return Some(SigmaMin { value: lambda.sqrt(), iterations: it, fallback: false });
        }
        prev = lambda;
    }
    let svd = SVD::try_new(a.clone(), false, false, f64::EPSILON, 0)?;
    Some(SigmaMin {
        value: svd.singular_values.min(),
        iterations: LSV_MAX_ITERATIONS,
        fallback: true,
    })
}

fn sample<R: Rng>(spec: &EnsembleSpec, rng: &mut R) -> DMatrix<f64> {
    let n = spec.n;
    match spec.kind {
        EnsembleKind::GaussianIid => DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal)),
        EnsembleKind::BernoulliIid => DMatrix::from_fn(n, n, |_, _| if rng.random::<bool>() { 1.0 } else { -1.0 }),
        EnsembleKind::BernoulliSymmetric => {
            let mut m = DMatrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let v = if rng.random::<bool>() { 1.0 } else { -1.0 };
                    m[(i, j)] = v;
                    m[(j, i)] = v;
                }
            }
            m
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LsvSample {
    pub spec: EnsembleSpec,
    pub trials: u64,
    pub master_seed: u64,
    /// `√n σ_n` per trial; `None` where both attempts failed.
    pub by_trial: Vec<Option<f64>>,
    /// Successful values, ascending.
    pub sorted: Vec<f64>,
    /// `(q, value)` at q ∈ {0.1, 0.25, 0.5, 0.75, 0.9}.
    pub quantiles: Vec<(f64, f64)>,
    pub fallbacks: u64,
    pub failures: u64,
}

impl LsvSample {
    pub fn empirical_cdf(&self, t: f64) -> f64 {
        if self.sorted.is_empty() {
            return 0.0;
        }
        self.sorted.partition_point(|v| *v <= t) as f64 / self.sorted.len() as f64
    }

    /// Dvoretzky–Kiefer–Wolfowitz half-width at confidence `1 − alpha`.
    pub fn dkw_band(&self, alpha: f64) -> f64 {
        if self.sorted.is_empty() {
            return 1.0;
        }
        ((2.0 / alpha).ln() / (2.0 * self.sorted.len() as f64)).sqrt()
    }

    /// CSV `trial,sigma_min_scaled`; failed trials have an empty value.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["trial", "sigma_min_scaled"])?;
        for (i, v) in self.by_trial.iter().enumerate() {
            w.write_record([i.to_string(), v.map(|x| format!("{x:.12e}")).unwrap_or_default()])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Empirical law of `√n σ_n`. A failed trial is retried once on a fresh draw
/// from the same stream, then recorded as a failure.
pub fn least_singular_value_mc(spec: &EnsembleSpec, trials: u64, seed: u64) -> Result<LsvSample> {
    if spec.n > LSV_LIMIT {
        return Err(Error::budget("matrix size", spec.n, LSV_LIMIT));
    }
    let scale = (spec.n as f64).sqrt();
    let results: Vec<Option<SigmaMin>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            sigma_min(&sample(spec, &mut rng)).or_else(|| sigma_min(&sample(spec, &mut rng)))
        })
        .collect();
    let by_trial: Vec<Option<f64>> = results.iter().map(|r| r.map(|s| s.value * scale)).collect();
    let mut sorted: Vec<f64> = by_trial.iter().flatten().copied().collect();
    sorted.sort_by(f64::total_cmp);
    let quantiles = if sorted.is_empty() {
        Vec::new()
    } else {
        [0.1, 0.25, 0.5, 0.75, 0.9].iter().map(|&q| (q, quantile(&sorted, q))).collect()
    };
    Ok(LsvSample {
        spec: *spec,
        trials,
        master_seed: seed,
        fallbacks: results.iter().flatten().filter(|s| s.fallback).count() as u64,
        failures: results.iter().filter(|r| r.is_none()).count() as u64,
        by_trial,
        sorted,
        quantiles,
    })
}
