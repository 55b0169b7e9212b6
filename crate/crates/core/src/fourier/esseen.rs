//! Characteristic-function bound for the mass of an interval.
//!
//! With the triangular kernel `k(t) = (1 − |t|)₊` (the self-convolution of the
//! indicator of `[−1/2, 1/2]`), `K(x) = ∫ e^{ixt} k(t) dt = sinc²(x/2)`. It is
//! nonnegative everywhere and decreasing on `[0, 2π]`, so for every `x₀`
//!
//! `P(|X − x₀| ≤ 1) · K(1) ≤ ∫ K(x − x₀) dH(x) = |∫ k(t) e^{−itx₀} h(t) dt| ≤ ∫_{|t|≤1} |h(t)| dt`.
//!
//! One interval of radius 1 covers the unit ball, giving `C = 1/sinc²(1/2)`.

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiset::CoefficientMultiset;
use crate::rational::{to_f64, Rational};
use crate::sign::SignDistribution;

/// `1 / sinc²(1/2) ≈ 1.08766`.
pub fn esseen_constant() -> f64 {
    let s = 0.5f64.sin() / 0.5;
    1.0 / (s * s)
}

#[derive(Clone, Debug, Serialize)]
pub struct EsseenBound {
    pub constant: f64,
    pub integral: f64,
    pub integral_error: f64,
    /// `C·(integral + error)`: the value to compare against.
    pub bound: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct QuadratureConfig {
    pub tolerance: f64,
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            tolerance: 1e-10,
            max_depth: 40,
        }
    }
}

/// `|E exp(i t S)|` for `S = Σ aᵢξᵢ`.
fn char_abs(a: &[f64], xi: &[(f64, f64)], t: f64) -> f64 {
    a.iter()
        .map(|&ai| {
            let (mut re, mut im) = (0.0, 0.0);
            for &(v, p) in xi {
                let phase = t * ai * v;
                re += p * phase.cos();
                im += p * phase.sin();
            }
            (re * re + im * im).sqrt()
        })
        .product()
}

/// Bound on `sup_x P(|S_A − x| ≤ β)`.
pub fn esseen_bound(a: &CoefficientMultiset, xi: &SignDistribution, beta: &Rational) -> Result<EsseenBound> {
    esseen_bound_with(a, xi, beta, QuadratureConfig::default())
}

pub fn esseen_bound_with(a: &CoefficientMultiset, xi: &SignDistribution, beta: &Rational, cfg: QuadratureConfig) -> Result<EsseenBound> {
    if !beta.is_positive() {
        return Err(Error::invalid("β must be positive"));
    }
    let b = to_f64(beta);
    let entries: Vec<f64> = a.as_scalars()?.iter().map(|x| to_f64(x) / b).collect();
    let law: Vec<(f64, f64)> = xi.support().iter().map(|(v, p)| (to_f64(v), to_f64(p))).collect();
    let f = |t: f64| char_abs(&entries, &law, t);
    // the integrand is even
    let (half, err) = adaptive_simpson(&f, 0.0, 1.0, cfg)?;
    let integral = 2.0 * half;
    let integral_error = 2.0 * err;
    let constant = esseen_constant();
    Ok(EsseenBound {
        constant,
        integral,
        integral_error,
        bound: constant * (integral + integral_error),
    })
}

/// Adaptive Simpson; returns the estimate and the accumulated Richardson
/// error estimate.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, cfg: QuadratureConfig) -> Result<(f64, f64)> {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut failed = false;
    // start below the top level so narrow features are not skipped
    let (v, e) = simpson_step(f, a, b, fa, fm, fb, whole, cfg.tolerance, cfg.max_depth, 4, &mut failed);
    if failed {
        return Err(Error::Quadrature { estimate: v, error: e });
    }
    Ok((v, e))
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    forced: u32,
    failed: &mut bool,
) -> (f64, f64) {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if forced == 0 && delta.abs() <= 15.0 * tol {
        return (left + right + delta / 15.0, delta.abs() / 15.0);
    }
    if depth == 0 {
        *failed = *failed || delta.abs() > 15.0 * tol;
        return (left + right + delta / 15.0, delta.abs() / 15.0);
    }
    let next_forced = forced.saturating_sub(1);
    let (lv, le) = simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, next_forced, failed);
    let (rv, re) = simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, next_forced, failed);
    (lv + rv, le + re)
}
