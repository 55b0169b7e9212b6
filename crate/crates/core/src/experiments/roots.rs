//! Common roots of pairs of random `±1` polynomials, decided by exact gcd.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use super::{count_trials, McReport};
use crate::binomial::binomial;
use crate::error::{Error, Result};
use crate::numtheory::inv_mod;
use crate::rational::{format_rational, Rational};

pub const COMMON_ROOT_DEGREE_LIMIT: usize = 60;
const GCD_PRIME: u64 = 2_147_483_647;

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree of `gcd(a, b)` over `𝔽_p` (coefficients low to high); `None` when
/// both vanish mod `p`. An upper bound for the degree over `ℚ` when `p` does
/// not divide both leading coefficients.
pub fn poly_gcd_degree_mod_p(a: &[i64], b: &[i64], p: u64) -> Option<usize> {
    let red = |v: &[i64]| -> Vec<u64> {
        let mut r: Vec<u64> = v.iter().map(|c| c.rem_euclid(p as i64) as u64).collect();
        trim(&mut r);
        r
    };
    let (mut f, mut g) = (red(a), red(b));
    while !g.is_empty() {
        // f mod g
        let inv = inv_mod(*g.last().unwrap(), p);
        while f.len() >= g.len() {
            let c = f.last().unwrap() * inv % p;
            let shift = f.len() - g.len();
            for (i, gi) in g.iter().enumerate() {
                let t = c * gi % p;
                f[shift + i] = (f[shift + i] + p - t) % p;
            }
            trim(&mut f);
            if f.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut f, &mut g);
    }
    if f.is_empty() { None } else { Some(f.len() - 1) }
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    let c = content(&p);
    if !c.is_zero() && !c.is_one() {
        for x in p.iter_mut() {
            *x /= &c;
        }
    }
    if p.last().is_some_and(|l| l.is_negative()) {
        for x in p.iter_mut() {
            *x = -&*x;
        }
    }
    p
}

/// `lc(b)^{deg a − deg b + 1}·a mod b`.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &lr * bi;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd over `ℤ[x]` by the primitive remainder sequence, normalized
/// to a positive leading coefficient.
pub fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut f = primitive(a.to_vec());
    let mut g = primitive(b.to_vec());
    trim(&mut f);
    trim(&mut g);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let r = primitive(pseudo_remainder(&f, &g));
        f = g;
        g = r;
    }
    primitive(f)
}

/// Exact: `gcd(a, b)` has degree at least one.
pub fn has_common_root(a: &[i64], b: &[i64]) -> bool {
    let lead_ok = |v: &[i64]| v.iter().rev().find(|c| **c != 0).is_some_and(|c| c.rem_euclid(GCD_PRIME as i64) != 0);
    if lead_ok(a) && lead_ok(b) && poly_gcd_degree_mod_p(a, b, GCD_PRIME) == Some(0) {
        return false;
    }
    let big = |v: &[i64]| v.iter().map(|c| BigInt::from(*c)).collect::<Vec<_>>();
    poly_gcd(&big(a), &big(b)).len() >= 2
}

fn roots(p: &[i64]) -> Vec<nalgebra::Complex<f64>> {
    let mut p = p.to_vec();
    trim(&mut p);
    let d = p.len().saturating_sub(1);
    if d == 0 {
        return Vec::new();
    }
    let lead = *p.last().unwrap() as f64;
    let c = DMatrix::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -(p[i] as f64) / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    c.complex_eigenvalues().iter().copied().collect()
}

/// Numerical: companion-matrix eigenvalues of `a` and `b` come within `tol`.
pub fn numeric_common_root(a: &[i64], b: &[i64], tol: f64) -> bool {
    let ra = roots(a);
    let rb = roots(b);
    ra.iter().any(|x| rb.iter().any(|y| (x - y).norm() <= tol))
}

/// `P(P(1) = 0)²` for degree `n`: `(C(n+1, (n+1)/2)/2^{n+1})²` when `n` is odd.
pub fn ones_channel(n: usize) -> Rational {
    if n % 2 == 0 {
        return Rational::zero();
    }
    let p = Rational::new(
        BigInt::from(binomial(n as u64 + 1, (n as u64 + 1) / 2)),
        BigInt::one() << (n + 1),
    );
    &p * &p
}

#[derive(Clone, Debug, Serialize)]
pub struct CommonRootReport {
    pub n: usize,
    pub report: McReport,
    /// `P(P₁(1) = P₂(1) = 0)`; the `x = −1` channel has the same value.
    pub ones_channel: String,
    #[serde(skip)]
    pub ones_channel_value: Rational,
    /// `n·estimate`.
    pub scaled_estimate: f64,
}

/// Two independent degree-`n` polynomials with `±1` coefficients share a root.
pub fn common_root_probability(n: usize, trials: u64, seed: u64) -> Result<CommonRootReport> {
    if n == 0 || n > COMMON_ROOT_DEGREE_LIMIT {
        return Err(Error::invalid(format!("degree must lie in 1..={COMMON_ROOT_DEGREE_LIMIT}")));
    }
    let hits = count_trials(trials, seed, |rng| {
        let mut draw = || (0..=n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect::<Vec<i64>>();
        let a = draw();
        let b = draw();
        has_common_root(&a, &b)
    });
    let report = McReport::monte_carlo(hits, trials, seed);
    let channel = ones_channel(n);
    Ok(CommonRootReport {
        n,
        scaled_estimate: n as f64 * report.estimate,
        report,
        ones_channel: format_rational(&channel),
        ones_channel_value: channel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|c| BigInt::from(*c)).collect()
    }

    #[test]
    fn gcd_examples() {
        // (x − 1)(x + 2) and (x − 1)(x − 3)
        let g = poly_gcd(&big(&[-2, 1, 1]), &big(&[3, -4, 1]));
        assert_eq!(g, big(&[-1, 1]));
        assert!(has_common_root(&[-2, 1, 1], &[3, -4, 1]));
        assert!(!has_common_root(&[1, 1], &[-1, 1]));
        // x² + x + 1 divides x³ − 1 and x⁴ + x² + 1
        assert_eq!(poly_gcd(&big(&[-1, 0, 0, 1]), &big(&[1, 0, 1, 0, 1])), big(&[1, 1, 1]));
        assert_eq!(poly_gcd_degree_mod_p(&[-1, 0, 0, 1], &[1, 0, 1, 0, 1], 101), Some(2));
    }

    #[test]
    fn channel_values() {
        assert_eq!(ones_channel(3), rat(9, 64));
        assert_eq!(ones_channel(4), rat(0, 1));
        assert_eq!(ones_channel(7), rat(70 * 70, 256 * 256));
    }

    #[test]
    fn exact_and_numeric_agree() {
        let mut rng = super::super::trial_rng(11, 0);
        let mut agree = 0;
        for _ in 0..300 {
            let a: Vec<i64> = (0..=8).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
            let b: Vec<i64> = (0..=8).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
            if has_common_root(&a, &b) == numeric_common_root(&a, &b, 1e-6) {
                agree += 1;
            }
        }
        assert!(agree >= 295, "{agree}");
    }

    #[test]
    fn reproducible_across_runs() {
        let a = common_root_probability(7, 2000, 5).unwrap();
        let b = common_root_probability(7, 2000, 5).unwrap();
        assert_eq!(a.report.successes, b.report.successes);
        assert!(a.report.estimate > 0.1);
    }
}
