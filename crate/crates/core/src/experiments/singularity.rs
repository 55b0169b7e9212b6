//! Singularity of random sign matrices and `k`-universality of sign vectors.

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{count_trials, EnsembleKind, EnsembleSpec, McReport, Mode};
use crate::binomial::binomial;
use crate::error::{Error, Result};
use crate::numtheory::{inv_mod, word_primes};
use crate::rational::biguint_ratio;

/// Largest enumeration (after sign normalization) in exact mode.
pub const EXACT_ENUMERATION_LIMIT: u64 = 1 << 26;
const I128_BAREISS_LIMIT: usize = 26;

/// Exact determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|v| BigInt::from(*v)).collect()).collect();
    let mut prev = BigInt::one();
    let mut sign = 1;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 { BigInt::one() } else { &a[n - 1][n - 1] * sign }
}

/// Laplace expansion along the first row; a cross-check for small `n`.
pub fn cofactor_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
            .collect();
        let term = BigInt::from(m[0][j]) * cofactor_determinant(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Fraction-free elimination in `i128`; exact for `±1` matrices up to size 26,
/// where every minor stays below the Hadamard bound `26^{13}`.
fn bareiss_i128_is_zero(a: &mut [i128], n: usize) -> bool {
    let mut prev: i128 = 1;
    for k in 0..n {
        if a[k * n + k] == 0 {
            match (k + 1..n).find(|&i| a[i * n + k] != 0) {
                Some(i) => {
                    for j in 0..n {
                        a.swap(i * n + j, k * n + j);
                    }
                }
                None => return true,
            }
        }
        let p = a[k * n + k];
        for i in k + 1..n {
            let f = a[i * n + k];
            for j in k + 1..n {
                a[i * n + j] = (a[i * n + j] * p - f * a[k * n + j]) / prev;
            }
        }
        prev = p;
    }
    false
}

fn det_is_zero_mod(a: &[i64], n: usize, p: u64) -> bool {
    let mut m: Vec<u64> = a.iter().map(|v| v.rem_euclid(p as i64) as u64).collect();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| m[i * n + k] != 0) else {
            return true;
        };
        if piv != k {
            for j in k..n {
                m.swap(piv * n + j, k * n + j);
            }
        }
        let inv = inv_mod(m[k * n + k], p);
        for i in k + 1..n {
            let f = m[i * n + k] * inv % p;
            if f == 0 {
                continue;
            }
            let nf = p - f;
            for j in k + 1..n {
                m[i * n + j] = (m[i * n + j] + nf * m[k * n + j]) % p;
            }
        }
    }
    false
}

/// Exact singularity test for a row-major `±1` matrix.
pub fn is_singular_pm1(a: &[i64], n: usize) -> bool {
    if n <= I128_BAREISS_LIMIT {
        let mut w: Vec<i128> = a.iter().map(|v| *v as i128).collect();
        return bareiss_i128_is_zero(&mut w, n);
    }
    // |det| ≤ n^{n/2}; vanishing modulo primes whose product exceeds twice that forces det = 0
    let log_bound = 0.5 * n as f64 * (n as f64).log2() + 1.0;
    let mut log_product = 0.0;
    static PRIMES: std::sync::OnceLock<Vec<u64>> = std::sync::OnceLock::new();
    let primes = PRIMES.get_or_init(|| word_primes().take(64).collect());
    for &p in primes {
        if !det_is_zero_mod(a, n, p) {
            return false;
        }
        log_product += (p as f64).log2();
        if log_product > log_bound {
            return true;
        }
    }
    unreachable!("64 word primes cover any matrix that fits in memory")
}

fn sample_matrix<R: Rng>(kind: EnsembleKind, n: usize, rng: &mut R) -> Vec<i64> {
    let mut a = vec![0i64; n * n];
    match kind {
        EnsembleKind::BernoulliIid => {
            for v in a.iter_mut() {
                *v = if rng.random::<bool>() { 1 } else { -1 };
            }
        }
        _ => {
            for i in 0..n {
                for j in i..n {
                    let v = if rng.random::<bool>() { 1 } else { -1 };
                    a[i * n + j] = v;
                    a[j * n + i] = v;
                }
            }
        }
    }
    a
}

/// `p_n` or `p_n^{sym}`: exact by enumeration or seeded Monte Carlo.
///
/// Exact mode enumerates matrices up to sign symmetries that preserve
/// singularity: rows and columns are flipped so the first row and column are
/// all `+1` (plain), or `DAD` makes the first row `+1` off the diagonal
/// (symmetric).
pub fn singularity_probability(spec: &EnsembleSpec, mode: Mode, trials: u64, seed: u64) -> Result<McReport> {
    let n = spec.n;
    if spec.kind == EnsembleKind::GaussianIid {
        return Err(Error::invalid("Gaussian matrices are almost surely nonsingular; use a Bernoulli ensemble"));
    }
    match mode {
        Mode::MonteCarlo => {
            let kind = spec.kind;
            let singular = count_trials(trials, seed, |rng| is_singular_pm1(&sample_matrix(kind, n, rng), n));
            Ok(McReport::monte_carlo(singular, trials, seed))
        }
        Mode::Exact => {
            let (free, fixed_bits) = match spec.kind {
                EnsembleKind::BernoulliIid => ((n - 1) * (n - 1), 2 * n - 1),
                _ => (n * (n + 1) / 2 - (n - 1), n - 1),
            };
            if free > 63 || 1u64 << free > EXACT_ENUMERATION_LIMIT {
                return Err(Error::budget("matrices to enumerate", 1u128 << free.min(127), EXACT_ENUMERATION_LIMIT));
            }
            // free positions in row-major order; the rest are +1 or mirrored
            let positions: Vec<(usize, usize)> = match spec.kind {
                EnsembleKind::BernoulliIid => (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).collect(),
                _ => (0..n)
                    .flat_map(|i| (i..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| !(i == 0 && j > 0))
                    .collect(),
            };
            let symmetric = spec.kind == EnsembleKind::BernoulliSymmetric;
            let total = 1u64 << free;
            let chunks = total.div_ceil(super::CHUNK);
            let singular: u64 = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let lo = c * super::CHUNK;
                    let hi = (lo + super::CHUNK).min(total);
                    let mut count = 0u64;
                    let mut a = vec![1i64; n * n];
                    for code in lo..hi {
                        for (b, &(i, j)) in positions.iter().enumerate() {
                            let v = if code >> b & 1 == 1 { -1 } else { 1 };
                            a[i * n + j] = v;
                            if symmetric {
                                a[j * n + i] = v;
                            }
                        }
                        if is_singular_pm1(&a, n) {
                            count += 1;
                        }
                    }
                    count
                })
                .sum();
            let all = BigUint::one() << (free + fixed_bits);
            let singular_full = BigUint::from(singular) << fixed_bits;
            let value = biguint_ratio(&singular_full, &all);
            Ok(McReport::exact(
                singular_full.to_u64().unwrap_or(u64::MAX),
                all.to_u64().unwrap_or(u64::MAX),
                value,
            ))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UniversalityReport {
    /// Successes count trials that were *not* `k`-universal.
    pub report: McReport,
    /// The `1/n` benchmark.
    pub benchmark: f64,
    /// `1 − (1 − 2^{1−d})ⁿ` when `k = 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<f64>,
}

/// Whether `vectors` (bit `j` set means coordinate `j` is `+1`) realize every
/// sign pattern on every `k` coordinates.
fn is_k_universal(vectors: &[u64], n: usize, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let mut seen = vec![false; 1 << k];
    for subset in (0..n).combinations(k) {
        seen.iter_mut().for_each(|s| *s = false);
        let mut hit = 0;
        for v in vectors {
            let pat = subset.iter().enumerate().fold(0usize, |acc, (b, &j)| acc | ((*v >> j & 1) as usize) << b);
            if !std::mem::replace(&mut seen[pat], true) {
                hit += 1;
                if hit == 1 << k {
                    break;
                }
            }
        }
        if hit < 1 << k {
            return false;
        }
    }
    true
}

pub fn k_universality_check(d: usize, n: usize, k: usize, trials: u64, seed: u64) -> Result<UniversalityReport> {
    if n == 0 || n > 64 {
        return Err(Error::invalid("need 1 ≤ n ≤ 64"));
    }
    if k > n {
        return Err(Error::invalid("k cannot exceed n"));
    }
    let work = binomial(n as u64, k as u64) << k;
    if work > BigUint::from(10_000_000u64) {
        return Err(Error::budget("pattern checks per trial", work.to_u128().unwrap_or(u128::MAX), 10_000_000u64));
    }
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let failures = count_trials(trials, seed, |rng| {
        let vectors: Vec<u64> = (0..d).map(|_| rng.random::<u64>() & mask).collect();
        !is_k_universal(&vectors, n, k)
    });
    let closed_form = (k == 1).then(|| 1.0 - (1.0 - 2f64.powi(1 - d as i32)).powi(n as i32));
    Ok(UniversalityReport {
        report: McReport::monte_carlo(failures, trials, seed),
        benchmark: 1.0 / n as f64,
        closed_form,
    })
}
