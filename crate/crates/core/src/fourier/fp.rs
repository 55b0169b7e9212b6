//! Cosine products over `𝔽_p`: the exact inversion identity, the Gaussian-type
//! majorant, level sets `S_m` and their duals `S*_m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::dist::exact_sign_sum_distribution;
use crate::error::{Error, Result};
use crate::multiset::CoefficientMultiset;
use crate::numtheory::{is_prime, next_prime_above};
use crate::rational::{to_f64, Rational};
use crate::sign::SignDistribution;

/// Fixed chunk width so floating sums do not depend on the thread count.
const CHUNK: u64 = 4096;

/// Upper limit on `p · n` cosine evaluations per scan.
pub const DEFAULT_SCAN_BUDGET: u128 = 2_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FpMode {
    /// `p > 2ⁿ(Σ|aᵢ| + 1)`: residues mod `p` separate every value of the sum.
    Strict,
    /// Any odd prime; probabilities become those of residue classes.
    Illustrative,
}

#[derive(Clone, Debug, Serialize)]
pub struct FpContext {
    pub p: u64,
    pub entries: Vec<i64>,
    pub residues: Vec<u64>,
    pub mode: FpMode,
}

/// Integer entries after clearing denominators.
pub fn integer_entries(a: &CoefficientMultiset) -> Result<Vec<i64>> {
    let v = a.as_scalars()?;
    let l = crate::rational::lcm_of_denominators(v);
    v.iter()
        .map(|x| {
            (x * Rational::from_integer(l.clone()))
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::invalid("entry does not fit in 64 bits after scaling"))
        })
        .collect()
}

fn embedding_threshold(entries: &[i64]) -> Option<u64> {
    let s: u64 = entries.iter().try_fold(0u64, |acc, a| acc.checked_add(a.unsigned_abs()))?;
    (s.checked_add(1)?).checked_mul(1u64.checked_shl(entries.len() as u32)?)
}

impl FpContext {
    /// Smallest prime above `2ⁿ(Σ|aᵢ| + 1)`.
    pub fn new(entries: &[i64]) -> Result<Self> {
        let t = embedding_threshold(entries).ok_or_else(|| Error::invalid("embedding prime exceeds 64 bits"))?;
        let p = next_prime_above(t).ok_or_else(|| Error::invalid("no 64-bit prime above threshold"))?;
        Self::build(entries, p, FpMode::Strict)
    }

    pub fn with_prime(entries: &[i64], p: u64) -> Result<Self> {
        let t = embedding_threshold(entries).ok_or_else(|| Error::invalid("embedding prime exceeds 64 bits"))?;
        if p <= t {
            return Err(Error::invalid(format!(
                "p = {p} violates the embedding condition p > 2^n(Σ|a|+1) = {t}"
            )));
        }
        Self::build(entries, p, FpMode::Strict)
    }

    pub fn illustrative(entries: &[i64], p: u64) -> Result<Self> {
        Self::build(entries, p, FpMode::Illustrative)
    }

    fn build(entries: &[i64], p: u64, mode: FpMode) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("empty coefficient list"));
        }
        if p == 2 || !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not an odd prime")));
        }
        let residues = entries.iter().map(|a| a.rem_euclid(p as i64) as u64).collect();
        Ok(FpContext {
            p,
            entries: entries.to_vec(),
            residues,
            mode,
        })
    }

    fn check_scan(&self) -> Result<()> {
        let cost = self.p as u128 * self.entries.len() as u128;
        if cost > DEFAULT_SCAN_BUDGET {
            return Err(Error::budget("p·n frequency evaluations", cost, DEFAULT_SCAN_BUDGET));
        }
        Ok(())
    }

    /// `Σ_t f(t)` over `𝔽_p` in fixed-size chunks, summed in order.
    fn scan_sum<F: Fn(u64) -> f64 + Sync>(&self, f: F) -> f64 {
        let chunks = self.p.div_ceil(CHUNK);
        let partial: Vec<f64> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = c * CHUNK;
                let hi = (lo + CHUNK).min(self.p);
                (lo..hi).map(&f).sum::<f64>()
            })
            .collect();
        partial.iter().sum()
    }

    /// `‖x/p‖` as the integer `min(r, p − r)` with `r = x mod p`.
    fn torus_units(&self, x: u64) -> u64 {
        let r = x % self.p;
        r.min(self.p - r)
    }

    /// `p² Σᵢ ‖aᵢ t/p‖²` exactly.
    fn level_weight(&self, t: u64) -> u128 {
        self.residues
            .iter()
            .map(|&a| {
                let u = self.torus_units(crate::numtheory::mul_mod(a, t, self.p)) as u128;
                u * u
            })
            .sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FpIdentity {
    pub p: u64,
    pub target: i64,
    pub fourier_re: f64,
    pub fourier_im: f64,
    /// `P(S ≡ target mod p)`, equal to `P(S = target)` in strict mode.
    #[serde(with = "crate::rational::serde_str")]
    pub exact: Rational,
    pub abs_error: f64,
}

/// Evaluates `(1/p) Σ_t ∏ᵢ cos(2π t aᵢ/p) · e_p(−t·target)` for `±1` signs.
pub fn fp_fourier_identity(ctx: &FpContext, target: i64) -> Result<FpIdentity> {
    if ctx.entries.len() > 24 {
        return Err(Error::budget("identity summands n", ctx.entries.len(), 24));
    }
    ctx.check_scan()?;
    let p = ctx.p;
    let tau = std::f64::consts::TAU;
    let tgt = target.rem_euclid(p as i64) as u64;
    let term = |t: u64, imag: bool| {
        let prod: f64 = ctx
            .residues
            .iter()
            .map(|&a| (tau * crate::numtheory::mul_mod(a, t, p) as f64 / p as f64).cos())
            .product();
        let phase = tau * crate::numtheory::mul_mod(tgt, t, p) as f64 / p as f64;
        if imag {
            -prod * phase.sin()
        } else {
            prod * phase.cos()
        }
    };
    let re = ctx.scan_sum(|t| term(t, false)) / p as f64;
    let im = ctx.scan_sum(|t| term(t, true)) / p as f64;

    let a = CoefficientMultiset::integers(ctx.entries.iter().copied())?;
    let law = exact_sign_sum_distribution(&a, &SignDistribution::bernoulli())?;
    let pb = BigInt::from(p);
    let tb = BigInt::from(tgt);
    let exact: Rational = law
        .atoms
        .iter()
        .filter(|(v, _)| v.to_integer().mod_floor(&pb) == tb)
        .map(|(_, q)| q.clone())
        .sum();
    let abs_error = ((re - to_f64(&exact)).powi(2) + im * im).sqrt();
    Ok(FpIdentity {
        p,
        target,
        fourier_re: re,
        fourier_im: im,
        exact,
        abs_error,
    })
}

/// `(1/p) Σ_t exp(−2 Σᵢ ‖aᵢ t/p‖²)`, an upper bound for `ρ(A)`.
pub fn fp_exponential_bound(ctx: &FpContext) -> Result<f64> {
    ctx.check_scan()?;
    let p2 = (ctx.p as f64).powi(2);
    Ok(ctx.scan_sum(|t| (-2.0 * ctx.level_weight(t) as f64 / p2).exp()) / ctx.p as f64)
}

/// Largest residue-class probability `max_a P(S ≡ a mod p)`; equals `ρ(A)`
/// in strict mode.
pub fn residue_concentration(ctx: &FpContext) -> Result<Rational> {
    let a = CoefficientMultiset::integers(ctx.entries.iter().copied())?;
    let law = exact_sign_sum_distribution(&a, &SignDistribution::bernoulli())?;
    let pb = BigInt::from(ctx.p);
    let mut classes: std::collections::BTreeMap<BigInt, Rational> = Default::default();
    for (v, q) in &law.atoms {
        *classes.entry(v.to_integer().mod_floor(&pb)).or_insert_with(Rational::zero) += q;
    }
    Ok(classes.into_values().max().unwrap_or_else(Rational::zero))
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelSetReport {
    pub m: u64,
    pub level_size: u64,
    pub dual_size: u64,
    /// `|S*_m|·|S_m| ≤ 8p`.
    pub dual_bound_holds: bool,
    /// `|S_m| e^{−m+2} ≥ ρp`.
    pub large_level: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelScan {
    pub p: u64,
    pub mode: FpMode,
    #[serde(with = "crate::rational::serde_str")]
    pub rho_reference: Rational,
    pub levels: Vec<LevelSetReport>,
    /// Smallest `m` whose level set is large, if any.
    pub large_level_witness: Option<u64>,
}

pub const LEVEL_SCAN_PRIME_LIMIT: u64 = 1_000_000;

/// `S_m = {t : Σ‖aᵢt/p‖² ≤ m}` and `S*_m = {a : Σ_{t∈S_m} ‖at/p‖² ≤ |S_m|/200}`
/// for every integer `0 ≤ m ≤ m_max`, by full scans. Membership is decided in
/// integers after multiplying through by `p²`.
pub fn level_and_dual_sets(ctx: &FpContext, m_max: u64) -> Result<LevelScan> {
    if ctx.p > LEVEL_SCAN_PRIME_LIMIT {
        return Err(Error::budget("level-set prime p", ctx.p, LEVEL_SCAN_PRIME_LIMIT));
    }
    let p = ctx.p;
    let p2 = (p as u128) * (p as u128);
    let weights: Vec<u128> = (0..p).into_par_iter().map(|t| ctx.level_weight(t)).collect();
    let rho = residue_concentration(ctx)?;
    let rho_p = &rho * Rational::from_integer(BigInt::from(p));

    let mut levels = Vec::new();
    let mut witness = None;
    for m in 0..=m_max {
        let members: Vec<u64> = (0..p).filter(|&t| weights[t as usize] <= m as u128 * p2).collect();
        let size = members.len() as u64;
        let dual_size = (0..p)
            .into_par_iter()
            .filter(|&a| {
                let s: u128 = members
                    .iter()
                    .map(|&t| {
                        let u = ctx.torus_units(crate::numtheory::mul_mod(a, t, p)) as u128;
                        u * u
                    })
                    .sum();
                200 * s <= size as u128 * p2
            })
            .count() as u64;
        let dual_bound_holds = size == 0 || (dual_size as u128) * (size as u128) <= 8 * p as u128;
        // |S_m| e^{2−m} ≥ ρp, compared in floating point away from ties
        let lhs = size as f64 * (2.0 - m as f64).exp();
        let large_level = lhs >= to_f64(&rho_p);
        if large_level && witness.is_none() {
            witness = Some(m);
        }
        levels.push(LevelSetReport {
            m,
            level_size: size,
            dual_size,
            dual_bound_holds,
            large_level,
        });
    }
    Ok(LevelScan {
        p,
        mode: ctx.mode,
        rho_reference: rho,
        levels,
        large_level_witness: witness,
    })
}

/// `p²·Σᵢ‖aᵢt/p‖²` for one frequency; exposed for oracles.
pub fn level_weight(ctx: &FpContext, t: u64) -> u128 {
    ctx.level_weight(t % ctx.p)
}

/// `Σ_v c(v)²` helper used by several counts.
pub(crate) fn sum_of_squares(counts: impl Iterator<Item = u64>) -> BigInt {
    counts.fold(BigInt::zero(), |acc, c| acc + BigInt::from(c) * BigInt::from(c))
}
