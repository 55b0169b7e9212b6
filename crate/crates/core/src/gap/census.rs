//! Counting multisets of nonzero integers in `[−M, M]` by concentration.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::binomial::binomial;
use crate::dist::bernoulli_max_count;
use crate::error::{Error, Result};
use crate::extremal::nonzero_multisets;
use crate::rational::{biguint_ratio, to_f64, Rational};

pub const DEFAULT_CENSUS_BUDGET: u64 = 2_000_000;

/// Frozen constant for `count(ρ₀) ≤ C·(ρ₀⁻¹n^{−1/2})ⁿ` on the reference census.
pub const CENSUS_CONSTANT: f64 = 25.0;

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    #[serde(with = "crate::rational::serde_str")]
    pub rho0: Rational,
    pub count: u64,
    /// `(ρ₀⁻¹ n^{−1/2})ⁿ`; infinite at `ρ₀ = 0`.
    pub bound_shape: f64,
}

/// For each `ρ₀`, the number of multisets with `ρ(A) ≥ ρ₀` under `±1` signs.
pub fn structured_multiset_census(n: usize, m: i64, rho_grid: &[Rational]) -> Result<Vec<CensusRow>> {
    structured_multiset_census_with_budget(n, m, rho_grid, DEFAULT_CENSUS_BUDGET)
}

pub fn structured_multiset_census_with_budget(n: usize, m: i64, rho_grid: &[Rational], budget: u64) -> Result<Vec<CensusRow>> {
    if n == 0 || m <= 0 {
        return Err(Error::invalid("need n ≥ 1 and M ≥ 1"));
    }
    let total = binomial(2 * m as u64 + n as u64 - 1, n as u64);
    if total > BigUint::from(budget) {
        return Err(Error::budget("multisets to enumerate", total.to_u128().unwrap_or(u128::MAX), budget));
    }
    // atom counts out of 2ⁿ, one per multiset
    let all: Vec<Vec<i64>> = nonzero_multisets(n, m).collect();
    let mut maxima: Vec<BigUint> = all.par_iter().map(|a| bernoulli_max_count(a)).collect();
    maxima.sort();
    let den = BigUint::one() << n;
    Ok(rho_grid
        .iter()
        .map(|rho0| {
            // first index with ρ ≥ ρ₀
            let idx = maxima.partition_point(|c| &biguint_ratio(c, &den) < rho0);
            let r = to_f64(rho0);
            let bound_shape = if r > 0.0 { (1.0 / (r * (n as f64).sqrt())).powi(n as i32) } else { f64::INFINITY };
            CensusRow {
                rho0: rho0.clone(),
                count: (maxima.len() - idx) as u64,
                bound_shape,
            }
        })
        .collect())
}

/// `max count/shape` over rows with a finite shape and a nonzero count.
pub fn census_ratio(rows: &[CensusRow]) -> f64 {
    rows.iter()
        .filter(|r| r.bound_shape.is_finite() && r.count > 0)
        .map(|r| r.count as f64 / r.bound_shape)
        .fold(0.0, f64::max)
}
