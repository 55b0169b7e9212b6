//! Extremal families: the symmetric progression `A₀`, its scaled
//! concentration, and enumerators for exhaustive sweeps.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::dist::bernoulli_max_count;
use crate::error::{Error, Result};
use crate::rational::{biguint_ratio, to_f64, Rational};

/// `{−(n−1)/2, …, (n−1)/2}` for odd `n`.
pub fn symmetric_progression(n: usize) -> Result<Vec<i64>> {
    if n % 2 == 0 || n < 1 {
        return Err(Error::invalid(format!("n = {n} must be odd")));
    }
    let h = (n as i64 - 1) / 2;
    Ok((-h..=h).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct StanleyRow {
    pub n: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub rho: Rational,
    /// `ρ(A₀)·n^{3/2}`.
    pub scaled: f64,
}

pub const STANLEY_LIMIT: f64 = 2.763_953_195_760_909_8; // √(24/π)

pub fn stanley_constant_scan(n_list: &[usize]) -> Result<Vec<StanleyRow>> {
    n_list
        .iter()
        .map(|&n| {
            if n < 3 {
                return Err(Error::invalid("n must be at least 3"));
            }
            let a0 = symmetric_progression(n)?;
            let rho = biguint_ratio(&bernoulli_max_count(&a0), &(BigUint::one() << n));
            let scaled = to_f64(&rho) * (n as f64).powf(1.5);
            Ok(StanleyRow { n, rho, scaled })
        })
        .collect()
}

/// Sorted multisets of size `n` drawn from the nonzero integers in `[−m, m]`.
pub fn nonzero_multisets(n: usize, m: i64) -> impl Iterator<Item = Vec<i64>> {
    let values: Vec<i64> = (-m..=m).filter(|v| *v != 0).collect();
    values.into_iter().combinations_with_replacement(n)
}

/// Sets of `n` distinct integers from `[−m, m]`, zero allowed.
pub fn distinct_sets(n: usize, m: i64) -> impl Iterator<Item = Vec<i64>> {
    (-m..=m).combinations(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::enumerate_sign_sum;
    use crate::rational::{int, rat};
    use crate::sign::SignDistribution;

    #[test]
    fn stanley_small_values() {
        let rows = stanley_constant_scan(&[3, 5]).unwrap();
        assert_eq!(rows[0].rho, rat(1, 2));
        assert!((rows[0].scaled - 2.598).abs() < 1e-3);
        // oracle: brute force over 32 sign vectors
        let a: Vec<Rational> = symmetric_progression(5).unwrap().into_iter().map(int).collect();
        let law = enumerate_sign_sum(&a, &SignDistribution::bernoulli());
        assert_eq!(rows[1].rho, law.values().max().unwrap().clone());
        assert!(rows[1].scaled > rows[0].scaled);
    }

    #[test]
    fn even_n_rejected() {
        assert!(stanley_constant_scan(&[4]).is_err());
    }

    #[test]
    fn enumerator_sizes() {
        assert_eq!(nonzero_multisets(2, 2).count(), 10);
        assert_eq!(distinct_sets(3, 2).count(), 10);
        assert!(nonzero_multisets(3, 2).all(|v| v.windows(2).all(|w| w[0] <= w[1])));
    }
}
