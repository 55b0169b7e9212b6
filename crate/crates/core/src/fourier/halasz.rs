//! Additive-energy counts `R_l` and the ξ-norm.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::dist::concentration_probability;
use crate::error::{Error, Result};
use crate::multiset::CoefficientMultiset;
use crate::rational::{lcm_of_denominators, to_f64, to_i128, torus_norm, Rational};
use crate::sign::SignDistribution;

pub const DEFAULT_RL_BUDGET: u128 = 20_000_000;

/// Number of ordered `2l`-tuples of indices with
/// `a_{i₁} + ⋯ + a_{i_l} = a_{j₁} + ⋯ + a_{j_l}`, indices repeating freely.
pub fn rl_count(a: &CoefficientMultiset, l: u32) -> Result<BigInt> {
    rl_count_with_budget(a, l, DEFAULT_RL_BUDGET)
}

pub fn rl_count_with_budget(a: &CoefficientMultiset, l: u32, budget: u128) -> Result<BigInt> {
    if l == 0 {
        return Err(Error::invalid("l must be at least 1"));
    }
    let v = a.as_scalars()?;
    let n = v.len() as u128;
    let work = n.checked_pow(l).unwrap_or(u128::MAX);
    if work > budget {
        return Err(Error::budget("l-fold index tuples n^l", work, budget));
    }
    let scale = Rational::from_integer(lcm_of_denominators(v));
    let keys: Vec<i128> = v
        .iter()
        .map(|x| to_i128(&(x * &scale).to_integer()))
        .collect::<Result<_>>()?;
    // distribution of l-fold ordered sums, built one index at a time
    let mut counts: HashMap<i128, u64> = HashMap::from([(0, 1)]);
    for _ in 0..l {
        let mut next: HashMap<i128, u64> = HashMap::with_capacity(counts.len() * keys.len());
        for (s, c) in &counts {
            for k in &keys {
                *next.entry(s + k).or_insert(0) += c;
            }
        }
        counts = next;
    }
    Ok(super::fp::sum_of_squares(counts.into_values()))
}

/// `ρ(A)·n^{2l+1/2} / R_l` under `±1` signs.
pub fn halasz_hierarchy_ratio(a: &CoefficientMultiset, l: u32) -> Result<f64> {
    let r = rl_count(a, l)?;
    let (rho, _) = concentration_probability(a, &SignDistribution::bernoulli())?;
    let n = a.len() as f64;
    Ok(to_f64(&rho) * n.powf(2.0 * l as f64 + 0.5) / r.to_f64().unwrap_or(f64::INFINITY))
}

#[derive(Clone, Debug, Serialize)]
pub struct XiNorm {
    /// `E‖w(ξ₁ − ξ₂)‖²` exactly.
    #[serde(with = "crate::rational::serde_str")]
    pub squared: Rational,
    pub norm: f64,
}

pub fn xi_norm(w: &Rational, xi: &SignDistribution) -> XiNorm {
    let squared: Rational = xi
        .difference_law()
        .into_iter()
        .map(|(d, p)| {
            let t = torus_norm(&(w * d));
            &t * &t * p
        })
        .sum();
    XiNorm {
        norm: to_f64(&squared).sqrt(),
        squared,
    }
}
