//! Multilinear polynomials in `{0,1}` variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{biguint_ratio, format_rational, lcm_of_denominators, parse_rational, rat, to_i128, Rational};
use crate::sign::SignDistribution;

pub const MULTILINEAR_LIMIT: usize = 22;
/// Constant in `P(p = x) ≤ C·r^{−b_k}`, frozen after calibration.
pub const MULTILINEAR_CONSTANT: f64 = 1.0;
/// Smallest `r` at which the bound is checked against the exact value.
pub const MULTILINEAR_THRESHOLD: usize = 1;

const CHUNK: u64 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearPolynomial {
    n: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl MultilinearPolynomial {
    /// Terms `(S, c_S)` with 0-based indices below `n`; equal sets merge and
    /// zero coefficients are dropped.
    pub fn new(n: usize, terms: impl IntoIterator<Item = (Vec<usize>, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (mut s, c) in terms {
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid("index repeated within a term; variables are multilinear"));
            }
            if s.iter().any(|&i| i >= n) {
                return Err(Error::invalid(format!("index out of range for n = {n}")));
            }
            *map.entry(s).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MultilinearPolynomial { n, terms: map })
    }

    /// Lines (or `;`-separated items) `coef: i1 i2 … ik` with 1-based indices;
    /// `coef:` alone is the constant term.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for item in text.split(['\n', ';']).map(str::trim).filter(|s| !s.is_empty()) {
            let (c, idx) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `coef: i1 i2 …`, got {item:?}")))?;
            let c = parse_rational(c)?;
            let s = idx
                .split(|ch: char| ch == ',' || ch.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(i - 1),
                    _ => Err(Error::Parse(format!("bad index {t:?}; indices start at 1"))),
                })
                .collect::<Result<Vec<_>>>()?;
            terms.push((s, c));
        }
        Self::new(n, terms)
    }

    /// Exact parity `ξ₁ ⊕ … ⊕ ξₙ` as a degree-`n` polynomial: `Σ_{S≠∅} (−2)^{|S|−1} ξ_S`.
    pub fn parity(n: usize) -> Result<Self> {
        if n > 20 {
            return Err(Error::budget("parity polynomial terms", 1u128 << n, 1u128 << 20));
        }
        let terms = (1u32..1 << n).map(|mask| {
            let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let c = Rational::from_integer(BigInt::from(-2).pow(s.len() as u32 - 1));
            (s, c)
        });
        Self::new(n, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.terms
    }

    /// Largest term size; at least 1.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0).max(1)
    }

    pub fn evaluate(&self, x: &[bool]) -> Rational {
        self.terms
            .iter()
            .filter(|(s, _)| s.iter().all(|&i| x[i]))
            .map(|(_, c)| c.clone())
            .sum()
    }

    /// Greedy maximal family of pairwise disjoint terms of top degree, in term order.
    pub fn disjoint_top_terms(&self) -> Vec<Vec<usize>> {
        let k = self.degree();
        let mut used = vec![false; self.n];
        let mut out = Vec::new();
        for s in self.terms.keys().filter(|s| s.len() == k) {
            if s.iter().all(|&i| !used[i]) {
                for &i in s {
                    used[i] = true;
                }
                out.push(s.clone());
            }
        }
        out
    }

    /// Integer terms as bitmasks with the common denominator `L`.
    fn integral(&self) -> Result<(Vec<(u32, i128)>, BigInt)> {
        let l = lcm_of_denominators(self.terms.values());
        let terms = self
            .terms
            .iter()
            .map(|(s, c)| {
                let mask = s.iter().fold(0u32, |m, &i| m | 1 << i);
                Ok((mask, to_i128(&(c.numer() * (&l / c.denom())))?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((terms, l))
    }
}

impl fmt::Display for MultilinearPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| {
                let idx: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
                format!("{}: {}", format_rational(c), idx.join(" "))
            })
            .collect();
        f.write_str(&items.join("; "))
    }
}

/// Counts masks in `{0,1}ⁿ` (bit `i` is `ξ_{i+1}`) satisfying `pred(value, mask)`,
/// where `value` is `L·p(mask)`.
fn count_masks(p: &MultilinearPolynomial, pred: impl Fn(i128, u32) -> bool + Sync) -> Result<u64> {
    if p.n > MULTILINEAR_LIMIT {
        return Err(Error::budget("multilinear dimension", p.n, MULTILINEAR_LIMIT));
    }
    let (terms, _) = p.integral()?;
    let total = 1u64 << p.n;
    let chunks = total.div_ceil(CHUNK);
    Ok((0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(total);
            (lo..hi)
                .filter(|&mask| {
                    let mask = mask as u32;
                    let v: i128 = terms.iter().filter(|(s, _)| s & mask == *s).map(|(_, c)| *c).sum();
                    pred(v, mask)
                })
                .count() as u64
        })
        .sum())
}

#[derive(Clone, Debug, Serialize)]
pub struct MultilinearConcentration {
    /// `P(p(ξ) = x)` under uniform `{0,1}` signs.
    #[serde(with = "crate::rational::serde_str")]
    pub prob: Rational,
    pub k: usize,
    /// Greedy count of disjoint degree-`k` terms.
    pub r: usize,
    /// `b_k = 1/(2k·2^k)`.
    pub b_k: f64,
    /// `C·r^{−b_k}`.
    pub bound: f64,
    /// `1/2^{(k²+k)/2}`, the weaker exponent shape.
    pub weak_exponent: f64,
    pub weak_bound: f64,
    /// `Some(prob ≤ bound)` once `r` reaches the threshold.
    pub sound: Option<bool>,
}

pub fn multilinear_concentration(p: &MultilinearPolynomial, xi: &SignDistribution, x: &Rational) -> Result<MultilinearConcentration> {
    if !xi.is_boolean() {
        return Err(Error::invalid("multilinear bounds are stated for uniform {0,1} variables"));
    }
    let (_, l) = p.integral()?;
    let scaled = x * Rational::from_integer(l);
    let hits = if scaled.is_integer() {
        let t = to_i128(&scaled.to_integer())?;
        count_masks(p, |v, _| v == t)?
    } else {
        0
    };
    let prob = biguint_ratio(&BigUint::from(hits), &(BigUint::one() << p.n));
    let k = p.degree();
    let r = p.disjoint_top_terms().len();
    let b_k = 1.0 / (2.0 * k as f64 * 2f64.powi(k as i32));
    let bound = MULTILINEAR_CONSTANT * (r.max(1) as f64).powf(-b_k);
    let weak_exponent = 0.5f64.powi(((k * k + k) / 2) as i32);
    let weak_bound = MULTILINEAR_CONSTANT * (r.max(1) as f64).powf(-weak_exponent);
    let sound = (r >= MULTILINEAR_THRESHOLD).then(|| crate::rational::to_f64(&prob) <= bound);
    Ok(MultilinearConcentration {
        prob,
        k,
        r,
        b_k,
        bound,
        weak_exponent,
        weak_bound,
        sound,
    })
}

/// `Cor_n(p, parity) = P(p(ξ) = ξ₁ ⊕ … ⊕ ξₙ) − 1/2` over uniform `{0,1}ⁿ`.
pub fn parity_correlation(p: &MultilinearPolynomial, n: usize) -> Result<Rational> {
    if n < p.n {
        return Err(Error::invalid("polynomial has more variables than n"));
    }
    let widened = MultilinearPolynomial {
        n,
        terms: p.terms.clone(),
    };
    let (_, l) = widened.integral()?;
    let one = to_i128(&l)?;
    let hits = count_masks(&widened, |v, mask| v == if mask.count_ones() % 2 == 1 { one } else { 0 })?;
    Ok(biguint_ratio(&BigUint::from(hits), &(BigUint::one() << n)) - rat(1, 2))
}
