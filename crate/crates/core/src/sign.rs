//! Finite-support laws for the random signs `ξ`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignKind {
    /// `±1` with probability 1/2 each.
    BernoulliPm1,
    /// `{0, 1}` with probability 1/2 each.
    Boolean01,
    /// `{-1, 0, 1}` with probabilities `{μ/2, 1-μ, μ/2}`.
    Lazy(Rational),
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignDistribution {
    support: Vec<(Rational, Rational)>,
    kind: SignKind,
}

impl SignDistribution {
    pub fn bernoulli() -> Self {
        SignDistribution {
            support: vec![(int(-1), rat(1, 2)), (int(1), rat(1, 2))],
            kind: SignKind::BernoulliPm1,
        }
    }

    pub fn boolean() -> Self {
        SignDistribution {
            support: vec![(int(0), rat(1, 2)), (int(1), rat(1, 2))],
            kind: SignKind::Boolean01,
        }
    }

    /// The lazy law `η^(μ)`; requires `0 < μ <= 1`.
    pub fn lazy(mu: Rational) -> Result<Self> {
        if mu <= Rational::zero() || mu > Rational::one() {
            return Err(Error::invalid("lazy parameter μ must lie in (0, 1]"));
        }
        let half = &mu / int(2);
        let mut support = vec![(int(-1), half.clone())];
        if mu < Rational::one() {
            support.push((int(0), Rational::one() - &mu));
        }
        support.push((int(1), half));
        Ok(SignDistribution {
            support,
            kind: SignKind::Lazy(mu),
        })
    }

    /// Arbitrary finite law; equal values are merged and probabilities must be
    /// positive and sum to exactly one.
    pub fn general(pairs: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut merged: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (v, p) in pairs {
            if !p.is_positive() {
                return Err(Error::invalid("probabilities must be positive"));
            }
            *merged.entry(v).or_insert_with(Rational::zero) += p;
        }
        let total: Rational = merged.values().sum();
        if total != Rational::one() {
            return Err(Error::invalid(format!(
                "probabilities sum to {}, not 1",
                format_rational(&total)
            )));
        }
        Ok(SignDistribution {
            support: merged.into_iter().collect(),
            kind: SignKind::General,
        })
    }

    /// Parses `bernoulli`, `boolean`, `lazy:μ`, or `v:p,v:p,...`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        match t {
            "bernoulli" | "pm1" | "ber" => return Ok(Self::bernoulli()),
            "boolean" | "01" | "bool" => return Ok(Self::boolean()),
            _ => {}
        }
        if let Some(mu) = t.strip_prefix("lazy:") {
            return Self::lazy(crate::rational::parse_rational(mu)?);
        }
        let pairs = t
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|item| {
                let (v, p) = item
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected value:prob, got {item:?}")))?;
                Ok((
                    crate::rational::parse_rational(v)?,
                    crate::rational::parse_rational(p)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::general(pairs)
    }

    pub fn support(&self) -> &[(Rational, Rational)] {
        &self.support
    }

    pub fn kind(&self) -> &SignKind {
        &self.kind
    }

    pub fn is_bernoulli(&self) -> bool {
        self.support == Self::bernoulli().support
    }

    pub fn is_boolean(&self) -> bool {
        self.support == Self::boolean().support
    }

    /// Probabilities rewritten over a common denominator: `(weights, D)` with
    /// `P(ξ = v_k) = w_k / D`.
    pub fn integer_weights(&self) -> (Vec<BigUint>, BigUint) {
        let den = self
            .support
            .iter()
            .fold(BigInt::one(), |acc, (_, p)| acc.lcm(p.denom()));
        let weights = self
            .support
            .iter()
            .map(|(_, p)| {
                let w = p.numer() * (&den / p.denom());
                w.to_biguint().expect("probabilities are positive")
            })
            .collect();
        (weights, den.to_biguint().expect("positive"))
    }

    /// Law of `ξ₁ − ξ₂` for two iid copies.
    pub fn difference_law(&self) -> BTreeMap<Rational, Rational> {
        let mut out: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (v1, p1) in &self.support {
            for (v2, p2) in &self.support {
                *out.entry(v1 - v2).or_insert_with(Rational::zero) += p1 * p2;
            }
        }
        out
    }

    /// `b = 1 − sup_a P(ξ ∈ B(a, 1))` with the open unit ball `(a − 1, a + 1)`.
    pub fn spread_b(&self) -> Rational {
        let mut best = Rational::zero();
        let two = int(2);
        for i in 0..self.support.len() {
            let mut mass = Rational::zero();
            for (v, p) in &self.support[i..] {
                if v - &self.support[i].0 < two {
                    mass += p;
                }
            }
            if mass > best {
                best = mass;
            }
        }
        Rational::one() - best
    }

    /// Checks `P(c1 <= |ξ₁ − ξ₂| <= c2) >= c3`, returning the probability.
    pub fn separation_condition(&self, c1: &Rational, c2: &Rational, c3: &Rational) -> (bool, Rational) {
        let p: Rational = self
            .difference_law()
            .into_iter()
            .filter(|(d, _)| {
                let a = d.abs();
                &a >= c1 && &a <= c2
            })
            .map(|(_, p)| p)
            .sum();
        (&p >= c3, p)
    }

    pub fn mean(&self) -> Rational {
        self.support.iter().map(|(v, p)| v * p).sum()
    }
}

#[derive(Serialize)]
struct SupportAtom {
    value: String,
    prob: String,
}

impl Serialize for SignDistribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let atoms: Vec<SupportAtom> = self
            .support
            .iter()
            .map(|(v, p)| SupportAtom {
                value: format_rational(v),
                prob: format_rational(p),
            })
            .collect();
        atoms.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lazy_law_has_expected_atoms() {
        let eta = SignDistribution::lazy(rat(1, 3)).unwrap();
        assert_eq!(
            eta.support(),
            &[(int(-1), rat(1, 6)), (int(0), rat(2, 3)), (int(1), rat(1, 6))]
        );
        assert!(SignDistribution::lazy(int(0)).is_err());
        assert_eq!(SignDistribution::lazy(int(1)).unwrap().support().len(), 2);
    }

    #[test]
    fn general_rejects_bad_mass() {
        assert!(SignDistribution::general([(int(0), rat(1, 2))]).is_err());
        assert!(SignDistribution::general([(int(0), int(-1)), (int(1), int(2))]).is_err());
        let merged = SignDistribution::general([(int(1), rat(1, 4)), (int(1), rat(3, 4))]).unwrap();
        assert_eq!(merged.support().len(), 1);
    }

    #[test]
    fn parse_forms() {
        assert!(SignDistribution::parse("bernoulli").unwrap().is_bernoulli());
        assert!(SignDistribution::parse("boolean").unwrap().is_boolean());
        assert_eq!(
            SignDistribution::parse("lazy:1/2").unwrap().kind(),
            &SignKind::Lazy(rat(1, 2))
        );
        let g = SignDistribution::parse("-2:1/4, 3:3/4").unwrap();
        assert_eq!(g.support().len(), 2);
    }

    #[test]
    fn integer_weights_use_common_denominator() {
        let g = SignDistribution::parse("0:1/6,1:1/3,2:1/2").unwrap();
        let (w, d) = g.integer_weights();
        assert_eq!(d, BigUint::from(6u32));
        assert_eq!(w, vec![BigUint::from(1u32), BigUint::from(2u32), BigUint::from(3u32)]);
    }

    #[test]
    fn spread_of_bernoulli_is_half() {
        assert_eq!(SignDistribution::bernoulli().spread_b(), rat(1, 2));
        assert_eq!(SignDistribution::lazy(rat(1, 2)).unwrap().spread_b(), rat(1, 4));
    }

    #[test]
    fn separation_condition_for_bernoulli() {
        let (ok, p) = SignDistribution::bernoulli().separation_condition(&int(1), &int(2), &rat(1, 2));
        assert!(ok);
        assert_eq!(p, rat(1, 2));
    }
}
