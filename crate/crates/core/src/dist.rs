//! Exact laws of `S_A = a₁ξ₁ + ⋯ + aₙξₙ`.
//!
//! Values are rescaled onto an integer lattice (one common denominator for
//! every `aᵢ·v`), probabilities onto integer weights over `Dⁿ`, and the law is
//! built by sequential convolution with equal sums merged at every step.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiset::{CoefficientMultiset, Point2};
use crate::rational::{biguint_ratio, format_rational, to_i128, Rational};
use crate::sign::SignDistribution;

pub const DEFAULT_ATOM_BUDGET: usize = 10_000_000;

/// Integer lattice coordinates that can be added with overflow detection.
pub trait LatticeKey: Ord + Copy + std::fmt::Debug {
    fn checked_add(self, other: Self) -> Option<Self>;
}

impl LatticeKey for i128 {
    fn checked_add(self, other: Self) -> Option<Self> {
        i128::checked_add(self, other)
    }
}

impl LatticeKey for (i128, i128) {
    fn checked_add(self, other: Self) -> Option<Self> {
        Some((self.0.checked_add(other.0)?, self.1.checked_add(other.1)?))
    }
}

/// Law on an integer lattice: `P(key) = weight / total`.
#[derive(Clone, Debug)]
pub struct LatticeLaw<K: LatticeKey> {
    pub weights: BTreeMap<K, BigUint>,
    pub total: BigUint,
}

impl<K: LatticeKey> LatticeLaw<K> {
    pub fn point(key: K) -> Self {
        let mut weights = BTreeMap::new();
        weights.insert(key, BigUint::one());
        LatticeLaw {
            weights,
            total: BigUint::one(),
        }
    }

    /// Convolves with an independent summand taking `shift` with weight `w`
    /// (weights over `den`).
    pub fn convolve(&self, steps: &[(K, BigUint)], den: &BigUint, budget: usize) -> Result<Self> {
        let mut out: BTreeMap<K, BigUint> = BTreeMap::new();
        for (key, w) in &self.weights {
            for (shift, sw) in steps {
                let k = key
                    .checked_add(*shift)
                    .ok_or_else(|| Error::invalid("lattice coordinate overflow"))?;
                let prod = w * sw;
                match out.get_mut(&k) {
                    Some(acc) => *acc += prod,
                    None => {
                        out.insert(k, prod);
                    }
                }
            }
            if out.len() > budget {
                return Err(Error::budget("distribution atoms", out.len(), budget));
            }
        }
        Ok(LatticeLaw {
            weights: out,
            total: &self.total * den,
        })
    }

    pub fn max_atom(&self) -> Option<(K, &BigUint)> {
        let mut best: Option<(K, &BigUint)> = None;
        for (k, w) in &self.weights {
            match best {
                Some((_, bw)) if w <= bw => {}
                _ => best = Some((*k, w)),
            }
        }
        best
    }
}

/// Scalar summands rescaled to integers: value = key / scale.
pub(crate) struct ScalarLattice {
    pub steps: Vec<Vec<(i128, BigUint)>>,
    pub den: BigUint,
    pub scale: BigInt,
}

pub(crate) fn scalar_lattice(entries: &[Rational], xi: &SignDistribution) -> Result<ScalarLattice> {
    let products: Vec<Vec<Rational>> = entries
        .iter()
        .map(|a| xi.support().iter().map(|(v, _)| a * v).collect())
        .collect();
    let scale = products
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let (weights, den) = xi.integer_weights();
    let mut steps = Vec::with_capacity(entries.len());
    for row in &products {
        let mut step = Vec::with_capacity(row.len());
        for (v, w) in row.iter().zip(&weights) {
            let key = to_i128(&(v.numer() * (&scale / v.denom())))?;
            step.push((key, w.clone()));
        }
        steps.push(merge_steps(step));
    }
    Ok(ScalarLattice { steps, den, scale })
}

pub(crate) struct PlanarLattice {
    pub steps: Vec<Vec<((i128, i128), BigUint)>>,
    pub den: BigUint,
    pub scale: BigInt,
}

pub(crate) fn planar_lattice(entries: &[Point2], xi: &SignDistribution) -> Result<PlanarLattice> {
    let products: Vec<Vec<Point2>> = entries
        .iter()
        .map(|a| xi.support().iter().map(|(v, _)| a.scale(v)).collect())
        .collect();
    let scale = products.iter().flatten().fold(BigInt::one(), |acc, p| {
        acc.lcm(p.x.denom()).lcm(p.y.denom())
    });
    let (weights, den) = xi.integer_weights();
    let mut steps = Vec::with_capacity(entries.len());
    for row in &products {
        let mut step = Vec::with_capacity(row.len());
        for (p, w) in row.iter().zip(&weights) {
            let kx = to_i128(&(p.x.numer() * (&scale / p.x.denom())))?;
            let ky = to_i128(&(p.y.numer() * (&scale / p.y.denom())))?;
            step.push(((kx, ky), w.clone()));
        }
        steps.push(merge_steps(step));
    }
    Ok(PlanarLattice { steps, den, scale })
}

fn merge_steps<K: LatticeKey>(step: Vec<(K, BigUint)>) -> Vec<(K, BigUint)> {
    let mut m: BTreeMap<K, BigUint> = BTreeMap::new();
    for (k, w) in step {
        *m.entry(k).or_insert_with(BigUint::zero) += w;
    }
    m.into_iter().collect()
}

/// Upper estimate of the support size before running the convolution.
fn projected_support(step_sizes: impl Iterator<Item = usize>, span: Option<u128>) -> u128 {
    let mut product: u128 = 1;
    for s in step_sizes {
        product = product.saturating_mul(s as u128);
    }
    match span {
        Some(sp) => product.min(sp.saturating_add(1)),
        None => product,
    }
}

pub(crate) fn run_convolution<K: LatticeKey>(
    steps: &[Vec<(K, BigUint)>],
    den: &BigUint,
    zero: K,
    budget: usize,
) -> Result<LatticeLaw<K>> {
    let mut law = LatticeLaw::point(zero);
    for step in steps {
        law = law.convolve(step, den, budget)?;
    }
    Ok(law)
}

pub(crate) fn scalar_law(entries: &[Rational], xi: &SignDistribution, budget: usize) -> Result<(LatticeLaw<i128>, BigInt)> {
    let lat = scalar_lattice(entries, xi)?;
    let span: u128 = lat
        .steps
        .iter()
        .map(|s| {
            let lo = s.first().map(|x| x.0).unwrap_or(0);
            let hi = s.last().map(|x| x.0).unwrap_or(0);
            (hi - lo).unsigned_abs()
        })
        .fold(0u128, |a, b| a.saturating_add(b));
    let projected = projected_support(lat.steps.iter().map(Vec::len), Some(span));
    if projected > budget as u128 {
        return Err(Error::budget("projected distribution atoms", projected, budget));
    }
    let law = run_convolution(&lat.steps, &lat.den, 0i128, budget)?;
    Ok((law, lat.scale))
}

pub(crate) fn planar_law(entries: &[Point2], xi: &SignDistribution, budget: usize) -> Result<(LatticeLaw<(i128, i128)>, BigInt)> {
    let lat = planar_lattice(entries, xi)?;
    let projected = projected_support(lat.steps.iter().map(Vec::len), None);
    if projected > budget as u128 {
        return Err(Error::budget("projected distribution atoms", projected, budget));
    }
    let law = run_convolution(&lat.steps, &lat.den, (0i128, 0i128), budget)?;
    Ok((law, lat.scale))
}

/// Exact law of a signed sum; atoms sum to exactly one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactDistribution<V: Ord> {
    pub atoms: BTreeMap<V, Rational>,
    pub n_source: usize,
}

impl<V: Ord + Clone> ExactDistribution<V> {
    pub fn total_mass(&self) -> Rational {
        self.atoms.values().sum()
    }

    pub fn prob(&self, v: &V) -> Rational {
        self.atoms.get(v).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest atom; ties go to the smallest value.
    pub fn max_atom(&self) -> (V, Rational) {
        let mut best: Option<(&V, &Rational)> = None;
        for (v, p) in &self.atoms {
            match best {
                Some((_, bp)) if p <= bp => {}
                _ => best = Some((v, p)),
            }
        }
        let (v, p) = best.expect("distribution is non-empty");
        (v.clone(), p.clone())
    }
}

impl ExactDistribution<Rational> {
    /// CSV rows `value,numerator,denominator`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["value", "numerator", "denominator"])?;
        for (v, p) in &self.atoms {
            w.write_record([format_rational(v), p.numer().to_string(), p.denom().to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

impl ExactDistribution<Point2> {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["value", "numerator", "denominator"])?;
        for (v, p) in &self.atoms {
            w.write_record([v.to_string(), p.numer().to_string(), p.denom().to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Serialize)]
struct AtomJson {
    value: serde_json::Value,
    prob: String,
}

impl<V: Ord + Serialize> Serialize for ExactDistribution<V> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            n_source: usize,
            atoms: Vec<AtomJson>,
        }
        let atoms = self
            .atoms
            .iter()
            .map(|(v, p)| {
                Ok(AtomJson {
                    value: serde_json::to_value(v).map_err(serde::ser::Error::custom)?,
                    prob: format_rational(p),
                })
            })
            .collect::<std::result::Result<Vec<_>, S::Error>>()?;
        Out {
            n_source: self.n_source,
            atoms,
        }
        .serialize(s)
    }
}

/// Newtype so scalar values serialize as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Scalar(pub Rational);

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl ExactDistribution<Rational> {
    pub fn to_json(&self) -> Result<serde_json::Value> {
        let d = ExactDistribution {
            atoms: self
                .atoms
                .iter()
                .map(|(v, p)| (Scalar(v.clone()), p.clone()))
                .collect(),
            n_source: self.n_source,
        };
        Ok(serde_json::to_value(d)?)
    }
}

pub fn exact_sign_sum_distribution(a: &CoefficientMultiset, xi: &SignDistribution) -> Result<ExactDistribution<Rational>> {
    exact_sign_sum_distribution_with_budget(a, xi, DEFAULT_ATOM_BUDGET)
}

pub fn exact_sign_sum_distribution_with_budget(
    a: &CoefficientMultiset,
    xi: &SignDistribution,
    budget: usize,
) -> Result<ExactDistribution<Rational>> {
    let entries = a.as_scalars()?;
    let (law, scale) = scalar_law(entries, xi, budget)?;
    let atoms = law
        .weights
        .iter()
        .map(|(k, w)| (Rational::new(BigInt::from(*k), scale.clone()), biguint_ratio(w, &law.total)))
        .collect();
    Ok(ExactDistribution {
        atoms,
        n_source: entries.len(),
    })
}

pub fn exact_sign_sum_distribution_2d(a: &CoefficientMultiset, xi: &SignDistribution) -> Result<ExactDistribution<Point2>> {
    let entries = a.as_planar()?;
    let (law, scale) = planar_law(entries, xi, DEFAULT_ATOM_BUDGET)?;
    let atoms = law
        .weights
        .iter()
        .map(|((kx, ky), w)| {
            (
                Point2::new(
                    Rational::new(BigInt::from(*kx), scale.clone()),
                    Rational::new(BigInt::from(*ky), scale.clone()),
                ),
                biguint_ratio(w, &law.total),
            )
        })
        .collect();
    Ok(ExactDistribution {
        atoms,
        n_source: entries.len(),
    })
}

/// `ρ(A) = sup_x P(S_A = x)` and the smallest maximizing value.
pub fn concentration_probability(a: &CoefficientMultiset, xi: &SignDistribution) -> Result<(Rational, Rational)> {
    let entries = a.as_scalars()?;
    concentration_of_scalars(entries, xi)
}

pub(crate) fn concentration_of_scalars(entries: &[Rational], xi: &SignDistribution) -> Result<(Rational, Rational)> {
    let (law, scale) = scalar_law(entries, xi, DEFAULT_ATOM_BUDGET)?;
    let (k, w) = law.max_atom().expect("non-empty law");
    Ok((biguint_ratio(w, &law.total), Rational::new(BigInt::from(k), scale)))
}

/// Fast path for integer coefficients under `±1` signs: returns the maximal
/// atom count out of `2ⁿ`.
pub fn bernoulli_max_count(entries: &[i64]) -> BigUint {
    let span: i128 = entries.iter().map(|a| (*a as i128).abs()).sum();
    if span > 1 << 22 {
        return sparse_max_count(entries);
    }
    let span = span as i64;
    let width = (2 * span + 1) as usize;
    let mut counts = vec![BigUint::zero(); width];
    let offset = span;
    counts[offset as usize] = BigUint::one();
    let mut lo = offset;
    let mut hi = offset;
    for &a in entries {
        let a = a.abs();
        if a == 0 {
            for c in counts[lo as usize..=hi as usize].iter_mut() {
                *c <<= 1;
            }
            continue;
        }
        let mut next = vec![BigUint::zero(); width];
        for idx in lo..=hi {
            let c = &counts[idx as usize];
            if c.is_zero() {
                continue;
            }
            next[(idx - a) as usize] += c;
            next[(idx + a) as usize] += c;
        }
        counts = next;
        lo -= a;
        hi += a;
    }
    counts.into_iter().max().unwrap_or_default()
}

fn sparse_max_count(entries: &[i64]) -> BigUint {
    let mut counts: HashMap<i128, BigUint> = HashMap::from([(0, BigUint::one())]);
    for &a in entries {
        let a = a as i128;
        let mut next: HashMap<i128, BigUint> = HashMap::with_capacity(counts.len() * 2);
        for (k, c) in &counts {
            *next.entry(k - a).or_default() += c;
            *next.entry(k + a).or_default() += c;
        }
        counts = next;
    }
    counts.into_values().max().unwrap_or_default()
}

/// `ρ(A)` for integer entries under `±1` signs, via counts over `2ⁿ`.
pub fn bernoulli_rho_integers(entries: &[i64]) -> Rational {
    let max = bernoulli_max_count(entries);
    biguint_ratio(&max, &(BigUint::one() << entries.len()))
}

/// Brute-force law by enumerating every outcome vector. Test oracle only; exponential.
pub fn enumerate_sign_sum(entries: &[Rational], xi: &SignDistribution) -> BTreeMap<Rational, Rational> {
    let support = xi.support();
    let k = support.len();
    let n = entries.len();
    let mut out: BTreeMap<Rational, Rational> = BTreeMap::new();
    let total = k.pow(n as u32);
    for mut code in 0..total {
        let mut value = Rational::zero();
        let mut prob = Rational::one();
        for a in entries {
            let (v, p) = &support[code % k];
            code /= k;
            value += a * v;
            prob *= p;
        }
        *out.entry(value).or_insert_with(Rational::zero) += prob;
    }
    out
}
