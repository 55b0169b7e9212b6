//! Quadratic forms `Σ aᵢⱼ ξᵢ ξⱼ` in independent signs.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gap::Gap;
use crate::multiset::CoefficientMultiset;
use crate::rational::{biguint_ratio, format_rational, int, lcm_of_denominators, parse_rational, to_i128, Rational};
use crate::sign::SignDistribution;

pub const QUADRATIC_LIMIT: usize = 24;
pub const DECOUPLING_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricCoefficientMatrix {
    n: usize,
    a: Vec<Rational>,
}

impl SymmetricCoefficientMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::invalid("matrix must be non-empty"));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix must be square"));
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::invalid(format!("a[{i}][{j}] ≠ a[{j}][{i}]")));
                }
            }
        }
        Ok(SymmetricCoefficientMatrix {
            n,
            a: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|v| int(*v)).collect()).collect())
    }

    /// Builds the matrix from `f(i, j)` for `i ≤ j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                rows[j][i] = v.clone();
                rows[i][j] = v;
            }
        }
        Self::new(rows)
    }

    pub fn all_ones(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| int(1))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| int((i == j) as i64))
    }

    /// Independent uniform `±1` entries on and above the diagonal.
    pub fn random_sign<R: Rng>(n: usize, rng: &mut R) -> Result<Self> {
        Self::from_fn(n, |_, _| int(if rng.random::<bool>() { 1 } else { -1 }))
    }

    /// Rows separated by `;`, entries by `,` or whitespace.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .split(';')
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|r| {
                r.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(parse_rational)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.a[i * self.n + j]
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        SymmetricCoefficientMatrix {
            n: self.n,
            a: self.a.iter().map(|v| v * c).collect(),
        }
    }

    /// `a'ᵢⱼ = a_{π(i)π(j)}`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n || perm.iter().any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::invalid("not a permutation"));
        }
        Self::from_fn(self.n, |i, j| self.get(perm[i], perm[j]).clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::invalid("matrix sizes differ"));
        }
        Ok(SymmetricCoefficientMatrix {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        })
    }

    /// Exact value of the form at `x`.
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                s += self.get(i, j) * &x[i] * &x[j];
            }
        }
        s
    }

    /// Integer matrix `L·A` and `L`.
    fn integral(&self) -> Result<(Vec<i128>, BigInt)> {
        let l = lcm_of_denominators(self.a.iter());
        let b = self
            .a
            .iter()
            .map(|v| to_i128(&(v.numer() * (&l / v.denom()))))
            .collect::<Result<Vec<_>>>()?;
        Ok((b, l))
    }
}

impl fmt::Display for SymmetricCoefficientMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = (0..self.n).map(|j| format_rational(self.get(i, j))).collect();
            f.write_str(&row.join(","))?;
        }
        Ok(())
    }
}

impl Serialize for SymmetricCoefficientMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| format_rational(self.get(i, j))).collect())
            .collect();
        rows.serialize(s)
    }
}

/// Integer support values `D·v` with weights `w` so that `P(ξ = v) = w/W`.
struct ScaledLaw {
    values: Vec<i128>,
    weights: Vec<u128>,
    weight_total: BigUint,
    scale: BigInt,
}

fn scaled_law(xi: &SignDistribution) -> Result<ScaledLaw> {
    let support = xi.support();
    let d = lcm_of_denominators(support.iter().map(|(v, _)| v));
    let values = support
        .iter()
        .map(|(v, _)| to_i128(&(v.numer() * (&d / v.denom()))))
        .collect::<Result<Vec<_>>>()?;
    let (w, total) = xi.integer_weights();
    let weights = w
        .iter()
        .map(|x| x.to_u128().ok_or_else(|| Error::invalid("sign-law denominators too large")))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScaledLaw {
        values,
        weights,
        weight_total: total,
        scale: d,
    })
}

/// Law of the integer form `Σ bᵢⱼ xᵢ xⱼ` over all outcome vectors, as
/// weight tallies; digits beyond the top `split` are walked by odometer.
fn quadratic_tally(b: &[i128], n: usize, law: &ScaledLaw, limit: u128) -> Result<HashMap<i128, u128>> {
    let k = law.values.len();
    let outcomes = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if outcomes > limit {
        return Err(Error::budget("sign outcomes to enumerate", outcomes, limit));
    }
    let max_w = *law.weights.iter().max().unwrap() as f64;
    if max_w.log2() * n as f64 > 120.0 {
        return Err(Error::invalid("outcome weights overflow 128 bits"));
    }
    // magnitude guard for the running sums
    let max_b = b.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as f64;
    let max_v = law.values.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as f64;
    if max_b * max_v * max_v * (n * n) as f64 > 1e36 {
        return Err(Error::invalid("form values overflow 128 bits"));
    }
    // low digits per chunk
    let low = n.min(((1u32 << 12) as f64).log(k as f64).floor() as usize).max(n.saturating_sub(20));
    let high = n - low;
    let prefixes = (k as u64).pow(high as u32);
    let tallies: Vec<HashMap<i128, u128>> = (0..prefixes)
        .into_par_iter()
        .map(|p| {
            let mut digits = vec![0usize; n];
            let mut rest = p;
            for d in digits.iter_mut().skip(low) {
                *d = (rest % k as u64) as usize;
                rest /= k as u64;
            }
            let mut x: Vec<i128> = digits.iter().map(|&d| law.values[d]).collect();
            let mut r: Vec<i128> = (0..n).map(|i| (0..n).map(|j| b[i * n + j] * x[j]).sum()).collect();
            let mut q: i128 = (0..n).map(|i| x[i] * r[i]).sum();
            let mut w: u128 = digits.iter().map(|&d| law.weights[d]).product();
            let mut out: HashMap<i128, u128> = HashMap::new();
            loop {
                *out.entry(q).or_insert(0) += w;
                // odometer over the low digits
                let mut i = 0;
                loop {
                    if i == low {
                        return out;
                    }
                    let old = digits[i];
                    let new = if old + 1 == k { 0 } else { old + 1 };
                    digits[i] = new;
                    let delta = law.values[new] - law.values[old];
                    q += 2 * delta * r[i] + b[i * n + i] * delta * delta;
                    for (j, rj) in r.iter_mut().enumerate() {
                        *rj += b[j * n + i] * delta;
                    }
                    x[i] += delta;
                    w = w / law.weights[old] * law.weights[new];
                    if new != 0 {
                        break;
                    }
                    i += 1;
                }
            }
        })
        .collect();
    let mut merged: HashMap<i128, u128> = HashMap::new();
    for t in tallies {
        for (v, c) in t {
            *merged.entry(v).or_insert(0) += c;
        }
    }
    Ok(merged)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadraticConcentration {
    #[serde(with = "crate::rational::serde_str")]
    pub rho_q: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub argmax: Rational,
    /// Number of distinct values the form takes.
    pub support_size: usize,
}

/// Exact `ρ_q(A) = sup_a P(Σ aᵢⱼ ξᵢ ξⱼ = a)`; ties go to the smallest `|a|`,
/// then to positive `a`.
pub fn quadratic_concentration(m: &SymmetricCoefficientMatrix, xi: &SignDistribution) -> Result<QuadraticConcentration> {
    if m.n > QUADRATIC_LIMIT {
        return Err(Error::budget("quadratic form dimension", m.n, QUADRATIC_LIMIT));
    }
    let law = scaled_law(xi)?;
    let (b, l) = m.integral()?;
    let tally = quadratic_tally(&b, m.n, &law, 1 << 24)?;
    let (key, w) = tally
        .iter()
        .max_by(|(k1, w1), (k2, w2)| {
            w1.cmp(w2)
                .then_with(|| k2.unsigned_abs().cmp(&k1.unsigned_abs()))
                .then_with(|| k1.cmp(k2))
        })
        .map(|(k, w)| (*k, *w))
        .expect("non-empty");
    let total = law.weight_total.pow(m.n as u32);
    let scale = l * &law.scale * &law.scale;
    Ok(QuadraticConcentration {
        rho_q: biguint_ratio(&BigUint::from(w), &total),
        argmax: Rational::new(BigInt::from(key), scale),
        support_size: tally.len(),
    })
}

/// Full exact law of the form, sorted by value.
pub fn quadratic_form_law(m: &SymmetricCoefficientMatrix, xi: &SignDistribution) -> Result<Vec<(Rational, Rational)>> {
    if m.n > QUADRATIC_LIMIT {
        return Err(Error::budget("quadratic form dimension", m.n, QUADRATIC_LIMIT));
    }
    let law = scaled_law(xi)?;
    let (b, l) = m.integral()?;
    let tally = quadratic_tally(&b, m.n, &law, 1 << 24)?;
    let total = law.weight_total.pow(m.n as u32);
    let scale = l * &law.scale * &law.scale;
    let mut out: Vec<(Rational, Rational)> = tally
        .into_iter()
        .map(|(k, w)| (Rational::new(BigInt::from(k), scale.clone()), biguint_ratio(&BigUint::from(w), &total)))
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DecouplingCheck {
    /// `P(Q(Y, Z) = x)`.
    #[serde(with = "crate::rational::serde_str")]
    pub lhs: Rational,
    /// `P(Q(Y,Z) = Q(Y',Z) = Q(Y,Z') = Q(Y',Z') = x)`.
    #[serde(with = "crate::rational::serde_str")]
    pub joint: Rational,
    /// `joint^{1/4}`, for display only.
    pub rhs: f64,
    /// `lhs⁴ ≤ joint`, decided exactly.
    pub holds: bool,
}

/// Four-copy decoupling inequality for `E = {Q(Y, Z) = x}`, where `Y` are the
/// signs indexed by `u1` and `Z` the rest. Needs a uniform two-point law.
pub fn decoupling_check(m: &SymmetricCoefficientMatrix, u1: &[usize], x: &Rational, xi: &SignDistribution) -> Result<DecouplingCheck> {
    let n = m.n;
    if n > DECOUPLING_LIMIT {
        return Err(Error::budget("decoupling dimension", n, DECOUPLING_LIMIT));
    }
    let law = scaled_law(xi)?;
    if law.values.len() != 2 || law.weights[0] != law.weights[1] {
        return Err(Error::invalid("decoupling check needs a uniform two-point sign law"));
    }
    let mut in_u1 = vec![false; n];
    for &i in u1 {
        if i >= n || std::mem::replace(&mut in_u1[i], true) {
            return Err(Error::invalid("partition indices must be distinct and in range"));
        }
    }
    let ys: Vec<usize> = (0..n).filter(|i| in_u1[*i]).collect();
    let zs: Vec<usize> = (0..n).filter(|i| !in_u1[*i]).collect();
    let (b, l) = m.integral()?;
    let scale = l * &law.scale * &law.scale;
    // x on the integer scale; a non-integer target is never hit
    let target = x * Rational::from_integer(scale);
    let target = if target.is_integer() { Some(to_i128(&target.to_integer())?) } else { None };

    let value = |mask: usize| -> i128 {
        let v: Vec<i128> = (0..n).map(|i| law.values[mask >> i & 1]).collect();
        (0..n).map(|i| v[i] * (0..n).map(|j| b[i * n + j] * v[j]).sum::<i128>()).sum()
    };
    let ny = 1usize << ys.len();
    let nz = 1usize << zs.len();
    let words = nz.div_ceil(64);
    // row y: bitset over z of the event
    let rows: Vec<Vec<u64>> = (0..ny)
        .into_par_iter()
        .map(|y| {
            let mut row = vec![0u64; words];
            if let Some(t) = target {
                for z in 0..nz {
                    let mut mask = 0usize;
                    for (bit, &i) in ys.iter().enumerate() {
                        mask |= (y >> bit & 1) << i;
                    }
                    for (bit, &i) in zs.iter().enumerate() {
                        mask |= (z >> bit & 1) << i;
                    }
                    if value(mask) == t {
                        row[z / 64] |= 1 << (z % 64);
                    }
                }
            }
            row
        })
        .collect();
    let hits: u64 = rows.iter().flatten().map(|w| w.count_ones() as u64).sum();
    let joint: u128 = (0..ny)
        .into_par_iter()
        .map(|y| {
            (0..ny)
                .map(|y2| {
                    let c: u64 = rows[y].iter().zip(&rows[y2]).map(|(a, b)| (a & b).count_ones() as u64).sum();
                    (c as u128) * (c as u128)
                })
                .sum::<u128>()
        })
        .sum();
    let lhs = biguint_ratio(&BigUint::from(hits), &(BigUint::one() << n));
    let joint = biguint_ratio(&BigUint::from(joint), &(BigUint::one() << (2 * n)));
    let lhs4 = {
        let sq = &lhs * &lhs;
        &sq * &sq
    };
    Ok(DecouplingCheck {
        holds: lhs4 <= joint,
        rhs: crate::rational::to_f64(&joint).powf(0.25),
        lhs,
        joint,
    })
}

/// All balanced partitions `U₁` (as index lists) with `|U₁| = ⌊n/2⌋` and `0 ∈ U₁`
/// when `n` is even, so each unordered split appears once.
pub fn balanced_partitions(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    let h = n / 2;
    (0..n)
        .combinations(h)
        .filter(|c| n % 2 == 1 || c.first() == Some(&0))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructuredKind {
    /// Entries drawn from a symmetric GAP.
    Gap,
    /// `aᵢⱼ = kᵢbⱼ + kⱼbᵢ`.
    LowRank,
    /// Sum of the two.
    Mixed,
}

impl std::str::FromStr for StructuredKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gap" => Ok(StructuredKind::Gap),
            "lowrank" => Ok(StructuredKind::LowRank),
            "mixed" => Ok(StructuredKind::Mixed),
            _ => Err(Error::Parse(format!("unknown structured kind {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StructuredParams {
    pub n: usize,
    /// Symmetric GAP for the additive part; defaults to `{−3, …, 3}`.
    pub gap: Option<Gap>,
    /// Integer `kᵢ`; defaults to alternating `±1`.
    pub k: Option<Vec<i64>>,
    /// Integer `bᵢ`; defaults to uniform in `[−n, n]`.
    pub b: Option<Vec<i64>>,
    pub xi: SignDistribution,
}

impl StructuredParams {
    pub fn new(n: usize) -> Self {
        StructuredParams {
            n,
            gap: None,
            k: None,
            b: None,
            xi: SignDistribution::bernoulli(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StructuredQuadratic {
    pub matrix: SymmetricCoefficientMatrix,
    #[serde(with = "crate::rational::serde_str")]
    pub rho_q: Rational,
    /// Pigeonhole lower bound for `ρ_q` implied by the construction.
    #[serde(with = "crate::rational::serde_str")]
    pub predicted_floor: Rational,
    /// `c` with `predicted_floor = n^{−c}`.
    pub floor_exponent: f64,
}

pub fn structured_quadratic_generator(kind: &StructuredKind, params: &StructuredParams, seed: u64) -> Result<StructuredQuadratic> {
    let n = params.n;
    if n == 0 || n > 20 {
        return Err(Error::invalid("structured generators need 1 ≤ n ≤ 20"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gap = match &params.gap {
        Some(g) => g.clone(),
        None => Gap::integer(&[1], &[3])?,
    };
    if !gap.is_symmetric() {
        return Err(Error::invalid("the additive part needs a symmetric GAP"));
    }
    let k = params
        .k
        .clone()
        .unwrap_or_else(|| (0..n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect());
    let b = match &params.b {
        Some(b) => b.clone(),
        None => (0..n).map(|_| rng.random_range(-(n as i64)..=n as i64)).collect(),
    };
    if k.len() != n || b.len() != n {
        return Err(Error::invalid("k and b need n entries"));
    }

    let mut additive = || -> Result<SymmetricCoefficientMatrix> {
        SymmetricCoefficientMatrix::from_fn(n, |_, _| {
            gap.generators
                .iter()
                .zip(&gap.bounds)
                .map(|(g, m)| g * int(rng.random_range(-(*m as i64)..=*m as i64)))
                .sum()
        })
    };
    let lowrank = || SymmetricCoefficientMatrix::from_fn(n, |i, j| int(k[i] * b[j] + k[j] * b[i]));

    // |n²Q| ≤ Π(2n²mᵢ + 1): the form lies in n²Q whenever ξᵢξⱼ ∈ {−1, 0, 1}
    let dilate_volume = || -> Result<Rational> {
        let vol = gap.dilate((n * n) as u64)?.volume();
        Ok(Rational::new(BigInt::one(), BigInt::from(vol)))
    };
    let zero_prob = || -> Result<Rational> {
        let law = crate::dist::exact_sign_sum_distribution(&CoefficientMultiset::integers(k.iter().copied())?, &params.xi)?;
        Ok(law.prob(&Rational::zero()))
    };
    let unit_products = params.xi.support().iter().all(|(v, _)| v.abs() <= Rational::one());

    let (matrix, floor) = match kind {
        StructuredKind::Gap => (additive()?, dilate_volume()?),
        StructuredKind::LowRank => (lowrank()?, zero_prob()?),
        StructuredKind::Mixed => {
            let a = additive()?;
            (a.add(&lowrank()?)?, dilate_volume()? * zero_prob()?)
        }
    };
    if !unit_products && *kind != StructuredKind::LowRank {
        return Err(Error::invalid("GAP floors need sign values in [−1, 1]"));
    }
    let rho_q = quadratic_concentration(&matrix, &params.xi)?.rho_q;
    let f = crate::rational::to_f64(&floor);
    let floor_exponent = if n > 1 { -f.ln() / (n as f64).ln() } else { 0.0 };
    Ok(StructuredQuadratic {
        matrix,
        rho_q,
        predicted_floor: floor,
        floor_exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn brute_law(m: &SymmetricCoefficientMatrix, xi: &SignDistribution) -> HashMap<Rational, Rational> {
        let s = xi.support();
        let n = m.n();
        let k = s.len();
        let mut out = HashMap::new();
        for code in 0..k.pow(n as u32) {
            let mut c = code;
            let mut x = Vec::new();
            let mut p = Rational::one();
            for _ in 0..n {
                x.push(s[c % k].0.clone());
                p *= &s[c % k].1;
                c /= k;
            }
            *out.entry(m.evaluate(&x)).or_insert_with(Rational::zero) += p;
        }
        out
    }

    #[test]
    fn all_ones_and_identity() {
        let ones = SymmetricCoefficientMatrix::all_ones(4).unwrap();
        let q = quadratic_concentration(&ones, &SignDistribution::boolean()).unwrap();
        assert_eq!(q.rho_q, rat(6, 16));
        assert_eq!(q.argmax, int(4));
        // under ±1 the atom at 4 carries both sums ±2
        let q = quadratic_concentration(&ones, &SignDistribution::bernoulli()).unwrap();
        assert_eq!(q.rho_q, rat(8, 16));
        for n in [1, 5, 9] {
            let q = quadratic_concentration(&SymmetricCoefficientMatrix::identity(n).unwrap(), &SignDistribution::bernoulli()).unwrap();
            assert_eq!(q.rho_q, int(1));
            assert_eq!(q.argmax, int(n as i64));
        }
    }

    #[test]
    fn matches_brute_force_for_several_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let laws = [
            SignDistribution::bernoulli(),
            SignDistribution::boolean(),
            SignDistribution::lazy(rat(1, 3)).unwrap(),
            SignDistribution::parse("-1/2:1/4,3:3/4").unwrap(),
        ];
        for n in 1..=6 {
            let m = SymmetricCoefficientMatrix::from_fn(n, |_, _| rat(rng.random_range(-4..=4), rng.random_range(1..=3))).unwrap();
            for xi in &laws {
                let brute = brute_law(&m, xi);
                let law = quadratic_form_law(&m, xi).unwrap();
                assert_eq!(law.len(), brute.len());
                for (v, p) in &law {
                    assert_eq!(&brute[v], p);
                }
                let best = brute.values().max().unwrap();
                assert_eq!(&quadratic_concentration(&m, xi).unwrap().rho_q, best);
            }
        }
    }

    #[test]
    fn invariant_under_permutation_and_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = SymmetricCoefficientMatrix::random_sign(9, &mut rng).unwrap();
        let xi = SignDistribution::bernoulli();
        let base = quadratic_concentration(&m, &xi).unwrap().rho_q;
        let p = m.permuted(&[3, 1, 4, 0, 8, 5, 2, 7, 6]).unwrap();
        assert_eq!(quadratic_concentration(&p, &xi).unwrap().rho_q, base);
        assert_eq!(quadratic_concentration(&m.scaled(&rat(-7, 3)), &xi).unwrap().rho_q, base);
    }

    #[test]
    fn decoupling_on_all_ones() {
        let m = SymmetricCoefficientMatrix::all_ones(4).unwrap();
        let xi = SignDistribution::bernoulli();
        let c = decoupling_check(&m, &[0, 1], &int(0), &xi).unwrap();
        assert_eq!(c.lhs, rat(6, 16));
        assert!(c.holds);
        // brute force over the four copies
        let q = |y: [i64; 2], z: [i64; 2]| (y[0] + y[1] + z[0] + z[1]).pow(2);
        let signs = [[-1, -1], [-1, 1], [1, -1], [1, 1]];
        let mut joint = 0;
        for y in signs {
            for y2 in signs {
                for z in signs {
                    for z2 in signs {
                        if q(y, z) == 0 && q(y2, z) == 0 && q(y, z2) == 0 && q(y2, z2) == 0 {
                            joint += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(c.joint, rat(joint, 256));
        let out = decoupling_check(&m, &[0, 1], &rat(1, 2), &xi).unwrap();
        assert_eq!(out.lhs, int(0));
        assert!(out.holds);
    }

    #[test]
    fn decoupling_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let xi = SignDistribution::bernoulli();
        for _ in 0..5 {
            let m = SymmetricCoefficientMatrix::random_sign(6, &mut rng).unwrap();
            for u1 in balanced_partitions(6) {
                assert!(decoupling_check(&m, &u1, &int(0), &xi).unwrap().holds);
            }
        }
        assert_eq!(balanced_partitions(6).len(), 10);
        assert_eq!(balanced_partitions(5).len(), 10);
    }

    #[test]
    fn generators_meet_their_floors() {
        let p = StructuredParams::new(10);
        let g = structured_quadratic_generator(&StructuredKind::Gap, &p, 3).unwrap();
        assert_eq!(g.predicted_floor, rat(1, 601));
        assert!(g.rho_q >= g.predicted_floor);
        let p = StructuredParams::new(8);
        let l = structured_quadratic_generator(&StructuredKind::LowRank, &p, 3).unwrap();
        assert_eq!(l.predicted_floor, rat(70, 256));
        assert!(l.rho_q >= l.predicted_floor);
        let mut p = StructuredParams::new(8);
        p.k = Some(vec![0; 8]);
        let mixed = structured_quadratic_generator(&StructuredKind::Mixed, &p, 11).unwrap();
        let gap = structured_quadratic_generator(&StructuredKind::Gap, &p, 11).unwrap();
        assert_eq!(mixed.matrix, gap.matrix);
        assert_eq!(mixed.predicted_floor, gap.predicted_floor);
    }
}
