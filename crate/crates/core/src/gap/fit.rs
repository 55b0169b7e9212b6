//! Search for a small proper symmetric GAP containing most of an integer
//! multiset. Heuristic: candidate generators come from the entries and their
//! pairwise differences; the exceptional set is chosen greedily.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use super::Gap;
use crate::dist::bernoulli_rho_integers;
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct GapFitCertificate {
    pub gap: Gap,
    pub volume: u128,
    pub covered: usize,
    pub covered_indices: Vec<usize>,
    pub excluded_indices: Vec<usize>,
    pub epsilon_achieved: f64,
    #[serde(with = "crate::rational::serde_str")]
    pub rho: Rational,
    /// `ρ·|Q|·n^{r/2}`.
    pub quality: f64,
}

/// Coordinates of each entry in a candidate basis, largest generator first.
#[derive(Clone, Debug)]
struct Fit {
    gens: Vec<i64>,
    coords: Vec<Vec<i64>>,
}

impl Fit {
    fn bounds(&self, keep: &[bool]) -> Vec<u64> {
        (0..self.gens.len())
            .map(|j| {
                self.coords
                    .iter()
                    .zip(keep)
                    .filter(|(_, k)| **k)
                    .map(|(c, _)| c[j].unsigned_abs())
                    .max()
                    .unwrap_or(0)
            })
            .collect()
    }

    fn volume(&self, keep: &[bool]) -> u128 {
        self.bounds(keep).iter().fold(1u128, |acc, m| acc.saturating_mul(2 * *m as u128 + 1))
    }
}

/// Writes each value as `m·g + r` with the remainder chosen by `rest`.
fn peel(values: &[i64], g: i64) -> (Vec<i64>, Vec<i64>) {
    let mut m = Vec::with_capacity(values.len());
    let mut r = Vec::with_capacity(values.len());
    for &v in values {
        let q = (v as f64 / g as f64).round() as i64;
        m.push(q);
        r.push(v - q * g);
    }
    (m, r)
}

fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0i64, |acc, v| acc.gcd(v))
}

/// Rank-one fit `v = m·g` with `g = gcd(values)`.
fn fit_rank1(values: &[i64]) -> Fit {
    let g = gcd_all(values).max(1);
    Fit {
        gens: vec![g],
        coords: values.iter().map(|v| vec![v / g]).collect(),
    }
}

/// Generator candidates: entries and pairwise differences, most frequent first.
fn candidates(values: &[i64], limit: usize) -> Vec<i64> {
    let mut freq: BTreeMap<i64, usize> = BTreeMap::new();
    for (i, a) in values.iter().enumerate() {
        if *a != 0 {
            *freq.entry(a.abs()).or_default() += 1;
        }
        for b in &values[i + 1..] {
            let d = (a - b).abs();
            if d != 0 {
                *freq.entry(d).or_default() += 1;
            }
        }
    }
    let mut v: Vec<(usize, i64)> = freq.into_iter().map(|(d, c)| (c, d)).collect();
    v.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    v.into_iter().take(limit).map(|x| x.1).collect()
}

/// Best fit of rank exactly `rank` (or lower when a generator collapses) for
/// the kept values.
fn fit_rank(values: &[i64], rank: usize, limit: usize) -> Vec<Fit> {
    if rank <= 1 || values.iter().all(|v| *v == 0) {
        return vec![fit_rank1(values)];
    }
    let mut out = Vec::new();
    for g in candidates(values, limit) {
        let (m, r) = peel(values, g);
        for sub in fit_rank(&r, rank - 1, limit / 2) {
            let mut gens = vec![g];
            gens.extend(&sub.gens);
            let coords = m.iter().zip(&sub.coords).map(|(mi, c)| {
                let mut v = vec![*mi];
                v.extend(c);
                v
            });
            out.push(Fit {
                gens,
                coords: coords.collect(),
            });
        }
    }
    // keep only the smallest few to bound the branching
    out.sort_by_key(|f| f.volume(&vec![true; values.len()]));
    out.truncate(4);
    out
}

/// Drops up to `k` entries, each time the one whose removal shrinks the volume most.
fn greedy_exclusions(fit: &Fit, k: usize) -> Vec<bool> {
    let n = fit.coords.len();
    let mut keep = vec![true; n];
    for _ in 0..k {
        let current = fit.volume(&keep);
        let mut best: Option<(u128, usize)> = None;
        for i in 0..n {
            if !keep[i] {
                continue;
            }
            keep[i] = false;
            let v = fit.volume(&keep);
            keep[i] = true;
            if v < current && best.is_none_or(|(bv, _)| v < bv) {
                best = Some((v, i));
            }
        }
        match best {
            Some((_, i)) => keep[i] = false,
            None => break,
        }
    }
    keep
}

/// `ρ(A)` and a proper symmetric GAP of least volume found that contains all
/// but at most `⌊εn⌋` entries.
pub fn gap_fit(entries: &[i64], epsilon: &Rational, max_rank: usize, budget: u64) -> Result<GapFitCertificate> {
    if entries.is_empty() {
        return Err(Error::invalid("empty multiset"));
    }
    if !(1..=3).contains(&max_rank) {
        return Err(Error::invalid("max_rank must be 1, 2 or 3"));
    }
    if *epsilon < Rational::from_integer(0.into()) || *epsilon >= Rational::from_integer(1.into()) {
        return Err(Error::invalid("ε must lie in [0, 1)"));
    }
    let n = entries.len();
    let k = (epsilon * Rational::from_integer((n as i64).into())).floor().to_integer();
    let k: usize = k.try_into().unwrap_or(0);

    let mut fits = vec![fit_rank1(entries)];
    for r in 2..=max_rank {
        fits.extend(fit_rank(entries, r, 64));
    }

    let mut best: Option<(u128, Gap, Vec<bool>)> = None;
    for fit in &fits {
        let keep = greedy_exclusions(fit, k);
        let bounds = fit.bounds(&keep);
        let gap = Gap::integer(&fit.gens, &bounds)?.canonical();
        let vol = gap.volume_u64().map(u128::from).unwrap_or(u128::MAX);
        if best.as_ref().is_some_and(|(bv, _, _)| vol >= *bv) {
            continue;
        }
        if !gap.is_proper(budget).unwrap_or(false) {
            continue;
        }
        best = Some((vol, gap, keep));
    }
    // the gcd progression is always proper
    let (volume, gap, keep) = best.expect("rank-one fit is proper");

    let covered_indices: Vec<usize> = (0..n).filter(|i| keep[*i]).collect();
    let excluded_indices: Vec<usize> = (0..n).filter(|i| !keep[*i]).collect();
    let rho = bernoulli_rho_integers(entries);
    let r = gap.rank() as f64;
    let quality = to_f64(&rho) * volume as f64 * (n as f64).powf(r / 2.0);
    Ok(GapFitCertificate {
        gap,
        volume,
        covered: covered_indices.len(),
        epsilon_achieved: excluded_indices.len() as f64 / n as f64,
        covered_indices,
        excluded_indices,
        rho,
        quality,
    })
}
