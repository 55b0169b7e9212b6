//! Small-ball suprema in one and two dimensions, plus the flat-direction search.
//!
//! Balls are closed. On the line the supremum is found by a sliding window over
//! the sorted support. In the plane the optimum over closed disks of radius `R`
//! is attained at a finite candidate set: if a disk `B(c, R)` covers a point set
//! `S`, the admissible centers form `⋂_{x∈S} B(x, R)`, a compact convex region
//! whose boundary either has a vertex (a point at distance exactly `R` from two
//! members of `S`, so those two are at distance `≤ 2R`) or is a full circle
//! (then every member of `S` coincides and the center may be that point). So
//! every support point, plus both centers equidistant-`R` from each pair at
//! distance `≤ 2R`, suffices. Coincident support points are merged into one
//! weighted atom by the convolution.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::dist::{planar_law, scalar_law, DEFAULT_ATOM_BUDGET};
use crate::error::{Error, Result};
use crate::multiset::{CoefficientMultiset, Point2};
use crate::rational::{biguint_ratio, int, Rational};
use crate::sign::SignDistribution;

pub const DEFAULT_PLANAR_ENUMERATION_LIMIT: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallQuery {
    pub center: Option<Rational>,
    pub radius: Rational,
    pub closed: bool,
}

impl BallQuery {
    pub fn sup(radius: Rational) -> Result<Self> {
        if radius.is_negative() {
            return Err(Error::invalid("radius must be non-negative"));
        }
        Ok(BallQuery {
            center: None,
            radius,
            closed: true,
        })
    }

    /// `s = ⌊R⌋ + 1`.
    pub fn s(&self) -> u64 {
        self.radius.floor().to_integer().to_u64().unwrap_or(u64::MAX - 1) + 1
    }
}

/// `max_x P(S_A ∈ [x − R, x + R])` with a maximizing center.
///
/// Among maximizing windows the center of smallest absolute value is
/// returned, ties going to the positive one; the center is the midpoint of
/// the extreme atoms the window covers.
pub fn ball_probability_1d(a: &CoefficientMultiset, xi: &SignDistribution, radius: &Rational) -> Result<(Rational, Rational)> {
    if radius.is_negative() {
        return Err(Error::invalid("radius must be non-negative"));
    }
    let entries = a.as_scalars()?;
    let (law, scale) = scalar_law(entries, xi, DEFAULT_ATOM_BUDGET)?;
    let keys: Vec<(i128, &num_bigint::BigUint)> = law.weights.iter().map(|(k, w)| (*k, w)).collect();
    // window width on the integer lattice: key_j − key_i ≤ 2R·scale
    let width = radius * Rational::from_integer(scale.clone()) * int(2);
    let width_floor = width.floor().to_integer();
    let width_floor = width_floor.to_i128().unwrap_or(i128::MAX);

    let mut best_mass = num_bigint::BigUint::zero();
    let mut best_center2: Option<i128> = None; // twice the lattice center
    let mut j = 0usize;
    let mut mass = num_bigint::BigUint::zero();
    for i in 0..keys.len() {
        if j < i {
            j = i;
            mass = num_bigint::BigUint::zero();
        }
        while j < keys.len() && keys[j].0 - keys[i].0 <= width_floor {
            mass += keys[j].1;
            j += 1;
        }
        let center2 = keys[i].0 + keys[j - 1].0;
        let better = match (&best_center2, mass.cmp(&best_mass)) {
            (None, _) => true,
            (_, std::cmp::Ordering::Greater) => true,
            (Some(bc), std::cmp::Ordering::Equal) => {
                center2.abs() < bc.abs() || (center2.abs() == bc.abs() && center2 > *bc)
            }
            _ => false,
        };
        if better {
            best_mass = mass.clone();
            best_center2 = Some(center2);
        }
        mass -= keys[i].1;
    }
    let center = Rational::new(BigInt::from(best_center2.unwrap_or(0)), scale * 2);
    Ok((biguint_ratio(&best_mass, &law.total), center))
}

/// Where the best disk sits. `exact` is set when a rational center attaining
/// the maximum was found.
#[derive(Clone, Debug, Serialize)]
pub struct DiskWitness {
    pub center_approx: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_exact: Option<Point2>,
}

/// Exact `P(S_A ∈ closed disk(center, R))` for a given center.
pub fn disk_mass(a: &CoefficientMultiset, xi: &SignDistribution, center: &Point2, radius: &Rational) -> Result<Rational> {
    let entries = a.as_planar()?;
    let (law, scale) = planar_law(entries, xi, DEFAULT_ATOM_BUDGET)?;
    let sc = Rational::from_integer(scale);
    let cx = &center.x * &sc;
    let cy = &center.y * &sc;
    let r2 = radius * radius * &sc * &sc;
    let mut mass = num_bigint::BigUint::zero();
    for ((kx, ky), w) in &law.weights {
        let dx = Rational::from_integer(BigInt::from(*kx)) - &cx;
        let dy = Rational::from_integer(BigInt::from(*ky)) - &cy;
        if &dx * &dx + &dy * &dy <= r2 {
            mass += w;
        }
    }
    Ok(biguint_ratio(&mass, &law.total))
}

pub fn ball_probability_2d(a: &CoefficientMultiset, xi: &SignDistribution, radius: &Rational) -> Result<(Rational, DiskWitness)> {
    ball_probability_2d_with_limit(a, xi, radius, DEFAULT_PLANAR_ENUMERATION_LIMIT)
}

pub fn ball_probability_2d_with_limit(
    a: &CoefficientMultiset,
    xi: &SignDistribution,
    radius: &Rational,
    limit: usize,
) -> Result<(Rational, DiskWitness)> {
    if radius.is_negative() {
        return Err(Error::invalid("radius must be non-negative"));
    }
    let entries = a.as_planar()?;
    if entries.len() > limit {
        return Err(Error::budget("planar enumeration size n", entries.len(), limit));
    }
    let (law, scale) = planar_law(entries, xi, DEFAULT_ATOM_BUDGET)?;
    let points: Vec<((i128, i128), &num_bigint::BigUint)> = law.weights.iter().map(|(k, w)| (*k, w)).collect();

    // radius on the lattice: R'² = rn / rd
    let sc = Rational::from_integer(scale.clone());
    let r_lat = radius * &sc;
    let r2 = &r_lat * &r_lat;
    let rn = r2.numer().clone();
    let rd = r2.denom().clone();
    let cell = {
        let c = (&r_lat * int(2)).ceil().to_integer();
        c.to_i128().unwrap_or(i128::MAX).max(1)
    };

    let mut grid: HashMap<(i128, i128), Vec<usize>> = HashMap::new();
    for (idx, ((x, y), _)) in points.iter().enumerate() {
        grid.entry((x.div_euclid(cell), y.div_euclid(cell))).or_default().push(idx);
    }
    let neighbours = |p: (i128, i128)| {
        let (cx, cy) = (p.0.div_euclid(cell), p.1.div_euclid(cell));
        let mut out = Vec::new();
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(v) = grid.get(&(cx + dx, cy + dy)) {
                    out.extend_from_slice(v);
                }
            }
        }
        out
    };

    let within_point = |p: (i128, i128), q: (i128, i128)| -> bool {
        let dx = BigInt::from(p.0 - q.0);
        let dy = BigInt::from(p.1 - q.1);
        (&dx * &dx + &dy * &dy) * &rd <= rn
    };

    let mut best = num_bigint::BigUint::zero();
    let mut best_center: Option<Candidate> = None;

    for (i, (p, _)) in points.iter().enumerate() {
        let near = neighbours(*p);
        let mut m = num_bigint::BigUint::zero();
        for &j in &near {
            if within_point(points[j].0, *p) {
                m += points[j].1;
            }
        }
        if m > best {
            best = m;
            best_center = Some(Candidate::Point(i));
        }
        for &q_idx in &near {
            if q_idx <= i {
                continue;
            }
            let q = points[q_idx].0;
            let dx = BigInt::from(q.0 - p.0);
            let dy = BigInt::from(q.1 - p.1);
            let d2 = &dx * &dx + &dy * &dy;
            // need |P − Q| ≤ 2R: d² ≤ 4 rn / rd
            let f = BigInt::from(4) * &rn - &d2 * &rd;
            if f.is_negative() {
                continue;
            }
            for sign in [1i32, -1] {
                let pair = PairCenter {
                    p: *p,
                    q,
                    d2: d2.clone(),
                    f: f.clone(),
                    rd: rd.clone(),
                    sign,
                };
                let mut m = num_bigint::BigUint::zero();
                for &j in &near {
                    if pair.covers(points[j].0) {
                        m += points[j].1;
                    }
                }
                if m > best {
                    best = m;
                    best_center = Some(Candidate::Pair(pair));
                }
            }
        }
    }

    let witness = match best_center {
        None => DiskWitness {
            center_approx: [0.0, 0.0],
            center_exact: None,
        },
        Some(Candidate::Point(i)) => {
            let (x, y) = points[i].0;
            let c = Point2::new(
                Rational::new(BigInt::from(x), scale.clone()),
                Rational::new(BigInt::from(y), scale.clone()),
            );
            DiskWitness {
                center_approx: [crate::rational::to_f64(&c.x), crate::rational::to_f64(&c.y)],
                center_exact: Some(c),
            }
        }
        Some(Candidate::Pair(pair)) => {
            let (ax, ay) = pair.approx_center();
            let s = scale.to_f64().unwrap_or(1.0);
            let approx = [ax / s, ay / s];
            let exact = rational_center_near(&points, &pair, &best, &rn, &rd).map(|(x, y)| {
                Point2::new(x / Rational::from_integer(scale.clone()), y / Rational::from_integer(scale.clone()))
            });
            DiskWitness {
                center_approx: approx,
                center_exact: exact,
            }
        }
    };
    Ok((biguint_ratio(&best, &law.total), witness))
}

enum Candidate {
    Point(usize),
    Pair(PairCenter),
}

/// Center at distance exactly `R` from both `p` and `q`, on side `sign`.
struct PairCenter {
    p: (i128, i128),
    q: (i128, i128),
    d2: BigInt,
    /// `4rn − d²·rd`, proportional to `4R² − d²`.
    f: BigInt,
    rd: BigInt,
    sign: i32,
}

impl PairCenter {
    /// Exact test `|X − c| ≤ R` for the irrational center `c`.
    ///
    /// With doubled coordinates `w = 2X − (P + Q)` and `u = perp(Q − P)`, the
    /// condition reduces to `α·d·√rd ≤ 2β·√f` where `α = |w|² − d²` and
    /// `β = ±⟨w, u⟩`.
    fn covers(&self, x: (i128, i128)) -> bool {
        let wx = BigInt::from(2 * x.0 - self.p.0 - self.q.0);
        let wy = BigInt::from(2 * x.1 - self.p.1 - self.q.1);
        let ux = BigInt::from(-(self.q.1 - self.p.1));
        let uy = BigInt::from(self.q.0 - self.p.0);
        let alpha = &wx * &wx + &wy * &wy - &self.d2;
        let mut beta = &wx * &ux + &wy * &uy;
        if self.sign < 0 {
            beta = -beta;
        }
        let lhs_sq = &alpha * &alpha * &self.d2 * &self.rd;
        let rhs_sq = BigInt::from(4) * &beta * &beta * &self.f;
        let a_pos = alpha.is_positive();
        let b_pos = beta.is_positive();
        match (a_pos, alpha.is_zero(), b_pos, beta.is_zero()) {
            // α ≤ 0 and β ≥ 0
            (false, _, true, _) | (false, _, _, true) => true,
            // α > 0 and β ≤ 0
            (true, _, false, _) => false,
            // α > 0, β > 0
            (true, _, true, _) => lhs_sq <= rhs_sq,
            // α ≤ 0, β < 0
            _ => lhs_sq >= rhs_sq,
        }
    }

    fn approx_center(&self) -> (f64, f64) {
        let mx = (self.p.0 + self.q.0) as f64 / 2.0;
        let my = (self.p.1 + self.q.1) as f64 / 2.0;
        let ux = -((self.q.1 - self.p.1) as f64);
        let uy = (self.q.0 - self.p.0) as f64;
        let d2 = self.d2.to_f64().unwrap_or(f64::INFINITY);
        let f = self.f.to_f64().unwrap_or(0.0);
        let rd = self.rd.to_f64().unwrap_or(1.0);
        // t = √(4R² − d²) / (2d)
        let t = (f / rd).max(0.0).sqrt() / (2.0 * d2.sqrt());
        let s = self.sign as f64;
        (mx + s * t * ux, my + s * t * uy)
    }
}

/// Tries rational points between the irrational vertex and the centroid of the
/// covered atoms until one covers the same mass exactly.
fn rational_center_near(
    points: &[((i128, i128), &num_bigint::BigUint)],
    pair: &PairCenter,
    target: &num_bigint::BigUint,
    rn: &BigInt,
    rd: &BigInt,
) -> Option<(Rational, Rational)> {
    let covered: Vec<(i128, i128)> = points.iter().map(|(p, _)| *p).filter(|p| pair.covers(*p)).collect();
    if covered.is_empty() {
        return None;
    }
    let (vx, vy) = pair.approx_center();
    let gx = covered.iter().map(|p| p.0 as f64).sum::<f64>() / covered.len() as f64;
    let gy = covered.iter().map(|p| p.1 as f64).sum::<f64>() / covered.len() as f64;
    let r2 = Rational::new(rn.clone(), rd.clone());
    for lambda in [0.0, 1e-12, 1e-9, 1e-6, 1e-4, 1e-2, 0.1, 0.5] {
        let cx = crate::rational::from_f64(vx + lambda * (gx - vx))?;
        let cy = crate::rational::from_f64(vy + lambda * (gy - vy))?;
        let mut m = num_bigint::BigUint::zero();
        for ((x, y), w) in points {
            let dx = Rational::from_integer(BigInt::from(*x)) - &cx;
            let dy = Rational::from_integer(BigInt::from(*y)) - &cy;
            if &dx * &dx + &dy * &dy <= r2 {
                m += *w;
            }
        }
        if &m >= target {
            return Some((cx, cy));
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatDirection {
    /// Unit normal `e` of the line `H = {x : ⟨x, e⟩ = offset}`.
    pub direction: [f64; 2],
    pub offset: f64,
    pub far_count: usize,
}

/// Grid search over normal directions for the affine line leaving the fewest
/// entries at distance `≥ 1`. Each direction is solved exactly as a 1-D
/// stabbing problem with open intervals `(pᵢ − 1, pᵢ + 1)`.
pub fn flat_direction_search(a: &CoefficientMultiset, angle_grid: usize) -> Result<FlatDirection> {
    if angle_grid < 4 {
        return Err(Error::invalid("angle grid must have at least 4 directions"));
    }
    let pts: Vec<(f64, f64)> = a
        .as_planar()?
        .iter()
        .map(|p| (crate::rational::to_f64(&p.x), crate::rational::to_f64(&p.y)))
        .collect();
    let n = pts.len();
    let mut best = FlatDirection {
        direction: [1.0, 0.0],
        offset: 0.0,
        far_count: usize::MAX,
    };
    for k in 0..angle_grid {
        let theta = std::f64::consts::PI * k as f64 / angle_grid as f64;
        let e = (theta.cos(), theta.sin());
        let mut proj: Vec<f64> = pts.iter().map(|p| p.0 * e.0 + p.1 * e.1).collect();
        proj.sort_by(|x, y| x.total_cmp(y));
        // most projections inside an open window of length 2
        let mut j = 0;
        let mut inside = 0;
        let mut offset = proj[0];
        for i in 0..n {
            if j < i {
                j = i;
            }
            while j < n && proj[j] - proj[i] < 2.0 {
                j += 1;
            }
            if j - i > inside {
                inside = j - i;
                offset = (proj[i] + proj[j - 1]) / 2.0;
            }
        }
        let far = n - inside;
        if far < best.far_count {
            best = FlatDirection {
                direction: [e.0, e.1],
                offset,
                far_count: far,
            };
        }
    }
    Ok(best)
}

/// Number of entries with `|⟨aᵢ, e⟩ − c| ≥ 1`.
pub fn far_count(a: &CoefficientMultiset, direction: [f64; 2], offset: f64) -> Result<usize> {
    Ok(a
        .as_planar()?
        .iter()
        .filter(|p| {
            let d = crate::rational::to_f64(&p.x) * direction[0] + crate::rational::to_f64(&p.y) * direction[1] - offset;
            d.abs() >= 1.0
        })
        .count())
}
