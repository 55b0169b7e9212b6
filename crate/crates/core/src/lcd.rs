//! Essential least common denominators and the small-ball bound they control.
//!
//! `LCD_{α,γ}(a) = inf{θ > 0 : dist(θa, ℤⁿ) < min(γ‖θa‖₂, α)}`.
//!
//! On the line the search is exact up to floating point: between consecutive
//! breakpoints `θ = (k + 1/2)/|aᵢ|` the nearest lattice point `p = round(θa)`
//! is fixed, and both conditions `‖θa − p‖² < γ²θ²‖a‖²` and
//! `‖θa − p‖² < α²` are quadratic in `θ`, so the qualifying part of each
//! segment is an interval. The first non-empty one gives the infimum.
//!
//! In the plane, candidate lattice points come from a grid over the disk of
//! radius `theta_max`; for each candidate the qualifying set is the
//! intersection of two ellipses, and the point of least norm is found by ray
//! search over angles with golden-section refinement.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_SEGMENT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug)]
pub struct LcdQuery {
    pub alpha: f64,
    pub gamma: f64,
    /// Defaults to `√n/γ`.
    pub theta_max: Option<f64>,
    /// Grid step for the planar search and witness offset on the line.
    pub resolution: Option<f64>,
}

impl LcdQuery {
    pub fn new(alpha: f64, gamma: f64) -> Result<Self> {
        let q = LcdQuery {
            alpha,
            gamma,
            theta_max: None,
            resolution: None,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn theta_max(mut self, t: f64) -> Self {
        self.theta_max = Some(t);
        self
    }

    pub fn resolution(mut self, r: f64) -> Self {
        self.resolution = Some(r);
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0) {
            return Err(Error::invalid("α must be positive"));
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(Error::invalid("γ must lie in (0, 1)"));
        }
        if let Some(t) = self.theta_max {
            if !(t > 0.0) {
                return Err(Error::invalid("theta_max must be positive"));
            }
        }
        Ok(())
    }

    fn limit(&self, n: usize) -> f64 {
        self.theta_max.unwrap_or((n as f64).sqrt() / self.gamma)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LcdResult {
    /// `None` when no `θ` up to `theta_max` qualifies.
    pub lcd: Option<f64>,
    pub theta_max: f64,
    /// A point strictly inside the qualifying set, or empty.
    pub witness_theta: Vec<f64>,
    pub witness_integers: Vec<i64>,
    pub achieved_distance: f64,
    /// `min(γ‖θa‖, α) − dist` at the witness.
    pub slack: f64,
}

impl LcdResult {
    fn exceeds(theta_max: f64) -> Self {
        LcdResult {
            lcd: None,
            theta_max,
            witness_theta: Vec::new(),
            witness_integers: Vec::new(),
            achieved_distance: f64::NAN,
            slack: f64::NAN,
        }
    }

    pub fn lcd_or_infinity(&self) -> f64 {
        self.lcd.unwrap_or(f64::INFINITY)
    }
}

/// Open interval `{x : c2 x² + c1 x + c0 < 0}` for `c2 > 0`.
fn negative_interval(c2: f64, c1: f64, c0: f64) -> Option<(f64, f64)> {
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc <= 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    // stable roots
    let q = -0.5 * (c1 + c1.signum() * sq);
    let (r1, r2) = if q == 0.0 { (-sq / (2.0 * c2), sq / (2.0 * c2)) } else { (q / c2, c0 / q) };
    Some((r1.min(r2), r1.max(r2)))
}

fn dist_to_lattice(v: impl Iterator<Item = f64>) -> (f64, Vec<i64>) {
    let mut d2 = 0.0;
    let mut p = Vec::new();
    for x in v {
        let r = x.round();
        d2 += (x - r) * (x - r);
        p.push(r as i64);
    }
    (d2.sqrt(), p)
}

pub fn lcd_1d(a: &[f64], q: &LcdQuery) -> Result<LcdResult> {
    lcd_1d_with_budget(a, q, DEFAULT_SEGMENT_BUDGET)
}

pub fn lcd_1d_with_budget(a: &[f64], q: &LcdQuery, budget: u64) -> Result<LcdResult> {
    q.validate()?;
    if a.is_empty() {
        return Err(Error::invalid("empty coefficient vector"));
    }
    let theta_max = q.limit(a.len());
    let norm2: f64 = a.iter().map(|x| x * x).sum();
    if norm2 == 0.0 {
        return Ok(LcdResult::exceeds(theta_max));
    }
    let total: f64 = a.iter().map(|x| x.abs() * theta_max + 1.0).sum();
    if total > budget as f64 {
        return Err(Error::budget("LCD breakpoint segments", total as u128, budget));
    }
    let mut breaks: Vec<f64> = Vec::with_capacity(total as usize);
    for &x in a {
        let ax = x.abs();
        if ax == 0.0 {
            continue;
        }
        let mut k = 0u64;
        loop {
            let b = (k as f64 + 0.5) / ax;
            if b > theta_max {
                break;
            }
            breaks.push(b);
            k += 1;
        }
    }
    breaks.push(theta_max);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let g2 = q.gamma * q.gamma;
    let a2 = q.alpha * q.alpha;
    let mut lo = 0.0;
    for &hi in &breaks {
        if hi <= lo {
            continue;
        }
        let mid = 0.5 * (lo + hi);
        let p: Vec<f64> = a.iter().map(|x| (mid * x).round()).collect();
        let ap: f64 = a.iter().zip(&p).map(|(x, y)| x * y).sum();
        let pp: f64 = p.iter().map(|y| y * y).sum();
        if pp > 0.0 {
            let i1 = negative_interval(norm2 * (1.0 - g2), -2.0 * ap, pp);
            let i2 = negative_interval(norm2, -2.0 * ap, pp - a2);
            if let (Some((l1, u1)), Some((l2, u2))) = (i1, i2) {
                let left = l1.max(l2).max(lo);
                let right = u1.min(u2).min(hi);
                if left < right {
                    let lcd = left.max(0.0);
                    let step = q.resolution.unwrap_or(1e-9 * (1.0 + lcd)).min(0.5 * (right - left));
                    let theta = if l1.max(l2) < lo { lo } else { left + step };
                    let (d, pi) = dist_to_lattice(a.iter().map(|x| theta * x));
                    let norm = theta * norm2.sqrt();
                    return Ok(LcdResult {
                        lcd: Some(lcd),
                        theta_max,
                        witness_theta: vec![theta],
                        witness_integers: pi,
                        achieved_distance: d,
                        slack: (q.gamma * norm).min(q.alpha) - d,
                    });
                }
            }
        }
        lo = hi;
    }
    Ok(LcdResult::exceeds(theta_max))
}

/// Smallest eigenvalue of `Σ aᵢaᵢᵀ`.
pub fn isotropy_floor(a: &[[f64; 2]]) -> f64 {
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for v in a {
        sxx += v[0] * v[0];
        sxy += v[0] * v[1];
        syy += v[1] * v[1];
    }
    let tr = sxx + syy;
    let det = sxx * syy - sxy * sxy;
    0.5 * (tr - (tr * tr - 4.0 * det).max(0.0).sqrt())
}

/// Quadratic `θᵀGθ − 2bᵀθ + c = ‖Aθ − p‖²` for one lattice point.
struct Ellipses {
    g: [f64; 3],
    b: [f64; 2],
    c: f64,
}

impl Ellipses {
    /// Left end of `{s > 0 : s·u qualifies}`, if any.
    fn ray_entry(&self, u: [f64; 2], g2: f64, a2: f64, cap: f64) -> Option<f64> {
        let quad = self.g[0] * u[0] * u[0] + 2.0 * self.g[1] * u[0] * u[1] + self.g[2] * u[1] * u[1];
        let lin = self.b[0] * u[0] + self.b[1] * u[1];
        let (l1, u1) = negative_interval(quad * (1.0 - g2), -2.0 * lin, self.c)?;
        let (l2, u2) = negative_interval(quad, -2.0 * lin, self.c - a2)?;
        let left = l1.max(l2).max(0.0);
        let right = u1.min(u2).min(cap);
        (left < right).then_some(left)
    }
}

pub fn lcd_multidim(a: &[[f64; 2]], q: &LcdQuery) -> Result<LcdResult> {
    q.validate()?;
    if a.is_empty() {
        return Err(Error::invalid("empty coefficient list"));
    }
    let floor = isotropy_floor(a);
    if floor < 1.0 - 1e-12 {
        return Err(Error::invalid(format!(
            "super-isotropy fails: smallest eigenvalue of Σ aᵢaᵢᵀ is {floor}"
        )));
    }
    let theta_max = q.limit(a.len());
    let h = q.resolution.unwrap_or(theta_max / 300.0);
    let steps = (theta_max / h).ceil() as i64;
    let g = {
        let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
        for v in a {
            sxx += v[0] * v[0];
            sxy += v[0] * v[1];
            syy += v[1] * v[1];
        }
        [sxx, sxy, syy]
    };

    // candidate lattice points from the grid, in a fixed order
    let rows: Vec<Vec<Vec<i64>>> = (-steps..=steps)
        .into_par_iter()
        .map(|i| {
            let mut local = Vec::new();
            for j in -steps..=steps {
                let th = [i as f64 * h, j as f64 * h];
                if th[0] * th[0] + th[1] * th[1] > theta_max * theta_max {
                    continue;
                }
                let p: Vec<i64> = a.iter().map(|v| (th[0] * v[0] + th[1] * v[1]).round() as i64).collect();
                if p.iter().any(|x| *x != 0) {
                    local.push(p);
                }
            }
            local
        })
        .collect();
    let mut seen = HashSet::new();
    let mut candidates = Vec::new();
    for p in rows.into_iter().flatten() {
        if seen.insert(p.clone()) {
            candidates.push(p);
        }
    }

    let g2 = q.gamma * q.gamma;
    let a2 = q.alpha * q.alpha;
    let angles = 720usize;
    let best = candidates
        .par_iter()
        .filter_map(|p| {
            let b = a.iter().zip(p).fold([0.0, 0.0], |acc, (v, &pi)| {
                [acc[0] + v[0] * pi as f64, acc[1] + v[1] * pi as f64]
            });
            let c: f64 = p.iter().map(|&x| (x * x) as f64).sum();
            let e = Ellipses { g, b, c };
            let entry = |phi: f64| e.ray_entry([phi.cos(), phi.sin()], g2, a2, theta_max);
            let mut best: Option<(f64, f64)> = None;
            for k in 0..angles {
                let phi = std::f64::consts::TAU * k as f64 / angles as f64;
                if let Some(s) = entry(phi) {
                    if best.is_none_or(|(bs, _)| s < bs) {
                        best = Some((s, phi));
                    }
                }
            }
            let (mut s, mut phi) = best?;
            // golden-section on the angle around the grid optimum
            let w = std::f64::consts::TAU / angles as f64;
            let (mut lo, mut hi) = (phi - w, phi + w);
            let f = |x: f64| entry(x).unwrap_or(f64::INFINITY);
            let r = 0.5 * (5f64.sqrt() - 1.0);
            let mut x1 = hi - r * (hi - lo);
            let mut x2 = lo + r * (hi - lo);
            let (mut f1, mut f2) = (f(x1), f(x2));
            for _ in 0..60 {
                if f1 < f2 {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - r * (hi - lo);
                    f1 = f(x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + r * (hi - lo);
                    f2 = f(x2);
                }
            }
            for (x, fx) in [(x1, f1), (x2, f2)] {
                if fx < s {
                    s = fx;
                    phi = x;
                }
            }
            Some((s, phi, p.clone()))
        })
        .min_by(|x, y| x.0.total_cmp(&y.0).then_with(|| x.2.cmp(&y.2)));

    let Some((s, phi, _)) = best else {
        return Ok(LcdResult::exceeds(theta_max));
    };
    let u = [phi.cos(), phi.sin()];
    let dist_at = |t: f64| {
        let th = [t * u[0], t * u[1]];
        let proj: Vec<f64> = a.iter().map(|v| th[0] * v[0] + th[1] * v[1]).collect();
        let norm = proj.iter().map(|x| x * x).sum::<f64>().sqrt();
        let (d, p) = dist_to_lattice(proj.into_iter());
        (d, p, (q.gamma * norm).min(q.alpha) - d)
    };
    // step inward until the strict inequality shows
    let mut t = s * (1.0 + 1e-9) + 1e-12;
    let mut tries = 0;
    while dist_at(t).2 <= 0.0 && tries < 40 {
        t = s + (t - s) * 2.0;
        tries += 1;
    }
    let (d, p, slack) = dist_at(t);
    Ok(LcdResult {
        lcd: Some(s),
        theta_max,
        witness_theta: vec![t * u[0], t * u[1]],
        witness_integers: p,
        achieved_distance: d,
        slack,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RvBound {
    pub bound: f64,
    pub lcd: Option<f64>,
    /// Smallest admissible `β`: `1/LCD`, or `1/theta_max` when the scan found none.
    pub beta_min: f64,
    pub b: f64,
    pub constant: f64,
}

/// Frozen constant for the LCD small-ball bound.
pub const RV_CONSTANT: f64 = 2.0;

/// `Cβ/(γ√b) + C e^{−2bα²}` after checking `Σaᵢ² ≥ 1`, `b > 0` and
/// `β ≥ 1/LCD_{α,γ}(a)`.
pub fn rv_smallball_bound(a: &[f64], beta: f64, q: &LcdQuery, b: f64, constant: f64) -> Result<RvBound> {
    let norm2: f64 = a.iter().map(|x| x * x).sum();
    if norm2 < 1.0 - 1e-12 {
        return Err(Error::invalid(format!("Σ aᵢ² = {norm2} is below 1")));
    }
    if !(b > 0.0 && b <= 1.0) {
        return Err(Error::invalid(format!("spread b = {b} must lie in (0, 1]")));
    }
    let lcd = lcd_1d(a, q)?;
    let beta_min = match lcd.lcd {
        Some(l) => 1.0 / l,
        None => 1.0 / lcd.theta_max,
    };
    if beta < beta_min {
        return Err(Error::invalid(format!("β = {beta} is below 1/LCD = {beta_min}")));
    }
    let bound = constant * beta / (q.gamma * b.sqrt()) + constant * (-2.0 * b * q.alpha * q.alpha).exp();
    Ok(RvBound {
        bound,
        lcd: lcd.lcd,
        beta_min,
        b,
        constant,
    })
}

/// Frozen constant of the recurrence-set lemma in dimension one: `3z` balls of
/// length `2r = 4tβ/(γz)`.
pub const RECURRENCE_CONSTANT: f64 = 12.0;

pub const DEFAULT_RECURRENCE_GRID: usize = 400_001;

#[derive(Clone, Debug, Serialize)]
pub struct RecurrenceMeasure {
    pub grid_estimate: f64,
    pub analytic: f64,
    pub lemma_bound: f64,
    pub within_bound: bool,
    /// Fraction of the estimate carried by cells whose neighbours disagree.
    pub boundary_fraction: f64,
    pub resolution_warning: bool,
    /// Whether `LCD_{α,γ}(a) ≥ 1/β`, the lemma's standing hypothesis.
    pub lcd_hypothesis: bool,
}

/// Measure of `I(t) = {θ ∈ [−1, 1] : dist((z/β)θa, ℤⁿ) ≤ t}`.
#[allow(clippy::too_many_arguments)]
pub fn recurrence_set_measure(a: &[f64], t: f64, z: f64, beta: f64, gamma: f64, alpha: f64, grid: usize) -> Result<RecurrenceMeasure> {
    if !(t >= 0.0 && t < alpha / 2.0) {
        return Err(Error::invalid(format!("need 0 ≤ t < α/2, got t = {t}, α = {alpha}")));
    }
    if z < 1.0 {
        return Err(Error::invalid("z must be at least 1"));
    }
    if !(beta > 0.0) {
        return Err(Error::invalid("β must be positive"));
    }
    if grid < 3 {
        return Err(Error::invalid("grid needs at least 3 points"));
    }
    let c = z / beta;
    let scaled: Vec<f64> = a.iter().map(|x| c * x).collect();
    let inside = |th: f64| dist_to_lattice(scaled.iter().map(|x| th * x)).0 <= t;

    // midpoint rule over equal cells
    let w = 2.0 / grid as f64;
    let flags: Vec<bool> = (0..grid).into_par_iter().map(|i| inside(-1.0 + (i as f64 + 0.5) * w)).collect();
    let count = flags.iter().filter(|f| **f).count();
    let estimate = count as f64 * w;
    let boundary = (0..grid)
        .filter(|&i| flags[i] && ((i > 0 && !flags[i - 1]) || (i + 1 < grid && !flags[i + 1])))
        .count();
    let boundary_fraction = if count == 0 { 0.0 } else { boundary as f64 / count as f64 };

    let analytic = recurrence_analytic(&scaled, t);
    let lemma_bound = RECURRENCE_CONSTANT * t * beta / gamma;
    let q = LcdQuery::new(alpha, gamma)?.theta_max(1.0 / beta);
    let lcd = lcd_1d(a, &q)?;
    Ok(RecurrenceMeasure {
        grid_estimate: estimate,
        analytic,
        lemma_bound,
        within_bound: estimate <= lemma_bound,
        boundary_fraction,
        resolution_warning: boundary_fraction > 0.01,
        lcd_hypothesis: lcd.lcd.is_none_or(|l| l >= 1.0 / beta),
    })
}

/// Same set measured segment by segment: with `p` fixed the condition
/// `‖θv − p‖² ≤ t²` is an interval in `θ`.
fn recurrence_analytic(v: &[f64], t: f64) -> f64 {
    let mut breaks: Vec<f64> = vec![-1.0, 1.0];
    for &x in v {
        let ax = x.abs();
        if ax == 0.0 {
            continue;
        }
        let kmax = (ax - 0.5).ceil().max(0.0) as i64 + 1;
        for k in -kmax..=kmax {
            let b = (k as f64 + 0.5) / ax;
            if b > -1.0 && b < 1.0 {
                breaks.push(b);
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let vv: f64 = v.iter().map(|x| x * x).sum();
    let mut total = 0.0;
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let mid = 0.5 * (lo + hi);
        let p: Vec<f64> = v.iter().map(|x| (mid * x).round()).collect();
        let vp: f64 = v.iter().zip(&p).map(|(x, y)| x * y).sum();
        let pp: f64 = p.iter().map(|y| y * y).sum();
        let interval = if vv == 0.0 {
            (pp <= t * t).then_some((lo, hi))
        } else {
            // vv θ² − 2 vp θ + pp − t² ≤ 0
            let disc = vp * vp - vv * (pp - t * t);
            (disc >= 0.0).then(|| {
                let s = disc.sqrt();
                ((vp - s) / vv, (vp + s) / vv)
            })
        };
        if let Some((l, u)) = interval {
            let l = l.max(lo);
            let u = u.min(hi);
            if u > l {
                total += u - l;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: dense scan of θ with the raw definition.
    fn grid_lcd(a: &[f64], alpha: f64, gamma: f64, theta_max: f64, step: f64) -> Option<f64> {
        let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut th = step;
        while th <= theta_max {
            let (d, _) = dist_to_lattice(a.iter().map(|x| th * x));
            if d < (gamma * th * norm).min(alpha) {
                return Some(th);
            }
            th += step;
        }
        None
    }

    #[test]
    fn all_ones_matches_closed_form_and_oracle() {
        let a = vec![1.0; 8];
        let r = lcd_1d(&a, &LcdQuery::new(0.5, 0.5).unwrap()).unwrap();
        let lcd = r.lcd.unwrap();
        // |θ − 1|·√8 < 1/2 binds before γ does
        assert!((lcd - (1.0 - 0.5 / 8f64.sqrt())).abs() < 1e-12);
        let oracle = grid_lcd(&a, 0.5, 0.5, 3.0, 1e-5).unwrap();
        assert!(oracle >= lcd && oracle - lcd < 2e-5);
        assert_eq!(r.witness_integers, vec![1; 8]);
        assert!(r.slack > 0.0);
    }

    #[test]
    fn two_twos() {
        let a = [2.0, 2.0];
        let r = lcd_1d(&a, &LcdQuery::new(0.5, 0.5).unwrap()).unwrap();
        let oracle = grid_lcd(&a, 0.5, 0.5, 2.0, 1e-6).unwrap();
        assert!((r.lcd.unwrap() - oracle).abs() < 2e-6);
        assert!(r.lcd.unwrap() < 0.5);
    }

    #[test]
    fn sqrt_two_approximant() {
        let a = [1.0, 239.0 / 169.0];
        let q = LcdQuery::new(0.1, 0.1).unwrap().theta_max(10.0);
        let r = lcd_1d(&a, &q).unwrap();
        let oracle = grid_lcd(&a, 0.1, 0.1, 10.0, 1e-5);
        match (r.lcd, oracle) {
            (Some(l), Some(o)) => assert!(o >= l && o - l < 2e-5, "{l} {o}"),
            (None, None) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn scaling_covariance() {
        let a = [1.0, 3.0, 4.0, 7.0];
        let q = LcdQuery::new(0.7, 0.3).unwrap().theta_max(20.0);
        let base = lcd_1d(&a, &q).unwrap().lcd.unwrap();
        for c in [2.0, 3.0, 0.5] {
            let scaled: Vec<f64> = a.iter().map(|x| x * c).collect();
            let l = lcd_1d(&scaled, &q).unwrap().lcd.unwrap();
            assert!((l - base / c).abs() < 1e-9 * (1.0 + base), "{c}");
        }
    }

    #[test]
    fn monotone_in_parameters() {
        let a = [1.0, 2.0, 5.0, 5.0, 9.0];
        let mut prev = f64::INFINITY;
        for alpha in [0.2, 0.4, 0.8, 1.6] {
            let l = lcd_1d(&a, &LcdQuery::new(alpha, 0.4).unwrap().theta_max(10.0)).unwrap().lcd_or_infinity();
            assert!(l <= prev);
            prev = l;
        }
        let mut prev = f64::INFINITY;
        for gamma in [0.1, 0.3, 0.6, 0.9] {
            let l = lcd_1d(&a, &LcdQuery::new(1.0, gamma).unwrap().theta_max(10.0)).unwrap().lcd_or_infinity();
            assert!(l <= prev);
            prev = l;
        }
    }

    #[test]
    fn planar_basis_example() {
        let mut a = vec![[1.0, 0.0]; 4];
        a.extend(vec![[0.0, 1.0]; 4]);
        let q = LcdQuery::new(0.5, 0.5).unwrap().theta_max(3.0);
        let r = lcd_multidim(&a, &q).unwrap();
        // ‖Aθ − (1,1,1,1,0,0,0,0)‖ = 2‖θ − e₁‖ < 1/2 first, at ‖θ‖ = 3/4
        assert!((r.lcd.unwrap() - 0.75).abs() < 1e-6, "{:?}", r.lcd);
        assert!(r.slack > 0.0);
        let doubled: Vec<[f64; 2]> = a.iter().map(|v| [2.0 * v[0], 2.0 * v[1]]).collect();
        let r2 = lcd_multidim(&doubled, &q).unwrap();
        assert!((r2.lcd.unwrap() - 0.375).abs() < 1e-6);
    }

    #[test]
    fn planar_isotropy_is_checked() {
        let a = vec![[1.0, 0.0]; 3];
        assert!(lcd_multidim(&a, &LcdQuery::new(0.5, 0.5).unwrap()).is_err());
    }

    #[test]
    fn rv_bound_rate_for_normalized_all_ones() {
        let mut scaled = Vec::new();
        for n in [16usize, 64, 256] {
            let a = vec![1.0 / (n as f64).sqrt(); n];
            let q = LcdQuery::new((n as f64).sqrt() / 4.0, 0.5).unwrap();
            let lcd = lcd_1d(&a, &q).unwrap().lcd.unwrap();
            // LCD = 3√n/4 from |θ − √n| < θ/2
            assert!((lcd - 0.75 * (n as f64).sqrt()).abs() < 1e-9);
            let r = rv_smallball_bound(&a, 1.0 / lcd, &q, 0.5, RV_CONSTANT).unwrap();
            scaled.push(r.bound * (n as f64).sqrt());
        }
        assert!(scaled.iter().all(|s| *s < 11.0), "{scaled:?}");
        assert!(scaled.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn rv_preconditions() {
        let q = LcdQuery::new(1.0, 0.5).unwrap();
        assert!(rv_smallball_bound(&[0.5], 10.0, &q, 0.5, 2.0).is_err());
        assert!(rv_smallball_bound(&[1.0, 1.0], 1e-3, &q, 0.5, 2.0).is_err());
        assert!(rv_smallball_bound(&[1.0, 1.0], 1.0, &q, 0.0, 2.0).is_err());
        assert!(rv_smallball_bound(&[1.0, 1.0], 100.0, &q, 0.5, 2.0).unwrap().bound > 1.0);
    }

    #[test]
    fn recurrence_matches_interval_lengths() {
        let a = vec![1.0; 10];
        let m = recurrence_set_measure(&a, 0.25, 1.0, 1.0, 0.5, 1.0, DEFAULT_RECURRENCE_GRID).unwrap();
        // |θ − k| ≤ 1/(4√10) around k ∈ {−1, 0, 1}, clipped to [−1, 1]
        let exact = 4.0 * 0.25 / 10f64.sqrt();
        assert!((m.analytic - exact).abs() < 1e-12);
        assert!((m.grid_estimate - exact).abs() <= 0.02 * exact);
        assert!(m.within_bound);
    }

    #[test]
    fn recurrence_edge_cases() {
        let a = [1.0, 2f64.sqrt()];
        let m = recurrence_set_measure(&a, 0.0, 1.0, 1.0, 0.5, 1.0, 10_001).unwrap();
        assert!(m.analytic < 1e-12);
        let m1 = recurrence_set_measure(&a, 0.1, 2.0, 1.0, 0.5, 1.0, 10_001).unwrap();
        let m2 = recurrence_set_measure(&a, 0.2, 2.0, 1.0, 0.5, 1.0, 10_001).unwrap();
        assert!((m2.lemma_bound - 2.0 * m1.lemma_bound).abs() < 1e-12);
        assert!(recurrence_set_measure(&a, 0.6, 1.0, 1.0, 0.5, 1.0, 101).is_err());
    }
}
