//! Dispatch from a validated configuration to the library.

use serde_json::{json, Value};

use super::RunConfig;
use crate::ball::{ball_probability_1d, ball_probability_2d, disk_mass, flat_direction_search};
use crate::binomial::largest_binomial_sum;
use crate::dist::{concentration_probability, exact_sign_sum_distribution, exact_sign_sum_distribution_2d};
use crate::error::{Error, Result};
use crate::experiments::{
    common_root_probability, edelman_cdf, k_universality_check, least_singular_value_mc, singularity_probability, EnsembleKind,
    EnsembleSpec, Mode,
};
use crate::extremal::stanley_constant_scan;
use crate::fourier::{
    esseen_bound, fp_exponential_bound, fp_fourier_identity, halasz_hierarchy_ratio, integer_entries, level_and_dual_sets,
    residue_concentration, rl_count, FpContext,
};
use crate::gap::{
    census_ratio, gap_fit, gap_forward_sample, geometric_progression_rho, structured_multiset_census_with_budget, Gap, GeometricBase,
    CENSUS_CONSTANT,
};
use crate::lcd::{lcd_1d, lcd_multidim, recurrence_set_measure, rv_smallball_bound, LcdQuery};
use crate::multiset::{CoefficientMultiset, Point2};
use crate::polyforms::{
    decoupling_check, multilinear_concentration, parity_correlation, quadratic_concentration, structured_quadratic_generator,
    MultilinearPolynomial, StructuredKind, StructuredParams, SymmetricCoefficientMatrix,
};
use crate::rational::{format_rational, from_f64, parse_rational, to_f64, Rational};
use crate::sign::SignDistribution;

/// Results of one run. `violation` is set when a bound fell below the exact
/// value it should dominate.
pub struct Output {
    pub results: Value,
    pub csv: Option<String>,
    pub violation: Option<String>,
}

impl Output {
    fn json(results: Value) -> Self {
        Output { results, csv: None, violation: None }
    }
}

fn s(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

/// Integer list: `1,2,3`, `a..b` or `a..b:step` (inclusive), mixed freely.
pub fn parse_int_list(text: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((a, rest)) = item.split_once("..") {
            let (b, step) = match rest.split_once(':') {
                Some((b, st)) => (b, st),
                None => (rest, "1"),
            };
            let bad = || Error::Parse(format!("bad range {item:?}"));
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            let step: i64 = step.trim().parse().map_err(|_| bad())?;
            if step <= 0 {
                return Err(bad());
            }
            let mut v = a;
            while v <= b {
                out.push(v);
                v += step;
            }
        } else {
            out.push(item.parse().map_err(|_| Error::Parse(format!("bad integer {item:?}")))?);
        }
    }
    Ok(out)
}

pub fn parse_real(text: &str) -> Result<f64> {
    let t = text.trim();
    match t.parse::<f64>() {
        Ok(v) => Ok(v),
        Err(_) => Ok(to_f64(&parse_rational(t)?)),
    }
}

fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(parse_rational)
        .collect()
}

fn parse_real_list(text: &str) -> Result<Vec<f64>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(parse_real)
        .collect()
}

fn parse_pairs(text: &str) -> Result<Vec<[f64; 2]>> {
    let a = CoefficientMultiset::parse(text)?;
    Ok(a.as_planar()?.iter().map(|p| [to_f64(&p.x), to_f64(&p.y)]).collect())
}

fn fp_context(cfg: &RunConfig, entries: &[i64]) -> Result<FpContext> {
    let mode = cfg.text("mode")?;
    match (mode.as_str(), cfg.opt_u64("p")?) {
        ("strict", None) => FpContext::new(entries),
        ("strict", Some(p)) => FpContext::with_prime(entries, p),
        ("illustrative", Some(p)) => FpContext::illustrative(entries, p),
        ("illustrative", None) => Err(Error::invalid("illustrative mode needs an explicit prime p")),
        (m, _) => Err(Error::invalid(format!("unknown mode {m:?}; use strict or illustrative"))),
    }
}

fn ensemble(cfg: &RunConfig) -> Result<EnsembleSpec> {
    EnsembleSpec::new(cfg.text("kind")?.parse::<EnsembleKind>()?, cfg.usize("n")?)
}

fn csv_of(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn run_command(cfg: &RunConfig) -> Result<Output> {
    let xi = || cfg.text("xi").and_then(|t| SignDistribution::parse(&t));
    let entries = || cfg.text("entries").and_then(|t| CoefficientMultiset::parse(&t));
    match cfg.subcommand.as_str() {
        "dist" => {
            let a = entries()?;
            let xi = xi()?;
            if a.dim() == 1 {
                let d = exact_sign_sum_distribution(&a, &xi)?;
                let mut buf = Vec::new();
                d.write_csv(&mut buf)?;
                Ok(Output {
                    results: d.to_json()?,
                    csv: Some(String::from_utf8(buf).expect("UTF-8")),
                    violation: None,
                })
            } else {
                let d = exact_sign_sum_distribution_2d(&a, &xi)?;
                let mut buf = Vec::new();
                d.write_csv(&mut buf)?;
                Ok(Output {
                    results: serde_json::to_value(&d)?,
                    csv: Some(String::from_utf8(buf).expect("UTF-8")),
                    violation: None,
                })
            }
        }
        "rho" => {
            let (rho, argmax) = concentration_probability(&entries()?, &xi()?)?;
            Ok(Output::json(json!({ "rho": s(&rho), "rho_float": to_f64(&rho), "argmax": s(&argmax) })))
        }
        "ball" => {
            let a = entries()?;
            let xi = xi()?;
            let r = cfg.rational("radius")?;
            let (prob, center) = match cfg.opt_rational("center")? {
                Some(c) => {
                    let d = exact_sign_sum_distribution(&a, &xi)?;
                    let lo = &c - &r;
                    let hi = &c + &r;
                    let mass: Rational = d.atoms.range(lo..=hi).map(|(_, p)| p.clone()).sum();
                    (mass, c)
                }
                None => ball_probability_1d(&a, &xi, &r)?,
            };
            let n = a.len() as u64;
            let s_count = r.floor().to_integer().try_into().unwrap_or(u64::MAX - 1) + 1;
            let extremal = Rational::new(largest_binomial_sum(n, s_count).into(), num_bigint::BigInt::from(1) << n);
            Ok(Output::json(json!({
                "probability": s(&prob),
                "probability_float": to_f64(&prob),
                "center": s(&center),
                "radius": s(&r),
                "s": s_count,
                "extremal_bernoulli": s(&extremal),
            })))
        }
        "ball2d" => {
            let a = entries()?;
            let xi = xi()?;
            let r = cfg.rational("radius")?;
            match cfg.opt_text("center") {
                Some(c) => {
                    let v = parse_rational_list(&c)?;
                    if v.len() != 2 {
                        return Err(Error::invalid("center needs two coordinates"));
                    }
                    let center = Point2::new(v[0].clone(), v[1].clone());
                    let m = disk_mass(&a, &xi, &center, &r)?;
                    Ok(Output::json(json!({ "probability": s(&m), "probability_float": to_f64(&m), "center": center, "radius": s(&r) })))
                }
                None => {
                    let (m, w) = ball_probability_2d(&a, &xi, &r)?;
                    Ok(Output::json(json!({ "probability": s(&m), "probability_float": to_f64(&m), "witness": w, "radius": s(&r) })))
                }
            }
        }
        "flat" => Ok(Output::json(serde_json::to_value(flat_direction_search(&entries()?, cfg.usize("angles")?)?)?)),
        "stanley" => {
            let ns = parse_int_list(&cfg.text("n")?)?;
            let ns: Vec<usize> = ns.into_iter().map(|v| usize::try_from(v).map_err(|_| Error::invalid("n must be positive"))).collect::<Result<_>>()?;
            let rows = stanley_constant_scan(&ns)?;
            let csv = csv_of(
                &["n", "rho", "scaled"],
                rows.iter().map(|r| vec![r.n.to_string(), format_rational(&r.rho), format!("{:.12}", r.scaled)]),
            )?;
            Ok(Output {
                results: json!({ "rows": rows, "limit": crate::extremal::STANLEY_LIMIT }),
                csv: Some(csv),
                violation: None,
            })
        }
        "esseen" => {
            let a = entries()?;
            let xi = xi()?;
            let beta = cfg.rational("beta")?;
            let b = esseen_bound(&a, &xi, &beta)?;
            let (exact, _) = ball_probability_1d(&a, &xi, &beta)?;
            let violation = (b.bound < to_f64(&exact)).then(|| format!("Esséen bound {} is below the exact {}", b.bound, format_rational(&exact)));
            Ok(Output {
                results: json!({ "bound": b, "exact_ball": s(&exact), "exact_ball_float": to_f64(&exact) }),
                csv: None,
                violation,
            })
        }
        "fp-bound" => {
            let ints = integer_entries(&entries()?)?;
            let ctx = fp_context(cfg, &ints)?;
            let bound = fp_exponential_bound(&ctx)?;
            let rho = residue_concentration(&ctx)?;
            let identity = fp_fourier_identity(&ctx, cfg.i64("target")?)?;
            let violation = (bound < to_f64(&rho)).then(|| format!("exponential bound {bound} is below ρ = {}", format_rational(&rho)));
            Ok(Output {
                results: json!({ "p": ctx.p, "mode": ctx.mode, "bound": bound, "rho": s(&rho), "identity": identity }),
                csv: None,
                violation,
            })
        }
        "levels" => {
            let ints = integer_entries(&entries()?)?;
            let ctx = fp_context(cfg, &ints)?;
            let scan = level_and_dual_sets(&ctx, cfg.u64("m_max")?)?;
            let violation = scan
                .levels
                .iter()
                .find(|l| !l.dual_bound_holds)
                .map(|l| format!("|S*_m|·|S_m| > 8p at m = {}", l.m));
            Ok(Output {
                results: serde_json::to_value(&scan)?,
                csv: None,
                violation,
            })
        }
        "rl" => {
            let a = entries()?;
            let l = u32::try_from(cfg.u64("l")?).map_err(|_| Error::invalid("l too large"))?;
            let count = rl_count(&a, l)?;
            let ratio = halasz_hierarchy_ratio(&a, l)?;
            Ok(Output::json(json!({ "l": l, "count": count.to_string(), "hierarchy_ratio": ratio })))
        }
        "lcd" => {
            let text = cfg.text("entries")?;
            let mut q = LcdQuery::new(cfg.real("alpha")?, cfg.real("gamma")?)?;
            if let Some(t) = cfg.opt_real("theta_max")? {
                q = q.theta_max(t);
            }
            if let Some(r) = cfg.opt_real("resolution")? {
                q = q.resolution(r);
            }
            let res = if text.contains('(') { lcd_multidim(&parse_pairs(&text)?, &q)? } else { lcd_1d(&parse_real_list(&text)?, &q)? };
            Ok(Output::json(serde_json::to_value(&res)?))
        }
        "rv-bound" => {
            let a = parse_real_list(&cfg.text("entries")?)?;
            let xi = xi()?;
            let q = LcdQuery::new(cfg.real("alpha")?, cfg.real("gamma")?)?;
            let beta = cfg.real("beta")?;
            let b = to_f64(&xi.spread_b());
            let res = rv_smallball_bound(&a, beta, &q, b, cfg.real("constant")?)?;
            let exact_entries = a
                .iter()
                .map(|v| from_f64(*v).ok_or_else(|| Error::invalid("entries must be finite")))
                .collect::<Result<Vec<_>>>()?;
            let beta_r = from_f64(beta).ok_or_else(|| Error::invalid("β must be finite"))?;
            let (exact, _) = ball_probability_1d(&CoefficientMultiset::scalars(exact_entries)?, &xi, &beta_r)?;
            let violation = (res.bound < to_f64(&exact)).then(|| format!("bound {} is below the exact {}", res.bound, format_rational(&exact)));
            Ok(Output {
                results: json!({ "bound": res, "exact_ball": s(&exact), "exact_ball_float": to_f64(&exact) }),
                csv: None,
                violation,
            })
        }
        "recurrence" => {
            let a = parse_real_list(&cfg.text("entries")?)?;
            let m = recurrence_set_measure(
                &a,
                cfg.real("t")?,
                cfg.real("z")?,
                cfg.real("beta")?,
                cfg.real("gamma")?,
                cfg.real("alpha")?,
                cfg.usize("grid")?,
            )?;
            let violation = (m.lcd_hypothesis && !m.within_bound).then(|| format!("measure {} exceeds the lemma bound {}", m.grid_estimate, m.lemma_bound));
            Ok(Output {
                results: serde_json::to_value(&m)?,
                csv: None,
                violation,
            })
        }
        "gap-fit" => {
            let ints = integer_entries(&entries()?)?;
            let cert = gap_fit(&ints, &cfg.rational("epsilon")?, cfg.usize("max_rank")?, cfg.u64("budget")?)?;
            Ok(Output::json(serde_json::to_value(&cert)?))
        }
        "gap-forward" => {
            let gens = parse_rational_list(&cfg.text("generators")?)?;
            let bounds = parse_int_list(&cfg.text("bounds")?)?
                .into_iter()
                .map(|b| u64::try_from(b).map_err(|_| Error::invalid("bounds must be non-negative")))
                .collect::<Result<Vec<_>>>()?;
            let q = Gap::new(gens, bounds)?;
            let sample = gap_forward_sample(&q, cfg.usize("n")?, cfg.master_seed)?;
            Ok(Output::json(json!({ "gap": q, "sample": sample })))
        }
        "census" => {
            let grid = parse_rational_list(&cfg.text("rho_grid")?)?;
            let n = cfg.usize("n")?;
            let rows = structured_multiset_census_with_budget(n, cfg.i64("M")?, &grid, cfg.u64("budget")?)?;
            let ratio = census_ratio(&rows);
            let csv = csv_of(
                &["rho0", "count", "bound_shape"],
                rows.iter().map(|r| vec![format_rational(&r.rho0), r.count.to_string(), format!("{:.12e}", r.bound_shape)]),
            )?;
            Ok(Output {
                results: json!({ "rows": rows, "max_ratio": ratio, "constant": CENSUS_CONSTANT }),
                csv: Some(csv),
                violation: (ratio > CENSUS_CONSTANT).then(|| format!("count/shape ratio {ratio} exceeds the constant {CENSUS_CONSTANT}")),
            })
        }
        "geo-rho" => {
            let x = GeometricBase::parse(&cfg.text("x")?)?;
            let rho = geometric_progression_rho(&x, cfg.usize("n")?)?;
            Ok(Output::json(json!({ "rho": s(&rho), "rho_float": to_f64(&rho) })))
        }
        "quad-rho" => {
            let m = SymmetricCoefficientMatrix::parse(&cfg.text("matrix")?)?;
            Ok(Output::json(serde_json::to_value(quadratic_concentration(&m, &xi()?)?)?))
        }
        "decouple" => {
            let m = SymmetricCoefficientMatrix::parse(&cfg.text("matrix")?)?;
            let u1 = parse_int_list(&cfg.text("u1")?)?
                .into_iter()
                .map(|i| usize::try_from(i - 1).map_err(|_| Error::invalid("indices start at 1")))
                .collect::<Result<Vec<_>>>()?;
            let c = decoupling_check(&m, &u1, &cfg.rational("x")?, &xi()?)?;
            let violation = (!c.holds).then(|| "lhs⁴ exceeds the joint probability".to_string());
            Ok(Output {
                results: serde_json::to_value(&c)?,
                csv: None,
                violation,
            })
        }
        "quad-gen" => {
            let kind: StructuredKind = cfg.text("kind")?.parse()?;
            let mut params = StructuredParams::new(cfg.usize("n")?);
            let bounds = parse_int_list(&cfg.text("gap_bounds")?)?
                .into_iter()
                .map(|b| u64::try_from(b).map_err(|_| Error::invalid("bounds must be non-negative")))
                .collect::<Result<Vec<_>>>()?;
            params.gap = Some(Gap::new(parse_rational_list(&cfg.text("gap_generators")?)?, bounds)?);
            params.k = cfg.opt_text("k").map(|t| parse_int_list(&t)).transpose()?;
            params.b = cfg.opt_text("b").map(|t| parse_int_list(&t)).transpose()?;
            params.xi = xi()?;
            let g = structured_quadratic_generator(&kind, &params, cfg.master_seed)?;
            let violation = (g.rho_q < g.predicted_floor).then(|| "ρ_q is below the construction's floor".to_string());
            Ok(Output {
                results: serde_json::to_value(&g)?,
                csv: None,
                violation,
            })
        }
        "multi-rho" => {
            let p = MultilinearPolynomial::parse(cfg.usize("n")?, &cfg.text("poly")?)?;
            let m = multilinear_concentration(&p, &SignDistribution::boolean(), &cfg.rational("x")?)?;
            let violation = (m.sound == Some(false)).then(|| format!("probability exceeds the bound {}", m.bound));
            Ok(Output {
                results: serde_json::to_value(&m)?,
                csv: None,
                violation,
            })
        }
        "parity-cor" => {
            let n = cfg.usize("n")?;
            let p = MultilinearPolynomial::parse(n, &cfg.text("poly")?)?;
            let c = parity_correlation(&p, n)?;
            Ok(Output::json(json!({ "correlation": s(&c), "correlation_float": to_f64(&c) })))
        }
        "singularity" => {
            let spec = ensemble(cfg)?;
            let mode: Mode = cfg.text("mode")?.parse()?;
            let r = singularity_probability(&spec, mode, cfg.u64("trials")?, cfg.master_seed)?;
            Ok(Output::json(json!({ "spec": spec, "report": r })))
        }
        "universal" => {
            let r = k_universality_check(cfg.usize("d")?, cfg.usize("n")?, cfg.usize("k")?, cfg.u64("trials")?, cfg.master_seed)?;
            Ok(Output::json(serde_json::to_value(&r)?))
        }
        "lsv" => {
            let spec = ensemble(cfg)?;
            let sample = least_singular_value_mc(&spec, cfg.u64("trials")?, cfg.master_seed)?;
            let mut buf = Vec::new();
            sample.write_csv(&mut buf)?;
            let edelman: Vec<Value> = [0.25, 0.5, 1.0, 2.0]
                .iter()
                .map(|&t| json!({ "t": t, "empirical": sample.empirical_cdf(t), "edelman": edelman_cdf(t) }))
                .collect();
            Ok(Output {
                results: json!({
                    "spec": spec,
                    "trials": sample.trials,
                    "master_seed": sample.master_seed,
                    "quantiles": sample.quantiles,
                    "fallbacks": sample.fallbacks,
                    "failures": sample.failures,
                    "cdf": edelman,
                    "dkw_band_95": sample.dkw_band(0.05),
                }),
                csv: Some(String::from_utf8(buf).expect("UTF-8")),
                violation: None,
            })
        }
        "edelman" => {
            let ts = parse_real_list(&cfg.text("t")?)?;
            if ts.iter().any(|t| !(*t >= 0.0)) {
                return Err(Error::invalid("t must be non-negative"));
            }
            let rows: Vec<Value> = ts.iter().map(|&t| json!({ "t": t, "cdf": edelman_cdf(t) })).collect();
            Ok(Output::json(json!({ "values": rows })))
        }
        "common-roots" => Ok(Output::json(serde_json::to_value(common_root_probability(cfg.usize("n")?, cfg.u64("trials")?, cfg.master_seed)?)?)),
        other => Err(Error::invalid(format!("unknown subcommand {other:?}"))),
    }
}
