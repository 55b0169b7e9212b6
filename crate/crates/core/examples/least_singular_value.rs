// Empirical law of √n·σ_min against the Edelman limit.

use smallball::experiments::{edelman_cdf, least_singular_value_mc, EnsembleKind, EnsembleSpec};
use smallball::Result;

pub fn run_example() -> Result<f64> {
    let mut gap: f64 = 0.0;
    for kind in [EnsembleKind::GaussianIid, EnsembleKind::BernoulliIid] {
        let sample = least_singular_value_mc(&EnsembleSpec::new(kind, 50)?, 400, 9)?;
        for t in [0.25, 0.5, 1.0] {
            let d = sample.empirical_cdf(t) - edelman_cdf(t);
            gap = gap.max(d.abs());
            println!("{kind:?} t = {t}: empirical {:.3}, limit {:.3}", sample.empirical_cdf(t), edelman_cdf(t));
        }
        println!("DKW 95% band ±{:.3}", sample.dkw_band(0.05));
    }
    Ok(gap)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
