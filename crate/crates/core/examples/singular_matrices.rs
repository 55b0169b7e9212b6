// Singularity of random sign matrices, exactly and by simulation, plus
// k-universality of random sign vectors.

use smallball::experiments::{k_universality_check, singularity_probability, EnsembleKind, EnsembleSpec, Mode};
use smallball::rational::format_rational;
use smallball::Result;

pub fn run_example() -> Result<f64> {
    for n in 2..=4 {
        let spec = EnsembleSpec::new(EnsembleKind::BernoulliIid, n)?;
        let exact = singularity_probability(&spec, Mode::Exact, 0, 0)?;
        let mc = singularity_probability(&spec, Mode::MonteCarlo, 20_000, 7)?;
        println!(
            "p_{n} = {} exactly, {:.4} ± {:.4} simulated",
            exact.exact_value.as_ref().map(format_rational).unwrap_or_default(),
            mc.estimate,
            mc.std_error
        );
    }
    let sym = singularity_probability(&EnsembleSpec::new(EnsembleKind::BernoulliSymmetric, 12)?, Mode::MonteCarlo, 5_000, 7)?;
    println!("symmetric n=12: {:.4}", sym.estimate);

    let u = k_universality_check(16, 10, 2, 2_000, 3)?;
    println!("2-universality fails in {:.4} of trials (1/n = {:.3})", u.report.estimate, u.benchmark);
    Ok(sym.estimate)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
