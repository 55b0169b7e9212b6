// Shared roots of two random ±1 polynomials.

use smallball::experiments::{common_root_probability, has_common_root, ones_channel};
use smallball::rational::format_rational;
use smallball::Result;

pub fn run_example() -> Result<f64> {
    // (x + 1)(x² + 1) and (x + 1)(x² − 1) share x = −1
    println!("shared root found: {}", has_common_root(&[1, 1, 1, 1], &[-1, -1, 1, 1]));

    let mut scaled = Vec::new();
    for n in [3, 7, 15] {
        let r = common_root_probability(n, 20_000, 5)?;
        println!(
            "n = {n:>2}: estimate {:.4}, n·estimate {:.3}, channel at x = 1: {}",
            r.report.estimate,
            r.scaled_estimate,
            format_rational(&ones_channel(n))
        );
        scaled.push(r.scaled_estimate);
    }
    Ok(scaled.iter().cloned().fold(f64::MIN, f64::max) / scaled.iter().cloned().fold(f64::MAX, f64::min))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
