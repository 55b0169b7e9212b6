// Generalized arithmetic progressions: sampling from one, recovering one
// from data, and the concentration of geometric progressions.

use smallball::gap::{gap_fit, gap_forward_sample, geometric_progression_rho, Gap, GeometricBase};
use smallball::rational::{format_rational, int};
use smallball::Result;

pub fn run_example() -> Result<u128> {
    let q = Gap::integer(&[1, 37], &[3, 3])?;
    println!("Q has volume {} and is proper: {}", q.volume(), q.is_proper(10_000)?);

    let sample = gap_forward_sample(&q, 12, 4)?;
    let entries: Vec<String> = sample.entries.iter().map(format_rational).collect();
    println!("sample {entries:?}: rho = {}, quality {:.3}", format_rational(&sample.rho), sample.quality);

    // two clusters around multiples of 1000
    let data: Vec<i64> = (-2..=2).flat_map(|i| (-1..=1).map(move |j| 1000 * i + j)).collect();
    let fit = gap_fit(&data, &int(0), 2, 1_000_000)?;
    let gens: Vec<String> = fit.gap.generators.iter().map(format_rational).collect();
    println!("fit: generators {gens:?}, bounds {:?}, volume {}", fit.gap.bounds, fit.volume);

    for base in ["2", "golden"] {
        let rho = geometric_progression_rho(&GeometricBase::parse(base)?, 8)?;
        println!("x = {base}: rho of {{1, x, ..., x^8}} = {}", format_rational(&rho));
    }
    Ok(fit.volume)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
