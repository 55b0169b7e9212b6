// How many small multisets have concentration at least ρ₀.

use smallball::gap::{census_ratio, structured_multiset_census};
use smallball::rational::{format_rational, rat};
use smallball::Result;

pub fn run_example() -> Result<f64> {
    let grid: Vec<_> = (1..=8).map(|j| rat(j, 16)).collect();
    let rows = structured_multiset_census(4, 4, &grid)?;
    for r in &rows {
        println!("rho0 = {:>5}: {:>4} multisets, shape {:.3}", format_rational(&r.rho0), r.count, r.bound_shape);
    }
    let ratio = census_ratio(&rows);
    println!("max count/shape = {ratio:.3}");
    Ok(ratio)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
