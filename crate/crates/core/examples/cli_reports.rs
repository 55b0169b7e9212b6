// Driving the command-line layer in-process: a JSON report and a sweep.

use smallball::cli::{run, sweep, RunConfig};
use smallball::Result;

pub fn run_example() -> Result<String> {
    let mut cfg = RunConfig::new("rho")?;
    cfg.set("entries", "1,1,1")?;
    let report = run(&cfg)?;
    println!("{}", report.body);

    let mut grid = RunConfig::new("sweep")?;
    grid.set("command", "stanley")?;
    grid.set("grid", "n=3..9:2")?;
    let csv = sweep(&grid)?;
    print!("{csv}");
    Ok(report.body)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
