// Exhaustive check of the central-binomial optimum on small multisets, and
// the scaled concentration of the symmetric progression.

use smallball::binomial::central_binomial;
use smallball::dist::bernoulli_max_count;
use smallball::extremal::{nonzero_multisets, stanley_constant_scan, STANLEY_LIMIT};
use smallball::Result;

pub fn run_example() -> Result<usize> {
    let mut checked = 0;
    for n in 1..=6usize {
        let cap = central_binomial(n as u64);
        let worst = nonzero_multisets(n, 3).map(|a| bernoulli_max_count(&a)).max().unwrap_or_default();
        checked += nonzero_multisets(n, 3).count();
        println!("n = {n}: largest atom count {worst}, C(n, n/2) = {cap}");
        assert!(worst <= cap);
    }
    for row in stanley_constant_scan(&[11, 31, 101])? {
        println!("n = {:>3}: rho(A0) n^1.5 = {:.4} (limit {STANLEY_LIMIT:.4})", row.n, row.scaled);
    }
    Ok(checked)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
