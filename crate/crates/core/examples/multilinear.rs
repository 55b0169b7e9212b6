// Multilinear polynomials over {0,1} variables: point probabilities and
// correlation with parity.

use smallball::polyforms::{multilinear_concentration, parity_correlation, MultilinearPolynomial};
use smallball::rational::{format_rational, int};
use smallball::{Rational, Result, SignDistribution};

pub fn run_example() -> Result<Rational> {
    // x1x2 + x3x4 + x5x6 + x7x8 - x1
    let p = MultilinearPolynomial::parse(8, "1: 1 2; 1: 3 4; 1: 5 6; 1: 7 8; -1: 1")?;
    let m = multilinear_concentration(&p, &SignDistribution::boolean(), &int(1))?;
    println!(
        "P(p = 1) = {}, degree {}, {} disjoint top terms, bound {:.3}",
        format_rational(&m.prob),
        m.k,
        m.r,
        m.bound
    );

    let cor = parity_correlation(&p, 8)?;
    println!("correlation with parity on 8 bits: {}", format_rational(&cor));
    Ok(cor)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
