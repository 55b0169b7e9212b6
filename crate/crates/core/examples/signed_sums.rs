// Exact law of a signed sum, its concentration probability and the best
// closed interval of a given radius.

use smallball::ball::ball_probability_1d;
use smallball::dist::{concentration_probability, exact_sign_sum_distribution};
use smallball::rational::{format_rational, rat};
use smallball::{CoefficientMultiset, Rational, Result, SignDistribution};

pub struct SignedSums {
    pub atoms: usize,
    pub rho: Rational,
    pub ball: Rational,
}

pub fn run_example() -> Result<SignedSums> {
    let a = CoefficientMultiset::parse("1, 1, 2, 3, 5")?;
    let xi = SignDistribution::bernoulli();

    let law = exact_sign_sum_distribution(&a, &xi)?;
    for (v, p) in &law.atoms {
        println!("P(S = {}) = {}", format_rational(v), format_rational(p));
    }
    let (rho, atom) = concentration_probability(&a, &xi)?;
    println!("rho = {} at {}", format_rational(&rho), format_rational(&atom));

    // lazy signs spread the mass more
    let lazy = SignDistribution::lazy(rat(1, 2))?;
    let (rho_lazy, _) = concentration_probability(&a, &lazy)?;
    println!("rho under the lazy law = {}", format_rational(&rho_lazy));

    let (ball, center) = ball_probability_1d(&a, &xi, &rat(3, 2))?;
    println!("best radius-3/2 interval: {} centred at {}", format_rational(&ball), format_rational(&center));

    Ok(SignedSums {
        atoms: law.atoms.len(),
        rho,
        ball,
    })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
