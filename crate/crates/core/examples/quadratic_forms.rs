// Concentration of quadratic forms, the decoupling inequality and
// structured forms with known floors.

use rand::SeedableRng;
use smallball::polyforms::{
    balanced_partitions, decoupling_check, quadratic_concentration, structured_quadratic_generator, StructuredKind,
    StructuredParams, SymmetricCoefficientMatrix,
};
use smallball::rational::{format_rational, int};
use smallball::{Rational, Result, SignDistribution};

pub fn run_example() -> Result<Rational> {
    let ones = SymmetricCoefficientMatrix::all_ones(4)?;
    let q = quadratic_concentration(&ones, &SignDistribution::boolean())?;
    println!("all-ones n=4, {{0,1}} signs: rho_q = {} at {}", format_rational(&q.rho_q), format_rational(&q.argmax));

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let m = SymmetricCoefficientMatrix::random_sign(8, &mut rng)?;
    let ber = SignDistribution::bernoulli();
    let held = balanced_partitions(8)
        .iter()
        .filter(|u1| decoupling_check(&m, u1, &int(0), &ber).map(|c| c.holds).unwrap_or(false))
        .count();
    println!("decoupling holds on {held}/{} partitions", balanced_partitions(8).len());

    for kind in ["gap", "lowrank", "mixed"] {
        let g = structured_quadratic_generator(&kind.parse::<StructuredKind>()?, &StructuredParams::new(8), 3)?;
        println!(
            "{kind}: rho_q = {} >= floor {}",
            format_rational(&g.rho_q),
            format_rational(&g.predicted_floor)
        );
    }
    Ok(q.rho_q)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
