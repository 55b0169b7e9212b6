// Planar coefficients: the best closed disk, a fixed disk, and the line that
// leaves the fewest entries far away.

use smallball::ball::{ball_probability_2d, disk_mass, flat_direction_search};
use smallball::binomial::largest_binomial_sum;
use smallball::rational::{biguint_ratio, format_rational, int, rat};
use smallball::{CoefficientMultiset, Point2, Rational, Result, SignDistribution};

pub fn run_example() -> Result<(Rational, Rational)> {
    let mut pts = vec![Point2::new(int(1), int(0)); 10];
    pts.push(Point2::new(int(0), int(1)));
    let a = CoefficientMultiset::planar(pts)?;
    let r = rat(23, 10);

    let fixed = disk_mass(&a, &SignDistribution::boolean(), &Point2::new(rat(11, 2), rat(1, 2)), &r)?;
    let line = biguint_ratio(&largest_binomial_sum(11, 3), &(num_bigint::BigUint::from(1u32) << 11));
    println!("{{0,1}} signs, disk at (11/2, 1/2): {}", format_rational(&fixed));
    println!("one-dimensional optimum S(11,3)/2^11: {}", format_rational(&line));

    let (best, witness) = ball_probability_2d(&a, &SignDistribution::bernoulli(), &r)?;
    println!("±1 signs, best disk: {} near {:?}", format_rational(&best), witness.center_approx);

    let flat = flat_direction_search(&a, 360)?;
    println!("flattest direction {:?}, {} entries far away", flat.direction, flat.far_count);
    Ok((fixed, best))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
