// Least common denominators and the small-ball bound they feed.

use smallball::ball::ball_probability_1d;
use smallball::lcd::{lcd_1d, lcd_multidim, recurrence_set_measure, rv_smallball_bound, LcdQuery, RV_CONSTANT};
use smallball::rational::{from_f64, rat, to_f64};
use smallball::{CoefficientMultiset, Result, SignDistribution};

pub fn run_example() -> Result<(f64, f64)> {
    let n = 16;
    let q = LcdQuery::new(n as f64 / 16.0, 0.5)?;

    // entries 1/4 so that the squared norm is exactly 1
    let a = vec![0.25; n];
    let lcd = lcd_1d(&a, &q)?;
    println!("LCD = {:?}, witness p = {:?}", lcd.lcd, lcd.witness_integers);

    let beta = 1.0 / lcd.lcd_or_infinity().min(lcd.theta_max);
    let bound = rv_smallball_bound(&a, beta, &q, 0.5, RV_CONSTANT)?;
    let exact = ball_probability_1d(
        &CoefficientMultiset::scalars(vec![rat(1, 4); n])?,
        &SignDistribution::bernoulli(),
        &from_f64(beta).expect("finite"),
    )?
    .0;
    println!("beta = {beta:.4}: bound {:.4} vs exact {:.4}", bound.bound, to_f64(&exact));

    let planar = [[1.0, 0.0], [0.0, 1.0], [1.0, 0.0], [0.0, 1.0]];
    println!("planar LCD = {:?}", lcd_multidim(&planar, &LcdQuery::new(0.5, 0.5)?)?.lcd);

    let rec = recurrence_set_measure(&[1.0; 10], 0.1, 2.0, 1.0, 0.5, 1.0, 100_001)?;
    println!("recurrence set: grid {:.4}, lemma bound {:.4}", rec.grid_estimate, rec.lemma_bound);
    Ok((bound.bound, to_f64(&exact)))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
