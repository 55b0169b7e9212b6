// Fourier-side bounds on ρ: the Esséen integral, the finite-field
// exponential sum, level and dual sets, and additive energy.

use smallball::dist::concentration_probability;
use smallball::fourier::{
    esseen_bound, fp_exponential_bound, fp_fourier_identity, halasz_hierarchy_ratio, level_and_dual_sets, rl_count,
    FpContext,
};
use smallball::rational::{rat, to_f64};
use smallball::{CoefficientMultiset, Result, SignDistribution};

pub struct FourierSummary {
    pub rho: f64,
    pub esseen: f64,
    pub finite_field: f64,
}

pub fn run_example() -> Result<FourierSummary> {
    let entries = [1i64, 2, 3, 4, 5, 6];
    let a = CoefficientMultiset::integers(entries)?;
    let xi = SignDistribution::bernoulli();
    let rho = to_f64(&concentration_probability(&a, &xi)?.0);

    let es = esseen_bound(&a, &xi, &rat(1, 2))?;
    println!("rho = {rho:.5}, Esseen bound = {:.5} (quadrature error {:.1e})", es.bound, es.integral_error);

    let ctx = FpContext::new(&entries)?;
    let fp = fp_exponential_bound(&ctx)?;
    let id = fp_fourier_identity(&ctx, 1)?;
    println!("p = {}: exponential bound {fp:.5}, identity error at 1 = {:.1e}", ctx.p, id.abs_error);

    let small = FpContext::illustrative(&entries, 101)?;
    for l in level_and_dual_sets(&small, 3)?.levels {
        println!("m = {}: |S_m| = {}, |S*_m| = {}", l.m, l.level_size, l.dual_size);
    }

    println!("R_2 = {}, hierarchy ratio {:.3}", rl_count(&a, 2)?, halasz_hierarchy_ratio(&a, 2)?);
    Ok(FourierSummary {
        rho,
        esseen: es.bound,
        finite_field: fp,
    })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
