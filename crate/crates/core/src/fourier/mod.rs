//! Fourier-analytic upper bounds on concentration.

mod esseen;
mod fp;
mod halasz;

pub use esseen::{adaptive_simpson, esseen_bound, esseen_bound_with, esseen_constant, EsseenBound, QuadratureConfig};
pub use fp::{
    fp_exponential_bound, fp_fourier_identity, integer_entries, level_and_dual_sets, level_weight, residue_concentration,
    FpContext, FpIdentity, FpMode, LevelScan, LevelSetReport, DEFAULT_SCAN_BUDGET, LEVEL_SCAN_PRIME_LIMIT,
};
pub use halasz::{halasz_hierarchy_ratio, rl_count, rl_count_with_budget, xi_norm, XiNorm, DEFAULT_RL_BUDGET};
