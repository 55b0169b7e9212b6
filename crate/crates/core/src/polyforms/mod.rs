//! Concentration of quadratic and multilinear forms in random signs.

mod multilinear;
mod quadratic;

pub use multilinear::{
    multilinear_concentration, parity_correlation, MultilinearConcentration, MultilinearPolynomial, MULTILINEAR_CONSTANT,
    MULTILINEAR_LIMIT, MULTILINEAR_THRESHOLD,
};
pub use quadratic::{
    balanced_partitions, decoupling_check, quadratic_concentration, quadratic_form_law, structured_quadratic_generator,
    DecouplingCheck, QuadraticConcentration, StructuredKind, StructuredParams, StructuredQuadratic, SymmetricCoefficientMatrix,
    DECOUPLING_LIMIT, QUADRATIC_LIMIT,
};
