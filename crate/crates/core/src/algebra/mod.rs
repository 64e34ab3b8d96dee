//! Polynomial arithmetic, dense complex linear algebra, and exact lattice
//! algebra underpinning every other module.

pub mod linalg;
pub mod poly;
pub mod snf;

pub use linalg::{
    least_squares_solve, lu_solve, vec_dist, vec_inf_norm, vec_norm, vec_sub, CMatrix, LuFactors,
    DEFAULT_PIVOT_THRESHOLD,
};
pub use poly::{
    eval_jacobian, monomial_value, Exponent, LaurentPolynomial, LaurentSystem, PowerTable,
    SystemJacobian,
};
pub use snf::{smith_normal_form, IntegerMatrix, SmithNormalForm};
