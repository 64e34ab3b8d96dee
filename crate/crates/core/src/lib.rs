//! Polynomial homotopy continuation end to end: total-degree and polyhedral
//! solvers for square and overdetermined systems, witness sets and numerical
//! irreducible decomposition for positive-dimensional varieties, and
//! a-posteriori certification of numerical zeros.

pub mod algebra;
pub mod bench;
pub mod certify;
pub mod error;
pub mod nag;
pub mod rng;
pub mod text;
pub mod polyhedral;
pub mod solve;
pub mod tracker;

pub use error::{AlgebraError, BenchError, CertifyError, NagError, ParseError, PolyhedralError, SolveError};
