//! Polynomial matrices in the symbol λ of `∂x`: arithmetic, the Euler and
//! layer symbols, factorization checks and invariant factors.

pub mod matrix;
pub mod poly;
pub mod smith;
pub mod symbols;

pub use matrix::PolyMatrix;
pub use poly::Poly;
pub use smith::{smith_diagonal, SmithDiagonal};
pub use symbols::{
    build_euler_symbol, build_factors, build_model2_symbol, verify_factorization,
    verify_pressure_reduction,
};
