//! Exact linear algebra over the rationals.
//!
//! Everything downstream reduces to row operations on matrices of [`Rat`]
//! values: reduced row echelon forms, kernels, and the subspace calculus
//! (sum, intersection, containment, preimage) built on top of them.

pub mod matrix;
pub mod poly;
pub mod rat;
pub mod subspace;

pub use matrix::{Matrix, RowReducer};
pub use poly::Polynomial;
pub use rat::Rat;
pub use subspace::Subspace;
