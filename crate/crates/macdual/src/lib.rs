//! Exact-arithmetic Macaulay dual spaces for multi-graded polynomial ideals.
//!
//! A polynomial ring graded by a matrix `A` with columns in `Z^k` assigns
//! every monomial `x^alpha` the degree `A*alpha`.  When the semigroup
//! generated by the variable degrees is pointed, each graded piece of the
//! ring is finite dimensional and the local behaviour of a homogeneous
//! ideal `I` at the origin is captured by its Macaulay dual spaces: the
//! graded pieces of the space of differential functionals that annihilate
//! `I`.  Their dimensions form the Hilbert function of `R/I`.
//!
//! The crate computes these spaces exactly over the rationals:
//!
//! * [`grading`] validates gradings, finds inward facet normals for the
//!   weight cone, and enumerates or topologically sorts lattice degrees;
//! * [`algebra`] supplies rational arithmetic, row reduction, and subspace
//!   operations used everywhere else;
//! * [`dual`] builds dual spaces degree by degree through closedness
//!   conditions and implements the anti-differentiation operators;
//! * [`idealops`] layers an ideal calculus on top: membership, containment,
//!   quotients, saturation, and multiplicities, all through dual spaces;
//! * [`oracle`] recomputes Hilbert data by brute-force linear algebra on
//!   monomial multiples of the generators, for independent verification;
//! * [`io`] parses and emits a small problem-file format and renders
//!   Hilbert tables as text, JSON, or CSV.
//!
//! The `macdual` binary exposes the same operations on problem files; the
//! `examples/` directory exercises each capability in library form.

pub mod algebra;
pub mod dual;
pub mod grading;
pub mod idealops;
pub mod io;
pub mod oracle;

use grading::MultiDegree;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The weight semigroup is not pointed, so graded pieces are infinite
    /// dimensional and dual spaces are not defined degree by degree.
    #[error("grading is not pointed: {0}")]
    NotPointed(String),
    /// A user-supplied cone description does not match the grading.
    #[error("invalid cone matrix: {0}")]
    InvalidB(String),
    /// Two objects that must agree in shape or length do not.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// A degree lies outside the weight semigroup.
    #[error("degree {0} is not in the weight semigroup")]
    NotInSemigroup(MultiDegree),
    /// Two subspaces of different ambient spaces were combined.
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    /// A variable or coordinate index is out of range.
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    /// A polynomial that must be homogeneous is not.
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    /// The zero polynomial was passed where a nonzero one is required.
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    /// A generator of degree zero would make the ideal the unit ideal.
    #[error("generator of degree zero is a unit")]
    DegreeZeroGenerator,
    /// A dual-space walk needed a degree that has not been computed yet.
    #[error("dual space at degree {0} has not been computed yet")]
    MissingPrerequisite(MultiDegree),
    /// Two objects built over different gradings were combined.
    #[error("objects use different gradings")]
    GradingMismatch,
    /// A saturation or comparison window contains no degrees.
    #[error("degree window is empty")]
    WindowEmpty,
    /// A problem file failed to parse.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    /// An expression mentions a variable the grading does not declare.
    #[error("unknown variable `{name}` at line {line}, column {col}")]
    UnknownVariable { name: String, line: usize, col: usize },
    /// An ideal section contains a generator that is not homogeneous.
    #[error("generator {index} of ideal `{ideal}` is not homogeneous: {detail}")]
    NonHomogeneousGenerator { ideal: String, index: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
