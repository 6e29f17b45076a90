//! Exact computations with the Auslander bijection for finite-dimensional
//! quiver algebras over small prime fields.
//!
//! The crate is organised bottom-up: [`ffmat`] is the linear algebra
//! substrate, [`algebra`] and [`rep`] model quiver algebras and their
//! representations, [`ar`] adds Auslander–Reiten machinery, [`determine`] and
//! [`lattice`] cover `Hom(C,Y)` as a module over `End(C)^op`, and [`factor`]
//! enumerates right factorization lattices on the morphism side.

pub mod algebra;
pub mod ar;
pub mod catalog;
pub mod determine;
pub mod endo;
pub mod expr;
pub mod factor;
pub mod kronecker;
pub mod ffmat;
pub mod lattice;
pub mod rep;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    Unknown(String),
    #[error("relations do not vanish up to path length {0}; algebra is not finite dimensional")]
    NotFiniteDimensional(usize),
    #[error("bad relation: {0}")]
    BadRelation(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("{0}")]
    Invalid(String),
    #[error("verification failure: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
