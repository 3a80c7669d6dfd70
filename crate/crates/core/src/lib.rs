//! Exact Fock representations of the quantum superalgebra `U_q[sl(n+1|m)]`
//! in its creation/annihilation presentation, together with a relation
//! checker and a small expression language for stating identities.

pub mod cli;
pub mod error;
pub mod exprlang;
pub mod fockspace;
pub mod operators;
pub mod qarith;
pub mod relations;

pub use error::{Error, Result};
