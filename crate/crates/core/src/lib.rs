//! Jacobi forms of lattice index: lattice invariants, the Weil-type representation on
//! the shadow, exact dimension formulas and q-expansion arithmetic.

pub mod arith;
pub mod cyclotomic;
pub mod dimension;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod qseries;
pub mod serial;
pub mod theta_rep;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::Lattice;
