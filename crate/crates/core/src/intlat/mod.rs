//! Exact integer linear algebra over `Z`: matrices as homomorphisms of free
//! abelian groups, and sublattices of `Z^n` in Hermite normal form.

mod lattice;
mod matrix;

pub use lattice::{
    image_lattice, internal_direct_sum, kernel_lattice, lattice_contains, lattice_intersect,
    lattice_sum, lattice_sum_all, DirectSumVerdict, Lattice,
};
pub use matrix::{compose, IntMap};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("ambient mismatch: Z^{0} vs Z^{1}")]
    Ambient(usize, usize),
}
