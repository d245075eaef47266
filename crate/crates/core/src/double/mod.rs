//! The Mackey double category of a functor: symbolic morphisms with their
//! composition formulas, lattice-valued cells, and validators for the
//! double-category laws and the two extra conditions.

mod checks;
mod data;
mod symbolic;

pub use checks::{
    cell_lower_bound_holds, check_containment, check_double_laws, check_functoriality,
    check_interchange, check_m6, check_m7, check_m7_decomposition, containment_at, count_grids,
    count_rims, for_each_cell, for_each_grid, interchange, random_grid, Budget,
    ContainmentInstance, Grid, InterchangeSides, M7Decomposition,
};
pub use data::{all_hmors, all_vmors, psi, Cell, MackeyDoubleData};
pub use symbolic::{compose_h, compose_v, CellBoundary, HMor, VMor};

use thiserror::Error;

use crate::group::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DoubleError {
    #[error("{0} is not a subgroup of {1}")]
    NotSubgroup(String, String),
    #[error("{0} is not an element of {1}")]
    NotInSubgroup(String, String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("incompatible boundary: {0}")]
    Incompatible(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("functor fails {0}; pass the override to build anyway")]
    AxiomsFail(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
