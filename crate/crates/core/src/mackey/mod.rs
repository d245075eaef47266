//! Mackey functors over `Z` with values in finite-rank free modules.

mod axioms;
mod builders;
mod functor;
mod io;

pub use axioms::{
    check_axioms, check_axioms_with, mackey_sum, Axiom, AxiomFailure, AxiomReport, AxiomStatus,
    RepChoice,
};
pub use builders::{
    burnside_functor, fixed_point_functor, trivial_functor, BuildOptions, BuilderRegistry,
    BurnsideBuilder, FixedPointBuilder, FunctorBuilder, GSet, TrivialBuilder,
};
pub use functor::{FunctorParts, MackeyFunctorData};
pub use io::{
    functor_from_json, functor_to_json, load_functor, save_functor, ConjugationEntry, FunctorFile,
    InclusionEntry, FORMAT_TAG,
};

use thiserror::Error;

use crate::group::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctorError {
    #[error("{0}")]
    Incomplete(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0} is not invertible over Z")]
    NotInvertible(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invalid G-set: {0}")]
    InvalidGSet(String),
    #[error("unknown functor {0:?} (known: {1})")]
    UnknownBuilder(String, String),
    #[error("io error on {0}: {1}")]
    Io(String, String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
