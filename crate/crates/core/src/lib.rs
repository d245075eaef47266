//! Exact verification of Mackey functors for small finite groups and of their
//! presentation as Mackey double categories.
//!
//! The crate is organized bottom-up:
//!
//! - [`group`]: finite groups as multiplication tables, subgroups, double cosets.
//! - [`intlat`]: integer matrices and sublattices of `Z^n` in Hermite normal form.
//! - [`mackey`]: concrete Mackey functors, the axiom checker and the functor file format.
//! - [`double`]: the double category built from a functor, its cells and validators.
//! - [`equivalence`]: the two translations between functors and double categories.
//! - [`registry`]: name-keyed builders and checks selected at run time.
//! - [`report`]: the common report format.

pub mod double;
pub mod equivalence;
pub mod group;
pub mod intlat;
pub mod mackey;
pub mod registry;
pub mod report;
