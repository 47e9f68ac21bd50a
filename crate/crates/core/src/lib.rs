//! Exact computations around Brauer groups of modified supergroup algebras.
//!
//! The crate is organised bottom-up: finite groups ([`group`]), cohomology with
//! cyclic coefficients ([`cohomology`]), the twisted product and the groups built
//! from it ([`sharp`]), invariant symmetric forms ([`forms`]), the supergroup Hopf
//! algebras themselves ([`supergroup`]) and Weyl group data ([`weyl`]).

pub mod abelian;
pub mod budget;
pub mod cohomology;
pub mod error;
pub mod forms;
pub mod group;
pub mod modular;
pub mod rational;
pub mod sharp;
pub mod supergroup;
pub mod weyl;

pub use budget::Budgets;
pub use error::{Error, Result};
