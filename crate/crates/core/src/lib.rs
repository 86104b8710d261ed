//! Combinatorial models of directed path spaces of precubical sets.
//!
//! The execution paths between two vertices of a precubical set `K` are
//! modelled, grade by grade, by the category of cube chains of `K`: the
//! diagram of natural path spaces over it is objectwise contractible, so
//! the path space has the homotopy type of the nerve of that category.
//! On top of this model the crate decides properness and spatiality of
//! finite precubical sets, and compiles small PV programs into precubical
//! sets for experimentation.

pub mod chains;
pub mod dpath;
pub mod error;
pub mod flow;
pub mod nerve;
pub mod pcs;
pub mod pv;
pub mod snf;
pub mod spatial;

pub use error::{Error, Result};
pub use pcs::{CellRef, CellWord, PrecubicalSet};
