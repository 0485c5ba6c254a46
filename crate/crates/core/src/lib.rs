//! Gabriel quivers of finite-dimensional algebras over prime fields, and
//! executable checks of the converse of Schur's lemma for modules of finite
//! length.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: exact linear algebra over GF(p);
//! - [`algebra`]: algebras by structure constants and standard constructions;
//! - [`module`]: right modules, Hom spaces, composition series, decompositions;
//! - [`ext`]: Ext¹ by cocycles and the Gabriel quiver;
//! - [`csl`]: division-ring tests, CSL witnesses, module enumeration and the
//!   structure of the regular module;
//! - [`subcat`]: the category of monomorphisms over `GF(p)[t]/(t^n)` and
//!   quasi-simple objects;
//! - [`spec_file`] and [`corpus`]: JSON input formats and the bundled algebras.

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod corpus;
pub mod csl;
pub mod error;
pub mod ext;
pub mod linalg;
pub mod module;
pub mod spec_file;
pub mod subcat;

pub use error::{Error, Guard, Result};
