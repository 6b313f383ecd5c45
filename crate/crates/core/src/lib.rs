//! Exact integer toolkit for Picard lattices of rational surfaces.

pub mod blowup;
pub mod catalog;
pub mod classify;
pub mod config;
pub mod cremona;
pub mod error;
pub mod expr;
pub mod lattice;
pub mod negcurves;

pub use error::{Error, Result};
pub use lattice::{make_lattice, BaseKind, DivisorClass, IntersectionLattice, LatticeDescriptor};
