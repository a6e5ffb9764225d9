//! Exact cohomology, Chern classes, Betti tables and Castelnuovo-Mumford
//! regularity for subvarieties of projective space.

pub mod arith;
pub mod bott;
pub mod error;
pub mod table;
pub mod chow;
pub mod betti;
pub mod les;
pub mod quadric;
pub mod reg;
pub mod liaison;
pub mod catalog;
pub mod cli;
