//! Finite-category computation: split opfibrations, the Grothendieck
//! construction and its indexed form over Cat-valued diagrams.
//!
//! All instances are finite categories given by explicit tables.

pub mod budget;
pub mod fincat;
pub mod groth;
pub mod indexed;
pub mod iso;
pub mod opfib;
pub mod report;
pub mod stock;

pub use fincat::{CatDiagram, FinCat, FunctorData, MorId, NatTransData, ObjId};
