//! Finite categories, functors, natural transformations and strict
//! Cat-valued diagrams.

pub mod build;
mod category;
mod diagram;
mod functor;
mod ids;
mod nat;

pub use category::{CategoryReport, CategoryViolation, FinCat, RawCategory};
pub use diagram::{CatDiagram, DiagramMor, DiagramReport, DiagramViolation, Modification};
pub use functor::{same_cat, FunctorData, FunctorReport, FunctorViolation, RawFunctor};
pub use ids::{MorId, ObjId};
pub use nat::{NatTransData, NatTransReport, NatTransViolation};
