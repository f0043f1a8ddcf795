//! Symbolic computation with rearrangement groups of expanding replacement
//! systems.
//!
//! Group elements are graph pair diagrams over expansions of a
//! [`ReplacementSystem`]. The crate computes reduced and canonical
//! representatives, decides periodicity, synthesizes and checks wandering
//! cells, searches for weak cell-transitivity witnesses and runs the
//! ping-pong construction showing that a finite set of conjugated elements
//! fails to generate.
//!
//! The crate is `no_std` and only needs `alloc`. Text parsing, JSON and the
//! command-line tool live in the companion `rearr` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod address;
pub mod canonical;
pub mod diagram;
pub mod enumerate;
mod error;
pub mod expansion;
pub mod fixtures;
pub mod noninvgen;
pub mod points;
pub mod system;
pub mod transitivity;
pub mod wandering;

#[cfg(test)]
mod test_fixtures;

pub use address::{Address, LassoPoint, Sym};
pub use canonical::{CanonicalElement, ExpandableSequence, ForestDelta, Order, Violation};
pub use diagram::{GraphPairDiagram, Rearrangement};
pub use error::Error;
pub use expansion::{CellKind, CellUnion, Expansion, ExpansionGraph};
pub use points::{CellMembership, VertexId};
pub use system::{ColorId, DirectedGraph, End, EndState, ReplacementGraph, ReplacementSystem, SystemBuilder};
pub use wandering::{CertificateData, WanderingCertificate, WanderingKind};

pub type Result<T, E = Error> = core::result::Result<T, E>;
