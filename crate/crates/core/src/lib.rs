//! Algorithms for uniform hypergraphs around tight connectivity: shifting,
//! tight components, exact matchings and tight cycles, extremal families,
//! and an exact verifier for a weighted local-structure bound.

pub mod cli;
pub mod combin;
pub mod constructions;
mod dsu;
pub mod error;
pub mod extremal;
pub mod hypergraph;
pub mod io;
pub mod localstruct;
pub mod matchcycle;
mod par;
pub mod report;
pub mod shifting;

pub use error::{Error, Result};
pub use hypergraph::{ColouredPair, Edge, Hypergraph, Matching, Vertex};
