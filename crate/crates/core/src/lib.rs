//! Coloring machinery for hereditary graph classes defined by a forbidden
//! five-vertex forest together with the diamond (K4 minus an edge).
//!
//! The crate is organized around an immutable bitset graph ([`graph`]),
//! induced-pattern detection and class recognition ([`patterns`]), exact
//! desk-scale oracles ([`oracle`]), the C5/C7 neighborhood decompositions
//! ([`decomposition`]), coloring of graded three-clique partitions
//! ([`goodgraph`]), the three class colorers with derivation certificates
//! ([`colorers`]), and seeded instance generators ([`generators`]).
//!
//! Everything is deterministic: ties break toward the lowest vertex index,
//! searches return lexicographically least witnesses, and generators are
//! pure functions of their seed.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod colorers;
pub mod decomposition;
pub mod generators;
pub mod goodgraph;
pub mod graph;
pub mod oracle;
pub mod patterns;

pub use graph::{Coloring, Graph, VertexSet};
pub use patterns::{ClassId, Embedding, PatternId};
