//! Universal point sets for planar graphs: abstract order types, stacked
//! triangulations, SAT-based embeddability and conflict-collection search.

pub mod bounds;
pub mod chirotope;
pub mod data;
pub mod embedding;
pub mod enumeration;
pub mod graphs;
pub mod sat;
pub mod search;
pub mod shard;
