//! Sumset-free sets: detection, extremal search, constructions, the Cayley
//! sum hypergraph, and infinite-sequence experiments.

pub mod ambient;
mod bits;
pub mod construct;
pub mod detect;
pub mod error;
pub mod hypergraph;
pub mod search;
pub mod sequences;
pub mod set;
pub mod setfile;
pub mod signature;
pub mod witness;

pub use ambient::{Ambient, Element};
pub use error::{Error, Result};
pub use set::GroundSet;
pub use signature::Signature;
pub use witness::SumsetWitness;
