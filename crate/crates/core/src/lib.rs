//! Spectral analysis of adjacency tensors of uniform multi-hypergraphs.
//!
//! Vertices are labelled `1..=n` at every public boundary (edge lists, witness
//! sets, partitions); eigenvectors are plain `Vec<f64>` indexed from zero.

pub mod cli;
pub mod error;
pub mod hypergraph;
pub mod solvers;
pub mod tensor;

pub use error::{Error, Result};
pub use hypergraph::{Edge, Hypergraph, StructureLimits, StructureReport};
pub use tensor::{Contraction, SymmetricTensor};
