//! Variational quantum search for graph and subgraph isomorphism.
//!
//! Adjacency matrices are loaded as sign diagonals, conjugated by a
//! parameterized permutation Ansatz, and compared through a single ancilla.
//! Trained parameters are rounded to bits and read back as a classical
//! permutation, which is then checked against the classical loss.

pub mod ansatz;
pub mod cli;
pub mod encoding;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod simulator;
pub mod solver;

pub use error::{Error, Result};
