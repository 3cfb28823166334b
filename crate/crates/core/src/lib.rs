//! Nonmonotonic OBDA mapping programs.
//!
//! Mapping rules connect source queries over a relational database to
//! ontology atoms, guarded by positive and negative justifications that are
//! evaluated as certain answers under a DL-Lite_R ontology. This crate
//! grounds such programs, verifies and enumerates their answer sets, and
//! compiles programs into classical ground ASP.

pub mod compiler;
pub mod error;
pub mod frontend;
pub mod grounder;
pub mod model;
pub mod oracle;
pub mod pipeline;
pub mod solver;

pub use error::{Error, Result};
