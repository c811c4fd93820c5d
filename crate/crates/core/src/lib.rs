//! Decision procedures for simplicial 3-balls given as facet lists: a
//! sufficient condition for nonconstructibility based on strict spanning
//! edges, cross-checked by exact exponential shellability and
//! constructibility oracles with replayable certificates.

pub mod analysis;
pub mod cli;
pub mod complex;
pub mod corpus;
pub mod oracle;
pub mod parse;
pub mod validation;

pub use analysis::{theorem_decide, BallReport, Verdict};
pub use complex::{Complex, Graph1Complex, Simplex, VertexId};
pub use oracle::{is_constructible, is_shellable, Mode, SearchConfig};
