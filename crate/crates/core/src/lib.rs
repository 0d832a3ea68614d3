//! Decide phylogenetic decisiveness of taxon coverage patterns.
//!
//! A coverage pattern is non-decisive exactly when its coverage hypergraph
//! (taxa as nodes, loci as edges) admits a surjective 4-coloring in which no
//! edge sees all four colors. This crate provides the exact searches for such
//! colorings, a kernel over distinct incidence rows, counting bounds, solver
//! model emitters, and the decision pipeline tying them together.

pub mod bitset;
pub mod bounds;
pub mod coloring;
pub mod emit;
mod error;
pub mod hypergraph;
pub mod io;
pub mod nrc;
pub mod oracle;
pub mod pattern;
pub mod pipeline;
pub mod reduce;

pub use coloring::{Coloring, PartialColoring, Violation};
pub use error::{Error, Result};
pub use hypergraph::{ComponentPartition, Hypergraph};
pub use nrc::{NrcConfig, NrcOutcome, NrcRule};
pub use pattern::CoveragePattern;
pub use pipeline::{decide, decisive_subset, DecideOptions, DecidedBy, Strategy, SubsetTrace, Verdict};
