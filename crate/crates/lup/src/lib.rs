//! Self-organizing lists: online update algorithms, exact offline optima,
//! advice tapes, adversarial request families, cost analysis, and a
//! unary-code text compressor driven by the same machinery.
//!
//! Positions are 1-based throughout. Accessing the item at position `i`
//! costs `i` under the full cost model and `i - 1` under the partial model.
//! After an access the algorithm may move the accessed item closer to the
//! front for free; any other rearrangement is paid for by counting adjacent
//! transpositions.

pub mod advice;
pub mod algorithms;
pub mod analysis;
mod codec;
pub mod compress;
pub mod error;
pub mod generators;
pub mod list;
pub mod offline;
pub mod report;
mod rng;
pub mod seqfile;

pub use error::{Error, Result};
