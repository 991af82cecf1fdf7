//! A laboratory for detecting and recovering a general hidden structure
//! planted as an induced subgraph of a dense random graph: seeded ensemble
//! samplers, statistically optimal and polynomial-time tests, recovery
//! estimators, and an exact low-degree likelihood-ratio analyzer, all
//! verified against brute-force oracles at small scale.

pub mod detectors;
pub mod ensembles;
pub mod error;
pub mod graphcore;
pub mod harness;
pub mod lowdegree;
pub mod recovery;
pub mod structstats;

pub use error::{Error, Result};
pub use graphcore::Graph;
