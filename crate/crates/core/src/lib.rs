//! Approximate minimum cut and minimum k-cut via tracking singleton cuts of
//! the random contraction process, on a simulated adaptive massively
//! parallel runtime with round and memory accounting.
//!
//! The pipeline: assign unique contraction keys to edges, take the spanning
//! tree under key order, build a generalized low depth decomposition of it,
//! reduce singleton-cut tracking to per-level interval coverage, and drive a
//! boosted recursive contraction scheme from that. Everything is verified
//! against brute-force oracles in `oracle`.

pub mod ampc;
pub mod decomp;
mod dsu;
pub mod error;
pub mod generate;
pub mod graph;
pub mod kcut;
pub mod mincut;
pub mod oracle;
pub mod pathquery;
pub mod seeds;
pub mod singleton;

pub use error::{Error, Result};
