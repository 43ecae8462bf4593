//! Harness around the hadamard library: a textual problem format with a
//! parser and printer, an independent per-index oracle, a solver/refuter
//! race, corpus batch runs, and configuration loading for the `hf` binary.

pub mod config;
pub mod corpus;
pub mod oracle;
pub mod output;
pub mod parser;
pub mod race;
