//! Exact coherent-state quantization of so(n,2).

pub mod berezin;
pub mod cli;
pub mod coherent;
pub mod error;
pub mod exact;
pub mod fock;
pub mod lie;
pub mod observables;
pub mod report;
pub mod sample;

pub use error::{Error, Result};
pub use report::Report;
