//! Exact Kauffman-bracket projective representations of the mapping class
//! group of the `2n`-punctured sphere at roots of unity.
//!
//! Everything here is pure algebra over cyclotomic fields and runs without
//! the standard library (an allocator is required).
#![no_std]

extern crate alloc;

pub mod certify;
pub mod coloring;
pub mod cyclo;
pub mod error;
pub mod hyperelliptic;
pub mod recoupling;
pub mod rep;

pub use cyclo::{CycloElem, CycloField, RootChoice, RootField, Sign};
pub use error::{Error, Result};
