//! Front end for `skeinrep-core`: JSON documents, shared field caches,
//! thread-pooled scans, the text table and the command line.

pub mod cache;
pub mod cli;
pub mod error;
pub mod json;
pub mod scan;
pub mod selfcheck;
pub mod table;

pub use error::{Error, Result};
