//! File formats, caching, oracle suites and the command-line front end for
//! `coxstat-core`.

pub mod cache;
pub mod cli;
pub mod error;
pub mod findstat;
pub mod ingest;
pub mod io;
pub mod verify;

pub use error::{Error, Result};
