pub mod agenda;
pub mod attribution;
pub mod classify;
pub mod config;
pub mod coordination;
pub mod credibility;
pub mod entities;
pub mod error;
pub mod hashing;
pub mod impact;
pub mod ingest;
pub mod narrative;
pub mod pipeline;
pub mod stats;
pub mod synthgen;
pub mod text;
pub mod union_find;

pub use error::{Error, Result};
