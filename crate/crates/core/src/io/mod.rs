//! Serialization, table reproduction and the bundled fixture matrices.

pub mod document;
pub mod fixtures;
pub mod tables;

pub use document::CodeDocument;
