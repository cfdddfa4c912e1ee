//! Truncated factor sets of infinite words, bifix codes, return words,
//! free-group certificates and maximal bifix decodings.

pub mod codes;
pub mod decoding;
pub mod error;
pub mod freegroup;
pub mod generators;
pub mod iet;
pub mod presets;
pub mod properties;
pub mod returns;
pub mod words;

pub use error::{Error, Result};
