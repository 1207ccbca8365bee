//! Finite double groupoids and hopfoids in the category of finite sets and
//! relations.

pub mod doublegpd;
pub mod error;
pub mod generators;
pub mod groupoid;
pub mod hopfoid;
pub mod json;
pub mod relcat;
pub mod report;

pub use error::{Error, Result};
