use thiserror::Error;

use crate::report::CheckReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot compose: codomain `{left}` does not match domain `{right}`")]
    Composition { left: String, right: String },

    #[error("element `{element}` is not a member of carrier `{carrier}`")]
    Membership { carrier: String, element: String },

    #[error("carrier `{carrier}` lists element `{element}` more than once")]
    DuplicateElement { carrier: String, element: String },

    #[error("index {index} out of range for carrier `{carrier}` of size {size}")]
    OutOfRange {
        carrier: String,
        index: usize,
        size: usize,
    },

    #[error("structure is invalid: {}", .0.summary())]
    Validation(CheckReport),

    #[error("cannot extract groupoid from *-monoid: {reason} (witness: {witness})")]
    Extraction { reason: String, witness: String },

    #[error("arrow subset is not closed: {reason} (witness: {witness})")]
    Restriction { reason: String, witness: String },

    #[error("core product undefined: {reason} (witness: {witness})")]
    Core { reason: String, witness: String },

    #[error("leaf formula does not produce a partition: {reason} (witness: {witness})")]
    Structure { reason: String, witness: String },

    #[error("table `{name}` is not a group table: {axiom} fails (witness: {witness})")]
    Table {
        name: String,
        axiom: String,
        witness: String,
    },

    #[error("reverse construction failed at stage `{stage}`: {source}")]
    Reverse {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
