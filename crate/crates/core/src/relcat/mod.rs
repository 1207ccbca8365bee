//! The ambient category: finite carriers and relations between them.
//!
//! Composition is diagrammatic throughout: `compose(r, s)` applies `r`
//! first. The tensor product is the cartesian product of carriers.

mod carrier;
mod leg;
mod relation;

pub use carrier::{Carrier, Token};
pub use leg::Leg;
pub use relation::{
    classify, compose, is_coreduction, is_reduction, relations_equal, subset_as_relation, tensor,
    transpose, Classification, Relation,
};
