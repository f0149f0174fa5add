//! Exact decision procedure for total freeness of central hyperplane
//! arrangements over the rationals.
//!
//! An arrangement is totally free (every multiplicity on it is free) exactly
//! when it splits as a product of arrangements of rank at most two. When it
//! does not, [`certificate::decide_totally_free`] returns an explicit
//! multiplicity together with a numeric certificate that it is not free.

pub mod algebra;
pub mod arrangement;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod matroid;
pub mod rank2;

pub use error::{Error, Result};
