#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

//! Mapping class computations on punctured surfaces, open books, braid
//! closures and certificate bookkeeping.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod links;
pub mod mcg;
pub mod openbook;
pub mod surface;

pub use error::{Error, Result};
