// `!(x > 0.0)` style guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assembly;
pub mod catalog;
pub mod error;
pub mod fractional;
pub mod grid;
pub mod io;
pub mod oracle;
pub mod quadrature;
pub mod special;
mod transfer;

pub use error::{Error, Result, Violation};
