#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod genprop;
pub mod harness;
pub mod linalg;
pub mod matfun;
pub mod matrix;
pub mod means;
pub mod numrange;
pub mod tol;

pub use error::{Error, Result};
pub use matrix::{CMatrix, C64};
