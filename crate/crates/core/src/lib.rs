// Negated float comparisons are used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod copula;
pub mod dists;
pub mod error;
pub mod exec;
pub mod optim;
pub mod pipeline;
pub mod quad;
pub mod rng;
pub mod special;
pub mod stattests;
pub mod tsmodel;

pub use error::{Error, Result};
pub use exec::Execution;
