// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod baselines;
pub mod benchmarks;
pub mod cuckoo;
pub mod diagnostics;
pub mod engineering;
pub mod error;
pub mod harness;
pub mod problem;
pub mod record;
pub mod rng;
mod special;

pub use error::{Error, Result};
pub use problem::{Bounds, EvalCounter, EvaluatedPoint, Problem};
pub use record::{RunRecord, StopCriteria, StopDecision};
pub use rng::{LevyParams, RngState};
