//! Latency modeling for short-packet links whose receivers decode with
//! ordered-statistics decoders under a computation budget.
//!
//! - [`fblmath`]: BI-AWGN capacity, dispersion and the normal approximation.
//! - [`oscomplexity`]: per-bit operation counts, latency and maximum order.
//! - [`tradeoff`]: the complexity vs power-penalty law.
//! - [`codecsim`]: eBCH codes, OSD and Monte Carlo BLER.
//! - [`scenarios`]: rate, payload and latency optimizers.
//! - [`cli`]: the command-line front end.

// `!(x > 0.0)` style checks also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod codecsim;
pub mod error;
pub mod fblmath;
pub mod oscomplexity;
pub mod scenarios;
pub mod tradeoff;

pub use error::{Error, Result};
