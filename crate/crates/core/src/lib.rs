//! Capacity bounds for bandlimited optical intensity channels.
//!
//! Units are normalized so that the bandwidth `W` is 1 Hz and the noise
//! standard deviation `σ = √(N₀W)` is 1; rates are in bit/s/Hz.

// `!(x > 0.0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod constraint;
pub mod distributions;
pub mod error;
pub mod mi;
pub mod numeric;
pub mod pulses;
pub mod simulate;

pub use constraint::PowerConstraint;
pub use error::{Error, Result};
