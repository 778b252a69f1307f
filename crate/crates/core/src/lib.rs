//! Public-safety incident scenario generation and flow-level simulation.

// `!(x > 0.0)` deliberately rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod geometry;
pub mod mobility;
pub mod rng;
pub mod radio;
pub mod scenario;
pub mod sim;
pub mod trace;
