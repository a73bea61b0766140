//! Exact differential algebra over ℚ and ℚ(t).
//!
//! The crate covers differential polynomials with Ritt reduction and
//! membership in the general-solution ideal, Wronskians and the linear ODE
//! they determine, power-series fundamental systems at ordinary points,
//! Galois-group classification of antiderivative and exponential extensions,
//! and a small catalog of algebraic matrix groups over the constants.

// matrix code reads better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod basefield;
pub mod cli;
pub mod diffpoly;
pub mod error;
pub mod galois;
pub mod matgroup;
pub mod odeseries;
pub mod par;
pub mod ring;
pub mod wronskian;

pub use error::{Error, Result};
