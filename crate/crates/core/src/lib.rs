//! Exact computation with idempotent pairs, two-generated ideals and
//! comaximal factorizations across several families of integral domains.
//!
//! Every procedure returns a certificate that can be re-checked with plain
//! ring arithmetic, independently of the algorithm that produced it.

pub mod arith;
pub mod comax;
pub mod domain;
pub mod error;
pub mod idem;
pub mod limitring;
pub mod monoidring;
pub mod polyext;
pub mod pullback;
pub mod quadring;
pub mod sphere;

pub use error::{Error, Result};
