//! Exact character tables of `GL_2(F_q)` and `SL_2(F_q)`, the abelian number
//! fields generated by their values, the `GL_m` class-type machinery, and
//! mechanical checks of the field identities relating them.

pub mod arith;
pub mod config;
pub mod error;
pub mod exact;
pub mod finite_field;
pub mod galois;
pub mod glm;
pub mod selftest;
pub mod tables;
pub mod theorems;

pub use error::{Error, Result};
pub use exact::{Cyclotomic, Rational, RootSum};
