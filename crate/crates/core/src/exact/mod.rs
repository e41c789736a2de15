//! Exact rational and cyclotomic arithmetic.

mod cyclotomic;
mod level;
mod rational;

pub use cyclotomic::{Cyclotomic, RootSum};
pub use rational::{ParseRationalError, Rational};

pub(crate) use level::level_data;

/// `Phi_n` as integer coefficients, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    level_data(n).cyclo.clone()
}
