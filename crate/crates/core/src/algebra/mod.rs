//! Exact rationals and integer/rational matrix algorithms.

mod matrix;
mod rational;

pub use matrix::{
    det_exact, hermite_kernel, hermite_normal_form, rref_rational, smith_normal_form,
    solve_right, to_i64_rows, IntMatrix, RatMatrix,
};
pub use rational::{q, ParseRationalError, Rational};
