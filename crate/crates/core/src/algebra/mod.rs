//! Exact polynomial and integer-matrix arithmetic.

mod bilaurent;
mod gcd;
mod laurent;
mod matrix;
mod ratfunc;

pub use bilaurent::{s_loop, t_loop, AlgebraError, BiLaurent};
pub use gcd::gcd;
pub use laurent::Laurent;
pub use matrix::{
    inverse_exact, smith_normal_form, smith_normal_form_with_transforms, IntMatrix, RationalMatrix, SmithForm,
};
pub use ratfunc::RatFunc;
