//! Exact arithmetic over ℚ, ℚ[t] and ℚ(t).

mod decompose;
mod linalg;
mod poly;
mod ratfunc;
mod roots;
mod squarefree;

use thiserror::Error;

pub use decompose::{
    hermite_reduce, interpolate, logderiv_residues, partial_fractions, split_denominator,
    LogDerivParts, PartialFractions, PrincipalPart,
};
pub(crate) use decompose::product_of_powers;
pub use linalg::nullspace;
pub use poly::Poly;
pub use ratfunc::{rat_sqrt, RatFunc};
pub use roots::{lcm_denominators, rational_roots};
pub use squarefree::{squarefree_factor, SquarefreeFactorization};

/// Exact rational number.
pub type Rat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input where a nonzero polynomial is required")]
    ZeroInput,
}

/// Shorthand for `n/d` as a [`Rat`].
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}
