//! Exact scalar, polynomial and rational-function arithmetic.

mod field;
mod frac;
mod laurent;
mod poly;

pub use field::{Field, Gf, ParseRationalError, Rational};
pub use frac::{Frac, RatFunc};
pub use laurent::{laurent_expand, LaurentWindow};
pub use poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("fraction syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// `true` iff `p` expands to a power series (nonzero constant term in the denominator).
pub fn is_rational<K: Field>(p: &Frac<K>) -> bool {
    p.is_rational()
}
