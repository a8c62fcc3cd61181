//! Workbench for the affine signal flow calculus.
//!
//! Circuits are terms built from copy/add/register/one generators, their
//! mirror images, and the two compositions `;` and `+`. This crate gives them
//! an exact denotation as affine relations over ℚ(x) ([`denotational`]), a
//! clocked constraint-based execution model ([`operational`]), and decision
//! procedures built on both ([`analysis`]).

pub mod algebra;
pub mod analysis;
pub mod denotational;
pub mod gen;
pub mod linalg;
pub mod operational;
pub mod syntax;
