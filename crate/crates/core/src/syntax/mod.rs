//! Circuit terms: the AST, sort inference, concrete syntax and derived
//! constructions.

mod build;
mod circuit;
mod normal;
mod text;

pub use build::{
    cap, copies, cup, fraction_to_circuit, ids, is_identity, matrix_to_circuit, par, par_all,
    permutation, poly_circuit, seq, sums, swap_block, trace, vector_context, MatrixOverPoly,
    TraceError,
};
pub use circuit::{Circuit, Sort, SortError};
pub use normal::{eliminate_coone, hat, single_one_form};
pub use text::{parse, parse_unchecked, SyntaxError};
