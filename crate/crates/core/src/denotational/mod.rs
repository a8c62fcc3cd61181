//! Affine relations over ℚ(x) and the compositional denotation of circuits.

mod relation;
mod semantics;

pub use relation::{AffineMap, AffineRelation, ArityError, RelationRecord, RowRecord};
pub use semantics::{
    dsem, equiv, extract_affine_map, generator_relation, map_is_rational, relation_witness,
    witness, Boundary, DenotationError, Relation,
};
