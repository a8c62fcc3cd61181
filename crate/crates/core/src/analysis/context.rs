use crate::algebra::RatFunc;
use crate::denotational::{witness, DenotationError};
use crate::operational::{observes_infinite, AgreementError};
use crate::syntax::{vector_context, Circuit};

/// A closing context `c_u ; − ; c_v` built from singleton-denoting circuits.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Context {
    pub c_u: Circuit,
    pub c_v: Circuit,
}

impl Context {
    pub fn from_vectors(u: &[RatFunc], v: &[RatFunc]) -> Self {
        let (c_u, c_v) = vector_context(u, v);
        Context { c_u, c_v }
    }

    pub fn plug(&self, c: &Circuit) -> Circuit {
        Circuit::seq(self.c_u.clone(), Circuit::seq(c.clone(), self.c_v.clone()))
    }

    /// Whether the closed circuit `C[c]` can compute forever.
    pub fn observe(&self, c: &Circuit) -> Result<bool, AgreementError> {
        observes_infinite(&self.plug(c))
    }
}

/// A context separating `c` and `d`, built from a point of their
/// denotations' symmetric difference; `None` when they are equivalent.
pub fn distinguishing_context(
    c: &Circuit,
    d: &Circuit,
) -> Result<Option<Context>, DenotationError> {
    Ok(witness(c, d)?.map(|(u, v)| Context::from_vectors(&u, &v)))
}
