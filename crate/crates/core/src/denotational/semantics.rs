use crate::algebra::{Field, RatFunc};
use crate::syntax::{Circuit, SortError};

use super::relation::{AffineMap, AffineRelation, ArityError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DenotationError {
    #[error(transparent)]
    Sort(#[from] SortError),
    #[error(transparent)]
    Arity(#[from] ArityError),
}

pub type Relation = AffineRelation<RatFunc>;

fn rel(left: usize, right: usize, rows: Vec<Vec<RatFunc>>) -> Relation {
    AffineRelation::from_rows_unchecked(left, right, rows)
}

fn k(n: i64) -> RatFunc {
    RatFunc::from_i64(n)
}

/// `{(p, c·p)}` for a fraction `c`.
fn multiply_by(c: RatFunc) -> Relation {
    rel(1, 1, vec![vec![-c, k(1), k(0)]])
}

/// Denotation of a single generator.
pub fn generator_relation(g: &Circuit) -> Relation {
    use Circuit::*;
    match g {
        Copy => rel(
            1,
            2,
            vec![vec![k(-1), k(1), k(0), k(0)], vec![k(-1), k(0), k(1), k(0)]],
        ),
        Discard => Relation::full(1, 0),
        Add => rel(2, 1, vec![vec![k(-1), k(-1), k(1), k(0)]]),
        Zero => rel(0, 1, vec![vec![k(1), k(0)]]),
        One => rel(0, 1, vec![vec![k(1), k(1)]]),
        Scalar(r) => multiply_by(RatFunc::constant(r.clone())),
        Reg => multiply_by(RatFunc::x()),
        Id => Relation::identity(1),
        Sym => rel(
            2,
            2,
            vec![
                vec![k(0), k(-1), k(1), k(0), k(0)],
                vec![k(-1), k(0), k(0), k(1), k(0)],
            ],
        ),
        Empty => Relation::full(0, 0),
        CoCopy | CoDiscard | CoAdd | CoZero | CoOne | CoScalar(_) | CoReg => {
            generator_relation(&g.mirror()).converse()
        }
        Seq(..) | Par(..) => panic!("not a generator"),
    }
}

/// The denotation `⟦c⟧` as an affine relation over ℚ(x).
pub fn dsem(c: &Circuit) -> Result<Relation, DenotationError> {
    c.sort()?;
    Ok(fold(c))
}

fn fold(c: &Circuit) -> Relation {
    match c {
        Circuit::Seq(a, b) => fold(a).compose(&fold(b)).expect("sorted terms compose"),
        Circuit::Par(a, b) => fold(a).tensor(&fold(b)),
        g => generator_relation(g),
    }
}

fn check_sorts(c: &Circuit, d: &Circuit) -> Result<(), DenotationError> {
    let (sc, sd) = (c.sort()?, d.sort()?);
    if sc != sd {
        return Err(ArityError::Mismatch(sc.left, sc.right, sd.left, sd.right).into());
    }
    Ok(())
}

/// Denotational equality; by full abstraction this is contextual equivalence.
pub fn equiv(c: &Circuit, d: &Circuit) -> Result<bool, DenotationError> {
    check_sorts(c, d)?;
    Ok(dsem(c)? == dsem(d)?)
}

/// A point of `g` outside `h`, if `g ⊄ h`.
///
/// The particular solution of `g` comes first; if `h` contains it, adding
/// each direction vector gives the remaining points of an affine basis of
/// `g`, and `g ⊆ h` exactly when `h` contains all of them.
fn point_outside<F: Field>(g: &AffineRelation<F>, h: &AffineRelation<F>) -> Option<Vec<F>> {
    let p = g.particular_solution()?;
    if h.violated_row(&p).is_some() || h.is_empty() {
        return Some(p);
    }
    for d in g.direction_basis()? {
        let q: Vec<F> = p
            .iter()
            .zip(&d)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        if !h.contains_point(&q) {
            return Some(q);
        }
    }
    None
}

/// Left and right boundary values of a point in a relation.
pub type Boundary<F> = (Vec<F>, Vec<F>);

/// A pair in exactly one of two relations of the same sort, or `None` when
/// they are equal. Points of `g` are tried before points of `h`.
pub fn relation_witness<F: Field>(
    g: &AffineRelation<F>,
    h: &AffineRelation<F>,
) -> Result<Option<Boundary<F>>, ArityError> {
    g.same_sort(h)?;
    if g == h {
        return Ok(None);
    }
    let z = point_outside(g, h)
        .or_else(|| point_outside(h, g))
        .expect("distinct affine subspaces differ in a basis point");
    let (u, v) = z.split_at(g.left());
    Ok(Some((u.to_vec(), v.to_vec())))
}

/// A pair `(u, v)` in the symmetric difference of `⟦c⟧` and `⟦d⟧`.
pub fn witness(c: &Circuit, d: &Circuit) -> Result<Option<Boundary<RatFunc>>, DenotationError> {
    check_sorts(c, d)?;
    Ok(relation_witness(&dsem(c)?, &dsem(d)?)?)
}

/// The affine map whose graph is `g`, if `g` is total and single-valued.
pub fn extract_affine_map<F: Field>(g: &AffineRelation<F>) -> Option<AffineMap<F>> {
    g.to_affine_map()
}

/// True when every coefficient and offset expands to a power series.
pub fn map_is_rational(f: &AffineMap<RatFunc>) -> bool {
    f.a.iter().flatten().chain(&f.b).all(RatFunc::is_rational)
}
