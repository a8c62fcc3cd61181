//! Derived constructors: wiring, feedback, matrices, fractions and vector contexts.

use super::circuit::{Circuit, Sort, SortError};
use crate::algebra::{Field, Poly, RatFunc, Rational};

/// True for terms built only from `id`, `empty` and the compositions, i.e.
/// identities on some number of wires.
pub fn is_identity(c: &Circuit) -> bool {
    match c {
        Circuit::Id | Circuit::Empty => true,
        Circuit::Seq(a, b) | Circuit::Par(a, b) => is_identity(a) && is_identity(b),
        _ => false,
    }
}

/// `a ; b`, dropping identity blocks.
pub fn seq(a: Circuit, b: Circuit) -> Circuit {
    if is_identity(&a) {
        b
    } else if is_identity(&b) {
        a
    } else {
        Circuit::seq(a, b)
    }
}

/// `a + b`, dropping `empty` operands.
pub fn par(a: Circuit, b: Circuit) -> Circuit {
    match (a, b) {
        (Circuit::Empty, b) => b,
        (a, Circuit::Empty) => a,
        (a, b) => Circuit::par(a, b),
    }
}

/// Right-nested monoidal product of the items; `empty` for none.
pub fn par_all(items: impl IntoIterator<Item = Circuit>) -> Circuit {
    let items: Vec<Circuit> = items.into_iter().collect();
    items
        .into_iter()
        .rev()
        .reduce(|acc, c| par(c, acc))
        .unwrap_or(Circuit::Empty)
}

/// Identity on `n` wires.
pub fn ids(n: usize) -> Circuit {
    par_all(std::iter::repeat_n(Circuit::Id, n))
}

/// Wiring that sends left port `i` to right port `perm[i]`, built from
/// adjacent `sym` layers.
pub fn permutation(perm: &[usize]) -> Circuit {
    let n = perm.len();
    let mut arrangement: Vec<usize> = (0..n).collect();
    let mut out = ids(n);
    let mut swapped = true;
    while swapped {
        swapped = false;
        for k in 0..n.saturating_sub(1) {
            if perm[arrangement[k]] > perm[arrangement[k + 1]] {
                arrangement.swap(k, k + 1);
                let layer = par(ids(k), par(Circuit::Sym, ids(n - k - 2)));
                out = seq(out, layer);
                swapped = true;
            }
        }
    }
    out
}

/// `(a + b) → (b + a)`: the first `a` wires move below the next `b`.
pub fn swap_block(a: usize, b: usize) -> Circuit {
    let perm: Vec<usize> = (0..a).map(|i| i + b).chain(0..b).collect();
    permutation(&perm)
}

/// `1 → k` fan-out: `discard` for zero copies.
pub fn copies(k: usize) -> Circuit {
    match k {
        0 => Circuit::Discard,
        1 => Circuit::Id,
        _ => seq(Circuit::Copy, par(Circuit::Id, copies(k - 1))),
    }
}

/// `k → 1` fan-in by addition: `zero` for no summands.
pub fn sums(k: usize) -> Circuit {
    match k {
        0 => Circuit::Zero,
        1 => Circuit::Id,
        _ => seq(par(Circuit::Id, sums(k - 1)), Circuit::Add),
    }
}

/// `codiscard ; copy`, denoting `{(•, (p, p))}`.
pub fn cup() -> Circuit {
    Circuit::seq(Circuit::CoDiscard, Circuit::Copy)
}

/// `cocopy ; discard`, denoting `{((p, p), •)}`.
pub fn cap() -> Circuit {
    Circuit::seq(Circuit::CoCopy, Circuit::Discard)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TraceError {
    #[error("feedback needs at least one left and one right port, circuit has sort {0}")]
    TooSmall(Sort),
    #[error(transparent)]
    Sort(#[from] SortError),
}

/// Feedback: the first right port is fed back into the first left port
/// through one register.
///
/// For `c : (n+1, m+1)` the result is
/// `(cup + id_n) ; (id + c) ; (id + reg + id_m) ; (cap + id_m)`.
pub fn trace(c: &Circuit) -> Result<Circuit, TraceError> {
    let s = c.sort()?;
    if s.left == 0 || s.right == 0 {
        return Err(TraceError::TooSmall(s));
    }
    let (n, m) = (s.left - 1, s.right - 1);
    Ok(Circuit::seq(
        Circuit::seq(
            Circuit::seq(par(cup(), ids(n)), Circuit::par(Circuit::Id, c.clone())),
            par(Circuit::par(Circuit::Id, Circuit::Reg), ids(m)),
        ),
        par(cap(), ids(m)),
    ))
}

fn scalar_circuit(r: &Rational) -> Circuit {
    if r.is_one() {
        Circuit::Id
    } else {
        Circuit::Scalar(r.clone())
    }
}

/// `1 → 1` circuit multiplying by the polynomial `p`, as a Horner chain:
/// `p = c₀ + x·q` becomes `copy ; (c₀ + (q ; reg)) ; add`.
pub fn poly_circuit(p: &Poly<Rational>) -> Circuit {
    if p.is_zero() {
        return Circuit::seq(Circuit::Discard, Circuit::Zero);
    }
    let c0 = p.coeff(0);
    let rest = Poly::new(p.coeffs()[1..].to_vec());
    if rest.is_zero() {
        return scalar_circuit(&c0);
    }
    let tail = seq(poly_circuit(&rest), Circuit::Reg);
    if c0.is_zero() {
        return tail;
    }
    Circuit::seq(
        Circuit::seq(Circuit::Copy, Circuit::par(scalar_circuit(&c0), tail)),
        Circuit::Add,
    )
}

/// An `rows × cols` matrix of polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixOverPoly {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Poly<Rational>>>,
}

impl MatrixOverPoly {
    pub fn new(entries: Vec<Vec<Poly<Rational>>>, cols: usize) -> Self {
        assert!(
            entries.iter().all(|r| r.len() == cols),
            "matrix must be rectangular"
        );
        MatrixOverPoly {
            rows: entries.len(),
            cols,
            entries,
        }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Poly::one() } else { Poly::zero() })
                    .collect()
            })
            .collect();
        MatrixOverPoly::new(entries, n)
    }
}

/// Circuit of sort `(cols, rows)` denoting `{(v, M·v)}`.
///
/// Each left port fans out to the rows where its column is nonzero, each
/// path carries the Horner chain of its entry, and every right port sums
/// its incoming paths. Zero columns end in `discard`, zero rows start at
/// `zero`.
pub fn matrix_to_circuit(m: &MatrixOverPoly) -> Circuit {
    // column-major list of nonzero entries
    let mut paths: Vec<(usize, usize)> = Vec::new();
    let mut fan_out = Vec::new();
    for j in 0..m.cols {
        let rows: Vec<usize> = (0..m.rows)
            .filter(|&i| !m.entries[i][j].is_zero())
            .collect();
        fan_out.push(copies(rows.len()));
        paths.extend(rows.into_iter().map(|i| (i, j)));
    }
    let weights = par_all(paths.iter().map(|&(i, j)| poly_circuit(&m.entries[i][j])));
    let mut row_major: Vec<usize> = (0..paths.len()).collect();
    row_major.sort_by_key(|&k| paths[k]);
    let mut perm = vec![0; paths.len()];
    for (target, &k) in row_major.iter().enumerate() {
        perm[k] = target;
    }
    let fan_in = par_all((0..m.rows).map(|i| sums(paths.iter().filter(|&&(r, _)| r == i).count())));
    seq(
        seq(seq(par_all(fan_out), weights), permutation(&perm)),
        fan_in,
    )
}

/// Circuit of sort `(0, 1)` denoting `{(•, p)}`: with `p = s/t`, the constant
/// one is scaled by `s` and then divided by `t` through the mirrored chain of `t`.
pub fn fraction_to_circuit(p: &RatFunc) -> Circuit {
    if p.is_zero() {
        return Circuit::Zero;
    }
    seq(
        Circuit::One,
        seq(poly_circuit(p.num()), poly_circuit(p.den()).mirror()),
    )
}

/// Singleton-denoting circuits `c_u : (0, n)` and `c_v : (m, 0)` with
/// `⟦c_u⟧ = {(•, u)}` and `⟦c_v⟧ = {(v, •)}`.
pub fn vector_context(u: &[RatFunc], v: &[RatFunc]) -> (Circuit, Circuit) {
    let cu = par_all(u.iter().map(fraction_to_circuit));
    let cv = par_all(v.iter().map(fraction_to_circuit)).mirror();
    (cu, cv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_sorts() {
        let p = permutation(&[2, 0, 1]);
        assert_eq!(p.sort().unwrap(), Sort::new(3, 3));
        assert_eq!(permutation(&[0, 1, 2]), ids(3));
        assert_eq!(swap_block(1, 0), Circuit::Id);
    }

    #[test]
    fn fanouts() {
        assert_eq!(copies(3).sort().unwrap(), Sort::new(1, 3));
        assert_eq!(sums(3).sort().unwrap(), Sort::new(3, 1));
        assert_eq!(sums(0), Circuit::Zero);
    }

    #[test]
    fn trace_rejects_small_sorts() {
        assert!(trace(&Circuit::Zero).is_err());
        assert!(trace(&Circuit::Discard).is_err());
        assert_eq!(
            trace(&Circuit::Sym).unwrap().sort().unwrap(),
            Sort::new(1, 1)
        );
    }

    #[test]
    fn fraction_circuits_have_expected_shape() {
        let one: RatFunc = "1".parse().unwrap();
        assert_eq!(fraction_to_circuit(&one), Circuit::One);
        let inv_x: RatFunc = "1/x".parse().unwrap();
        assert_eq!(
            fraction_to_circuit(&inv_x),
            Circuit::seq(Circuit::One, Circuit::CoReg)
        );
    }

    #[test]
    fn vector_context_shapes() {
        let (cu, _) = vector_context(&["1".parse().unwrap()], &[]);
        assert_eq!(cu, Circuit::One);
        let (_, cv) = vector_context(&[], &[RatFunc::zero()]);
        assert_eq!(cv, Circuit::CoZero);
    }
}
