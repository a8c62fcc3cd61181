//! Single-`one` normal form and the hat construction.

use super::build::{cap, copies, ids, par, seq, swap_block};
use super::circuit::{Circuit, SortError};

/// Replace every `coone` by `(one + id) ; cap`.
pub fn eliminate_coone(c: &Circuit) -> Circuit {
    match c {
        Circuit::CoOne => Circuit::seq(Circuit::par(Circuit::One, Circuit::Id), cap()),
        Circuit::Seq(a, b) => Circuit::seq(eliminate_coone(a), eliminate_coone(b)),
        Circuit::Par(a, b) => Circuit::par(eliminate_coone(a), eliminate_coone(b)),
        g => g.clone(),
    }
}

/// Pull every `one` out to a fresh left port.
///
/// Returns `(d, k)` where `d : (k + n, m)` has no `one`, and plugging `k`
/// ones into its first `k` ports gives back `c`. Expects `coone`-free input.
fn extract_ones(c: &Circuit) -> Result<(Circuit, usize), SortError> {
    match c {
        Circuit::One => Ok((Circuit::Id, 1)),
        Circuit::Seq(a, b) => {
            let n = a.sort()?.left;
            let (da, ka) = extract_ones(a)?;
            let (db, kb) = extract_ones(b)?;
            if ka + kb == 0 {
                return Ok((c.clone(), 0));
            }
            // (e_a, e_b, u) -> (e_b, e_a, u) -> (e_b, w) -> db
            let d = seq(seq(par(swap_block(ka, kb), ids(n)), par(ids(kb), da)), db);
            Ok((d, ka + kb))
        }
        Circuit::Par(a, b) => {
            let n1 = a.sort()?.left;
            let n2 = b.sort()?.left;
            let (da, ka) = extract_ones(a)?;
            let (db, kb) = extract_ones(b)?;
            if ka + kb == 0 {
                return Ok((c.clone(), 0));
            }
            // (e_a, e_b, u1, u2) -> (e_a, u1, e_b, u2)
            let wiring = par(ids(ka), par(swap_block(kb, n1), ids(n2)));
            Ok((seq(wiring, par(da, db)), ka + kb))
        }
        g => Ok((g.clone(), 0)),
    }
}

/// The linear circuit `ĉ : (n+1, m)` obtained by routing the unique `one`
/// of the single-`one` form to a new first left port.
///
/// `(one + id_n) ; hat(c)` is equivalent to `c`, and the result contains no
/// `one` or `coone`.
pub fn hat(c: &Circuit) -> Result<Circuit, SortError> {
    let n = c.sort()?.left;
    let c = eliminate_coone(c);
    let (d, k) = extract_ones(&c)?;
    if k == 0 {
        return Ok(par(Circuit::Discard, c));
    }
    Ok(seq(par(copies(k), ids(n)), d))
}

/// An equivalent circuit with exactly one `one` and no `coone`.
pub fn single_one_form(c: &Circuit) -> Result<Circuit, SortError> {
    let n = c.sort()?.left;
    let c = eliminate_coone(c);
    let (d, k) = extract_ones(&c)?;
    if k == 0 {
        return Ok(Circuit::par(
            c,
            Circuit::seq(Circuit::One, Circuit::Discard),
        ));
    }
    Ok(seq(par(seq(Circuit::One, copies(k)), ids(n)), d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Sort;

    fn ones(c: &Circuit) -> (usize, usize) {
        (
            c.count(&|g| *g == Circuit::One),
            c.count(&|g| *g == Circuit::CoOne),
        )
    }

    #[test]
    fn hat_of_one_is_id() {
        assert_eq!(hat(&Circuit::One).unwrap(), Circuit::Id);
    }

    #[test]
    fn hat_of_one_coreg_is_coreg() {
        let c = Circuit::seq(Circuit::One, Circuit::CoReg);
        assert_eq!(hat(&c).unwrap(), Circuit::CoReg);
    }

    #[test]
    fn single_one_counts() {
        let cases = [
            Circuit::Id,
            Circuit::CoOne,
            Circuit::par(Circuit::One, Circuit::One),
            Circuit::seq(Circuit::par(Circuit::One, Circuit::CoOne), Circuit::Reg),
        ];
        for c in cases {
            let s = single_one_form(&c).unwrap();
            assert_eq!(ones(&s), (1, 0), "{c}");
            assert_eq!(s.sort().unwrap(), c.sort().unwrap());
            let h = hat(&c).unwrap();
            assert_eq!(ones(&h), (0, 0));
            let sc = c.sort().unwrap();
            assert_eq!(h.sort().unwrap(), Sort::new(sc.left + 1, sc.right));
        }
    }

    #[test]
    fn two_ones_merge_through_copy() {
        let s = single_one_form(&Circuit::par(Circuit::One, Circuit::One)).unwrap();
        assert_eq!(s, Circuit::seq(Circuit::One, Circuit::Copy));
    }
}
