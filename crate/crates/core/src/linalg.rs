//! Gaussian elimination on augmented affine systems `A·z = b` over any field.
//!
//! A system is a list of rows; each row holds `ncols` coefficients followed by
//! the right-hand side.

use crate::algebra::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inconsistent;

/// Reduce `rows` to reduced row-echelon form in place and drop zero rows.
///
/// Returns the pivot columns (strictly increasing), or [`Inconsistent`] when
/// a row `0 = c` with `c ≠ 0` arises.
pub fn rref<F: Field>(rows: &mut Vec<Vec<F>>, ncols: usize) -> Result<Vec<usize>, Inconsistent> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for v in rows[r][col..].iter_mut() {
                *v = v.clone() * inv.clone();
            }
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                if !p.is_zero() {
                    *x = x.clone() - factor.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row[ncols].is_zero()) {
        return Err(Inconsistent);
    }
    rows.truncate(r);
    Ok(pivots)
}

/// Project the solution set onto the columns `k..ncols`.
///
/// Runs [`rref`] with the first `k` columns leftmost and keeps exactly the
/// rows whose coefficients on those columns vanish; the kept rows are
/// returned with the first `k` columns stripped. Over a field this is the
/// projection of the affine solution space.
pub fn eliminate_leading<F: Field>(
    mut rows: Vec<Vec<F>>,
    k: usize,
    ncols: usize,
) -> Result<Vec<Vec<F>>, Inconsistent> {
    let pivots = rref(&mut rows, ncols)?;
    let first_kept = pivots.iter().position(|&p| p >= k).unwrap_or(pivots.len());
    Ok(rows
        .drain(first_kept..)
        .map(|row| row[k..].to_vec())
        .collect())
}

/// A solution of a consistent RREF system with every free variable set to zero.
pub fn particular_solution<F: Field>(rows: &[Vec<F>], pivots: &[usize], ncols: usize) -> Vec<F> {
    let mut z = vec![F::zero(); ncols];
    for (row, &p) in rows.iter().zip(pivots) {
        z[p] = row[ncols].clone();
    }
    z
}

/// Basis of the homogeneous solution space of an RREF system, one vector per
/// free column in increasing column order.
pub fn kernel_basis<F: Field>(rows: &[Vec<F>], pivots: &[usize], ncols: usize) -> Vec<Vec<F>> {
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut z = vec![F::zero(); ncols];
        z[free] = F::one();
        for (row, &p) in rows.iter().zip(pivots) {
            z[p] = -row[free].clone();
        }
        basis.push(z);
    }
    basis
}

/// Evaluate `Σ row[i]·z[i] − rhs`.
pub fn residual<F: Field>(row: &[F], z: &[F]) -> F {
    let n = z.len();
    let mut acc = -row[n].clone();
    for (a, v) in row[..n].iter().zip(z) {
        if !a.is_zero() && !v.is_zero() {
            acc = acc + a.clone() * v.clone();
        }
    }
    acc
}
