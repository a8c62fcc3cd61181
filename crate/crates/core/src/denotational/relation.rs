use std::fmt;

use serde::Serialize;

use crate::algebra::Field;
use crate::linalg::{self, Inconsistent};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArityError {
    #[error("cannot compose a relation with {left_has} right ports and one with {right_wants} left ports")]
    Compose { left_has: usize, right_wants: usize },
    #[error("relation of sort ({left}, {right}) needs vectors of lengths {left} and {right}, got {got_left} and {got_right}")]
    Vector {
        left: usize,
        right: usize,
        got_left: usize,
        got_right: usize,
    },
    #[error("relations of sorts ({0}, {1}) and ({2}, {3}) cannot be compared")]
    Mismatch(usize, usize, usize, usize),
    #[error("constraint row has width {got}, expected {expected}")]
    Row { got: usize, expected: usize },
}

/// An affine subspace of `F^n × F^m`, read as a relation from left to right
/// port values.
///
/// Nonempty relations are kept as a system `A·(l, r) = b` in reduced
/// row-echelon form without zero rows, which is unique for the subspace, so
/// structural equality is set equality. The empty set has its own tag.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineRelation<F> {
    left: usize,
    right: usize,
    body: Body<F>,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Body<F> {
    Empty,
    /// Each row: `left + right` coefficients followed by the offset.
    Rows(Vec<Vec<F>>),
}

impl<F: Field> AffineRelation<F> {
    /// Canonicalise a constraint system; an inconsistent system gives the empty relation.
    pub fn from_constraints(
        left: usize,
        right: usize,
        mut rows: Vec<Vec<F>>,
    ) -> Result<Self, ArityError> {
        let width = left + right;
        if let Some(bad) = rows.iter().find(|r| r.len() != width + 1) {
            return Err(ArityError::Row {
                got: bad.len().saturating_sub(1),
                expected: width,
            });
        }
        let body = match linalg::rref(&mut rows, width) {
            Ok(_) => Body::Rows(rows),
            Err(Inconsistent) => Body::Empty,
        };
        Ok(AffineRelation { left, right, body })
    }

    pub(crate) fn from_rows_unchecked(left: usize, right: usize, rows: Vec<Vec<F>>) -> Self {
        Self::from_constraints(left, right, rows).expect("row widths are correct by construction")
    }

    pub fn empty(left: usize, right: usize) -> Self {
        AffineRelation {
            left,
            right,
            body: Body::Empty,
        }
    }

    /// All of `F^n × F^m`.
    pub fn full(left: usize, right: usize) -> Self {
        AffineRelation {
            left,
            right,
            body: Body::Rows(Vec::new()),
        }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut row = vec![F::zero(); 2 * n + 1];
                row[i] = F::one();
                row[n + i] = -F::one();
                row
            })
            .collect();
        Self::from_rows_unchecked(n, n, rows)
    }

    /// The graph `{(u, A·u + b)}` of an affine map.
    pub fn graph(map: &AffineMap<F>) -> Self {
        let (n, m) = (map.inputs, map.b.len());
        let rows = (0..m)
            .map(|i| {
                let mut row = vec![F::zero(); n + m + 1];
                for (x, a) in row.iter_mut().zip(&map.a[i]) {
                    *x = -a.clone();
                }
                row[n + i] = F::one();
                row[n + m] = map.b[i].clone();
                row
            })
            .collect();
        Self::from_rows_unchecked(n, m, rows)
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.body, Body::Empty)
    }

    /// Canonical rows, `None` for the empty relation.
    pub fn rows(&self) -> Option<&[Vec<F>]> {
        match &self.body {
            Body::Empty => None,
            Body::Rows(r) => Some(r),
        }
    }

    fn pivots(rows: &[Vec<F>]) -> Vec<usize> {
        rows.iter()
            .map(|r| r.iter().position(|c| !c.is_zero()).expect("no zero rows"))
            .collect()
    }

    /// Dimension of the subspace, `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.rows().map(|r| self.left + self.right - r.len())
    }

    /// The unique point of a zero-dimensional relation.
    pub fn point(&self) -> Option<Vec<F>> {
        let rows = self.rows()?;
        if rows.len() != self.left + self.right {
            return None;
        }
        Some(
            rows.iter()
                .map(|r| r[self.left + self.right].clone())
                .collect(),
        )
    }

    /// Solution with every free coordinate set to zero, over `(l, r)`.
    pub fn particular_solution(&self) -> Option<Vec<F>> {
        let rows = self.rows()?;
        let pivots = Self::pivots(rows);
        Some(linalg::particular_solution(
            rows,
            &pivots,
            self.left + self.right,
        ))
    }

    /// Basis of the direction space, one vector per free coordinate.
    pub fn direction_basis(&self) -> Option<Vec<Vec<F>>> {
        let rows = self.rows()?;
        let pivots = Self::pivots(rows);
        Some(linalg::kernel_basis(rows, &pivots, self.left + self.right))
    }

    /// Membership of a concatenated point `(l, r)`.
    pub fn contains_point(&self, z: &[F]) -> bool {
        assert_eq!(
            z.len(),
            self.left + self.right,
            "point has the wrong length"
        );
        match &self.body {
            Body::Empty => false,
            Body::Rows(rows) => rows.iter().all(|row| linalg::residual(row, z).is_zero()),
        }
    }

    pub fn contains(&self, u: &[F], v: &[F]) -> Result<bool, ArityError> {
        if u.len() != self.left || v.len() != self.right {
            return Err(ArityError::Vector {
                left: self.left,
                right: self.right,
                got_left: u.len(),
                got_right: v.len(),
            });
        }
        let z: Vec<F> = u.iter().chain(v).cloned().collect();
        Ok(self.contains_point(&z))
    }

    /// First canonical row violated by the point, if any.
    pub fn violated_row(&self, z: &[F]) -> Option<usize> {
        self.rows()?
            .iter()
            .position(|row| !linalg::residual(row, z).is_zero())
    }

    /// Relational composition `{(u, w) | ∃v. (u, v) ∈ self, (v, w) ∈ other}`.
    pub fn compose(&self, other: &Self) -> Result<Self, ArityError> {
        if self.right != other.left {
            return Err(ArityError::Compose {
                left_has: self.right,
                right_wants: other.left,
            });
        }
        let (n, m, l) = (self.left, self.right, other.right);
        let (Body::Rows(g), Body::Rows(h)) = (&self.body, &other.body) else {
            return Ok(Self::empty(n, l));
        };
        // columns: v (shared), u, w
        let ncols = m + n + l;
        let mut rows = Vec::with_capacity(g.len() + h.len());
        for row in g {
            let mut out = vec![F::zero(); ncols + 1];
            out[m..m + n].clone_from_slice(&row[..n]);
            out[..m].clone_from_slice(&row[n..n + m]);
            out[ncols] = row[n + m].clone();
            rows.push(out);
        }
        for row in h {
            let mut out = vec![F::zero(); ncols + 1];
            out[..m].clone_from_slice(&row[..m]);
            out[m + n..ncols].clone_from_slice(&row[m..m + l]);
            out[ncols] = row[m + l].clone();
            rows.push(out);
        }
        Ok(match linalg::eliminate_leading(rows, m, ncols) {
            Ok(kept) => Self::from_rows_unchecked(n, l, kept),
            Err(Inconsistent) => Self::empty(n, l),
        })
    }

    /// Monoidal product, with coordinates ordered `(l₁, l₂, r₁, r₂)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (n1, m1, n2, m2) = (self.left, self.right, other.left, other.right);
        let (n, m) = (n1 + n2, m1 + m2);
        let (Body::Rows(g), Body::Rows(h)) = (&self.body, &other.body) else {
            return Self::empty(n, m);
        };
        let width = n + m;
        let mut rows = Vec::with_capacity(g.len() + h.len());
        for row in g {
            let mut out = vec![F::zero(); width + 1];
            out[..n1].clone_from_slice(&row[..n1]);
            out[n..n + m1].clone_from_slice(&row[n1..n1 + m1]);
            out[width] = row[n1 + m1].clone();
            rows.push(out);
        }
        for row in h {
            let mut out = vec![F::zero(); width + 1];
            out[n1..n].clone_from_slice(&row[..n2]);
            out[n + m1..width].clone_from_slice(&row[n2..n2 + m2]);
            out[width] = row[n2 + m2].clone();
            rows.push(out);
        }
        Self::from_rows_unchecked(n, m, rows)
    }

    /// The converse relation `{(v, u) | (u, v) ∈ self}`.
    pub fn converse(&self) -> Self {
        let order: Vec<usize> = (self.left..self.left + self.right)
            .chain(0..self.left)
            .collect();
        self.reindex(self.right, self.left, &order)
    }

    /// Reorder coordinates: new coordinate `k` is old coordinate `order[k]`.
    /// The first `left` new coordinates are the left ports.
    pub fn reindex(&self, left: usize, right: usize, order: &[usize]) -> Self {
        let width = self.left + self.right;
        assert_eq!(left + right, width, "reindexing must keep every coordinate");
        assert_eq!(order.len(), width, "order must list every coordinate");
        let Body::Rows(rows) = &self.body else {
            return Self::empty(left, right);
        };
        let rows = rows
            .iter()
            .map(|row| {
                order
                    .iter()
                    .map(|&old| row[old].clone())
                    .chain(std::iter::once(row[width].clone()))
                    .collect()
            })
            .collect();
        Self::from_rows_unchecked(left, right, rows)
    }

    pub fn same_sort(&self, other: &Self) -> Result<(), ArityError> {
        if self.left == other.left && self.right == other.right {
            Ok(())
        } else {
            Err(ArityError::Mismatch(
                self.left,
                self.right,
                other.left,
                other.right,
            ))
        }
    }

    /// Read the relation as a function of its left ports, if it is one.
    pub fn to_affine_map(&self) -> Option<AffineMap<F>> {
        let (n, m) = (self.left, self.right);
        // right variables first
        let order: Vec<usize> = (n..n + m).chain(0..n).collect();
        let swapped = self.reindex(m, n, &order);
        let rows = swapped.rows()?;
        if rows.len() != m {
            return None;
        }
        let pivots = Self::pivots(rows);
        if pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let a = rows
            .iter()
            .map(|row| row[m..m + n].iter().map(|c| -c.clone()).collect())
            .collect();
        let b = rows.iter().map(|row| row[m + n].clone()).collect();
        Some(AffineMap { inputs: n, a, b })
    }
}

/// `u ↦ A·u + b` with `A` of size `m × n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineMap<F> {
    pub inputs: usize,
    pub a: Vec<Vec<F>>,
    pub b: Vec<F>,
}

impl<F: Field> AffineMap<F> {
    pub fn outputs(&self) -> usize {
        self.b.len()
    }

    pub fn apply(&self, u: &[F]) -> Vec<F> {
        assert_eq!(u.len(), self.inputs);
        self.a
            .iter()
            .zip(&self.b)
            .map(|(row, b)| {
                row.iter()
                    .zip(u)
                    .fold(b.clone(), |acc, (a, x)| acc + a.clone() * x.clone())
            })
            .collect()
    }

    pub fn is_linear(&self) -> bool {
        self.b.iter().all(Field::is_zero)
    }
}

impl<F: Field> fmt::Display for AffineMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_empty() {
            return write!(f, "(no outputs)");
        }
        for (i, (row, b)) in self.a.iter().zip(&self.b).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "o{} = ", i + 1)?;
            let mut terms: Vec<String> = row
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| term(c, &format!("i{}", j + 1)))
                .collect();
            if !b.is_zero() || terms.is_empty() {
                terms.push(paren(b));
            }
            write!(f, "{}", terms.join(" + "))?;
        }
        Ok(())
    }
}

fn paren<F: fmt::Display>(c: &F) -> String {
    let s = c.to_string();
    if s.contains([' ', '/']) {
        format!("({s})")
    } else {
        s
    }
}

fn term<F: Field>(c: &F, var: &str) -> String {
    if c.is_one() {
        var.to_string()
    } else if (-c.clone()).is_one() {
        format!("-{var}")
    } else {
        format!("{}·{var}", paren(c))
    }
}

/// Machine-readable form of a relation.
#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct RelationRecord {
    pub left: usize,
    pub right: usize,
    pub empty: bool,
    pub rows: Vec<RowRecord>,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct RowRecord {
    pub coeffs: Vec<String>,
    pub rhs: String,
}

impl<F: Field> AffineRelation<F> {
    pub fn to_record(&self) -> RelationRecord {
        let width = self.left + self.right;
        RelationRecord {
            left: self.left,
            right: self.right,
            empty: self.is_empty(),
            rows: self
                .rows()
                .unwrap_or_default()
                .iter()
                .map(|row| RowRecord {
                    coeffs: row[..width].iter().map(ToString::to_string).collect(),
                    rhs: row[width].to_string(),
                })
                .collect(),
        }
    }
}

/// Split a coefficient into a sign and a printable magnitude.
fn signed<F: Field>(c: &F) -> (bool, String) {
    let s = c.to_string();
    match s.strip_prefix('-') {
        Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
        _ => (false, s),
    }
}

fn magnitude_term(mag: &str, var: &str) -> String {
    if mag == "1" {
        var.to_string()
    } else if mag.contains([' ', '/']) {
        format!("({mag})·{var}")
    } else {
        format!("{mag}·{var}")
    }
}

/// Aligned constraint system over `l1…ln, r1…rm`, one equation per line.
impl<F: Field> fmt::Display for AffineRelation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = match &self.body {
            Body::Empty => return write!(f, "empty relation ({}, {})", self.left, self.right),
            Body::Rows(rows) if rows.is_empty() => {
                return write!(f, "all of ({}, {}): no constraints", self.left, self.right)
            }
            Body::Rows(rows) => rows,
        };
        let width = self.left + self.right;
        let names: Vec<String> = (0..self.left)
            .map(|i| format!("l{}", i + 1))
            .chain((0..self.right).map(|j| format!("r{}", j + 1)))
            .collect();
        // cell = (negative, term text)
        let cells: Vec<Vec<Option<(bool, String)>>> = rows
            .iter()
            .map(|row| {
                (0..width)
                    .map(|k| {
                        (!row[k].is_zero()).then(|| {
                            let (neg, mag) = signed(&row[k]);
                            (neg, magnitude_term(&mag, &names[k]))
                        })
                    })
                    .collect()
            })
            .collect();
        let used: Vec<usize> = (0..width)
            .filter(|&k| cells.iter().any(|r| r[k].is_some()))
            .collect();
        let col_width: Vec<usize> = (0..width)
            .map(|k| {
                cells
                    .iter()
                    .filter_map(|r| r[k].as_ref().map(|(_, t)| t.chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let lines: Vec<String> = rows
            .iter()
            .zip(&cells)
            .map(|(row, cell)| {
                let mut line = String::new();
                let mut first = true;
                for &k in &used {
                    let w = col_width[k];
                    match &cell[k] {
                        None => line.push_str(&" ".repeat(w + 3)),
                        Some((neg, text)) => {
                            let sign = match (first, neg) {
                                (true, false) => "   ",
                                (true, true) => "  -",
                                (false, false) => " + ",
                                (false, true) => " - ",
                            };
                            line.push_str(sign);
                            line.push_str(&format!("{text:<w$}"));
                            first = false;
                        }
                    }
                }
                format!("{} = {}", line.trim_end(), row[width])
            })
            .collect();
        let indent = lines
            .iter()
            .map(|l| l.len() - l.trim_start().len())
            .min()
            .unwrap_or(0);
        let body: Vec<&str> = lines.iter().map(|l| &l[indent..]).collect();
        write!(f, "{}", body.join("\n"))
    }
}
