use std::fmt;

use crate::algebra::Rational;

/// A circuit term. Terms are plain trees: no symmetric monoidal quotient is
/// applied, and semantic equality always goes through the denotation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Circuit {
    Copy,
    Discard,
    Add,
    Zero,
    Scalar(Rational),
    Reg,
    One,
    CoCopy,
    CoDiscard,
    CoAdd,
    CoZero,
    CoScalar(Rational),
    CoReg,
    CoOne,
    Id,
    Sym,
    Empty,
    Seq(Box<Circuit>, Box<Circuit>),
    Par(Box<Circuit>, Box<Circuit>),
}

/// Numbers of left and right boundary ports.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize)]
pub struct Sort {
    pub left: usize,
    pub right: usize,
}

impl Sort {
    pub const fn new(left: usize, right: usize) -> Sort {
        Sort { left, right }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("sort error in `{subterm}`: right arity {left_has} of the first component does not match left arity {right_wants} of the second")]
pub struct SortError {
    pub subterm: String,
    pub left_has: usize,
    pub right_wants: usize,
}

impl Circuit {
    pub fn seq(a: Circuit, b: Circuit) -> Circuit {
        Circuit::Seq(Box::new(a), Box::new(b))
    }

    pub fn par(a: Circuit, b: Circuit) -> Circuit {
        Circuit::Par(Box::new(a), Box::new(b))
    }

    pub fn scalar(r: impl Into<Rational>) -> Circuit {
        Circuit::Scalar(r.into())
    }

    pub fn coscalar(r: impl Into<Rational>) -> Circuit {
        Circuit::CoScalar(r.into())
    }

    /// Sort of a generator or structural constant; `None` for `Seq`/`Par`.
    pub fn generator_sort(&self) -> Option<Sort> {
        use Circuit::*;
        let s = match self {
            Copy => Sort::new(1, 2),
            Discard => Sort::new(1, 0),
            Add => Sort::new(2, 1),
            Zero | One => Sort::new(0, 1),
            Scalar(_) | Reg | CoScalar(_) | CoReg | Id => Sort::new(1, 1),
            CoCopy => Sort::new(2, 1),
            CoDiscard => Sort::new(0, 1),
            CoAdd => Sort::new(1, 2),
            CoZero | CoOne => Sort::new(1, 0),
            Sym => Sort::new(2, 2),
            Empty => Sort::new(0, 0),
            Seq(..) | Par(..) => return None,
        };
        Some(s)
    }

    /// Infer the sort by the composition rules: `c ; d` needs the right arity
    /// of `c` to equal the left arity of `d`, and `c + d` adds arities.
    pub fn sort(&self) -> Result<Sort, SortError> {
        match self {
            Circuit::Seq(a, b) => {
                let sa = a.sort()?;
                let sb = b.sort()?;
                if sa.right != sb.left {
                    return Err(SortError {
                        subterm: self.to_string(),
                        left_has: sa.right,
                        right_wants: sb.left,
                    });
                }
                Ok(Sort::new(sa.left, sb.right))
            }
            Circuit::Par(a, b) => {
                let sa = a.sort()?;
                let sb = b.sort()?;
                Ok(Sort::new(sa.left + sb.left, sa.right + sb.right))
            }
            g => Ok(g.generator_sort().expect("leaf")),
        }
    }

    /// Mirror image: every generator swaps with its co-generator and
    /// sequential composition is reversed.
    pub fn mirror(&self) -> Circuit {
        use Circuit::*;
        match self {
            Copy => CoCopy,
            CoCopy => Copy,
            Discard => CoDiscard,
            CoDiscard => Discard,
            Add => CoAdd,
            CoAdd => Add,
            Zero => CoZero,
            CoZero => Zero,
            Scalar(r) => CoScalar(r.clone()),
            CoScalar(r) => Scalar(r.clone()),
            Reg => CoReg,
            CoReg => Reg,
            One => CoOne,
            CoOne => One,
            Id => Id,
            Sym => Sym,
            Empty => Empty,
            Seq(a, b) => Circuit::seq(b.mirror(), a.mirror()),
            Par(a, b) => Circuit::par(a.mirror(), b.mirror()),
        }
    }

    /// Number of nodes satisfying `pred`.
    pub fn count(&self, pred: &impl Fn(&Circuit) -> bool) -> usize {
        let here = usize::from(pred(self));
        match self {
            Circuit::Seq(a, b) | Circuit::Par(a, b) => here + a.count(pred) + b.count(pred),
            _ => here,
        }
    }

    pub fn registers(&self) -> usize {
        self.count(&|c| matches!(c, Circuit::Reg | Circuit::CoReg))
    }

    pub fn size(&self) -> usize {
        self.count(&|c| !matches!(c, Circuit::Seq(..) | Circuit::Par(..)))
    }

    /// True when no `one` or `coone` occurs.
    pub fn is_linear(&self) -> bool {
        self.count(&|c| matches!(c, Circuit::One | Circuit::CoOne)) == 0
    }
}
