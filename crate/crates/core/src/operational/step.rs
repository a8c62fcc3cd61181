use std::sync::Arc;

use crate::algebra::{Field, Rational};
use crate::denotational::AffineRelation;
use crate::linalg;
use crate::syntax::{Circuit, SortError};

use super::netlist::{compile, Netlist};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OpError {
    #[error(transparent)]
    Sort(#[from] SortError),
    #[error("scalar {0} has no image in the chosen field")]
    Scalar(Rational),
    #[error("expected {left} left and {right} right values, got {got_left} and {got_right}")]
    Arity {
        left: usize,
        right: usize,
        got_left: usize,
        got_right: usize,
    },
    #[error("expected {expected} register values, got {got}")]
    Registers { expected: usize, got: usize },
}

/// A netlist together with its scalars mapped into the field `K`.
#[derive(Debug)]
pub struct Machine<K> {
    pub netlist: Netlist,
    scalars: Vec<Option<K>>,
}

impl<K: Field> Machine<K> {
    pub fn new(netlist: Netlist) -> Result<Self, OpError> {
        let scalars = netlist
            .gates
            .iter()
            .map(|g| match &g.kind {
                Circuit::Scalar(r) | Circuit::CoScalar(r) => K::from_rational(r)
                    .map(Some)
                    .ok_or_else(|| OpError::Scalar(r.clone())),
                _ => Ok(None),
            })
            .collect::<Result<_, _>>()?;
        Ok(Machine { netlist, scalars })
    }

    pub fn compile(c: &Circuit) -> Result<Arc<Self>, OpError> {
        Ok(Arc::new(Self::new(compile(c)?)?))
    }

    pub fn registers(&self) -> usize {
        self.netlist.registers
    }

    pub fn left(&self) -> usize {
        self.netlist.inputs.len()
    }

    pub fn right(&self) -> usize {
        self.netlist.outputs.len()
    }

    fn check_boundary(&self, left: Option<&[K]>, right: Option<&[K]>) -> Result<(), OpError> {
        let got_left = left.map_or(self.left(), <[K]>::len);
        let got_right = right.map_or(self.right(), <[K]>::len);
        if got_left != self.left() || got_right != self.right() {
            return Err(OpError::Arity {
                left: self.left(),
                right: self.right(),
                got_left,
                got_right,
            });
        }
        Ok(())
    }

    /// Constraint system of one tick over `[s | wires | s']`, where `s` holds
    /// the current register contents and `s'` the next ones.
    fn tick_rows(
        &self,
        clock: i64,
        registers: Option<&[K]>,
        left: Option<&[K]>,
        right: Option<&[K]>,
    ) -> (Vec<Vec<K>>, usize) {
        let r = self.registers();
        let nw = self.netlist.wires;
        let ncols = 2 * r + nw;
        let wire = |w: usize| r + w;
        let next = |s: usize| r + nw + s;
        let mut rows = Vec::new();
        let mut eq = |terms: &[(usize, K)], rhs: K| {
            let mut row = vec![K::zero(); ncols + 1];
            for (col, c) in terms {
                row[*col] = row[*col].clone() + c.clone();
            }
            row[ncols] = rhs;
            rows.push(row);
        };
        let one = K::one;
        let neg = || -K::one();
        let pulse = || if clock == 0 { K::one() } else { K::zero() };
        for (gate, scalar) in self.netlist.gates.iter().zip(&self.scalars) {
            let (l, rt) = (&gate.left, &gate.right);
            match &gate.kind {
                Circuit::Copy => {
                    eq(&[(wire(rt[0]), one()), (wire(l[0]), neg())], K::zero());
                    eq(&[(wire(rt[1]), one()), (wire(l[0]), neg())], K::zero());
                }
                Circuit::CoCopy => {
                    eq(&[(wire(l[0]), one()), (wire(rt[0]), neg())], K::zero());
                    eq(&[(wire(l[1]), one()), (wire(rt[0]), neg())], K::zero());
                }
                Circuit::Add => eq(
                    &[
                        (wire(rt[0]), one()),
                        (wire(l[0]), neg()),
                        (wire(l[1]), neg()),
                    ],
                    K::zero(),
                ),
                Circuit::CoAdd => eq(
                    &[
                        (wire(l[0]), one()),
                        (wire(rt[0]), neg()),
                        (wire(rt[1]), neg()),
                    ],
                    K::zero(),
                ),
                Circuit::Discard | Circuit::CoDiscard | Circuit::Empty => {}
                Circuit::Zero => eq(&[(wire(rt[0]), one())], K::zero()),
                Circuit::CoZero => eq(&[(wire(l[0]), one())], K::zero()),
                Circuit::One => eq(&[(wire(rt[0]), one())], pulse()),
                Circuit::CoOne => eq(&[(wire(l[0]), one())], pulse()),
                Circuit::Scalar(_) => {
                    let k = scalar.clone().expect("converted");
                    eq(&[(wire(rt[0]), one()), (wire(l[0]), -k)], K::zero());
                }
                Circuit::CoScalar(_) => {
                    let k = scalar.clone().expect("converted");
                    eq(&[(wire(l[0]), one()), (wire(rt[0]), -k)], K::zero());
                }
                Circuit::Reg | Circuit::CoReg => {
                    let s = gate.slot.expect("register slot");
                    let (emit, take) = if gate.kind == Circuit::Reg {
                        (rt[0], l[0])
                    } else {
                        (l[0], rt[0])
                    };
                    eq(&[(wire(emit), one()), (s, neg())], K::zero());
                    eq(&[(next(s), one()), (wire(take), neg())], K::zero());
                }
                Circuit::Id => eq(&[(wire(rt[0]), one()), (wire(l[0]), neg())], K::zero()),
                Circuit::Sym => {
                    eq(&[(wire(rt[0]), one()), (wire(l[1]), neg())], K::zero());
                    eq(&[(wire(rt[1]), one()), (wire(l[0]), neg())], K::zero());
                }
                Circuit::Seq(..) | Circuit::Par(..) => unreachable!("netlists hold generators"),
            }
        }
        if let Some(regs) = registers {
            for (s, v) in regs.iter().enumerate() {
                eq(&[(s, one())], v.clone());
            }
        }
        if let Some(vals) = left {
            for (&w, v) in self.netlist.inputs.iter().zip(vals) {
                eq(&[(wire(w), one())], v.clone());
            }
        }
        if let Some(vals) = right {
            for (&w, v) in self.netlist.outputs.iter().zip(vals) {
                eq(&[(wire(w), one())], v.clone());
            }
        }
        (rows, ncols)
    }

    /// Project the tick system onto the listed columns, as a relation of sort `(left, right)`.
    fn project(
        rows: Vec<Vec<K>>,
        ncols: usize,
        keep_left: &[usize],
        keep_right: &[usize],
    ) -> AffineRelation<K> {
        let kept: Vec<usize> = keep_left.iter().chain(keep_right).copied().collect();
        let mut order: Vec<usize> = (0..ncols).filter(|c| !kept.contains(c)).collect();
        let hidden = order.len();
        order.extend(&kept);
        let permuted = rows
            .into_iter()
            .map(|row| {
                order
                    .iter()
                    .map(|&c| row[c].clone())
                    .chain(std::iter::once(row[ncols].clone()))
                    .collect()
            })
            .collect();
        match linalg::eliminate_leading(permuted, hidden, ncols) {
            Ok(rows) => AffineRelation::from_constraints(keep_left.len(), keep_right.len(), rows)
                .expect("projected rows have the kept width"),
            Err(_) => AffineRelation::empty(keep_left.len(), keep_right.len()),
        }
    }

    fn next_columns(&self) -> Vec<usize> {
        let (r, nw) = (self.registers(), self.netlist.wires);
        (r + nw..2 * r + nw).collect()
    }

    /// Possible next register contents from `registers` with both boundaries fixed,
    /// as a relation of sort `(0, R)`.
    pub fn successors(
        &self,
        clock: i64,
        registers: &[K],
        left: &[K],
        right: &[K],
    ) -> Result<AffineRelation<K>, OpError> {
        self.check_registers(registers)?;
        self.check_boundary(Some(left), Some(right))?;
        let (rows, ncols) = self.tick_rows(clock, Some(registers), Some(left), Some(right));
        Ok(Self::project(rows, ncols, &[], &self.next_columns()))
    }

    /// Possible `(right values, next registers)` when only the left boundary
    /// is fixed, as a relation of sort `(0, m + R)`.
    pub fn open_successors(
        &self,
        clock: i64,
        registers: &[K],
        left: &[K],
    ) -> Result<AffineRelation<K>, OpError> {
        self.check_registers(registers)?;
        self.check_boundary(Some(left), None)?;
        let (rows, ncols) = self.tick_rows(clock, Some(registers), Some(left), None);
        let r = self.registers();
        let mut keep: Vec<usize> = self.netlist.outputs.iter().map(|&w| r + w).collect();
        keep.extend(self.next_columns());
        Ok(Self::project(rows, ncols, &[], &keep))
    }

    /// The one-tick transition `{(s, s')}` with both boundaries fixed, of sort `(R, R)`.
    pub fn transition(
        &self,
        clock: i64,
        left: &[K],
        right: &[K],
    ) -> Result<AffineRelation<K>, OpError> {
        self.check_boundary(Some(left), Some(right))?;
        let (rows, ncols) = self.tick_rows(clock, None, Some(left), Some(right));
        let current: Vec<usize> = (0..self.registers()).collect();
        Ok(Self::project(rows, ncols, &current, &self.next_columns()))
    }

    /// The one-tick transition `{(s, (right, s'))}` with only the left boundary
    /// fixed, of sort `(R, m + R)`.
    pub fn open_transition(&self, clock: i64, left: &[K]) -> Result<AffineRelation<K>, OpError> {
        self.check_boundary(Some(left), None)?;
        let (rows, ncols) = self.tick_rows(clock, None, Some(left), None);
        let r = self.registers();
        let current: Vec<usize> = (0..r).collect();
        let mut keep: Vec<usize> = self.netlist.outputs.iter().map(|&w| r + w).collect();
        keep.extend(self.next_columns());
        Ok(Self::project(rows, ncols, &current, &keep))
    }

    fn check_registers(&self, registers: &[K]) -> Result<(), OpError> {
        if registers.len() != self.registers() {
            return Err(OpError::Registers {
                expected: self.registers(),
                got: registers.len(),
            });
        }
        Ok(())
    }
}

/// A compiled circuit with its register contents at a given clock.
#[derive(Debug, Clone)]
pub struct NetState<K> {
    pub machine: Arc<Machine<K>>,
    pub registers: Vec<K>,
    pub clock: i64,
}

/// Outcome of one tick with both boundaries fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepResult<K> {
    Infeasible,
    /// The next register contents are determined.
    Unique(Vec<K>),
    /// Several successors; the relation of sort `(0, R)` lists them all.
    Ambiguous(AffineRelation<K>),
}

impl<K: Field> StepResult<K> {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, StepResult::Infeasible)
    }
}

impl<K: Field> NetState<K> {
    /// The initial state: every register holds zero.
    pub fn initial(machine: Arc<Machine<K>>, clock: i64) -> Self {
        let registers = vec![K::zero(); machine.registers()];
        NetState {
            machine,
            registers,
            clock,
        }
    }

    pub fn compile(c: &Circuit, clock: i64) -> Result<Self, OpError> {
        Ok(Self::initial(Machine::compile(c)?, clock))
    }

    /// The state one tick later holding `registers`.
    pub fn advance(&self, registers: Vec<K>) -> Self {
        NetState {
            machine: Arc::clone(&self.machine),
            registers,
            clock: self.clock + 1,
        }
    }
}

/// One tick from `s` with the given boundary values.
pub fn step<K: Field>(s: &NetState<K>, left: &[K], right: &[K]) -> Result<StepResult<K>, OpError> {
    let space = s.machine.successors(s.clock, &s.registers, left, right)?;
    Ok(if space.is_empty() {
        StepResult::Infeasible
    } else if let Some(p) = space.point() {
        StepResult::Unique(p)
    } else {
        StepResult::Ambiguous(space)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn state(src: &str, clock: i64) -> NetState<Rational> {
        NetState::compile(&parse(src).unwrap(), clock).unwrap()
    }

    #[test]
    fn register_stores_its_input() {
        let mut s = state("reg", 0);
        s.registers = vec![q(7)];
        assert_eq!(
            step(&s, &[q(3)], &[q(7)]).unwrap(),
            StepResult::Unique(vec![q(3)])
        );
        assert_eq!(step(&s, &[q(3)], &[q(3)]).unwrap(), StepResult::Infeasible);
        let mut s = state("coreg", 0);
        s.registers = vec![q(7)];
        assert_eq!(
            step(&s, &[q(7)], &[q(3)]).unwrap(),
            StepResult::Unique(vec![q(3)])
        );
    }

    #[test]
    fn one_fires_at_zero_only() {
        let s = state("one", 0);
        assert_eq!(step(&s, &[], &[q(1)]).unwrap(), StepResult::Unique(vec![]));
        let s = state("one", 1);
        assert_eq!(step(&s, &[], &[q(1)]).unwrap(), StepResult::Infeasible);
    }

    #[test]
    fn one_cozero_has_no_step_at_zero() {
        assert_eq!(
            step(&state("one ; cozero", 0), &[], &[]).unwrap(),
            StepResult::Infeasible
        );
        assert!(step(&state("one ; cozero", -3), &[], &[])
            .unwrap()
            .is_feasible());
    }

    #[test]
    fn mirrored_register_choice_is_ambiguous() {
        let s = state("codiscard ; coreg ; discard", 0);
        match step(&s, &[], &[]).unwrap() {
            StepResult::Ambiguous(space) => assert_eq!(space.dimension(), Some(1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn arity_is_checked() {
        assert!(step(&state("id", 0), &[], &[q(1)]).is_err());
    }
}
