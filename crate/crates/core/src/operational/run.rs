use std::fmt;
use std::sync::Arc;

use crate::algebra::{laurent_expand, Field, LaurentWindow, RatFunc, Rational};
use crate::denotational::{dsem, extract_affine_map, AffineRelation, DenotationError};
use crate::syntax::Circuit;

use super::step::{step, Machine, NetState, OpError, StepResult};

/// Boundary values from `start` onwards; earlier clocks are implicitly zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trajectory<K> {
    pub start: i64,
    pub steps: Vec<(Vec<K>, Vec<K>)>,
}

impl<K: Field> Trajectory<K> {
    pub fn end(&self) -> i64 {
        self.start + self.steps.len() as i64
    }

    /// Values at clock `t`, zero outside the recorded window before `start`.
    pub fn at(&self, t: i64, left: usize, right: usize) -> (Vec<K>, Vec<K>) {
        if t < self.start || t >= self.end() {
            (vec![K::zero(); left], vec![K::zero(); right])
        } else {
            self.steps[(t - self.start) as usize].clone()
        }
    }

    pub fn lefts(&self, port: usize) -> Vec<K> {
        self.steps.iter().map(|(l, _)| l[port].clone()).collect()
    }

    pub fn rights(&self, port: usize) -> Vec<K> {
        self.steps.iter().map(|(_, r)| r[port].clone()).collect()
    }
}

fn list<K: fmt::Display>(v: &[K]) -> String {
    let items: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(", "))
}

impl<K: Field> fmt::Display for Trajectory<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (l, r)) in self.steps.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {} | {}", self.start + i as i64, list(l), list(r))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RunError {
    #[error("stuck: no transition at clock {0}")]
    Stuck(i64),
    #[error("ambiguous: the run is not determined at clock {0}")]
    AmbiguousAt(i64),
    #[error("the denotation is not a function of the left ports")]
    NotFunctional,
    #[error("start clock {0} is positive")]
    StartAfterZero(i64),
    #[error(transparent)]
    Op(#[from] OpError),
    #[error(transparent)]
    Denotation(#[from] DenotationError),
}

fn check_start(start: i64) -> Result<(), RunError> {
    if start > 0 {
        Err(RunError::StartAfterZero(start))
    } else {
        Ok(())
    }
}

/// Run from the initial state at `start`, one tick per boundary pair.
///
/// Every tick must have a unique successor; mirrored generators that leave
/// the next state open are reported rather than resolved.
pub fn run<K: Field>(
    c: &Circuit,
    start: i64,
    ticks: &[(Vec<K>, Vec<K>)],
) -> Result<Trajectory<K>, RunError> {
    check_start(start)?;
    let mut s = NetState::<K>::compile(c, start)?;
    for (l, r) in ticks {
        match step(&s, l, r)? {
            StepResult::Infeasible => return Err(RunError::Stuck(s.clock)),
            StepResult::Ambiguous(_) => return Err(RunError::AmbiguousAt(s.clock)),
            StepResult::Unique(next) => s = s.advance(next),
        }
    }
    Ok(Trajectory {
        start,
        steps: ticks.to_vec(),
    })
}

/// Tracks every register assignment reachable under the boundary values
/// seen so far, as an affine set.
#[derive(Debug, Clone)]
pub struct ReachableSet<K> {
    pub machine: Arc<Machine<K>>,
    pub clock: i64,
    pub states: AffineRelation<K>,
}

impl<K: Field> ReachableSet<K> {
    pub fn initial(machine: Arc<Machine<K>>, clock: i64) -> Self {
        let r = machine.registers();
        let zero = NetState::initial(Arc::clone(&machine), clock).registers;
        let rows = zero
            .into_iter()
            .enumerate()
            .map(|(i, z)| {
                let mut row = vec![K::zero(); r + 1];
                row[i] = K::one();
                row[r] = z;
                row
            })
            .collect();
        let states = AffineRelation::from_constraints(0, r, rows).expect("widths match");
        ReachableSet {
            machine,
            clock,
            states,
        }
    }

    /// Take one tick; `false` when no reachable state admits it.
    pub fn advance(&mut self, left: &[K], right: &[K]) -> Result<bool, OpError> {
        let t = self.machine.transition(self.clock, left, right)?;
        self.states = self.states.compose(&t).expect("register counts agree");
        self.clock += 1;
        Ok(!self.states.is_empty())
    }
}

/// Run resolving every choice existentially: succeeds iff some sequence of
/// successor states accepts all the boundary values. Returns the final
/// reachable set.
pub fn run_existential<K: Field>(
    c: &Circuit,
    start: i64,
    ticks: &[(Vec<K>, Vec<K>)],
) -> Result<ReachableSet<K>, RunError> {
    check_start(start)?;
    let mut set = ReachableSet::initial(Machine::compile(c)?, start);
    for (l, r) in ticks {
        let clock = set.clock;
        if !set.advance(l, r)? {
            return Err(RunError::Stuck(clock));
        }
    }
    Ok(set)
}

/// Outcome of [`solve_run`]: the clocks whose right values are determined,
/// and why the run stops short of the window, if it does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvedRun<K> {
    pub trajectory: Trajectory<K>,
    pub failure: Option<RunError>,
}

/// Run with only the left boundary given, solving for the right values over
/// the whole window at once, so a choice forced by a later tick is resolved.
///
/// Stuck at the first clock after which no run exists; ambiguous at the first
/// clock whose right values the window leaves open.
pub fn solve_run<K: Field>(
    c: &Circuit,
    start: i64,
    lefts: &[Vec<K>],
) -> Result<SolvedRun<K>, RunError> {
    check_start(start)?;
    let machine = Machine::<K>::compile(c)?;
    let (m, r) = (machine.right(), machine.registers());
    let stopped = |failure, ticks: usize, values: &[K]| SolvedRun {
        trajectory: Trajectory {
            start,
            steps: (0..ticks)
                .map(|i| (lefts[i].clone(), values[i * m..(i + 1) * m].to_vec()))
                .collect(),
        },
        failure,
    };
    // (right values so far, current registers)
    let mut set = ReachableSet::initial(Arc::clone(&machine), start).states;
    for (i, left) in lefts.iter().enumerate() {
        let clock = start + i as i64;
        let tick = machine.open_transition(clock, left)?;
        let history = AffineRelation::identity(i * m);
        set = set.compose(&history.tensor(&tick)).expect("widths agree");
        if set.is_empty() {
            return Ok(stopped(Some(RunError::Stuck(clock)), 0, &[]));
        }
    }
    let width = lefts.len() * m;
    let outputs = set
        .compose(&AffineRelation::identity(width).tensor(&AffineRelation::full(r, 0)))
        .expect("widths agree");
    let values = outputs.particular_solution().expect("nonempty");
    let open = outputs
        .direction_basis()
        .expect("nonempty")
        .iter()
        .filter_map(|d| d.iter().position(|x| !x.is_zero()))
        .min();
    Ok(match open {
        Some(col) => {
            let ticks = col / m;
            stopped(
                Some(RunError::AmbiguousAt(start + ticks as i64)),
                ticks,
                &values,
            )
        }
        None => stopped(None, lefts.len(), &values),
    })
}

/// Drive a functional circuit with input streams and read its outputs.
///
/// All windows are aligned to the earliest input start (at most 0) and the
/// run covers `horizon` ticks from there. Only the left boundary is fixed;
/// each tick must determine the outputs and the next state.
pub fn run_function(
    c: &Circuit,
    inputs: &[LaurentWindow<Rational>],
    horizon: usize,
) -> Result<Vec<LaurentWindow<Rational>>, RunError> {
    if extract_affine_map(&dsem(c)?).is_none() {
        return Err(RunError::NotFunctional);
    }
    let machine = Machine::<Rational>::compile(c)?;
    if inputs.len() != machine.left() {
        return Err(OpError::Arity {
            left: machine.left(),
            right: machine.right(),
            got_left: inputs.len(),
            got_right: machine.right(),
        }
        .into());
    }
    let start = inputs.iter().map(|w| w.start).min().unwrap_or(0).min(0);
    let m = machine.right();
    let mut outputs = vec![Vec::with_capacity(horizon); m];
    let mut s = NetState::initial(machine, start);
    for _ in 0..horizon {
        let left: Vec<Rational> = inputs.iter().map(|w| w.at(s.clock)).collect();
        let space = s.machine.open_successors(s.clock, &s.registers, &left)?;
        if space.is_empty() {
            return Err(RunError::Stuck(s.clock));
        }
        let point = space.point().ok_or(RunError::AmbiguousAt(s.clock))?;
        let (right, next) = point.split_at(m);
        for (out, v) in outputs.iter_mut().zip(right) {
            out.push(v.clone());
        }
        s = s.advance(next.to_vec());
    }
    Ok(outputs
        .into_iter()
        .map(|coeffs| LaurentWindow::new(start, coeffs))
        .collect())
}

/// Expand each component of `(u, v)` as a Laurent series on `[lo, hi)` and
/// regroup the coefficients clock by clock.
pub fn kappa_iota(u: &[RatFunc], v: &[RatFunc], lo: i64, hi: i64) -> Trajectory<Rational> {
    let us: Vec<_> = u.iter().map(|p| laurent_expand(p, lo, hi)).collect();
    let vs: Vec<_> = v.iter().map(|p| laurent_expand(p, lo, hi)).collect();
    let steps = (lo..hi)
        .map(|t| {
            (
                us.iter().map(|w| w.at(t)).collect(),
                vs.iter().map(|w| w.at(t)).collect(),
            )
        })
        .collect();
    Trajectory { start: lo, steps }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AgreementError {
    #[error("the sample is not in the denotation")]
    NotMember,
    #[error("closed circuits have sort (0, 0), this one has ({0}, {1})")]
    NotClosed(usize, usize),
    #[error("the denotation admits an infinite computation but the run from clock {start} is stuck at {at}")]
    Disagreement { start: i64, at: i64 },
    #[error(transparent)]
    Run(#[from] RunError),
    #[error(transparent)]
    Denotation(#[from] DenotationError),
}

/// Earliest clock at which a run of `c` on `(u, v)` is started: the first
/// nonzero coefficient (or 0), moved back by one tick per register plus one.
pub fn agreement_start(c: &Circuit, u: &[RatFunc], v: &[RatFunc]) -> i64 {
    let degree = u
        .iter()
        .chain(v)
        .filter_map(RatFunc::valuation)
        .min()
        .unwrap_or(0)
        .min(0);
    degree - (c.registers() as i64 + 1)
}

/// Feed the Laurent expansion of a denotation member to the circuit and
/// check that some run accepts it through clock `horizon - 1`.
pub fn check_agreement(
    c: &Circuit,
    u: &[RatFunc],
    v: &[RatFunc],
    horizon: i64,
) -> Result<bool, AgreementError> {
    let rel = dsem(c)?;
    if !rel.contains(u, v).map_err(DenotationError::from)? {
        return Err(AgreementError::NotMember);
    }
    let start = agreement_start(c, u, v);
    let tau = kappa_iota(u, v, start, horizon.max(start));
    match run_existential(c, start, &tau.steps) {
        Ok(_) => Ok(true),
        Err(RunError::Stuck(_)) => Ok(false),
        Err(e) => Err(e.into()),
    }
}

/// Number of ticks after clock 0 used to cross-check closed circuits.
pub const OBSERVATION_HORIZON: i64 = 16;

/// Whether a closed circuit can compute forever: decided by its denotation
/// being the identity on zero wires rather than empty. A positive verdict is
/// cross-checked by running from clock `-(R + 1)`.
pub fn observes_infinite(c: &Circuit) -> Result<bool, AgreementError> {
    let s = c.sort().map_err(DenotationError::from)?;
    if (s.left, s.right) != (0, 0) {
        return Err(AgreementError::NotClosed(s.left, s.right));
    }
    let verdict = !dsem(c)?.is_empty();
    if verdict {
        let r = c.registers() as i64;
        let start = -(r + 1);
        let end = OBSERVATION_HORIZON.max(2 * r + 8);
        let ticks = vec![(Vec::new(), Vec::new()); (end - start) as usize];
        match run_existential::<Rational>(c, start, &ticks) {
            Ok(_) => {}
            Err(RunError::Stuck(at)) => return Err(AgreementError::Disagreement { start, at }),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(verdict)
}
