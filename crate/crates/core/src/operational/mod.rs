//! Clocked execution: circuits are flattened to netlists, and each tick
//! solves the affine constraints imposed by the generators on the wire
//! values and the register contents.

mod netlist;
mod run;
mod step;

pub use netlist::{compile, Gate, Netlist};
pub use run::{
    agreement_start, check_agreement, kappa_iota, observes_infinite, run, run_existential,
    run_function, solve_run, AgreementError, ReachableSet, RunError, SolvedRun, Trajectory,
    OBSERVATION_HORIZON,
};
pub use step::{step, Machine, NetState, OpError, StepResult};
