//! Decision procedures on top of the two semantics: realisability,
//! distinguishing contexts and the axiom checks.

mod axioms;
mod context;
mod realise;

pub use axioms::{
    axiom_instances, axiom_suite, default_samples, AxiomInstance, AxiomOutcome, AxiomReport,
};
pub use context::{distinguishing_context, Context};
pub use realise::{
    realisable, rewire, rewire_ordered, AnalysisError, PortPartition, RealisabilityReport,
    DEFAULT_PORT_CAP,
};
