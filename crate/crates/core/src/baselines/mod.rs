//! Reference optimizers for the comparison table: global-best PSO and a
//! real-coded generational GA. Both share the problem, counter and stopping
//! machinery with Cuckoo Search.

pub mod ga;
pub mod pso;

pub use ga::{ga_minimise, ga_minimise_observed, GaConfig};
pub use pso::{pso_minimise, pso_minimise_observed, PsoConfig};
