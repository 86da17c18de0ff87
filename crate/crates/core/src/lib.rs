//! Benchmark harness for assessing practical quantum utility.
//!
//! The crate bundles a statevector simulator ([`sim`]), a gate-set and
//! topology compiler ([`compile`]), desk-scale variational algorithms
//! ([`algo`]), resource profiling and scaling fits ([`profile`]), SWaP-C
//! scores and utility verdicts ([`swapc`]), and the application readiness
//! level rule engine with its built-in survey ([`arl`]).

pub mod sim;
pub mod compile;
pub mod profile;
pub mod algo;
pub mod swapc;
pub mod arl;

/// Crate version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
