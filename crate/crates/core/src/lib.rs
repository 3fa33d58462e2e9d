//! Frustrated-loop Ising benchmarks with planted solutions on Chimera graphs.
//!
//! The crate covers the full benchmarking loop:
//!
//! - [`chimera`]: L×L Chimera subgraphs with broken-vertex masks;
//! - [`instance`]: planted-solution frustrated-loop instance generation,
//!   exact energies, frustration diagnostics and coupling-noise injection;
//! - [`solvers`]: simulated annealing (solver and annealer readouts),
//!   discrete-time path-integral simulated quantum annealing, and the SSSV
//!   rotor model, with deterministic seeded batch execution;
//! - [`hfs`]: tree-based optimizer over 16-state half-cell supervertices
//!   (condense, maximal induced trees, exact conditional minimization);
//! - [`enumerate`]: bucket-elimination ground-state enumeration with
//!   degeneracy counting;
//! - [`analytics`]: Jeffreys-posterior success estimation, runs-to-solution,
//!   time-to-solution, bootstrap error bars, speedup ratios, scaling fits,
//!   Euclidean-distance correlation measures and optimal-sweep envelopes;
//! - [`oracle`]: an independent exhaustive ground-state oracle for
//!   cross-checking small instances.
//!
//! Ground energies are known exactly by construction, so solver success is
//! decided by integer comparison, never by floating tolerance.

pub mod analytics;
pub mod chimera;
pub mod enumerate;
pub mod error;
pub mod hfs;
pub mod instance;
pub mod oracle;
pub mod problem;
pub mod ratio;
pub mod records;
pub mod schedule;
pub mod seed;
pub mod solvers;
pub mod spins;

pub use chimera::{build_chimera, ChimeraGraph};
pub use error::{Error, Result};
pub use instance::{
    assemble_instance, energy, energy_raw, frustration_fraction, inject_noise, plant_solution,
    random_loop, IsingInstance, LoopClause, PlantedInstance,
};
pub use problem::IsingProblem;
pub use records::RunRecord;
pub use schedule::Schedule;
pub use spins::SpinConfig;
