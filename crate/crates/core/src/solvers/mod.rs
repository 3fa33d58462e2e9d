//! Monte Carlo solver portfolio: SA (solver/annealer), discrete-time
//! path-integral SQA, and the SSSV O(2) rotor model, plus the shared
//! batch executor and model-time accounting.
//!
//! Model times charge one parallel-sweep constant per sweep: the bipartite
//! Chimera structure lets both halves update concurrently, so a sweep costs
//! a size-independent constant per solver.

pub mod sa;
pub mod sqa;
pub mod sssv;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::problem::IsingProblem;
use crate::records::RunRecord;
use crate::schedule::Schedule;
use crate::seed::{derive_seed, short_hash};

pub use sa::{metropolis_accept, metropolis_sweep, sa_run};
pub use sqa::{grow_time_cluster, sqa_run, transverse_coupling, ClusterGrowth};
pub use sssv::sssv_run;

/// Per-sweep model time in microseconds.
pub const TAU_SA_US: f64 = 3.54;
pub const TAU_SQA_US: f64 = 9.92;
pub const TAU_SSSV_US: f64 = 10.34;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaMode {
    /// Solver: best energy seen anywhere along the schedule.
    Solver,
    /// Annealer: the final configuration's energy only.
    Annealer,
}

impl SaMode {
    pub fn name(&self) -> &'static str {
        match self {
            SaMode::Solver => "sas",
            SaMode::Annealer => "saa",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqaMode {
    Solver,
    Annealer,
}

impl SqaMode {
    pub fn name(&self) -> &'static str {
        match self {
            SqaMode::Solver => "sqas",
            SqaMode::Annealer => "sqaa",
        }
    }
}

/// Which Trotter slice the annealer-mode readout uses at the final sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SliceReadout {
    /// Minimum energy among all slices (default).
    MinSlice,
    FixedSlice(u32),
    RandomSlice,
}

impl SliceReadout {
    fn canonical(&self) -> String {
        match self {
            SliceReadout::MinSlice => "min".into(),
            SliceReadout::FixedSlice(k) => format!("fixed{k}"),
            SliceReadout::RandomSlice => "random".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SaParams {
    pub sweeps: u32,
    pub beta_i: f64,
    pub beta_f: f64,
    pub mode: SaMode,
}

impl SaParams {
    pub fn new(sweeps: u32, beta_i: f64, beta_f: f64, mode: SaMode) -> Result<SaParams> {
        if sweeps < 2 {
            return Err(Error::InvalidParams(format!("sa needs >= 2 sweeps, got {sweeps}")));
        }
        if !(beta_i > 0.0) || !(beta_f > beta_i) {
            return Err(Error::InvalidParams(format!(
                "sa needs beta_f > beta_i > 0, got beta_i={beta_i} beta_f={beta_f}"
            )));
        }
        Ok(SaParams { sweeps, beta_i, beta_f, mode })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SqaParams {
    pub sweeps: u32,
    pub trotter_slices: u32,
    pub beta: f64,
    pub schedule: Schedule,
    pub mode: SqaMode,
    pub readout: SliceReadout,
}

impl SqaParams {
    pub fn new(
        sweeps: u32,
        trotter_slices: u32,
        beta: f64,
        schedule: Schedule,
        mode: SqaMode,
    ) -> Result<SqaParams> {
        if sweeps < 2 {
            return Err(Error::InvalidParams(format!("sqa needs >= 2 sweeps, got {sweeps}")));
        }
        if trotter_slices < 2 {
            return Err(Error::InvalidParams(format!(
                "sqa needs >= 2 trotter slices, got {trotter_slices}"
            )));
        }
        if !(beta > 0.0) {
            return Err(Error::InvalidParams(format!("sqa needs beta > 0, got {beta}")));
        }
        Ok(SqaParams { sweeps, trotter_slices, beta, schedule, mode, readout: SliceReadout::MinSlice })
    }
}

/// How SSSV proposes a new angle for a site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngleProposal {
    /// Fresh uniform draw in [0, pi] (default).
    FreshUniform,
    /// Gaussian step of the given width, reflected back into [0, pi].
    GaussianStep(f64),
}

impl AngleProposal {
    fn canonical(&self) -> String {
        match self {
            AngleProposal::FreshUniform => "uniform".into(),
            AngleProposal::GaussianStep(s) => format!("gauss{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SssvParams {
    pub sweeps: u32,
    pub beta: f64,
    pub schedule: Schedule,
    pub proposal: AngleProposal,
}

impl SssvParams {
    pub fn new(sweeps: u32, beta: f64, schedule: Schedule) -> Result<SssvParams> {
        if sweeps < 2 {
            return Err(Error::InvalidParams(format!("sssv needs >= 2 sweeps, got {sweeps}")));
        }
        if !(beta > 0.0) {
            return Err(Error::InvalidParams(format!("sssv needs beta > 0, got {beta}")));
        }
        Ok(SssvParams { sweeps, beta, schedule, proposal: AngleProposal::FreshUniform })
    }
}

/// Outcome of a single solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    /// Best nominal raw energy seen along the run.
    pub best_raw: i64,
    /// Final (mode-dependent readout) nominal raw energy.
    pub final_raw: i64,
    pub success: bool,
    pub sweeps_used: u32,
    pub wall_model_time_us: f64,
    pub scale: i64,
}

impl RunOutcome {
    pub fn best_energy(&self) -> num_rational::Ratio<i64> {
        num_rational::Ratio::new(self.best_raw, self.scale)
    }

    pub fn final_energy(&self) -> num_rational::Ratio<i64> {
        num_rational::Ratio::new(self.final_raw, self.scale)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnnealerParams {
    Sa(SaParams),
    Sqa(SqaParams),
    Sssv(SssvParams),
}

impl AnnealerParams {
    pub fn solver_name(&self) -> &'static str {
        match self {
            AnnealerParams::Sa(_) => "sa",
            AnnealerParams::Sqa(_) => "sqa",
            AnnealerParams::Sssv(_) => "sssv",
        }
    }

    pub fn mode_name(&self) -> &'static str {
        match self {
            AnnealerParams::Sa(p) => p.mode.name(),
            AnnealerParams::Sqa(p) => p.mode.name(),
            AnnealerParams::Sssv(_) => "sssv",
        }
    }

    pub fn sweeps(&self) -> u32 {
        match self {
            AnnealerParams::Sa(p) => p.sweeps,
            AnnealerParams::Sqa(p) => p.sweeps,
            AnnealerParams::Sssv(p) => p.sweeps,
        }
    }

    /// Model time per run: sweeps times the solver's parallel-sweep constant.
    pub fn tau_per_run_us(&self) -> f64 {
        let tau = match self {
            AnnealerParams::Sa(_) => TAU_SA_US,
            AnnealerParams::Sqa(_) => TAU_SQA_US,
            AnnealerParams::Sssv(_) => TAU_SSSV_US,
        };
        self.sweeps() as f64 * tau
    }

    /// Canonical parameter text, including the readout mode.
    pub fn canonical_string(&self) -> String {
        match self {
            AnnealerParams::Sa(p) => format!(
                "sa mode={} sweeps={} beta_i={} beta_f={}",
                p.mode.name(),
                p.sweeps,
                p.beta_i,
                p.beta_f
            ),
            AnnealerParams::Sqa(p) => format!(
                "sqa mode={} sweeps={} slices={} beta={} readout={} schedule={}",
                p.mode.name(),
                p.sweeps,
                p.trotter_slices,
                p.beta,
                p.readout.canonical(),
                p.schedule.canonical()
            ),
            AnnealerParams::Sssv(p) => format!(
                "sssv sweeps={} beta={} proposal={} schedule={}",
                p.sweeps,
                p.beta,
                p.proposal.canonical(),
                p.schedule.canonical()
            ),
        }
    }

    /// Parameter text without the readout mode. Runs whose dynamics agree
    /// (solver vs annealer readout of the same algorithm) share random
    /// streams, which is what makes "SAS is never worse than SAA" exact.
    pub fn dynamics_string(&self) -> String {
        match self {
            AnnealerParams::Sa(p) => {
                format!("sa sweeps={} beta_i={} beta_f={}", p.sweeps, p.beta_i, p.beta_f)
            }
            AnnealerParams::Sqa(p) => format!(
                "sqa sweeps={} slices={} beta={} schedule={}",
                p.sweeps,
                p.trotter_slices,
                p.beta,
                p.schedule.canonical()
            ),
            AnnealerParams::Sssv(p) => format!(
                "sssv sweeps={} beta={} proposal={} schedule={}",
                p.sweeps,
                p.beta,
                p.proposal.canonical(),
                p.schedule.canonical()
            ),
        }
    }
}

/// Runs one annealer on one problem with a derived per-run seed.
pub fn run_once(problem: &IsingProblem, params: &AnnealerParams, seed: u64) -> RunOutcome {
    match params {
        AnnealerParams::Sa(p) => sa_run(problem, p, seed),
        AnnealerParams::Sqa(p) => sqa_run(problem, p, seed),
        AnnealerParams::Sssv(p) => sssv_run(problem, p, seed),
    }
}

/// Executes `n_runs` independent runs and aggregates counts.
///
/// Per-run seeds are derived from (master seed, instance id, dynamics hash,
/// run index), so the outcome is reproducible regardless of execution order
/// or worker count. `extra_tag` distinguishes problem-side variations such
/// as injected coupling noise and participates in both hashes.
pub fn run_batch(
    problem: &IsingProblem,
    params: &AnnealerParams,
    n_runs: u64,
    master_seed: u64,
    instance_id: &str,
    extra_tag: &str,
) -> Result<RunRecord> {
    if n_runs < 1 {
        return Err(Error::InvalidParams("n_runs must be >= 1".into()));
    }
    if instance_id.contains(char::is_whitespace) {
        return Err(Error::InvalidParams(format!("instance id {instance_id:?} contains whitespace")));
    }
    let full = format!("{}{}", params.canonical_string(), extra_tag);
    let dynamics = format!("{}{}", params.dynamics_string(), extra_tag);
    let params_hash = short_hash(&full);
    let dynamics_hash = short_hash(&dynamics);

    let successes: u64 = (0..n_runs)
        .into_par_iter()
        .map(|i| {
            let seed =
                derive_seed(master_seed, &["run", instance_id, &dynamics_hash, &i.to_string()]);
            run_once(problem, params, seed).success as u64
        })
        .sum();

    Ok(RunRecord {
        instance_id: instance_id.to_string(),
        solver: params.solver_name().to_string(),
        params_hash,
        runs: n_runs,
        successes,
        tau_per_run_us: params.tau_per_run_us(),
        mode: params.mode_name().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chimera::build_chimera;
    use crate::instance::assemble_instance;
    use num_rational::Ratio;

    fn easy_problem() -> IsingProblem {
        let g = build_chimera(2, &[]).unwrap();
        let inst = assemble_instance(&g, Ratio::new(1, 32), 5, 8).unwrap();
        IsingProblem::from_instance(&inst)
    }

    #[test]
    fn params_validation() {
        assert!(SaParams::new(1, 0.01, 5.0, SaMode::Solver).is_err());
        assert!(SaParams::new(100, 5.0, 5.0, SaMode::Solver).is_err());
        assert!(SaParams::new(100, 0.0, 5.0, SaMode::Solver).is_err());
        assert!(SaParams::new(100, 0.01, 5.0, SaMode::Solver).is_ok());
        assert!(SqaParams::new(10, 1, 10.0, Schedule::linear_default(), SqaMode::Annealer).is_err());
        assert!(SssvParams::new(10, 0.0, Schedule::linear_default()).is_err());
    }

    #[test]
    fn batch_is_deterministic_and_order_free() {
        let p = easy_problem();
        let params =
            AnnealerParams::Sa(SaParams::new(200, 0.01, 5.0, SaMode::Solver).unwrap());
        let a = run_batch(&p, &params, 64, 7, "t/i0", "").unwrap();
        let b = run_batch(&p, &params, 64, 7, "t/i0", "").unwrap();
        assert_eq!(a, b);
        assert!(a.successes > 0);
        assert_eq!(a.tau_per_run_us, 200.0 * TAU_SA_US);
    }

    #[test]
    fn disjoint_seed_batches_agree_statistically() {
        let p = easy_problem();
        let params =
            AnnealerParams::Sa(SaParams::new(100, 0.01, 3.0, SaMode::Solver).unwrap());
        let a = run_batch(&p, &params, 5000, 1, "t/i0", "").unwrap();
        let b = run_batch(&p, &params, 5000, 2, "t/i0", "").unwrap();
        let pa = a.successes as f64 / a.runs as f64;
        let pb = b.successes as f64 / b.runs as f64;
        let sigma = (pa * (1.0 - pa) / 5000.0 + pb * (1.0 - pb) / 5000.0).sqrt();
        assert!((pa - pb).abs() <= 3.0 * sigma.max(1e-3), "pa={pa} pb={pb}");
    }

    #[test]
    fn mode_shares_dynamics_hash() {
        let s = AnnealerParams::Sa(SaParams::new(100, 0.01, 5.0, SaMode::Solver).unwrap());
        let a = AnnealerParams::Sa(SaParams::new(100, 0.01, 5.0, SaMode::Annealer).unwrap());
        assert_eq!(s.dynamics_string(), a.dynamics_string());
        assert_ne!(s.canonical_string(), a.canonical_string());
    }
}
