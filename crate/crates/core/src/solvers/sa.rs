//! Single-spin-flip Metropolis simulated annealing with a linear schedule
//! in the inverse temperature.
//!
//! Each sweep attempts one flip per spin in a freshly drawn (seeded)
//! permutation. A fixed visiting order is not an option here: spins within
//! one bipartition half never interact, so a half-by-half pass acts as a
//! synchronous update, and on the flat zero-delta plateaus of degenerate
//! instances the accepted moves lock into a global-flip mode that freezes
//! the domain walls. Re-permuting every sweep keeps the chain ergodic while
//! staying reproducible per seed.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::problem::IsingProblem;
use crate::solvers::{RunOutcome, SaMode, SaParams, TAU_SA_US};

/// Accepts with probability min(1, exp(-beta * delta_e)).
#[inline]
pub fn metropolis_accept(delta_e: f64, beta: f64, rng: &mut impl Rng) -> bool {
    delta_e <= 0.0 || rng.random::<f64>() < (-beta * delta_e).exp()
}

/// One sweep: a Metropolis attempt per spin in the given order. Tracks the
/// nominal raw energy and best-ever value.
pub fn metropolis_sweep(
    problem: &IsingProblem,
    order: &[u32],
    spins: &mut [i8],
    raw_e: &mut i64,
    best_raw: &mut i64,
    beta: f64,
    rng: &mut impl Rng,
) {
    for &v in order {
        let v = v as usize;
        let (dyn_local, raw_local) = problem.locals(v, spins);
        let s = spins[v];
        let delta_dyn = -2.0 * s as f64 * dyn_local;
        if metropolis_accept(delta_dyn, beta, rng) {
            *raw_e += -2 * s as i64 * raw_local;
            spins[v] = -s;
            if *raw_e < *best_raw {
                *best_raw = *raw_e;
            }
        }
    }
}

/// One annealing run from a random start. The schedule is linear in beta:
/// beta_s = beta_i + s * (beta_f - beta_i) / (S - 1).
pub fn sa_run(problem: &IsingProblem, params: &SaParams, seed: u64) -> RunOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spins: Vec<i8> =
        (0..problem.n()).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
    let mut raw_e = problem.raw_energy(&spins);
    let mut best_raw = raw_e;

    let sweeps = params.sweeps;
    let dbeta = (params.beta_f - params.beta_i) / (sweeps - 1) as f64;
    let mut order: Vec<u32> = (0..problem.n() as u32).collect();
    for s in 0..sweeps {
        let beta = params.beta_i + dbeta * s as f64;
        order.shuffle(&mut rng);
        metropolis_sweep(problem, &order, &mut spins, &mut raw_e, &mut best_raw, beta, &mut rng);
    }

    let success = match params.mode {
        SaMode::Solver => best_raw == problem.ground_raw(),
        SaMode::Annealer => raw_e == problem.ground_raw(),
    };
    RunOutcome {
        best_raw,
        final_raw: raw_e,
        success,
        sweeps_used: sweeps,
        wall_model_time_us: sweeps as f64 * TAU_SA_US,
        scale: problem.scale(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chimera::build_chimera;
    use crate::instance::assemble_instance;
    use crate::solvers::SaMode;
    use num_rational::Ratio;

    #[test]
    fn downhill_always_accepted_uphill_rate_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert!(metropolis_accept(-1.0, 2.0, &mut rng));
            assert!(metropolis_accept(0.0, 2.0, &mut rng));
        }
        // delta = ln2 / beta gives acceptance 1/2.
        let beta = 1.7;
        let delta = std::f64::consts::LN_2 / beta;
        let trials = 100_000;
        let mut acc = 0u32;
        for _ in 0..trials {
            acc += metropolis_accept(delta, beta, &mut rng) as u32;
        }
        let rate = acc as f64 / trials as f64;
        assert!((rate - 0.5).abs() < 0.01, "rate {rate}");
        // beta -> infinity kills uphill moves.
        for _ in 0..100 {
            assert!(!metropolis_accept(1.0, 1e9, &mut rng));
        }
    }

    #[test]
    fn easy_instance_solved_reliably() {
        let g = build_chimera(2, &[]).unwrap();
        let inst = assemble_instance(&g, Ratio::new(1, 32), 5, 8).unwrap();
        assert_eq!(inst.clause_count(), 1);
        let problem = IsingProblem::from_instance(&inst);
        let params = SaParams::new(1000, 0.01, 5.0, SaMode::Solver).unwrap();
        let mut hits = 0u32;
        for seed in 0..1000u64 {
            hits += sa_run(&problem, &params, seed).success as u32;
        }
        assert!(hits >= 990, "hits {hits}");
    }

    #[test]
    fn model_time_matches_footnote_constant() {
        let g = build_chimera(1, &[]).unwrap();
        let inst = assemble_instance(&g, Ratio::new(1, 8), 2, 8).unwrap();
        let problem = IsingProblem::from_instance(&inst);
        let params = SaParams::new(50_000, 0.01, 5.0, SaMode::Annealer).unwrap();
        let out = sa_run(&problem, &params, 0);
        assert_eq!(out.wall_model_time_us, 177_000.0);
    }

    #[test]
    fn best_never_exceeds_final_and_modes_agree_on_dynamics() {
        let g = build_chimera(2, &[]).unwrap();
        let inst = assemble_instance(&g, Ratio::new(1, 4), 9, 8).unwrap();
        let problem = IsingProblem::from_instance(&inst);
        let solver = SaParams::new(300, 0.01, 4.0, SaMode::Solver).unwrap();
        let annealer = SaParams::new(300, 0.01, 4.0, SaMode::Annealer).unwrap();
        for seed in 0..200u64 {
            let a = sa_run(&problem, &solver, seed);
            let b = sa_run(&problem, &annealer, seed);
            assert!(a.best_raw <= a.final_raw);
            // Identical trajectories, different readout.
            assert_eq!(a.best_raw, b.best_raw);
            assert_eq!(a.final_raw, b.final_raw);
            assert!(a.success >= b.success);
        }
    }
}
