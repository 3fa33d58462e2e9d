//! Discrete-time path-integral simulated quantum annealing.
//!
//! The transverse-field Ising Hamiltonian is Trotterized into M periodic
//! replicas. Spatial couplings carry weight (beta/M) * B(t) * J; the
//! imaginary-time coupling is J_perp = -0.5 ln tanh((beta/M) * A(t)).
//! A sweep performs one imaginary-time cluster update per spatial site:
//! pick a random slice, grow along the time ring through parallel spins
//! with probability 1 - exp(-2 J_perp), then flip the whole cluster with
//! the Metropolis probability of the spatial energy change.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::problem::IsingProblem;
use crate::solvers::{metropolis_accept, RunOutcome, SliceReadout, SqaMode, SqaParams, TAU_SQA_US};

/// Imaginary-time coupling J_perp = -0.5 ln tanh(a_eff).
///
/// Diverges as a_eff -> 0+ (slices lock together at the end of the anneal)
/// and vanishes as a_eff -> infinity. Schedule endpoints with A = 0 must be
/// clamped by the caller before calling this.
pub fn transverse_coupling(a_eff: f64) -> Result<f64> {
    if !(a_eff > 0.0) {
        return Err(Error::InvalidParams(format!(
            "transverse coupling needs a_eff > 0, got {a_eff}"
        )));
    }
    Ok(-0.5 * a_eff.tanh().ln())
}

/// Result of growing one imaginary-time cluster on a site's worldline.
///
/// The cluster is the ring segment `t0 - down ..= t0 + up` (mod M).
/// `attempts`/`adds` count the parallel-neighbor Bernoulli trials, exposed
/// so the 1 - exp(-2 J_perp) add rule can be verified statistically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusterGrowth {
    pub down: usize,
    pub up: usize,
    pub attempts: u64,
    pub adds: u64,
}

impl ClusterGrowth {
    pub fn len(&self) -> usize {
        self.down + self.up + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Grows a 1-D Wolff cluster along a periodic worldline starting at `t0`.
pub fn grow_time_cluster(
    worldline: &[i8],
    t0: usize,
    p_add: f64,
    rng: &mut impl Rng,
) -> ClusterGrowth {
    let m = worldline.len();
    let s0 = worldline[t0];
    let mut growth = ClusterGrowth { down: 0, up: 0, attempts: 0, adds: 0 };
    // Upward direction (increasing t).
    while growth.len() < m {
        let t = (t0 + growth.up + 1) % m;
        if worldline[t] != s0 {
            break;
        }
        growth.attempts += 1;
        if rng.random::<f64>() < p_add {
            growth.adds += 1;
            growth.up += 1;
        } else {
            break;
        }
    }
    // Downward direction (decreasing t).
    while growth.len() < m {
        let t = (t0 + m - growth.down - 1) % m;
        if worldline[t] != s0 {
            break;
        }
        growth.attempts += 1;
        if rng.random::<f64>() < p_add {
            growth.adds += 1;
            growth.down += 1;
        } else {
            break;
        }
    }
    growth
}

/// One SQA run. Spins are laid out site-major: `spins[site * M + t]`.
pub fn sqa_run(problem: &IsingProblem, params: &SqaParams, seed: u64) -> RunOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = params.trotter_slices as usize;
    let n = problem.n();
    // Each replica starts as the same random spatial configuration,
    // periodic in imaginary time.
    let base: Vec<i8> = (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
    let mut spins = vec![0i8; n * m];
    for v in 0..n {
        spins[v * m..(v + 1) * m].fill(base[v]);
    }

    // Raw spatial energy per slice, maintained incrementally.
    let mut raw_e = vec![0i64; m];
    for (e, &(u, v)) in problem.edges.iter().enumerate() {
        let j = problem.raw_j[e];
        if j == 0 {
            continue;
        }
        for (t, re) in raw_e.iter_mut().enumerate() {
            *re += j * spins[u as usize * m + t] as i64 * spins[v as usize * m + t] as i64;
        }
    }
    let mut best_raw = *raw_e.iter().min().unwrap();

    let sweeps = params.sweeps;
    let beta_per_slice = params.beta / m as f64;
    let mut cluster: Vec<usize> = Vec::with_capacity(m);
    let mut delta_raw: Vec<i64> = Vec::with_capacity(m);
    for s in 0..sweeps {
        let f = s as f64 / (sweeps - 1) as f64;
        let (a, b) = params.schedule.at(f);
        let a_eff = (beta_per_slice * a).max(f64::MIN_POSITIVE);
        let j_perp = transverse_coupling(a_eff).expect("clamped a_eff is positive");
        let p_add = 1.0 - (-2.0 * j_perp).exp();
        let w_spatial = beta_per_slice * b;

        for &site in &problem.update_order {
            let site = site as usize;
            let t0 = rng.random_range(0..m);
            let growth = grow_time_cluster(&spins[site * m..(site + 1) * m], t0, p_add, &mut rng);

            cluster.clear();
            for k in 0..growth.len() {
                cluster.push((t0 + m - growth.down + k) % m);
            }
            // Spatial energy change of flipping the site on every cluster slice.
            delta_raw.clear();
            let mut delta_dyn_total = 0.0f64;
            for &t in &cluster {
                let mut dl = 0.0f64;
                let mut rl = 0i64;
                for idx in problem.adj_off[site]..problem.adj_off[site + 1] {
                    let u = problem.adj_nbr[idx as usize] as usize;
                    let e = problem.adj_edge[idx as usize] as usize;
                    let su = spins[u * m + t];
                    dl += problem.dyn_j[e] * su as f64;
                    rl += problem.raw_j[e] * su as i64;
                }
                let s_vt = spins[site * m + t];
                delta_dyn_total += -2.0 * s_vt as f64 * dl;
                delta_raw.push(-2 * s_vt as i64 * rl);
            }

            if metropolis_accept(w_spatial * delta_dyn_total, 1.0, &mut rng) {
                for (k, &t) in cluster.iter().enumerate() {
                    spins[site * m + t] = -spins[site * m + t];
                    raw_e[t] += delta_raw[k];
                    if raw_e[t] < best_raw {
                        best_raw = raw_e[t];
                    }
                }
            }
        }
    }

    let final_raw = match params.readout {
        SliceReadout::MinSlice => *raw_e.iter().min().unwrap(),
        SliceReadout::FixedSlice(k) => raw_e[(k as usize) % m],
        SliceReadout::RandomSlice => raw_e[rng.random_range(0..m)],
    };
    let success = match params.mode {
        SqaMode::Solver => best_raw == problem.ground_raw(),
        SqaMode::Annealer => final_raw == problem.ground_raw(),
    };
    RunOutcome {
        best_raw,
        final_raw,
        success,
        sweeps_used: sweeps,
        wall_model_time_us: sweeps as f64 * TAU_SQA_US,
        scale: problem.scale(),
    }
}
