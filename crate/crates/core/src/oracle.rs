//! Exhaustive ground-state oracle for small instances.
//!
//! Enumerates all configurations of the participating spins (those touched
//! by at least one clause) with a Gray-code walk, tracking the exact raw
//! energy incrementally. Kept deliberately independent of the bucket
//! elimination enumerator so the two can cross-check each other.

use crate::error::{Error, Result};
use crate::instance::PlantedInstance;

pub const DEFAULT_ORACLE_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceResult {
    /// Global minimum raw energy over the participating spins.
    pub min_raw: i64,
    /// Number of configurations attaining it.
    pub count: u64,
    /// The participating vertex ids, ascending.
    pub participating: Vec<u32>,
}

/// Exhaustively minimizes over the participating spins (non-participating
/// spins have all-zero couplings and cannot change the energy).
pub fn brute_force_minimizers(inst: &PlantedInstance, max_spins: usize) -> Result<BruteForceResult> {
    let participating = inst.participating();
    let k = participating.len();
    if k > max_spins {
        return Err(Error::OracleTooLarge { got: k, max: max_spins });
    }
    let dense_of = |v: u32| participating.binary_search(&v).unwrap();

    // Adjacency among participating spins, nonzero couplings only.
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); k];
    let mut e0 = 0i64; // energy of the all-up configuration
    for (idx, &(u, v)) in inst.graph.edges().iter().enumerate() {
        let j = inst.raw_couplings[idx];
        if j == 0 {
            continue;
        }
        let (du, dv) = (dense_of(u), dense_of(v));
        adj[du].push((dv, j));
        adj[dv].push((du, j));
        e0 += j;
    }

    let mut spins = vec![1i8; k];
    let mut energy = e0;
    let mut min_raw = energy;
    let mut count = 1u64;
    let total: u64 = 1u64 << k;
    for i in 1..total {
        let b = i.trailing_zeros() as usize;
        let local: i64 = adj[b].iter().map(|&(u, j)| j * spins[u] as i64).sum();
        energy -= 2 * spins[b] as i64 * local;
        spins[b] = -spins[b];
        if energy < min_raw {
            min_raw = energy;
            count = 1;
        } else if energy == min_raw {
            count += 1;
        }
    }
    Ok(BruteForceResult { min_raw, count, participating })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chimera::build_chimera;
    use crate::instance::{assemble_instance, energy_raw};
    use crate::spins::SpinConfig;
    use num_rational::Ratio;

    #[test]
    fn gray_walk_matches_direct_evaluation() {
        let g = build_chimera(1, &[]).unwrap();
        let inst = assemble_instance(&g, Ratio::new(3, 8), 7, 8).unwrap();
        let res = brute_force_minimizers(&inst, 24).unwrap();
        // Direct nested scan for comparison.
        let parts = res.participating.clone();
        let mut best = i64::MAX;
        let mut n = 0u64;
        for bits in 0..(1u64 << parts.len()) {
            let mut cfg = SpinConfig::constant(&inst.graph, 1);
            for (i, &v) in parts.iter().enumerate() {
                cfg.set(v, if bits >> i & 1 == 1 { -1 } else { 1 });
            }
            let e = energy_raw(&inst, &cfg).unwrap();
            if e < best {
                best = e;
                n = 1;
            } else if e == best {
                n += 1;
            }
        }
        assert_eq!(res.min_raw, best);
        assert_eq!(res.count, n);
    }

    #[test]
    fn planted_is_globally_minimal_on_small_instances() {
        for seed in 0..20u64 {
            let g = build_chimera(1, &[]).unwrap();
            let inst = assemble_instance(&g, Ratio::new(1, 2), seed, 8).unwrap();
            let res = brute_force_minimizers(&inst, 24).unwrap();
            assert_eq!(res.min_raw, inst.ground_raw, "seed {seed}");
            assert_eq!(res.count % 2, 0, "Z2 closure, seed {seed}");
        }
    }

    #[test]
    fn refuses_oversized_instances() {
        let g = build_chimera(2, &[]).unwrap();
        let inst = assemble_instance(&g, Ratio::new(1, 1), 1, 8).unwrap();
        assert!(matches!(
            brute_force_minimizers(&inst, 20),
            Err(Error::OracleTooLarge { .. })
        ));
    }
}
