//! Planted-solution frustrated-loop instance generation.
//!
//! An instance is built in four steps: draw a random planted configuration,
//! draw M random even-length loops on the graph, turn each loop into a
//! frustrated clause (ferromagnetic couplings relative to the planted spins
//! with exactly one sign flipped), and sum the clause couplings edge-wise.
//! The planted configuration minimizes every clause simultaneously, hence
//! the total Hamiltonian, and the exact ground energy is known by
//! construction.
//!
//! All bookkeeping is integer-exact: raw couplings are clause sums, the
//! scale factor is the max absolute raw coupling, and energies in rescaled
//! units are rationals `raw / scale_factor`.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_rational::Ratio;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chimera::ChimeraGraph;
use crate::error::{Error, Result};
use crate::ratio::{format_ratio, parse_ratio};
use crate::seed::derive_seed;
use crate::spins::SpinConfig;

pub const DEFAULT_MIN_LOOP_LEN: usize = 8;
pub const DEFAULT_LOOP_RETRY_CAP: usize = 10_000;

/// One frustrated-loop clause: an even cycle with ±1 couplings of which
/// exactly one is sign-flipped relative to the ferromagnetic gauge of the
/// planted configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopClause {
    /// Cyclic vertex sequence; edge k joins `path[k]` and `path[(k+1) % len]`.
    pub path: Vec<u32>,
    /// Coupling of edge k.
    pub couplings: Vec<i8>,
    /// Index of the flipped (frustrated) edge.
    pub flipped: usize,
}

impl LoopClause {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    /// Endpoints of edge `k`, normalized so the smaller id comes first.
    pub fn edge(&self, k: usize) -> (u32, u32) {
        let u = self.path[k];
        let v = self.path[(k + 1) % self.path.len()];
        if u <= v {
            (u, v)
        } else {
            (v, u)
        }
    }

    /// Clause energy of a configuration, in raw (integer) units.
    pub fn energy_raw(&self, config: &SpinConfig) -> i64 {
        (0..self.len())
            .map(|k| {
                let u = self.path[k];
                let v = self.path[(k + 1) % self.len()];
                self.couplings[k] as i64 * config.spin(u) as i64 * config.spin(v) as i64
            })
            .sum()
    }

    /// Minimum clause energy: one edge must stay unsatisfied.
    pub fn min_energy_raw(&self) -> i64 {
        -(self.len() as i64 - 2)
    }
}

/// A generated instance with its planted ground state and exact metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedInstance {
    pub graph: ChimeraGraph,
    pub clauses: Vec<LoopClause>,
    /// Clause-sum coupling per graph edge (aligned to `graph.edges()`).
    pub raw_couplings: Vec<i64>,
    /// Max |raw coupling|; rescaled couplings are `raw / scale_factor`.
    pub scale_factor: i64,
    pub planted: SpinConfig,
    /// Requested clause density (the generation parameter).
    pub alpha: Ratio<i64>,
    pub min_len: usize,
    pub seed: u64,
    /// Ground energy in raw units; exact by the planting construction.
    pub ground_raw: i64,
}

impl PlantedInstance {
    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// Realized clause density M/N.
    pub fn clause_density(&self) -> Ratio<i64> {
        Ratio::new(self.clauses.len() as i64, self.graph.vertex_count() as i64)
    }

    /// Rescaled coupling of edge index `e`, in [-1, 1].
    pub fn coupling(&self, e: usize) -> Ratio<i64> {
        Ratio::new(self.raw_couplings[e], self.scale_factor)
    }

    /// Ground energy in rescaled units.
    pub fn ground_energy(&self) -> Ratio<i64> {
        Ratio::new(self.ground_raw, self.scale_factor)
    }

    /// Vertices that appear in at least one clause.
    pub fn participating(&self) -> Vec<u32> {
        let mut vs: Vec<u32> = self.clauses.iter().flat_map(|c| c.path.iter().copied()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Non-broken vertices touched by no clause.
    pub fn unused_vertices(&self) -> Vec<u32> {
        let used = self.participating();
        self.graph
            .vertices()
            .iter()
            .copied()
            .filter(|v| used.binary_search(v).is_err())
            .collect()
    }
}

/// Step 1: independent fair ±1 draw per non-broken vertex.
pub fn plant_solution(graph: &ChimeraGraph, seed: u64) -> SpinConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut config = SpinConfig::empty(graph.id_limit());
    for &v in graph.vertices() {
        config.set(v, if rng.random::<bool>() { 1 } else { -1 });
    }
    config
}

/// Step 2: a self-avoiding-until-collision random walk, returning the cycle
/// found when the walker re-encounters its own path. The pre-cycle tail is
/// discarded; walks are retried until the cycle reaches `min_len`.
///
/// The walk never reverses along the edge it just traversed, so on a
/// bipartite graph every returned cycle has even length >= 4.
pub fn random_loop(
    graph: &ChimeraGraph,
    rng: &mut impl Rng,
    min_len: usize,
    retry_cap: usize,
) -> Result<Vec<u32>> {
    if min_len < 4 || min_len % 2 != 0 {
        return Err(Error::InvalidMinLen(min_len));
    }
    let vertices = graph.vertices();
    let mut visited_at: HashMap<u32, usize> = HashMap::new();
    for _ in 0..retry_cap {
        visited_at.clear();
        let mut path: Vec<u32> = Vec::new();
        let start = vertices[rng.random_range(0..vertices.len())];
        path.push(start);
        visited_at.insert(start, 0);
        let mut prev: Option<u32> = None;
        loop {
            let cur = *path.last().unwrap();
            let nbrs = graph.neighbors(cur).expect("walk stays on graph");
            let next = match prev {
                Some(p) => {
                    // Uniform over neighbors minus the vertex just departed.
                    let k = nbrs.len() - 1;
                    if k == 0 {
                        break; // dead end; retry
                    }
                    let mut idx = rng.random_range(0..k);
                    let pos = nbrs.iter().position(|&u| u == p).unwrap();
                    if idx >= pos {
                        idx += 1;
                    }
                    nbrs[idx]
                }
                None => nbrs[rng.random_range(0..nbrs.len())],
            };
            if let Some(&k) = visited_at.get(&next) {
                let cycle: Vec<u32> = path[k..].to_vec();
                debug_assert!(cycle.len() % 2 == 0, "odd cycle on a bipartite graph");
                if cycle.len() >= min_len {
                    return Ok(cycle);
                }
                break; // too short; retry
            }
            visited_at.insert(next, path.len());
            path.push(next);
            prev = Some(cur);
        }
    }
    Err(Error::LoopRetryExhausted { min_len, attempts: retry_cap })
}

/// Step 3: ferromagnetic couplings `-s_i s_j` on the loop, then one
/// uniformly random edge flipped.
pub fn make_clause(path: Vec<u32>, planted: &SpinConfig, rng: &mut impl Rng) -> LoopClause {
    let len = path.len();
    let mut couplings: Vec<i8> = (0..len)
        .map(|k| {
            let u = path[k];
            let v = path[(k + 1) % len];
            -(planted.spin(u) * planted.spin(v))
        })
        .collect();
    let flipped = rng.random_range(0..len);
    couplings[flipped] = -couplings[flipped];
    LoopClause { path, couplings, flipped }
}

/// Edge-wise sum of clause couplings, plus the scale factor and the exact
/// raw ground energy.
pub(crate) fn sum_clauses(
    graph: &ChimeraGraph,
    clauses: &[LoopClause],
) -> Result<(Vec<i64>, i64, i64)> {
    let mut raw = vec![0i64; graph.edge_count()];
    let mut ground_raw = 0i64;
    for clause in clauses {
        ground_raw += clause.min_energy_raw();
        for k in 0..clause.len() {
            let (u, v) = clause.edge(k);
            let e = graph
                .edge_index(u, v)
                .ok_or_else(|| Error::Internal(format!("clause edge ({u},{v}) not in graph")))?;
            raw[e] += clause.couplings[k] as i64;
        }
    }
    let scale = raw.iter().map(|j| j.abs()).max().unwrap_or(0);
    if scale == 0 {
        return Err(Error::AllCouplingsZero);
    }
    Ok((raw, scale, ground_raw))
}

/// Step 4: full generation pipeline, deterministic in `(graph, alpha, seed)`.
pub fn assemble_instance(
    graph: &ChimeraGraph,
    alpha: Ratio<i64>,
    seed: u64,
    min_len: usize,
) -> Result<PlantedInstance> {
    assemble_instance_with(graph, alpha, seed, min_len, DEFAULT_LOOP_RETRY_CAP)
}

pub fn assemble_instance_with(
    graph: &ChimeraGraph,
    alpha: Ratio<i64>,
    seed: u64,
    min_len: usize,
    retry_cap: usize,
) -> Result<PlantedInstance> {
    let n = graph.vertex_count() as i64;
    // M = round(alpha * N), half-up.
    let m_ratio = alpha * Ratio::from_integer(n) + Ratio::new(1, 2);
    let m = m_ratio.floor().to_integer();
    if m < 1 {
        return Err(Error::EmptyInstance { alpha: format_ratio(alpha), n: n as usize });
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let planted = plant_solution(graph, derive_seed(seed, &["plant"]));
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &["loops"]));
    let mut clauses = Vec::with_capacity(m as usize);
    for _ in 0..m {
        let path = random_loop(graph, &mut rng, min_len, retry_cap)?;
        clauses.push(make_clause(path, &planted, &mut rng));
    }
    let (raw_couplings, scale_factor, ground_raw) = sum_clauses(graph, &clauses)?;
    let inst = PlantedInstance {
        graph: graph.clone(),
        clauses,
        raw_couplings,
        scale_factor,
        planted,
        alpha,
        min_len,
        seed,
        ground_raw,
    };
    // The planting invariant: decomposing into clauses and summing edge-wise
    // must agree on the planted configuration's energy.
    let check = energy_raw(&inst, &inst.planted)?;
    if check != inst.ground_raw {
        return Err(Error::Internal(format!(
            "planted energy {check} != clause-sum ground {}",
            inst.ground_raw
        )));
    }
    Ok(inst)
}

/// Total energy in raw units: sum of `J_raw * s_i * s_j` (all fields are 0).
pub fn energy_raw(inst: &PlantedInstance, config: &SpinConfig) -> Result<i64> {
    if !config.domain_matches(&inst.graph) {
        return Err(Error::DomainMismatch);
    }
    let mut e = 0i64;
    for (idx, &(u, v)) in inst.graph.edges().iter().enumerate() {
        let j = inst.raw_couplings[idx];
        if j != 0 {
            e += j * config.spin(u) as i64 * config.spin(v) as i64;
        }
    }
    Ok(e)
}

/// Total energy in rescaled units (exact rational).
pub fn energy(inst: &PlantedInstance, config: &SpinConfig) -> Result<Ratio<i64>> {
    Ok(Ratio::new(energy_raw(inst, config)?, inst.scale_factor))
}

/// Fraction of frustrated couplings of the planted configuration, over all
/// edges of the host graph (zero couplings counted in the denominator only).
pub fn frustration_fraction(inst: &PlantedInstance) -> Ratio<i64> {
    let planted = &inst.planted;
    let mut frustrated = 0i64;
    for (idx, &(u, v)) in inst.graph.edges().iter().enumerate() {
        let j = inst.raw_couplings[idx];
        if j != 0 && j * planted.spin(u) as i64 * planted.spin(v) as i64 > 0 {
            frustrated += 1;
        }
    }
    Ratio::new(frustrated, inst.graph.edge_count() as i64)
}

/// An instance whose couplings were perturbed away from the exact rescaled
/// values. The planted configuration and ground energy are only nominal:
/// they are the unperturbed instance's, not necessarily optimal here.
#[derive(Debug, Clone)]
pub struct IsingInstance {
    pub nominal: PlantedInstance,
    /// Perturbed couplings per edge, on the rescaled [-1,1] values.
    pub couplings: Vec<f64>,
    pub noise_level: f64,
}

/// Adds independent uniform noise in [-level, +level] to every nonzero
/// rescaled coupling.
pub fn inject_noise(inst: &PlantedInstance, level: f64, rng: &mut impl Rng) -> IsingInstance {
    let scale = inst.scale_factor as f64;
    let couplings = inst
        .raw_couplings
        .iter()
        .map(|&j| {
            if j == 0 {
                0.0
            } else {
                let noise = if level > 0.0 { rng.random_range(-level..=level) } else { 0.0 };
                j as f64 / scale + noise
            }
        })
        .collect();
    IsingInstance { nominal: inst.clone(), couplings, noise_level: level }
}

// ---------------------------------------------------------------------------
// Instance file format
// ---------------------------------------------------------------------------

/// Serializes an instance. Rescaled couplings are derived on load, never
/// stored, so files stay integer-exact.
pub fn instance_to_text(inst: &PlantedInstance) -> String {
    let mut out = String::from("frustbench instance v1\n");
    out.push_str("meta\n");
    let _ = writeln!(out, "L {}", inst.graph.l());
    let _ = writeln!(out, "idL {}", inst.graph.id_l());
    let _ = writeln!(out, "alpha {}", format_ratio(inst.alpha));
    let _ = writeln!(out, "M {}", inst.clauses.len());
    let _ = writeln!(out, "min_len {}", inst.min_len);
    let _ = writeln!(out, "seed {}", inst.seed);
    let _ = writeln!(out, "scale_factor {}", inst.scale_factor);
    let _ = writeln!(out, "ground_energy {}", format_ratio(inst.ground_energy()));
    out.push_str("planted\n");
    out.push_str(&inst.planted.to_lines());
    out.push_str("clauses\n");
    for clause in &inst.clauses {
        let mut line = String::new();
        for &v in &clause.path {
            let _ = write!(line, "{v} ");
        }
        let _ = write!(line, ": {}", clause.flipped);
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("couplings\n");
    for (idx, &(u, v)) in inst.graph.edges().iter().enumerate() {
        let _ = writeln!(out, "{u} {v} {}", inst.raw_couplings[idx]);
    }
    out
}

pub fn instance_from_text(text: &str) -> Result<PlantedInstance> {
    let mut lines = text.lines().peekable();
    let magic = lines.next().ok_or_else(|| Error::parse("instance", "empty file"))?;
    if magic != "frustbench instance v1" {
        return Err(Error::parse("instance", format!("bad magic line: {magic}")));
    }
    if lines.next() != Some("meta") {
        return Err(Error::parse("instance", "missing meta section"));
    }
    let mut meta: HashMap<&str, &str> = HashMap::new();
    while let Some(&line) = lines.peek() {
        if line == "planted" {
            break;
        }
        let line = lines.next().unwrap();
        let (k, v) = line
            .split_once(' ')
            .ok_or_else(|| Error::parse("instance", format!("bad meta line: {line}")))?;
        meta.insert(k, v);
    }
    let get = |key: &str| -> Result<&str> {
        meta.get(key).copied().ok_or_else(|| Error::parse("instance", format!("missing meta key {key}")))
    };
    let l: u32 = get("L")?.parse().map_err(|_| Error::parse("instance", "bad L"))?;
    let id_l: u32 = match meta.get("idL") {
        Some(v) => v.parse().map_err(|_| Error::parse("instance", "bad idL"))?,
        None => l,
    };
    let alpha = parse_ratio(get("alpha")?)?;
    let m: usize = get("M")?.parse().map_err(|_| Error::parse("instance", "bad M"))?;
    let min_len: usize = get("min_len")?.parse().map_err(|_| Error::parse("instance", "bad min_len"))?;
    let seed: u64 = get("seed")?.parse().map_err(|_| Error::parse("instance", "bad seed"))?;
    let scale_factor: i64 =
        get("scale_factor")?.parse().map_err(|_| Error::parse("instance", "bad scale_factor"))?;
    let ground_energy = parse_ratio(get("ground_energy")?)?;

    if lines.next() != Some("planted") {
        return Err(Error::parse("instance", "missing planted section"));
    }
    let mut planted_lines = Vec::new();
    while let Some(&line) = lines.peek() {
        if line == "clauses" {
            break;
        }
        planted_lines.push(lines.next().unwrap());
    }
    if lines.next() != Some("clauses") {
        return Err(Error::parse("instance", "missing clauses section"));
    }
    let mut clause_lines = Vec::new();
    while let Some(&line) = lines.peek() {
        if line == "couplings" {
            break;
        }
        clause_lines.push(lines.next().unwrap());
    }
    if lines.next() != Some("couplings") {
        return Err(Error::parse("instance", "missing couplings section"));
    }

    let id_limit = crate::chimera::QUBITS_PER_CELL * id_l * id_l;
    let planted = SpinConfig::parse_lines(id_limit, planted_lines.iter())?;

    // Reconstruct the graph: broken = block vertices missing from `planted`.
    let base = crate::chimera::build_chimera(id_l, &[])?;
    let block = base.subgraph(l)?;
    let broken: Vec<u32> =
        block.vertices().iter().copied().filter(|&v| planted.get(v).is_none()).collect();
    let graph = crate::chimera::build_chimera(id_l, &broken)?.subgraph(l)?;
    if !planted.domain_matches(&graph) {
        return Err(Error::parse("instance", "planted section does not cover the graph"));
    }

    let mut clauses = Vec::with_capacity(clause_lines.len());
    for line in clause_lines {
        let (verts, flip) = line
            .split_once(':')
            .ok_or_else(|| Error::parse("instance", format!("bad clause line: {line}")))?;
        let path: Vec<u32> = verts
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse("instance", format!("bad vertex: {t}"))))
            .collect::<Result<_>>()?;
        let flipped: usize =
            flip.trim().parse().map_err(|_| Error::parse("instance", "bad flip index"))?;
        if path.len() < 4 || path.len() % 2 != 0 || flipped >= path.len() {
            return Err(Error::parse("instance", "malformed clause"));
        }
        for k in 0..path.len() {
            let (u, v) = (path[k], path[(k + 1) % path.len()]);
            if graph.edge_index(u, v).is_none() {
                return Err(Error::parse("instance", format!("clause edge ({u},{v}) not in graph")));
            }
        }
        let mut couplings: Vec<i8> = (0..path.len())
            .map(|k| {
                let u = path[k];
                let v = path[(k + 1) % path.len()];
                -(planted.spin(u) * planted.spin(v))
            })
            .collect();
        couplings[flipped] = -couplings[flipped];
        clauses.push(LoopClause { path, couplings, flipped });
    }
    if clauses.len() != m {
        return Err(Error::parse("instance", "clause count does not match meta M"));
    }

    let (raw_couplings, scale, ground_raw) = sum_clauses(&graph, &clauses)?;
    if scale != scale_factor {
        return Err(Error::parse("instance", "stored scale_factor disagrees with clauses"));
    }
    if Ratio::new(ground_raw, scale) != ground_energy {
        return Err(Error::parse("instance", "stored ground_energy disagrees with clauses"));
    }

    // Cross-check the stored couplings section.
    let mut stored = vec![0i64; graph.edge_count()];
    let mut count = 0usize;
    for line in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let u: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse("instance", "bad coupling line"))?;
        let v: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse("instance", "bad coupling line"))?;
        let j: i64 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse("instance", "bad coupling line"))?;
        let e = graph
            .edge_index(u, v)
            .ok_or_else(|| Error::parse("instance", format!("coupling edge ({u},{v}) not in graph")))?;
        stored[e] = j;
        count += 1;
    }
    if count != graph.edge_count() || stored != raw_couplings {
        return Err(Error::parse("instance", "couplings section disagrees with clauses"));
    }

    Ok(PlantedInstance {
        graph,
        clauses,
        raw_couplings,
        scale_factor,
        planted,
        alpha,
        min_len,
        seed,
        ground_raw,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chimera::build_chimera;

    fn c(l: u32) -> ChimeraGraph {
        build_chimera(l, &[]).unwrap()
    }

    #[test]
    fn planting_is_deterministic() {
        let g = c(2);
        let a = plant_solution(&g, 7);
        let b = plant_solution(&g, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 32);
        assert_ne!(a, plant_solution(&g, 8));
    }

    #[test]
    fn planted_mean_spin_is_near_zero() {
        let g = c(2);
        let mut sum = 0i64;
        let mut n = 0i64;
        for seed in 0..10_000u64 {
            let cfg = plant_solution(&g, seed);
            for (_, s) in cfg.iter() {
                sum += s as i64;
                n += 1;
            }
        }
        let mean = sum as f64 / n as f64;
        assert!(mean.abs() < 0.02, "mean spin {mean}");
    }

    #[test]
    fn loops_are_even_and_long_enough() {
        let g = build_chimera(3, &[5, 17, 40]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let loop_ = random_loop(&g, &mut rng, 8, 10_000).unwrap();
            assert!(loop_.len() >= 8);
            assert_eq!(loop_.len() % 2, 0);
            // consecutive adjacency, closing edge included
            for k in 0..loop_.len() {
                let u = loop_[k];
                let v = loop_[(k + 1) % loop_.len()];
                assert!(g.edge_index(u, v).is_some(), "({u},{v}) not an edge");
            }
            // simple cycle: no repeated vertices
            let mut sorted = loop_.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), loop_.len());
        }
    }

    #[test]
    fn k44_loops_have_length_eight_and_alternate_halves() {
        let g = c(1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let loop_ = random_loop(&g, &mut rng, 8, 10_000).unwrap();
            assert_eq!(loop_.len(), 8);
            for k in 0..8 {
                let half = |v: u32| (v % 8) / 4;
                assert_ne!(half(loop_[k]), half(loop_[(k + 1) % 8]));
            }
        }
    }

    #[test]
    fn min_len_four_allows_short_cells() {
        let g = c(1);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut seen4 = false;
        for _ in 0..200 {
            let loop_ = random_loop(&g, &mut rng, 4, 10_000).unwrap();
            assert!(loop_.len() >= 4 && loop_.len() % 2 == 0);
            seen4 |= loop_.len() == 4;
        }
        assert!(seen4);
    }

    #[test]
    fn rejects_bad_min_len() {
        let g = c(1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(random_loop(&g, &mut rng, 7, 10), Err(Error::InvalidMinLen(7))));
        assert!(matches!(random_loop(&g, &mut rng, 2, 10), Err(Error::InvalidMinLen(2))));
    }

    #[test]
    fn clause_has_one_flipped_edge_and_planted_optimum() {
        let g = c(1);
        let planted = SpinConfig::constant(&g, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let path = random_loop(&g, &mut rng, 8, 10_000).unwrap();
        let clause = make_clause(path, &planted, &mut rng);
        let minus: usize = clause.couplings.iter().filter(|&&j| j == -1).count();
        let plus: usize = clause.couplings.iter().filter(|&&j| j == 1).count();
        assert_eq!((minus, plus), (7, 1));
        assert_eq!(clause.energy_raw(&planted), -6);
        assert_eq!(clause.min_energy_raw(), -6);
    }

    #[test]
    fn short_clause_brute_force_confirms_minimum() {
        // An l=4 cycle inside one cell: 0-4-1-5-0.
        let g = c(1);
        let planted = plant_solution(&g, 11);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let clause = make_clause(vec![0, 4, 1, 5], &planted, &mut rng);
        assert_eq!(clause.energy_raw(&planted), -2);
        // Exhaustive over the 16 loop configurations.
        let mut best = i64::MAX;
        for bits in 0..16u32 {
            let mut cfg = planted.clone();
            for (i, &v) in clause.path.iter().enumerate() {
                cfg.set(v, if bits >> i & 1 == 1 { -1 } else { 1 });
            }
            best = best.min(clause.energy_raw(&cfg));
        }
        assert_eq!(best, -2);
    }

    #[test]
    fn single_spin_flips_never_lower_clause_energy() {
        let g = c(2);
        let planted = plant_solution(&g, 23);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let path = random_loop(&g, &mut rng, 8, 10_000).unwrap();
            let clause = make_clause(path, &planted, &mut rng);
            let base = clause.energy_raw(&planted);
            for &v in &clause.path {
                let mut flipped = planted.clone();
                flipped.set(v, -planted.spin(v));
                let delta = clause.energy_raw(&flipped) - base;
                assert!(delta == 0 || delta == 4, "delta {delta}");
            }
        }
    }

    #[test]
    fn clause_density_rounding() {
        let g = c(4);
        let inst = assemble_instance(&g, Ratio::new(1, 10), 1, 8).unwrap();
        assert_eq!(inst.clause_count(), 13); // round(0.1 * 128)
    }

    #[test]
    fn rejects_zero_clause_density() {
        let g = c(2);
        let err = assemble_instance(&g, Ratio::new(1, 1000), 1, 8);
        assert!(matches!(err, Err(Error::EmptyInstance { .. })));
    }

    #[test]
    fn overlapping_clauses_sum_and_rescale() {
        // Two hand-built l=4 clauses sharing edge (0,4) with agreeing signs.
        let g = c(1);
        let planted = SpinConfig::constant(&g, 1);
        let c1 = LoopClause {
            path: vec![0, 4, 1, 5],
            couplings: vec![-1, -1, -1, 1],
            flipped: 3,
        };
        let c2 = LoopClause {
            path: vec![0, 4, 2, 6],
            couplings: vec![-1, -1, -1, 1],
            flipped: 3,
        };
        let (raw, scale, ground) = sum_clauses(&g, &[c1.clone(), c2.clone()]).unwrap();
        let shared = g.edge_index(0, 4).unwrap();
        assert_eq!(raw[shared], -2);
        assert_eq!(scale, 2);
        assert_eq!(ground, -4);
        let _ = (c1.energy_raw(&planted), c2.energy_raw(&planted));
    }

    #[test]
    fn energy_invariants() {
        let g = c(2);
        let inst = assemble_instance(&g, Ratio::new(3, 10), 17, 8).unwrap();
        assert_eq!(energy_raw(&inst, &inst.planted).unwrap(), inst.ground_raw);
        assert_eq!(energy(&inst, &inst.planted).unwrap(), inst.ground_energy());
        // Z2 symmetry.
        let flipped = inst.planted.global_flip();
        assert_eq!(energy_raw(&inst, &flipped).unwrap(), inst.ground_raw);
        // Domain mismatch rejected.
        let other = SpinConfig::constant(&c(1), 1);
        assert!(matches!(energy_raw(&inst, &other), Err(Error::DomainMismatch)));
    }

    #[test]
    fn clause_decomposability_on_random_configs() {
        let g = c(2);
        let inst = assemble_instance(&g, Ratio::new(1, 4), 99, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let mut cfg = inst.planted.clone();
            for &v in inst.graph.vertices() {
                if rng.random::<bool>() {
                    cfg.set(v, -cfg.spin(v));
                }
            }
            let total = energy_raw(&inst, &cfg).unwrap();
            let by_clauses: i64 = inst.clauses.iter().map(|cl| cl.energy_raw(&cfg)).sum();
            assert_eq!(total, by_clauses);
        }
    }

    #[test]
    fn single_clause_frustration_fraction() {
        // Force M=1 on ideal C_2: alpha=1/32 rounds to 1.
        let g = c(2);
        let inst = assemble_instance(&g, Ratio::new(1, 32), 5, 8).unwrap();
        assert_eq!(inst.clause_count(), 1);
        assert_eq!(frustration_fraction(&inst), Ratio::new(1, 80));
    }

    #[test]
    fn noise_bounds_and_identity() {
        let g = c(2);
        let inst = assemble_instance(&g, Ratio::new(1, 4), 42, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let clean = inject_noise(&inst, 0.0, &mut rng);
        for (idx, &j) in inst.raw_couplings.iter().enumerate() {
            assert_eq!(clean.couplings[idx], j as f64 / inst.scale_factor as f64);
        }
        let noisy = inject_noise(&inst, 0.05, &mut rng);
        for (idx, &j) in inst.raw_couplings.iter().enumerate() {
            let nominal = j as f64 / inst.scale_factor as f64;
            if j == 0 {
                assert_eq!(noisy.couplings[idx], 0.0);
            } else {
                assert!((noisy.couplings[idx] - nominal).abs() <= 0.05 + 1e-12);
            }
        }
    }

    #[test]
    fn file_round_trip_is_exact_and_deterministic() {
        let g = build_chimera(2, &[7]).unwrap();
        let inst = assemble_instance(&g, Ratio::new(1, 5), 31, 8).unwrap();
        let text = instance_to_text(&inst);
        let again = instance_to_text(&assemble_instance(&g, Ratio::new(1, 5), 31, 8).unwrap());
        assert_eq!(text, again, "generation must be deterministic");
        let back = instance_from_text(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(instance_to_text(&back), text);
    }

    #[test]
    fn tampered_file_is_rejected() {
        let g = c(1);
        let inst = assemble_instance(&g, Ratio::new(1, 8), 3, 8).unwrap();
        let text = instance_to_text(&inst);
        let tampered = text.replace("scale_factor 1", "scale_factor 2");
        assert!(instance_from_text(&tampered).is_err());
    }
}
