//! HFS-style tree optimizer.
//!
//! The Chimera graph is condensed into supervertices: each unit-cell half
//! (up to 4 qubits) becomes one vertex with a 2^k state space, so the
//! condensed graph is a grid where maximal induced trees are very wide.
//! The driver repeatedly samples a maximal induced tree, exactly minimizes
//! it conditioned on the rest by leaf-to-root dynamic programming over the
//! 16x16 interaction tables, and adopts the result until `stall_limit`
//! consecutive trees bring no improvement.
//!
//! Model time charges `0.625 us * L` per tree, the serial depth of a
//! parallel tree reduction on a C_L problem.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::PlantedInstance;
use crate::records::RunRecord;
use crate::seed::{derive_seed, short_hash};

pub const HFS_US_PER_TREE_PER_L: f64 = 0.625;

#[derive(Debug, Clone)]
pub struct SuperVertex {
    /// Alive qubit ids, ascending; state bit k = 1 means qubit k is spin -1.
    pub qubits: Vec<u32>,
    pub cell: (u32, u32),
    /// 0 = horizontal half, 1 = vertical half.
    pub half: u8,
}

impl SuperVertex {
    pub fn states(&self) -> usize {
        1usize << self.qubits.len()
    }

    #[inline]
    pub fn spin(state: u16, bit: usize) -> i64 {
        if state >> bit & 1 == 0 {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuperEdge {
    pub a: u32,
    pub b: u32,
    /// Raw interaction table, indexed `state_a * states_b + state_b`.
    pub table: Vec<i64>,
}

impl SuperEdge {
    #[inline]
    fn at(&self, states_b: usize, sa: usize, sb: usize) -> i64 {
        self.table[sa * states_b + sb]
    }
}

/// Condensed view of one instance.
#[derive(Debug, Clone)]
pub struct SuperGraph {
    pub svs: Vec<SuperVertex>,
    pub edges: Vec<SuperEdge>,
    /// Per supervertex: (neighbor sv, edge index).
    pub adj: Vec<Vec<(u32, u32)>>,
    /// Per-supervertex internal energy per state. Chimera halves carry no
    /// internal couplings, so these are zero, but they participate in all
    /// sums so the decomposition stays explicit.
    pub internal: Vec<Vec<i64>>,
    pub scale: i64,
    pub ground_raw: i64,
    pub l: u32,
}

/// Builds the supervertex condensation of an instance. The interaction
/// tables reproduce the instance energy exactly: every graph edge lands in
/// exactly one superedge bucket.
pub fn condense(inst: &PlantedInstance) -> Result<SuperGraph> {
    let graph = &inst.graph;
    let id_l = graph.id_l();
    let l = graph.l();
    let raw = |u: u32, v: u32| -> i64 {
        graph.edge_index(u, v).map(|e| inst.raw_couplings[e]).unwrap_or(0)
    };

    let mut svs: Vec<SuperVertex> = Vec::new();
    let mut index: Vec<Option<u32>> = vec![None; (id_l * id_l * 2) as usize];
    for r in 0..l {
        for c in 0..l {
            let cell = r * id_l + c;
            for half in 0..2u8 {
                let base = 8 * cell + 4 * half as u32;
                let qubits: Vec<u32> = (base..base + 4).filter(|&q| graph.contains(q)).collect();
                if qubits.is_empty() {
                    continue;
                }
                index[(cell * 2 + half as u32) as usize] = Some(svs.len() as u32);
                svs.push(SuperVertex { qubits, cell: (r, c), half });
            }
        }
    }

    let sv_at = |r: u32, c: u32, half: u8| -> Option<u32> {
        index[((r * id_l + c) * 2 + half as u32) as usize]
    };

    let mut edges: Vec<SuperEdge> = Vec::new();
    let mut covered = 0usize;
    {
        let mut push_edge = |a: u32, b: u32, pairs: &[(u32, u32)]| {
            let (na, nb) = (svs[a as usize].states(), svs[b as usize].states());
            let mut table = vec![0i64; na * nb];
            for (bit_a, &qa) in svs[a as usize].qubits.iter().enumerate() {
                for (bit_b, &qb) in svs[b as usize].qubits.iter().enumerate() {
                    if !pairs.contains(&(qa, qb)) {
                        continue;
                    }
                    covered += 1;
                    let j = raw(qa, qb);
                    for sa in 0..na {
                        for sb in 0..nb {
                            table[sa * nb + sb] += j
                                * SuperVertex::spin(sa as u16, bit_a)
                                * SuperVertex::spin(sb as u16, bit_b);
                        }
                    }
                }
            }
            edges.push(SuperEdge { a, b, table });
        };

        for r in 0..l {
            for c in 0..l {
                // Intra-cell: all alive K_{4,4} pairs.
                if let (Some(a), Some(b)) = (sv_at(r, c, 0), sv_at(r, c, 1)) {
                    let pairs: Vec<(u32, u32)> = svs[a as usize]
                        .qubits
                        .iter()
                        .flat_map(|&qa| svs[b as usize].qubits.iter().map(move |&qb| (qa, qb)))
                        .collect();
                    push_edge(a, b, &pairs);
                }
                // Horizontal couplers: same qubit offset, row neighbor.
                if c + 1 < l {
                    if let (Some(a), Some(b)) = (sv_at(r, c, 0), sv_at(r, c + 1, 0)) {
                        let pairs: Vec<(u32, u32)> = svs[a as usize]
                            .qubits
                            .iter()
                            .filter_map(|&qa| {
                                let qb = qa + 8;
                                svs[b as usize].qubits.contains(&qb).then_some((qa, qb))
                            })
                            .collect();
                        push_edge(a, b, &pairs);
                    }
                }
                // Vertical couplers.
                if r + 1 < l {
                    if let (Some(a), Some(b)) = (sv_at(r, c, 1), sv_at(r + 1, c, 1)) {
                        let pairs: Vec<(u32, u32)> = svs[a as usize]
                            .qubits
                            .iter()
                            .filter_map(|&qa| {
                                let qb = qa + 8 * id_l;
                                svs[b as usize].qubits.contains(&qb).then_some((qa, qb))
                            })
                            .collect();
                        push_edge(a, b, &pairs);
                    }
                }
            }
        }
    }
    if covered != graph.edge_count() {
        return Err(Error::Internal(format!(
            "condense covered {covered} of {} edges",
            graph.edge_count()
        )));
    }

    let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); svs.len()];
    for (e, edge) in edges.iter().enumerate() {
        adj[edge.a as usize].push((edge.b, e as u32));
        adj[edge.b as usize].push((edge.a, e as u32));
    }
    let internal = svs.iter().map(|sv| vec![0i64; sv.states()]).collect();

    Ok(SuperGraph {
        svs,
        edges,
        adj,
        internal,
        scale: inst.scale_factor,
        ground_raw: inst.ground_raw,
        l,
    })
}

impl SuperGraph {
    /// Total raw energy of a full supervertex state assignment.
    pub fn energy(&self, states: &[u16]) -> i64 {
        let mut e: i64 = self
            .edges
            .iter()
            .map(|edge| {
                let nb = self.svs[edge.b as usize].states();
                edge.at(nb, states[edge.a as usize] as usize, states[edge.b as usize] as usize)
            })
            .sum();
        for (sv, &s) in states.iter().enumerate() {
            e += self.internal[sv][s as usize];
        }
        e
    }
}

/// An induced tree: the subgraph induced by `order` is connected and
/// acyclic, rooted at `order[0]`, parents preceding children.
#[derive(Debug, Clone)]
pub struct InducedTree {
    pub order: Vec<u32>,
    /// Position of the parent in `order` (unused for the root).
    pub parent_pos: Vec<u32>,
    /// Connecting superedge index (unused for the root).
    pub parent_edge: Vec<u32>,
}

impl InducedTree {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Randomized greedy maximal induced tree: grow from a random seed vertex,
/// adding a uniformly random candidate with exactly one edge into the tree
/// until none remains.
pub fn sample_induced_tree(sg: &SuperGraph, rng: &mut impl Rng) -> InducedTree {
    let n = sg.svs.len();
    let mut links = vec![0u8; n]; // edges into the current tree
    let mut in_tree = vec![false; n];
    let mut pos_of = vec![u32::MAX; n];
    let start = rng.random_range(0..n) as u32;
    let mut tree =
        InducedTree { order: vec![start], parent_pos: vec![u32::MAX], parent_edge: vec![u32::MAX] };
    in_tree[start as usize] = true;
    pos_of[start as usize] = 0;
    for &(u, _) in &sg.adj[start as usize] {
        links[u as usize] += 1;
    }
    let mut candidates: Vec<u32> = Vec::with_capacity(n);
    loop {
        candidates.clear();
        candidates.extend((0..n as u32).filter(|&v| !in_tree[v as usize] && links[v as usize] == 1));
        if candidates.is_empty() {
            return tree;
        }
        let v = candidates[rng.random_range(0..candidates.len())];
        let (parent, edge) = sg.adj[v as usize]
            .iter()
            .copied()
            .find(|&(u, _)| in_tree[u as usize])
            .expect("candidate has one tree link");
        pos_of[v as usize] = tree.order.len() as u32;
        tree.order.push(v);
        tree.parent_pos.push(pos_of[parent as usize]);
        tree.parent_edge.push(edge);
        in_tree[v as usize] = true;
        for &(u, _) in &sg.adj[v as usize] {
            links[u as usize] += 1;
        }
    }
}

/// Deterministic comb-shaped induced tree: the horizontal halves of one
/// spine row plus every vertical half. Requires all halves present.
pub fn comb_tree(sg: &SuperGraph, spine_row: u32) -> Result<InducedTree> {
    let l = sg.l;
    if spine_row >= l {
        return Err(Error::InvalidParams(format!("spine row {spine_row} >= L={l}")));
    }
    let mut index = std::collections::HashMap::new();
    for (i, sv) in sg.svs.iter().enumerate() {
        index.insert((sv.cell, sv.half), i as u32);
    }
    let lookup = |r: u32, c: u32, half: u8| -> Result<u32> {
        index.get(&((r, c), half)).copied().ok_or_else(|| {
            Error::InvalidParams(format!(
                "comb tree needs all halves; ({r},{c}) half {half} missing"
            ))
        })
    };
    let edge_between = |a: u32, b: u32| -> u32 {
        sg.adj[a as usize].iter().find(|&&(u, _)| u == b).expect("adjacent supervertices").1
    };

    let mut tree =
        InducedTree { order: Vec::new(), parent_pos: Vec::new(), parent_edge: Vec::new() };
    let mut pos = std::collections::HashMap::new();
    let mut push = |tree: &mut InducedTree,
                    pos: &mut std::collections::HashMap<u32, u32>,
                    v: u32,
                    parent: Option<u32>| {
        let p = tree.order.len() as u32;
        tree.order.push(v);
        match parent {
            None => {
                tree.parent_pos.push(u32::MAX);
                tree.parent_edge.push(u32::MAX);
            }
            Some(par) => {
                tree.parent_pos.push(pos[&par]);
                tree.parent_edge.push(edge_between(par, v));
            }
        }
        pos.insert(v, p);
    };

    // Spine: horizontal halves of the chosen row, left to right.
    let mut prev = lookup(spine_row, 0, 0)?;
    push(&mut tree, &mut pos, prev, None);
    for c in 1..l {
        let v = lookup(spine_row, c, 0)?;
        push(&mut tree, &mut pos, v, Some(prev));
        prev = v;
    }
    // Teeth: each column's vertical halves, anchored at the spine cell.
    for c in 0..l {
        let anchor_h = lookup(spine_row, c, 0)?;
        let anchor_v = lookup(spine_row, c, 1)?;
        push(&mut tree, &mut pos, anchor_v, Some(anchor_h));
        for r in (0..spine_row).rev() {
            let v = lookup(r, c, 1)?;
            push(&mut tree, &mut pos, v, Some(lookup(r + 1, c, 1)?));
        }
        for r in spine_row + 1..l {
            let v = lookup(r, c, 1)?;
            push(&mut tree, &mut pos, v, Some(lookup(r - 1, c, 1)?));
        }
    }
    Ok(tree)
}

/// Exact conditional minimization of a tree given the states of all other
/// supervertices. Leaf-to-root DP over the interaction tables, then a
/// root-to-leaf argmin backtrace; ties break toward the lowest state index.
/// Returns the new tree states (aligned to `tree.order`) and the total
/// energy of the combined assignment.
pub fn tree_minimize(sg: &SuperGraph, tree: &InducedTree, rest: &[u16]) -> (Vec<u16>, i64) {
    let k = tree.len();
    let mut in_tree = vec![false; sg.svs.len()];
    for &v in &tree.order {
        in_tree[v as usize] = true;
    }

    // Base cost: internal energy plus boundary interactions with the rest.
    let mut cost: Vec<Vec<i64>> = tree
        .order
        .iter()
        .map(|&v| {
            let v = v as usize;
            let n_states = sg.svs[v].states();
            let mut c = sg.internal[v].clone();
            for &(u, e) in &sg.adj[v] {
                if in_tree[u as usize] {
                    continue;
                }
                let edge = &sg.edges[e as usize];
                let nb = sg.svs[edge.b as usize].states();
                let su = rest[u as usize] as usize;
                for (s, cs) in c.iter_mut().enumerate().take(n_states) {
                    *cs += if edge.a as usize == v { edge.at(nb, s, su) } else { edge.at(nb, su, s) };
                }
            }
            c
        })
        .collect();

    // Leaf-to-root pass: children appear after parents in `order`.
    let mut best_child_state: Vec<Vec<u16>> = vec![Vec::new(); k];
    for p in (1..k).rev() {
        let v = tree.order[p] as usize;
        let parent_pos = tree.parent_pos[p] as usize;
        let edge = &sg.edges[tree.parent_edge[p] as usize];
        let nb = sg.svs[edge.b as usize].states();
        let parent_states = cost[parent_pos].len();
        let mut msg = vec![i64::MAX; parent_states];
        let mut arg = vec![0u16; parent_states];
        for sp in 0..parent_states {
            for sc in 0..cost[p].len() {
                let w = if edge.a as usize == v { edge.at(nb, sc, sp) } else { edge.at(nb, sp, sc) };
                let total = cost[p][sc] + w;
                if total < msg[sp] {
                    msg[sp] = total;
                    arg[sp] = sc as u16;
                }
            }
        }
        best_child_state[p] = arg;
        for sp in 0..parent_states {
            cost[parent_pos][sp] += msg[sp];
        }
    }

    // Root argmin (ties to lowest state), then forward assignment.
    let mut states = vec![0u16; k];
    let root_best = cost[0]
        .iter()
        .enumerate()
        .min_by_key(|&(s, &c)| (c, s))
        .map(|(s, _)| s as u16)
        .expect("non-empty state space");
    states[0] = root_best;
    for p in 1..k {
        states[p] = best_child_state[p][states[tree.parent_pos[p] as usize] as usize];
    }

    let mut combined = rest.to_vec();
    for (p, &v) in tree.order.iter().enumerate() {
        combined[v as usize] = states[p];
    }
    (states, sg.energy(&combined))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HfsParams {
    pub stall_limit: u32,
}

impl HfsParams {
    pub fn new(stall_limit: u32) -> Result<HfsParams> {
        if stall_limit < 1 {
            return Err(Error::InvalidParams("stall_limit must be >= 1".into()));
        }
        Ok(HfsParams { stall_limit })
    }

    pub fn canonical_string(&self) -> String {
        format!("hfs stall={}", self.stall_limit)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HfsOutcome {
    pub best_raw: i64,
    pub success: bool,
    pub trees_used: u32,
    pub wall_model_time_us: f64,
}

/// One optimizer execution: random initial supervertex states, then sampled
/// maximal trees until `stall_limit` consecutive trees give no improvement.
pub fn hfs_solve(sg: &SuperGraph, params: &HfsParams, seed: u64) -> HfsOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut states: Vec<u16> =
        sg.svs.iter().map(|sv| rng.random_range(0..sv.states()) as u16).collect();
    let mut energy = sg.energy(&states);
    let mut trees_used = 0u32;
    let mut stall = 0u32;
    while stall < params.stall_limit {
        let tree = sample_induced_tree(sg, &mut rng);
        let (tree_states, new_energy) = tree_minimize(sg, &tree, &states);
        debug_assert!(new_energy <= energy, "tree minimization increased the energy");
        for (p, &v) in tree.order.iter().enumerate() {
            states[v as usize] = tree_states[p];
        }
        trees_used += 1;
        if new_energy < energy {
            stall = 0;
        } else {
            stall += 1;
        }
        energy = new_energy;
    }
    HfsOutcome {
        best_raw: energy,
        success: energy == sg.ground_raw,
        trees_used,
        wall_model_time_us: trees_used as f64 * HFS_US_PER_TREE_PER_L * sg.l as f64,
    }
}

/// Batch of independent executions with derived per-run seeds.
/// Returns the RunRecord (per-run time = mean model time) plus every
/// outcome for TTS-distribution analysis.
pub fn hfs_batch(
    sg: &SuperGraph,
    params: &HfsParams,
    n_runs: u64,
    master_seed: u64,
    instance_id: &str,
) -> Result<(RunRecord, Vec<HfsOutcome>)> {
    if n_runs < 1 {
        return Err(Error::InvalidParams("n_runs must be >= 1".into()));
    }
    if instance_id.contains(char::is_whitespace) {
        return Err(Error::InvalidParams(format!(
            "instance id {instance_id:?} contains whitespace"
        )));
    }
    let params_hash = short_hash(&params.canonical_string());
    let outcomes: Vec<HfsOutcome> = (0..n_runs)
        .into_par_iter()
        .map(|i| {
            let seed = derive_seed(master_seed, &["run", instance_id, &params_hash, &i.to_string()]);
            hfs_solve(sg, params, seed)
        })
        .collect();
    let successes = outcomes.iter().filter(|o| o.success).count() as u64;
    let mean_time = outcomes.iter().map(|o| o.wall_model_time_us).sum::<f64>() / n_runs as f64;
    let record = RunRecord {
        instance_id: instance_id.to_string(),
        solver: "hfs".to_string(),
        params_hash,
        runs: n_runs,
        successes,
        tau_per_run_us: mean_time,
        mode: "hfs".to_string(),
    };
    Ok((record, outcomes))
}

/// Histogram of (trees_used, success) over executions, the persisted form
/// of the empirical runtime distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HfsHistEntry {
    pub instance_id: String,
    pub params_hash: String,
    pub trees_used: u32,
    pub success: bool,
    pub count: u64,
}

pub fn histogram(instance_id: &str, params_hash: &str, outcomes: &[HfsOutcome]) -> Vec<HfsHistEntry> {
    let mut map: std::collections::BTreeMap<(u32, bool), u64> = std::collections::BTreeMap::new();
    for o in outcomes {
        *map.entry((o.trees_used, o.success)).or_insert(0) += 1;
    }
    map.into_iter()
        .map(|((trees_used, success), count)| HfsHistEntry {
            instance_id: instance_id.to_string(),
            params_hash: params_hash.to_string(),
            trees_used,
            success,
            count,
        })
        .collect()
}

pub fn hist_to_lines(entries: &[HfsHistEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&format!(
            "{} {} {} {} {}\n",
            e.instance_id, e.params_hash, e.trees_used, e.success as u8, e.count
        ));
    }
    out
}

pub fn hist_from_text(text: &str) -> Result<Vec<HfsHistEntry>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 5 {
            return Err(Error::parse("hfs histogram", format!("expected 5 fields: {line}")));
        }
        let bad = || Error::parse("hfs histogram", format!("bad line: {line}"));
        out.push(HfsHistEntry {
            instance_id: f[0].to_string(),
            params_hash: f[1].to_string(),
            trees_used: f[2].parse().map_err(|_| bad())?,
            success: match f[3] {
                "0" => false,
                "1" => true,
                _ => return Err(bad()),
            },
            count: f[4].parse().map_err(|_| bad())?,
        });
    }
    Ok(out)
}

/// Mean model time to first success over a sequence of i.i.d. executions:
/// failures cost their full runtime and the terminating success adds its
/// own, i.e. (fails/successes) * mean(fail time) + mean(success time).
/// None when no execution succeeded.
pub fn tts_from_histogram(entries: &[(u32, bool, u64)], us_per_tree: f64) -> Option<f64> {
    let mut n_s = 0u64;
    let mut n_f = 0u64;
    let mut t_s = 0.0f64;
    let mut t_f = 0.0f64;
    for &(trees, success, count) in entries {
        let t = trees as f64 * us_per_tree * count as f64;
        if success {
            n_s += count;
            t_s += t;
        } else {
            n_f += count;
            t_f += t;
        }
    }
    if n_s == 0 {
        return None;
    }
    let mean_s = t_s / n_s as f64;
    let mean_f = if n_f == 0 { 0.0 } else { t_f / n_f as f64 };
    Some((n_f as f64 / n_s as f64) * mean_f + mean_s)
}
