//! Exact ground-state enumeration by bucket elimination.
//!
//! Every clause is a frustrated loop whose minimum-energy configurations
//! are easy to list exhaustively (loop length does not scale with the
//! problem). The planted construction makes the ground states of the total
//! Hamiltonian exactly the joint satisfiers of all per-clause minimizer
//! tables, so variable elimination over those tables enumerates the ground
//! manifold: eliminate variables one at a time (joining the tables that
//! contain each), then back-substitute through the saved buckets to grow
//! solutions one variable at a time.
//!
//! Degeneracy is counted over the participating spins and multiplied by
//! 2^n_uq for the untouched ones.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::instance::{energy_raw, PlantedInstance};
use crate::spins::SpinConfig;

pub const DEFAULT_SOLUTION_CAP: u64 = 100_000;
pub const DEFAULT_ROW_BUDGET: usize = 1 << 24;
pub const DEFAULT_MAX_CLAUSE_LEN: usize = 24;

/// Allowed assignments for a subset of variables. Row bit i gives the spin
/// of `scope[i]`: 0 means +1, 1 means -1. Rows are sorted and distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintTable {
    pub scope: Vec<u32>,
    pub rows: Vec<u64>,
}

impl ConstraintTable {
    #[inline]
    pub fn spin_in_row(row: u64, pos: usize) -> i8 {
        if row >> pos & 1 == 0 {
            1
        } else {
            -1
        }
    }
}

/// One minimizer table per clause, found by exhaustive scan over the
/// loop's 2^len configurations.
pub fn clause_tables(inst: &PlantedInstance) -> Result<Vec<ConstraintTable>> {
    clause_tables_with(inst, DEFAULT_MAX_CLAUSE_LEN)
}

pub fn clause_tables_with(inst: &PlantedInstance, max_len: usize) -> Result<Vec<ConstraintTable>> {
    let mut tables = Vec::with_capacity(inst.clauses.len());
    for clause in &inst.clauses {
        let len = clause.len();
        if len > max_len {
            return Err(Error::ClauseTooLong { len, max: max_len });
        }
        let mut scope: Vec<u32> = clause.path.clone();
        scope.sort_unstable();
        let pos_of: HashMap<u32, usize> =
            scope.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let target = clause.min_energy_raw();
        let mut rows = Vec::new();
        for bits in 0u64..(1u64 << len) {
            let mut e = 0i64;
            for k in 0..len {
                let u = clause.path[k];
                let v = clause.path[(k + 1) % len];
                let su = ConstraintTable::spin_in_row(bits, pos_of[&u]);
                let sv = ConstraintTable::spin_in_row(bits, pos_of[&v]);
                e += clause.couplings[k] as i64 * su as i64 * sv as i64;
            }
            if e == target {
                rows.push(bits);
            }
        }
        tables.push(ConstraintTable { scope, rows });
    }
    Ok(tables)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EliminationHeuristic {
    #[default]
    MinDegree,
    MinFill,
}

/// Greedy elimination order on the clause-scope interaction graph.
/// Simulated elimination with fill-in; ties break toward the lowest id.
pub fn elimination_order(inst: &PlantedInstance) -> Vec<u32> {
    elimination_order_with(inst, EliminationHeuristic::MinDegree)
}

pub fn elimination_order_with(inst: &PlantedInstance, heuristic: EliminationHeuristic) -> Vec<u32> {
    let mut adj: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    for clause in &inst.clauses {
        for &u in &clause.path {
            adj.entry(u).or_default();
        }
        for &u in &clause.path {
            for &v in &clause.path {
                if u != v {
                    adj.get_mut(&u).unwrap().insert(v);
                }
            }
        }
    }
    let mut order = Vec::with_capacity(adj.len());
    while !adj.is_empty() {
        let pick = match heuristic {
            EliminationHeuristic::MinDegree => adj
                .iter()
                .map(|(&v, nbrs)| (nbrs.len(), v))
                .min()
                .map(|(_, v)| v)
                .unwrap(),
            EliminationHeuristic::MinFill => adj
                .iter()
                .map(|(&v, nbrs)| {
                    let nb: Vec<u32> = nbrs.iter().copied().collect();
                    let mut fill = 0usize;
                    for i in 0..nb.len() {
                        for j in i + 1..nb.len() {
                            if !adj[&nb[i]].contains(&nb[j]) {
                                fill += 1;
                            }
                        }
                    }
                    (fill, v)
                })
                .min()
                .map(|(_, v)| v)
                .unwrap(),
        };
        let nbrs: Vec<u32> = adj.remove(&pick).unwrap().into_iter().collect();
        for &u in &nbrs {
            adj.get_mut(&u).unwrap().remove(&pick);
        }
        for i in 0..nbrs.len() {
            for j in i + 1..nbrs.len() {
                adj.get_mut(&nbrs[i]).unwrap().insert(nbrs[j]);
                adj.get_mut(&nbrs[j]).unwrap().insert(nbrs[i]);
            }
        }
        order.push(pick);
    }
    order
}

/// Saved join of all tables containing one eliminated variable.
#[derive(Debug, Clone)]
pub struct Bucket {
    pub var: u32,
    pub scope: Vec<u32>,
    pub rows: Vec<u64>,
}

#[derive(Debug, Clone)]
pub enum EliminationOutcome {
    Buckets(Vec<Bucket>),
    /// An empty joined table: the constraint set is unsatisfiable.
    Contradiction { var: u32 },
}

fn join(a: &ConstraintTable, b: &ConstraintTable, row_budget: usize) -> Result<ConstraintTable> {
    let scope: Vec<u32> = {
        let mut s: Vec<u32> = a.scope.iter().chain(b.scope.iter()).copied().collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    if scope.len() > 63 {
        return Err(Error::ScopeTooWide(scope.len()));
    }
    let pos: HashMap<u32, usize> = scope.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let a_pos: Vec<usize> = a.scope.iter().map(|v| pos[v]).collect();
    let b_pos: Vec<usize> = b.scope.iter().map(|v| pos[v]).collect();
    let shared: Vec<(usize, usize)> = b
        .scope
        .iter()
        .enumerate()
        .filter_map(|(bi, v)| a.scope.iter().position(|u| u == v).map(|ai| (ai, bi)))
        .collect();

    // Index b's rows by their shared-variable projection.
    let mut by_key: HashMap<u64, Vec<u64>> = HashMap::new();
    for &rb in &b.rows {
        let key = shared.iter().enumerate().fold(0u64, |k, (i, &(_, bi))| {
            k | (((rb >> bi) & 1) << i)
        });
        by_key.entry(key).or_default().push(rb);
    }

    let mut rows = Vec::new();
    for &ra in &a.rows {
        let key = shared.iter().enumerate().fold(0u64, |k, (i, &(ai, _))| {
            k | (((ra >> ai) & 1) << i)
        });
        let Some(matches) = by_key.get(&key) else { continue };
        for &rb in matches {
            let mut row = 0u64;
            for (ai, &p) in a_pos.iter().enumerate() {
                row |= ((ra >> ai) & 1) << p;
            }
            for (bi, &p) in b_pos.iter().enumerate() {
                row |= ((rb >> bi) & 1) << p;
            }
            rows.push(row);
            if rows.len() > row_budget {
                return Err(Error::MemoryGuard { budget: row_budget });
            }
        }
    }
    rows.sort_unstable();
    rows.dedup();
    Ok(ConstraintTable { scope, rows })
}

fn project_out(table: &ConstraintTable, var: u32) -> ConstraintTable {
    let vpos = table.scope.iter().position(|&v| v == var).expect("var in scope");
    let scope: Vec<u32> =
        table.scope.iter().copied().filter(|&v| v != var).collect();
    let mut rows: Vec<u64> = table
        .rows
        .iter()
        .map(|&r| {
            let low = r & ((1u64 << vpos) - 1);
            let high = (r >> (vpos + 1)) << vpos;
            low | high
        })
        .collect();
    rows.sort_unstable();
    rows.dedup();
    ConstraintTable { scope, rows }
}

/// Variable elimination: per eliminated variable, join every table whose
/// scope contains it, save the join as that variable's bucket, and put the
/// projection (without the variable) back into the pool.
pub fn eliminate(
    tables: Vec<ConstraintTable>,
    order: &[u32],
    row_budget: usize,
) -> Result<EliminationOutcome> {
    let mut pool = tables;
    let mut buckets = Vec::with_capacity(order.len());
    for &var in order {
        let (with_var, rest): (Vec<_>, Vec<_>) =
            pool.into_iter().partition(|t| t.scope.contains(&var));
        pool = rest;
        let joined = match with_var.len() {
            // A variable no table mentions is unconstrained.
            0 => ConstraintTable { scope: vec![var], rows: vec![0, 1] },
            _ => {
                let mut it = with_var.into_iter();
                let first = it.next().unwrap();
                let mut acc = first;
                for t in it {
                    acc = join(&acc, &t, row_budget)?;
                }
                acc
            }
        };
        if joined.rows.is_empty() {
            return Ok(EliminationOutcome::Contradiction { var });
        }
        let projected = project_out(&joined, var);
        buckets.push(Bucket { var, scope: joined.scope, rows: joined.rows });
        if projected.scope.is_empty() {
            // Fully reduced: a single empty row means "satisfiable", which
            // carries no further constraint; drop it.
            continue;
        }
        pool.push(projected);
    }
    Ok(EliminationOutcome::Buckets(buckets))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    /// Ground configurations over the full graph (unused spins set to +1),
    /// possibly truncated at the cap.
    pub solutions: Vec<SpinConfig>,
    /// Count over participating spins (equals the cap when capped).
    pub raw_count: u64,
    pub capped: bool,
    /// Non-broken vertices touched by no clause.
    pub n_uq: u32,
    /// raw_count * 2^n_uq.
    pub reported_degeneracy: BigUint,
}

pub struct EnumerateOptions {
    pub cap: u64,
    pub row_budget: usize,
    pub heuristic: EliminationHeuristic,
    pub max_clause_len: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            cap: DEFAULT_SOLUTION_CAP,
            row_budget: DEFAULT_ROW_BUDGET,
            heuristic: EliminationHeuristic::MinDegree,
            max_clause_len: DEFAULT_MAX_CLAUSE_LEN,
        }
    }
}

/// Enumerates all ground states (up to `cap`) and reports the degeneracy.
/// Every emitted configuration is re-verified against the exact ground
/// energy before being returned.
pub fn enumerate_solutions(inst: &PlantedInstance, cap: u64) -> Result<EnumerationResult> {
    enumerate_solutions_with(inst, &EnumerateOptions { cap, ..Default::default() })
}

pub fn enumerate_solutions_with(
    inst: &PlantedInstance,
    opts: &EnumerateOptions,
) -> Result<EnumerationResult> {
    if opts.cap < 1 {
        return Err(Error::InvalidParams("cap must be >= 1".into()));
    }
    let participating = inst.participating();
    let n_uq = (inst.graph.vertex_count() - participating.len()) as u32;

    if participating.is_empty() {
        // No clauses: every configuration is a ground state.
        let sol = SpinConfig::constant(&inst.graph, 1);
        return Ok(EnumerationResult {
            solutions: vec![sol],
            raw_count: 1,
            capped: false,
            n_uq,
            reported_degeneracy: BigUint::from(1u32) << n_uq,
        });
    }

    let tables = clause_tables_with(inst, opts.max_clause_len)?;
    let order = elimination_order_with(inst, opts.heuristic);
    debug_assert_eq!(order.len(), participating.len());
    let buckets = match eliminate(tables, &order, opts.row_budget)? {
        EliminationOutcome::Buckets(b) => b,
        EliminationOutcome::Contradiction { var } => {
            return Err(Error::Internal(format!(
                "contradiction at variable {var} on a planted instance"
            )));
        }
    };

    // Back-substitution in reverse elimination order. Each partial solution
    // is a vector over `participating` (0 = unassigned).
    let part_pos: HashMap<u32, usize> =
        participating.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut partials: Vec<Vec<i8>> = vec![vec![0i8; participating.len()]];
    let mut capped = false;
    for bucket in buckets.iter().rev() {
        let vpos_scope = bucket.scope.iter().position(|&v| v == bucket.var).unwrap();
        let scope_pos: Vec<usize> = bucket.scope.iter().map(|v| part_pos[v]).collect();
        let mut next: Vec<Vec<i8>> = Vec::with_capacity(partials.len());
        for partial in &partials {
            let mut can_plus = false;
            let mut can_minus = false;
            'rows: for &row in &bucket.rows {
                for (i, &pp) in scope_pos.iter().enumerate() {
                    if i == vpos_scope {
                        continue;
                    }
                    let assigned = partial[pp];
                    debug_assert!(assigned != 0, "later-eliminated scope vars must be assigned");
                    if ConstraintTable::spin_in_row(row, i) != assigned {
                        continue 'rows;
                    }
                }
                match ConstraintTable::spin_in_row(row, vpos_scope) {
                    1 => can_plus = true,
                    _ => can_minus = true,
                }
                if can_plus && can_minus {
                    break;
                }
            }
            debug_assert!(can_plus || can_minus, "bucket elimination guarantees extension");
            for (value, allowed) in [(1i8, can_plus), (-1i8, can_minus)] {
                if !allowed {
                    continue;
                }
                if next.len() as u64 >= opts.cap {
                    capped = true;
                    break;
                }
                let mut extended = partial.clone();
                extended[part_pos[&bucket.var]] = value;
                next.push(extended);
            }
        }
        partials = next;
    }

    // Materialize and verify.
    let mut solutions = Vec::with_capacity(partials.len());
    for partial in &partials {
        let mut cfg = SpinConfig::constant(&inst.graph, 1);
        for (i, &v) in participating.iter().enumerate() {
            debug_assert!(partial[i] != 0);
            cfg.set(v, partial[i]);
        }
        let e = energy_raw(inst, &cfg)?;
        if e != inst.ground_raw {
            return Err(Error::Internal(format!(
                "enumerated configuration has energy {e} != ground {}",
                inst.ground_raw
            )));
        }
        solutions.push(cfg);
    }
    let raw_count = solutions.len() as u64;
    if capped && raw_count != opts.cap {
        return Err(Error::Internal(format!(
            "capped enumeration produced {raw_count} != cap {}",
            opts.cap
        )));
    }
    Ok(EnumerationResult {
        solutions,
        raw_count,
        capped,
        n_uq,
        reported_degeneracy: BigUint::from(raw_count) << n_uq,
    })
}

// ---------------------------------------------------------------------------
// Degeneracy records
// ---------------------------------------------------------------------------

/// Per-instance degeneracy line:
/// `instance_id raw_count capped n_uq reported_degeneracy`
/// where capped is 0, 1 or `?` (memory-guard abort, counts unknown).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyRecord {
    pub instance_id: String,
    pub raw_count: Option<u64>,
    pub capped: Option<bool>,
    pub n_uq: u32,
    pub reported: Option<BigUint>,
}

impl DegeneracyRecord {
    pub fn from_result(instance_id: &str, res: &EnumerationResult) -> DegeneracyRecord {
        DegeneracyRecord {
            instance_id: instance_id.to_string(),
            raw_count: Some(res.raw_count),
            capped: Some(res.capped),
            n_uq: res.n_uq,
            reported: Some(res.reported_degeneracy.clone()),
        }
    }

    /// Memory-guard abort: degeneracy unknown.
    pub fn unknown(instance_id: &str, n_uq: u32) -> DegeneracyRecord {
        DegeneracyRecord {
            instance_id: instance_id.to_string(),
            raw_count: None,
            capped: None,
            n_uq,
            reported: None,
        }
    }

    pub fn to_line(&self) -> String {
        let raw = self.raw_count.map_or("?".to_string(), |r| r.to_string());
        let capped = match self.capped {
            Some(true) => "1".to_string(),
            Some(false) => "0".to_string(),
            None => "?".to_string(),
        };
        let rep = self.reported.as_ref().map_or("?".to_string(), |r| r.to_string());
        format!("{} {} {} {} {}", self.instance_id, raw, capped, self.n_uq, rep)
    }

    pub fn parse_line(line: &str) -> Result<DegeneracyRecord> {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 5 {
            return Err(Error::parse("degeneracy record", format!("expected 5 fields: {line}")));
        }
        let bad = |what: &str| Error::parse("degeneracy record", format!("bad {what}: {line}"));
        let raw_count = match f[1] {
            "?" => None,
            t => Some(t.parse().map_err(|_| bad("raw_count"))?),
        };
        let capped = match f[2] {
            "?" => None,
            "0" => Some(false),
            "1" => Some(true),
            _ => return Err(bad("capped")),
        };
        let reported = match f[4] {
            "?" => None,
            t => Some(
                BigUint::parse_bytes(t.as_bytes(), 10).ok_or_else(|| bad("reported"))?,
            ),
        };
        Ok(DegeneracyRecord {
            instance_id: f[0].to_string(),
            raw_count,
            capped,
            n_uq: f[3].parse().map_err(|_| bad("n_uq"))?,
            reported,
        })
    }
}

pub fn parse_degeneracy_records(text: &str) -> Result<Vec<DegeneracyRecord>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(DegeneracyRecord::parse_line)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chimera::build_chimera;
    use crate::instance::{assemble_instance, make_clause, plant_solution, LoopClause};
    use crate::oracle::brute_force_minimizers;
    use num_rational::Ratio;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn clause_table_contains_planted_restriction_and_is_z2_closed() {
        let g = build_chimera(1, &[]).unwrap();
        let planted = plant_solution(&g, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let clause = make_clause(vec![0, 4, 1, 5], &planted, &mut rng);
        let inst_like = {
            let mut inst = assemble_instance(&g, Ratio::new(1, 8), 3, 8).unwrap();
            inst.clauses = vec![clause.clone()];
            inst
        };
        let tables = clause_tables(&inst_like).unwrap();
        assert_eq!(tables.len(), 1);
        let t = &tables[0];
        assert_eq!(t.scope.len(), 4);
        assert!(t.rows.len() >= 2);
        assert_eq!(t.rows.len() % 2, 0);
        // Planted restriction appears as a row.
        let planted_row = t
            .scope
            .iter()
            .enumerate()
            .fold(0u64, |r, (i, &v)| r | (((planted.spin(v) < 0) as u64) << i));
        assert!(t.rows.contains(&planted_row));
        // Z2 closure: complementing all bits maps rows to rows.
        let full = (1u64 << t.scope.len()) - 1;
        for &row in &t.rows {
            assert!(t.rows.contains(&(row ^ full)));
        }
    }

    #[test]
    fn min_degree_order_prefers_chain_endpoints() {
        // Hand-built chain of scopes: {0,1}, {1,2}, {2,3}.
        let g = build_chimera(1, &[]).unwrap();
        let mut inst = assemble_instance(&g, Ratio::new(1, 8), 3, 8).unwrap();
        let fake = |path: Vec<u32>| LoopClause {
            couplings: vec![1; path.len()],
            flipped: 0,
            path,
        };
        inst.clauses = vec![fake(vec![0, 4]), fake(vec![4, 1]), fake(vec![1, 5])];
        let order = elimination_order(&inst);
        // Endpoints (0 and 5) have degree 1 and go first.
        assert_eq!(&order[..2], &[0, 5]);
        let mut sorted = order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 4, 5]);
        assert_eq!(order, elimination_order(&inst));
    }

    #[test]
    fn contradiction_is_detected() {
        let t1 = ConstraintTable { scope: vec![0], rows: vec![0b0] };
        let t2 = ConstraintTable { scope: vec![0], rows: vec![0b1] };
        match eliminate(vec![t1, t2], &[0], 1 << 20).unwrap() {
            EliminationOutcome::Contradiction { var } => assert_eq!(var, 0),
            EliminationOutcome::Buckets(_) => panic!("expected contradiction"),
        }
    }

    #[test]
    fn matches_brute_force_on_small_instances() {
        let g = build_chimera(1, &[]).unwrap();
        for seed in 0..30u64 {
            for alpha in [Ratio::new(1, 8), Ratio::new(1, 2), Ratio::new(1, 1)] {
                let inst = assemble_instance(&g, alpha, seed, 8).unwrap();
                let res = enumerate_solutions(&inst, DEFAULT_SOLUTION_CAP).unwrap();
                let oracle = brute_force_minimizers(&inst, 24).unwrap();
                assert_eq!(res.raw_count, oracle.count, "seed {seed} alpha {alpha}");
                assert!(!res.capped);
                assert_eq!(res.raw_count % 2, 0, "Z2 parity");
                // Solution set closed under global flip.
                for sol in &res.solutions {
                    let flipped = sol.global_flip();
                    assert!(res.solutions.contains(&flipped));
                }
            }
        }
    }

    #[test]
    fn capping_truncates_exactly() {
        let g = build_chimera(2, &[]).unwrap();
        let inst = assemble_instance(&g, Ratio::new(1, 32), 5, 8).unwrap();
        let uncapped = enumerate_solutions(&inst, DEFAULT_SOLUTION_CAP).unwrap();
        assert!(uncapped.raw_count > 4);
        let capped = enumerate_solutions(&inst, 4).unwrap();
        assert!(capped.capped);
        assert_eq!(capped.raw_count, 4);
        assert_eq!(capped.solutions.len(), 4);
    }

    #[test]
    fn unused_qubit_accounting() {
        // Single l=8 clause on ideal C_2: 8 participating of 32.
        let g = build_chimera(2, &[]).unwrap();
        let inst = assemble_instance(&g, Ratio::new(1, 32), 5, 8).unwrap();
        assert_eq!(inst.clause_count(), 1);
        assert_eq!(inst.clauses[0].len(), 8);
        let res = enumerate_solutions(&inst, DEFAULT_SOLUTION_CAP).unwrap();
        assert_eq!(res.n_uq, 24);
        let oracle = brute_force_minimizers(&inst, 24).unwrap();
        assert_eq!(res.raw_count, oracle.count);
        assert_eq!(
            res.reported_degeneracy,
            BigUint::from(res.raw_count) << 24u32
        );
    }

    #[test]
    fn elimination_order_does_not_change_the_result() {
        let g = build_chimera(1, &[]).unwrap();
        for seed in 0..10u64 {
            let inst = assemble_instance(&g, Ratio::new(1, 2), seed, 8).unwrap();
            let a = enumerate_solutions_with(
                &inst,
                &EnumerateOptions { heuristic: EliminationHeuristic::MinDegree, ..Default::default() },
            )
            .unwrap();
            let b = enumerate_solutions_with(
                &inst,
                &EnumerateOptions { heuristic: EliminationHeuristic::MinFill, ..Default::default() },
            )
            .unwrap();
            assert_eq!(a.raw_count, b.raw_count);
            let mut sa: Vec<String> = a.solutions.iter().map(|s| s.to_lines()).collect();
            let mut sb: Vec<String> = b.solutions.iter().map(|s| s.to_lines()).collect();
            sa.sort();
            sb.sort();
            assert_eq!(sa, sb);
        }
    }

    #[test]
    fn memory_guard_trips_on_tiny_budget() {
        let g = build_chimera(2, &[]).unwrap();
        let inst = assemble_instance(&g, Ratio::new(1, 2), 3, 8).unwrap();
        let err = enumerate_solutions_with(
            &inst,
            &EnumerateOptions { row_budget: 2, ..Default::default() },
        );
        assert!(matches!(err, Err(Error::MemoryGuard { .. })));
    }

    #[test]
    fn degeneracy_record_round_trip() {
        let r = DegeneracyRecord {
            instance_id: "L2/a0.1/0".into(),
            raw_count: Some(16),
            capped: Some(false),
            n_uq: 24,
            reported: Some(BigUint::from(16u32) << 24u32),
        };
        let line = r.to_line();
        assert_eq!(DegeneracyRecord::parse_line(&line).unwrap(), r);
        let u = DegeneracyRecord::unknown("x", 3);
        assert_eq!(DegeneracyRecord::parse_line(&u.to_line()).unwrap(), u);
    }
}
