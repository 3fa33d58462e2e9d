//! Dense solver-facing view of an instance.
//!
//! Solvers run on dense vertex indices with CSR adjacency. Dynamics use
//! f64 couplings (rescaled, or noisy for perturbed instances); success
//! accounting always uses the nominal integer couplings, so reaching the
//! planted ground energy is detected exactly.

use crate::instance::{IsingInstance, PlantedInstance};

#[derive(Debug, Clone)]
pub struct IsingProblem {
    pub(crate) n: usize,
    pub(crate) ids: Vec<u32>,
    pub(crate) edges: Vec<(u32, u32)>,
    pub(crate) dyn_j: Vec<f64>,
    pub(crate) raw_j: Vec<i64>,
    pub(crate) adj_off: Vec<u32>,
    pub(crate) adj_nbr: Vec<u32>,
    pub(crate) adj_edge: Vec<u32>,
    /// Bipartition-ordered dense vertex ids: partition A ascending, then B.
    pub(crate) update_order: Vec<u32>,
    pub(crate) scale: i64,
    pub(crate) ground_raw: i64,
}

impl IsingProblem {
    fn build(inst: &PlantedInstance, dyn_j: Vec<f64>) -> IsingProblem {
        let graph = &inst.graph;
        let ids: Vec<u32> = graph.vertices().to_vec();
        let dense_of = |v: u32| ids.binary_search(&v).unwrap() as u32;
        let edges: Vec<(u32, u32)> =
            graph.edges().iter().map(|&(u, v)| (dense_of(u), dense_of(v))).collect();
        let n = ids.len();

        let mut degree = vec![0u32; n];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut adj_off = vec![0u32; n + 1];
        for v in 0..n {
            adj_off[v + 1] = adj_off[v] + degree[v];
        }
        let mut cursor = adj_off[..n].to_vec();
        let mut adj_nbr = vec![0u32; adj_off[n] as usize];
        let mut adj_edge = vec![0u32; adj_off[n] as usize];
        for (e, &(u, v)) in edges.iter().enumerate() {
            adj_nbr[cursor[u as usize] as usize] = v;
            adj_edge[cursor[u as usize] as usize] = e as u32;
            cursor[u as usize] += 1;
            adj_nbr[cursor[v as usize] as usize] = u;
            adj_edge[cursor[v as usize] as usize] = e as u32;
            cursor[v as usize] += 1;
        }

        let mut update_order: Vec<u32> =
            graph.partition_a().iter().map(|&v| dense_of(v)).collect();
        update_order.extend(graph.partition_b().iter().map(|&v| dense_of(v)));

        IsingProblem {
            n,
            ids,
            edges,
            dyn_j,
            raw_j: inst.raw_couplings.clone(),
            adj_off,
            adj_nbr,
            adj_edge,
            update_order,
            scale: inst.scale_factor,
            ground_raw: inst.ground_raw,
        }
    }

    pub fn from_instance(inst: &PlantedInstance) -> IsingProblem {
        let scale = inst.scale_factor as f64;
        let dyn_j = inst.raw_couplings.iter().map(|&j| j as f64 / scale).collect();
        Self::build(inst, dyn_j)
    }

    pub fn from_noisy(noisy: &IsingInstance) -> IsingProblem {
        Self::build(&noisy.nominal, noisy.couplings.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Graph vertex id of each dense index.
    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn ground_raw(&self) -> i64 {
        self.ground_raw
    }

    /// Nominal raw energy of a dense spin assignment.
    pub fn raw_energy(&self, spins: &[i8]) -> i64 {
        self.edges
            .iter()
            .zip(&self.raw_j)
            .map(|(&(u, v), &j)| j * spins[u as usize] as i64 * spins[v as usize] as i64)
            .sum()
    }

    /// Dynamics-side energy (rescaled / noisy couplings).
    pub fn dyn_energy(&self, spins: &[i8]) -> f64 {
        self.edges
            .iter()
            .zip(&self.dyn_j)
            .map(|(&(u, v), &j)| j * spins[u as usize] as f64 * spins[v as usize] as f64)
            .sum()
    }

    /// Local fields (dynamics and raw) of dense vertex `v`.
    #[inline]
    pub(crate) fn locals(&self, v: usize, spins: &[i8]) -> (f64, i64) {
        let mut dl = 0.0f64;
        let mut rl = 0i64;
        for t in self.adj_off[v]..self.adj_off[v + 1] {
            let u = self.adj_nbr[t as usize] as usize;
            let e = self.adj_edge[t as usize] as usize;
            let s = spins[u] as i64;
            rl += self.raw_j[e] * s;
            dl += self.dyn_j[e] * s as f64;
        }
        (dl, rl)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chimera::build_chimera;
    use crate::instance::{assemble_instance, energy_raw};
    use crate::spins::SpinConfig;
    use num_rational::Ratio;

    #[test]
    fn dense_view_reproduces_energies() {
        let g = build_chimera(2, &[9]).unwrap();
        let inst = assemble_instance(&g, Ratio::new(1, 4), 3, 8).unwrap();
        let p = IsingProblem::from_instance(&inst);
        let spins: Vec<i8> = p.ids.iter().map(|&v| inst.planted.spin(v)).collect();
        assert_eq!(p.raw_energy(&spins), inst.ground_raw);

        let mut other = SpinConfig::constant(&inst.graph, 1);
        other.set(4, -1);
        let dense: Vec<i8> = p.ids.iter().map(|&v| other.spin(v)).collect();
        assert_eq!(p.raw_energy(&dense), energy_raw(&inst, &other).unwrap());
        let scaled = p.raw_energy(&dense) as f64 / inst.scale_factor as f64;
        assert!((p.dyn_energy(&dense) - scaled).abs() < 1e-9);
    }

    #[test]
    fn update_order_covers_all_vertices_once() {
        let g = build_chimera(2, &[0, 31]).unwrap();
        let inst = assemble_instance(&g, Ratio::new(1, 4), 5, 8).unwrap();
        let p = IsingProblem::from_instance(&inst);
        let mut seen = vec![false; p.n];
        for &v in &p.update_order {
            assert!(!seen[v as usize]);
            seen[v as usize] = true;
        }
        assert!(seen.iter().all(|&b| b));
    }
}
