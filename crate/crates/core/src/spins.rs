//! Spin configurations over the non-broken vertices of a Chimera graph.

use std::fmt::Write as _;

use crate::chimera::ChimeraGraph;
use crate::error::{Error, Result};

/// A ±1 assignment to every non-broken vertex of a graph.
///
/// Stored densely over the id space; absent ids carry 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinConfig {
    values: Vec<i8>,
    count: usize,
}

impl SpinConfig {
    /// Empty configuration over an id space (spins filled in later).
    pub fn empty(id_limit: u32) -> SpinConfig {
        SpinConfig { values: vec![0i8; id_limit as usize], count: 0 }
    }

    /// Builds a configuration from `(id, spin)` pairs.
    pub fn from_pairs(id_limit: u32, pairs: impl IntoIterator<Item = (u32, i8)>) -> Result<SpinConfig> {
        let mut values = vec![0i8; id_limit as usize];
        let mut count = 0;
        for (id, s) in pairs {
            if id >= id_limit {
                return Err(Error::VertexOutOfRange { id, limit: id_limit });
            }
            if s != 1 && s != -1 {
                return Err(Error::parse("spin config", format!("spin must be ±1, got {s}")));
            }
            if values[id as usize] != 0 {
                return Err(Error::parse("spin config", format!("duplicate id {id}")));
            }
            values[id as usize] = s;
            count += 1;
        }
        Ok(SpinConfig { values, count })
    }

    /// Constant configuration over the graph's non-broken vertices.
    pub fn constant(graph: &ChimeraGraph, spin: i8) -> SpinConfig {
        let mut values = vec![0i8; graph.id_limit() as usize];
        for &v in graph.vertices() {
            values[v as usize] = spin;
        }
        SpinConfig { values, count: graph.vertex_count() }
    }

    pub fn get(&self, id: u32) -> Option<i8> {
        self.values.get(id as usize).copied().filter(|&s| s != 0)
    }

    /// Spin at `id`; panics on absent ids (callers validate domains first).
    pub fn spin(&self, id: u32) -> i8 {
        self.values[id as usize]
    }

    pub fn set(&mut self, id: u32, spin: i8) {
        debug_assert!(spin == 1 || spin == -1);
        if self.values[id as usize] == 0 {
            self.count += 1;
        }
        self.values[id as usize] = spin;
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i8)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(|(i, &s)| (i as u32, s))
    }

    /// Flips every spin (the Z₂ image).
    pub fn global_flip(&self) -> SpinConfig {
        let values = self.values.iter().map(|&s| -s).collect();
        SpinConfig { values, count: self.count }
    }

    /// Checks the domain equals the graph's non-broken vertex set.
    pub fn domain_matches(&self, graph: &ChimeraGraph) -> bool {
        if self.count != graph.vertex_count() || self.values.len() != graph.id_limit() as usize {
            return false;
        }
        graph.vertices().iter().all(|&v| self.values[v as usize] != 0)
    }

    /// `id:+1` / `id:-1` lines, ascending by id.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for (id, s) in self.iter() {
            let _ = writeln!(out, "{}:{}", id, if s > 0 { "+1" } else { "-1" });
        }
        out
    }

    pub fn parse_lines(id_limit: u32, lines: impl Iterator<Item = impl AsRef<str>>) -> Result<SpinConfig> {
        let mut pairs = Vec::new();
        for line in lines {
            let line = line.as_ref().trim();
            if line.is_empty() {
                continue;
            }
            let (id, s) = line
                .split_once(':')
                .ok_or_else(|| Error::parse("spin config", format!("bad line: {line}")))?;
            let id: u32 =
                id.parse().map_err(|_| Error::parse("spin config", format!("bad id: {id}")))?;
            let s = match s {
                "+1" => 1,
                "-1" => -1,
                other => return Err(Error::parse("spin config", format!("bad spin: {other}"))),
            };
            pairs.push((id, s));
        }
        SpinConfig::from_pairs(id_limit, pairs)
    }
}
