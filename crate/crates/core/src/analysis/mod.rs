//! Exact combinatorial analyses over small simple graphs.

mod automorphism;
mod cliques;
mod classes;
mod walks;

pub use automorphism::{automorphism_group, AutomorphismGroup, AutomorphismSummary, Permutation};
pub use classes::{canonical_translate, set_notation, transposition_classes, VertexSetClass};
pub use cliques::{maximal_cliques, maximal_cliques_of, maximal_independent_sets};
pub use walks::{walks, Walk, WalkOptions};

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::graph::{PivotGraph, VertexId};

/// Undirected loop-free graph on `0..n` with bitset adjacency rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<FixedBitSet>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = SimpleGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "loops are not allowed");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].ones()
    }

    pub(crate) fn row(&self, u: usize) -> &FixedBitSet {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> SimpleGraph {
        let n = self.len();
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.is_adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Unweighted shortest-path lengths from `source`; `None` when unreachable.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices have a distance");
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn diameter(&self) -> Diameter {
        let mut best = 0;
        for u in 0..self.len() {
            for d in self.distances_from(u) {
                match d {
                    Some(d) => best = best.max(d),
                    None => return Diameter::Unbounded,
                }
            }
        }
        Diameter::Finite(best)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    /// Some pair of vertices is disconnected.
    Unbounded,
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Unbounded => f.write_str("unbounded"),
        }
    }
}

impl Serialize for Diameter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Diameter::Finite(d) => serializer.serialize_u64(*d as u64),
            Diameter::Unbounded => serializer.serialize_str("unbounded"),
        }
    }
}

/// Graphs with fewer than two vertices report `Finite(0)`.
pub fn diameter(g: &PivotGraph) -> Diameter {
    g.simple().diameter()
}

/// `(ω, α)`: clique number and independence number.
pub fn clique_and_independence_numbers(g: &PivotGraph) -> (usize, usize) {
    let simple = g.simple();
    let omega = cliques::maximal_cliques_of(&simple)
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0);
    let alpha = cliques::maximal_cliques_of(&simple.complement())
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0);
    (omega, alpha)
}

/// 0/1 adjacency matrix.
pub fn adjacency_matrix(g: &SimpleGraph) -> Vec<Vec<u64>> {
    (0..g.len())
        .map(|u| (0..g.len()).map(|v| g.is_adjacent(u, v) as u64).collect())
        .collect()
}

/// Vertex-id sets rewritten as key-label sets, ready for [`transposition_classes`].
pub fn label_sets(g: &PivotGraph, sets: &[Vec<VertexId>]) -> Vec<Vec<crate::pitch::KeyLabel>> {
    sets.iter()
        .map(|set| set.iter().map(|&v| g.label(v)).collect())
        .collect()
}
