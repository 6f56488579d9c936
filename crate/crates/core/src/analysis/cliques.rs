use fixedbitset::FixedBitSet;

use super::SimpleGraph;
use crate::graph::{PivotGraph, VertexId};

/// Every inclusion-maximal clique exactly once (Bron–Kerbosch with Tomita
/// pivoting). Each clique is sorted ascending and the list is sorted.
pub fn maximal_cliques_of(g: &SimpleGraph) -> Vec<Vec<VertexId>> {
    let n = g.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut candidates = FixedBitSet::with_capacity(n);
    candidates.insert_range(..);
    let excluded = FixedBitSet::with_capacity(n);
    expand(g, &mut Vec::new(), candidates, excluded, &mut out);
    for clique in &mut out {
        clique.sort_unstable();
    }
    out.sort();
    out
}

fn expand(
    g: &SimpleGraph,
    current: &mut Vec<VertexId>,
    mut candidates: FixedBitSet,
    mut excluded: FixedBitSet,
    out: &mut Vec<Vec<VertexId>>,
) {
    if candidates.is_clear() {
        if excluded.is_clear() {
            out.push(current.clone());
        }
        return;
    }
    // pivot: the vertex of P ∪ X with most neighbors in P
    let pivot = candidates
        .ones()
        .chain(excluded.ones())
        .max_by_key(|&u| g.row(u).intersection(&candidates).count())
        .expect("P is nonempty");
    let mut branch = candidates.clone();
    branch.difference_with(g.row(pivot));
    for v in branch.ones() {
        let row = g.row(v);
        let mut next_candidates = candidates.clone();
        next_candidates.intersect_with(row);
        let mut next_excluded = excluded.clone();
        next_excluded.intersect_with(row);
        current.push(v);
        expand(g, current, next_candidates, next_excluded, out);
        current.pop();
        candidates.set(v, false);
        excluded.insert(v);
    }
}

pub fn maximal_cliques(g: &PivotGraph) -> Vec<Vec<VertexId>> {
    maximal_cliques_of(&g.simple())
}

/// Maximal cliques of the complement graph.
pub fn maximal_independent_sets(g: &PivotGraph) -> Vec<Vec<VertexId>> {
    maximal_cliques_of(&g.simple().complement())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphPreset;

    #[test]
    fn triangle_with_tail() {
        let g = SimpleGraph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]);
        assert_eq!(maximal_cliques_of(&g), vec![vec![0, 1, 2], vec![2, 3]]);
    }

    #[test]
    fn isolated_vertices_are_singleton_cliques() {
        let g = SimpleGraph::new(3);
        assert_eq!(maximal_cliques_of(&g), vec![vec![0], vec![1], vec![2]]);
        assert!(maximal_cliques_of(&SimpleGraph::new(0)).is_empty());
    }

    #[test]
    fn preset_counts() {
        let major = GraphPreset::Major12.build();
        let cliques = maximal_cliques(&major);
        assert_eq!(cliques.len(), 12);
        assert!(cliques.iter().all(|c| c.len() == 4));
        assert_eq!(maximal_independent_sets(&major).len(), 22);

        let minor = GraphPreset::Minor12.build();
        let cliques = maximal_cliques(&minor);
        assert_eq!(cliques.len(), 64);
        assert!(cliques.iter().all(|c| c.len() == 6));
        assert_eq!(maximal_independent_sets(&minor).len(), 6);
    }
}
