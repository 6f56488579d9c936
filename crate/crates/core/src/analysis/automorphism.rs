//! Automorphism groups by backtracking search, organised as a stabilizer
//! chain along the base `0, 1, .., n-1`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::SimpleGraph;
use crate::graph::PivotGraph;

/// A permutation of `0..n`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Panics unless `images` is a permutation of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            assert!(x < images.len() && !seen[x], "not a permutation: {images:?}");
            seen[x] = true;
        }
        Permutation(images)
    }

    /// Build from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `x -> other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Non-trivial cycles, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, |acc, l| acc / gcd(acc, l) * l)
    }

    /// Cycle notation with the given point names, e.g. `(M_1, M_11)(M_2, M_10)`.
    pub fn notation(&self, names: &[String]) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let parts: Vec<&str> = c.iter().map(|&x| names[x].as_str()).collect();
                format!("({})", parts.join(", "))
            })
            .collect()
    }

    pub fn is_automorphism_of(&self, g: &SimpleGraph) -> bool {
        self.0.len() == g.len()
            && (0..g.len()).all(|u| {
                (u + 1..g.len()).all(|v| g.is_adjacent(u, v) == g.is_adjacent(self.0[u], self.0[v]))
            })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.0.len()).map(|x| x.to_string()).collect();
        f.write_str(&self.notation(&names))
    }
}

#[derive(Debug, Clone)]
struct Level {
    /// Coset representatives: `transversal[t]` maps the base point to `t`.
    transversal: BTreeMap<usize, Permutation>,
}

/// The full automorphism group of a graph, held as a strong generating set
/// relative to the base `0, 1, .., n-1`.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl AutomorphismGroup {
    pub fn of(g: &SimpleGraph) -> Self {
        let n = g.len();
        let search = Search::new(g);
        let mut generators: Vec<Permutation> = Vec::new();
        let mut levels = vec![
            Level {
                transversal: BTreeMap::new()
            };
            n
        ];
        for point in (0..n).rev() {
            let mut orbit = orbit_transversal(point, &generators, n);
            for target in point + 1..n {
                if orbit.contains_key(&target) {
                    continue;
                }
                if let Some(found) = search.find(point, target) {
                    generators.push(found);
                    orbit = orbit_transversal(point, &generators, n);
                }
            }
            levels[point].transversal = orbit;
        }
        generators.reverse();
        AutomorphismGroup {
            degree: n,
            generators,
            levels,
        }
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Orbit sizes of each base point under its pointwise stabilizer.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.transversal.len()).collect()
    }

    /// Group order, or `None` if it overflows `u128`.
    pub fn order(&self) -> Option<u128> {
        self.orbit_sizes()
            .into_iter()
            .try_fold(1u128, |acc, s| acc.checked_mul(s as u128))
    }

    /// Membership by sifting through the stabilizer chain.
    pub fn contains(&self, p: &Permutation) -> bool {
        if p.len() != self.degree {
            return false;
        }
        let mut h = p.clone();
        for (point, level) in self.levels.iter().enumerate() {
            let t = h.apply(point);
            match level.transversal.get(&t) {
                Some(u) => h = h.then(&u.inverse()),
                None => return false,
            }
        }
        h.is_identity()
    }
}

fn orbit_transversal(
    point: usize,
    generators: &[Permutation],
    n: usize,
) -> BTreeMap<usize, Permutation> {
    let mut transversal = BTreeMap::from([(point, Permutation::identity(n))]);
    let mut queue = VecDeque::from([point]);
    while let Some(x) = queue.pop_front() {
        let to_x = transversal[&x].clone();
        for g in generators {
            let y = g.apply(x);
            if let std::collections::btree_map::Entry::Vacant(slot) = transversal.entry(y) {
                slot.insert(to_x.then(g));
                queue.push_back(y);
            }
        }
    }
    transversal
}

/// Backtracking search for one automorphism fixing `0..point` and sending
/// `point` to `target`. Candidates are pruned by degree and by adjacency to
/// every already-assigned vertex.
struct Search<'a> {
    g: &'a SimpleGraph,
    degrees: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a SimpleGraph) -> Self {
        let degrees = (0..g.len()).map(|u| g.degree(u)).collect();
        Search { g, degrees }
    }

    fn find(&self, point: usize, target: usize) -> Option<Permutation> {
        let n = self.g.len();
        if self.degrees[point] != self.degrees[target] {
            return None;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut order: Vec<usize> = Vec::with_capacity(n);
        for x in 0..point {
            map[x] = x;
            used[x] = true;
        }
        if !self.consistent(&map, point, target) {
            return None;
        }
        map[point] = target;
        used[target] = true;
        // remaining vertices, neighbours of assigned ones first
        let mut placed = vec![false; n];
        placed[..=point].fill(true);
        let mut frontier: VecDeque<usize> = (0..=point).collect();
        while let Some(x) = frontier.pop_front() {
            for y in self.g.neighbors(x) {
                if !placed[y] {
                    placed[y] = true;
                    order.push(y);
                    frontier.push_back(y);
                }
            }
        }
        order.extend((0..n).filter(|&x| !placed[x]));
        if self.extend(&order, 0, &mut map, &mut used) {
            Some(Permutation::from_images(map))
        } else {
            None
        }
    }

    fn consistent(&self, map: &[usize], x: usize, y: usize) -> bool {
        map.iter().enumerate().all(|(a, &b)| {
            b == usize::MAX || a == x || self.g.is_adjacent(x, a) == self.g.is_adjacent(y, b)
        })
    }

    fn extend(&self, order: &[usize], depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let Some(&x) = order.get(depth) else {
            return true;
        };
        for y in 0..map.len() {
            if used[y] || self.degrees[y] != self.degrees[x] || !self.consistent(map, x, y) {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if self.extend(order, depth + 1, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }
}

impl AutomorphismGroup {
    /// Serializable view with generators written over vertex names.
    pub fn describe(&self, names: &[String]) -> AutomorphismSummary {
        AutomorphismSummary {
            order: self.order(),
            generators: self.generators.iter().map(|p| p.notation(names)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismSummary {
    pub order: Option<u128>,
    pub generators: Vec<String>,
}

impl Serialize for AutomorphismSummary {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AutomorphismSummary", 2)?;
        // u128 is not representable in every JSON reader; orders fit in u64 in practice
        s.serialize_field("order", &self.order.and_then(|o| u64::try_from(o).ok()))?;
        s.serialize_field("generators", &self.generators)?;
        s.end()
    }
}

pub fn automorphism_group(g: &PivotGraph) -> AutomorphismGroup {
    AutomorphismGroup::of(&g.simple())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_graph(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::from_cycles(4, &[vec![0, 1, 2]]);
        assert_eq!(p.images(), &[1, 2, 0, 3]);
        assert_eq!(p.order(), 3);
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(p.to_string(), "(0, 1, 2)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn cycle_graph_is_dihedral() {
        for n in 3..9 {
            let group = AutomorphismGroup::of(&cycle_graph(n));
            assert_eq!(group.order(), Some(2 * n as u128), "C_{n}");
            assert!(group.generators().iter().all(|p| p.is_automorphism_of(&cycle_graph(n))));
        }
    }

    #[test]
    fn complete_and_empty_graphs_are_symmetric() {
        let k5 = SimpleGraph::from_edges(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))));
        assert_eq!(AutomorphismGroup::of(&k5).order(), Some(120));
        assert_eq!(AutomorphismGroup::of(&SimpleGraph::new(6)).order(), Some(720));
        assert_eq!(AutomorphismGroup::of(&SimpleGraph::new(0)).order(), Some(1));
    }

    #[test]
    fn asymmetric_tree_has_trivial_group() {
        // smallest asymmetric tree has 7 vertices
        let g = SimpleGraph::from_edges(7, [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)]);
        let group = AutomorphismGroup::of(&g);
        assert_eq!(group.order(), Some(1));
        assert!(group.generators().is_empty());
    }

    #[test]
    fn membership_sift() {
        let g = cycle_graph(6);
        let group = AutomorphismGroup::of(&g);
        let rotation = Permutation::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]);
        let reflection = Permutation::from_cycles(6, &[vec![1, 5], vec![2, 4]]);
        let bogus = Permutation::from_cycles(6, &[vec![0, 1]]);
        assert!(group.contains(&rotation));
        assert!(group.contains(&reflection));
        assert!(group.contains(&rotation.then(&reflection)));
        assert!(!group.contains(&bogus));
    }
}
