//! Brute-force oracles, kept independent of the library's algorithms.
#![allow(dead_code)]

use modugraph::analysis::SimpleGraph;
use modugraph::{KeyFamily, KeyLabel, PitchClass, Scale, ScaleFamily, ScaleKind};
use rand::Rng;

/// Every clique, found by extending in increasing vertex order.
pub fn all_cliques(g: &SimpleGraph) -> Vec<Vec<usize>> {
    fn grow(g: &SimpleGraph, current: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
        for v in start..g.len() {
            if current.iter().all(|&u| g.is_adjacent(u, v)) {
                current.push(v);
                out.push(current.clone());
                grow(g, current, v + 1, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(g, &mut Vec::new(), 0, &mut out);
    out
}

/// Maximal cliques by exhaustive search: cliques no outside vertex extends.
pub fn naive_maximal_cliques(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let mut maximal: Vec<Vec<usize>> = all_cliques(g)
        .into_iter()
        .filter(|c| {
            (0..g.len()).all(|v| c.contains(&v) || !c.iter().all(|&u| g.is_adjacent(u, v)))
        })
        .collect();
    maximal.sort();
    maximal
}

pub fn naive_clique_number(g: &SimpleGraph) -> usize {
    all_cliques(g).iter().map(Vec::len).max().unwrap_or(0)
}

/// Counts every adjacency-preserving bijection by plain depth-first search.
pub fn count_automorphisms(g: &SimpleGraph) -> u64 {
    fn go(g: &SimpleGraph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> u64 {
        let x = map.len();
        if x == g.len() {
            return 1;
        }
        let mut total = 0;
        for y in 0..g.len() {
            if used[y] || (0..x).any(|a| g.is_adjacent(a, x) != g.is_adjacent(map[a], y)) {
                continue;
            }
            used[y] = true;
            map.push(y);
            total += go(g, map, used);
            map.pop();
            used[y] = false;
        }
        total
    }
    go(g, &mut Vec::new(), &mut vec![false; g.len()])
}

pub fn matrix_power(g: &SimpleGraph, k: usize) -> Vec<Vec<u64>> {
    let n = g.len();
    let a: Vec<Vec<u64>> = (0..n)
        .map(|u| (0..n).map(|v| g.is_adjacent(u, v) as u64).collect())
        .collect();
    let mut result: Vec<Vec<u64>> = (0..n)
        .map(|u| (0..n).map(|v| (u == v) as u64).collect())
        .collect();
    for _ in 0..k {
        result = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|m| result[i][m] * a[m][j]).sum())
                    .collect()
            })
            .collect();
    }
    result
}

/// A random set of families with distinct labels and 1-3 random scales each.
pub fn random_families<R: Rng>(rng: &mut R) -> Vec<ScaleFamily> {
    let count = rng.gen_range(2..=16);
    let mut labels: Vec<KeyLabel> = Vec::new();
    while labels.len() < count {
        let family = if rng.gen_bool(0.5) {
            KeyFamily::MajorType
        } else {
            KeyFamily::MinorType
        };
        let label = KeyLabel::new(PitchClass::new(rng.gen_range(0..12)), family);
        if !labels.contains(&label) {
            labels.push(label);
        }
    }
    labels
        .into_iter()
        .map(|label| {
            let scales: Vec<Scale> = (0..rng.gen_range(1..=3))
                .map(|_| {
                    Scale::new(
                        PitchClass::new(rng.gen_range(0..12)),
                        ScaleKind::ALL[rng.gen_range(0..5)],
                    )
                })
                .collect();
            ScaleFamily::new(label, scales).unwrap()
        })
        .collect()
}

/// Parse `"M_i, M_{i+2}, m_{i+11}"` style offset notation into labels at i = 0.
pub fn offsets(notation: &str) -> Vec<KeyLabel> {
    notation
        .split(',')
        .map(|part| {
            let part = part.trim();
            let family = match &part[..1] {
                "M" => KeyFamily::MajorType,
                "m" => KeyFamily::MinorType,
                other => panic!("bad type {other}"),
            };
            let offset: i64 = match part.find('+') {
                Some(p) => part[p + 1..].trim_end_matches('}').parse().unwrap(),
                None => 0,
            };
            KeyLabel::new(PitchClass::new(offset), family)
        })
        .collect()
}
