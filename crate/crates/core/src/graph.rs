//! Scale families and the pivot-modulation graph built over them.
//!
//! Two families are adjacent when their merged diatonic triad sets
//! intersect; the intersection is the edge's pivot-chord label set, and its
//! size is the edge multiplicity in the labeled multigraph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::SimpleGraph;
use crate::error::{Error, Result};
use crate::pitch::{KeyFamily, KeyLabel, PitchClass, Scale, ScaleKind, Triad};

/// Index of a vertex in construction order.
pub type VertexId = usize;

/// A graph vertex: one or more scales merged under a key label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleFamily {
    label: KeyLabel,
    scales: Vec<Scale>,
    triads: BTreeSet<Triad>,
}

impl ScaleFamily {
    pub fn new(label: KeyLabel, scales: impl IntoIterator<Item = Scale>) -> Result<Self> {
        let mut members: Vec<Scale> = Vec::new();
        for scale in scales {
            if !members.contains(&scale) {
                members.push(scale);
            }
        }
        if members.is_empty() {
            return Err(Error::EmptyFamily(label.to_string()));
        }
        // first occurrence wins, so an augmented triad keeps the root it was built on
        let mut triads = BTreeSet::new();
        for scale in &members {
            for triad in scale.diatonic_triads() {
                triads.insert(triad);
            }
        }
        Ok(ScaleFamily {
            label,
            scales: members,
            triads,
        })
    }

    /// The preset vertex for `label`: major + mixolydian, or the three minors.
    pub fn standard(label: KeyLabel) -> Self {
        let kinds: &[ScaleKind] = match label.family {
            KeyFamily::MajorType => &[ScaleKind::Major, ScaleKind::Mixolydian],
            KeyFamily::MinorType => &[
                ScaleKind::NaturalMinor,
                ScaleKind::HarmonicMinor,
                ScaleKind::MelodicMinor,
            ],
        };
        ScaleFamily::new(label, kinds.iter().map(|&k| Scale::new(label.tonic, k)))
            .expect("standard families are nonempty")
    }

    pub fn label(&self) -> KeyLabel {
        self.label
    }

    pub fn scales(&self) -> &[Scale] {
        &self.scales
    }

    pub fn triads(&self) -> &BTreeSet<Triad> {
        &self.triads
    }
}

pub fn make_family(label: KeyLabel, scales: impl IntoIterator<Item = Scale>) -> Result<ScaleFamily> {
    ScaleFamily::new(label, scales)
}

/// Shared triads of two distinct families, re-rooted canonically.
pub fn pivots(a: &ScaleFamily, b: &ScaleFamily) -> Result<BTreeSet<Triad>> {
    if a.label == b.label {
        return Err(Error::SameKey(a.label.to_string()));
    }
    Ok(shared_triads(a, b))
}

fn shared_triads(a: &ScaleFamily, b: &ScaleFamily) -> BTreeSet<Triad> {
    a.triads
        .intersection(&b.triads)
        .map(Triad::canonical)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphPreset {
    Major12,
    Minor12,
    Combined24,
}

impl GraphPreset {
    pub const ALL: [GraphPreset; 3] = [
        GraphPreset::Major12,
        GraphPreset::Minor12,
        GraphPreset::Combined24,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphPreset::Major12 => "major12",
            GraphPreset::Minor12 => "minor12",
            GraphPreset::Combined24 => "combined24",
        }
    }

    pub fn families(self) -> Vec<ScaleFamily> {
        let majors = PitchClass::all().map(|pc| KeyLabel::new(pc, KeyFamily::MajorType));
        let minors = PitchClass::all().map(|pc| KeyLabel::new(pc, KeyFamily::MinorType));
        let labels: Vec<KeyLabel> = match self {
            GraphPreset::Major12 => majors.collect(),
            GraphPreset::Minor12 => minors.collect(),
            GraphPreset::Combined24 => majors.chain(minors).collect(),
        };
        labels.into_iter().map(ScaleFamily::standard).collect()
    }

    pub fn build(self) -> PivotGraph {
        PivotGraph::new(self.families()).expect("preset labels are distinct")
    }
}

impl fmt::Display for GraphPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GraphPreset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

pub fn preset(name: &str) -> Result<Vec<ScaleFamily>> {
    Ok(name.parse::<GraphPreset>()?.families())
}

/// Simple graph plus the pivot labels on each edge.
#[derive(Debug, Clone)]
pub struct PivotGraph {
    vertices: Vec<ScaleFamily>,
    index: BTreeMap<KeyLabel, VertexId>,
    /// Keyed by `(u, v)` with `u < v`; only nonempty intersections are stored.
    edges: BTreeMap<(VertexId, VertexId), BTreeSet<Triad>>,
}

impl PivotGraph {
    pub fn new(vertices: Vec<ScaleFamily>) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, family) in vertices.iter().enumerate() {
            if index.insert(family.label, i).is_some() {
                return Err(Error::DuplicateLabel(family.label.to_string()));
            }
        }
        let mut edges = BTreeMap::new();
        for u in 0..vertices.len() {
            for v in u + 1..vertices.len() {
                let shared = shared_triads(&vertices[u], &vertices[v]);
                if !shared.is_empty() {
                    edges.insert((u, v), shared);
                }
            }
        }
        Ok(PivotGraph {
            vertices,
            index,
            edges,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[ScaleFamily] {
        &self.vertices
    }

    pub fn family(&self, v: VertexId) -> &ScaleFamily {
        &self.vertices[v]
    }

    pub fn label(&self, v: VertexId) -> KeyLabel {
        self.vertices[v].label
    }

    pub fn labels(&self) -> Vec<KeyLabel> {
        self.vertices.iter().map(|f| f.label).collect()
    }

    pub fn vertex(&self, label: KeyLabel) -> Result<VertexId> {
        self.index
            .get(&label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of labeled multigraph edges (sum of pivot-set sizes).
    pub fn multiplicity_total(&self) -> usize {
        self.edges.values().map(BTreeSet::len).sum()
    }

    pub fn is_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains_key(&(u.min(v), u.max(v)))
    }

    /// Pivot triads on the edge `{u, v}`; empty for non-edges and loops.
    pub fn pivots_between(&self, u: VertexId, v: VertexId) -> &BTreeSet<Triad> {
        static EMPTY: BTreeSet<Triad> = BTreeSet::new();
        self.edges.get(&(u.min(v), u.max(v))).unwrap_or(&EMPTY)
    }

    pub fn neighbors(&self, u: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.len()).filter(move |&v| self.is_adjacent(u, v))
    }

    pub fn degree(&self, u: VertexId) -> usize {
        self.neighbors(u).count()
    }

    /// Labeled edges as `((u, v), pivots)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = ((VertexId, VertexId), &BTreeSet<Triad>)> {
        self.edges.iter().map(|(&k, v)| (k, v))
    }

    /// Subgraph induced on the given vertices, in the given order.
    pub fn induced(&self, keep: &[VertexId]) -> PivotGraph {
        PivotGraph::new(keep.iter().map(|&v| self.vertices[v].clone()).collect())
            .expect("labels of a valid graph are distinct")
    }

    pub fn simple(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.len());
        for &(u, v) in self.edges.keys() {
            g.add_edge(u, v);
        }
        g
    }
}

pub fn build_pivot_graph(families: Vec<ScaleFamily>) -> Result<PivotGraph> {
    PivotGraph::new(families)
}

/// Connection set `S ⊆ {1..n/2}` when the graph, indexed by construction
/// order, is the circulant `C_n(S)`; `None` otherwise.
pub fn circulant_signature(g: &PivotGraph) -> Option<BTreeSet<usize>> {
    let n = g.len();
    for u in 0..n {
        for v in 0..n {
            if u != v && g.is_adjacent(u, v) != g.is_adjacent(0, (v + n - u) % n) {
                return None;
            }
        }
    }
    Some((1..=n / 2).filter(|&d| g.is_adjacent(0, d)).collect())
}
