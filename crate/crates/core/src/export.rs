//! JSON and Graphviz DOT serialisations, plus the custom-graph JSON reader.

use std::fmt::Write as _;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::corpus::{DirectedModulationGraph, EdgeKind};
use crate::error::Result;
use crate::graph::{PivotGraph, ScaleFamily};
use crate::pitch::{KeyLabel, Scale, Triad};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexJson {
    pub label: KeyLabel,
    pub name: String,
    pub scales: Vec<Scale>,
    pub triads: Vec<Triad>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeJson {
    pub source: KeyLabel,
    pub target: KeyLabel,
    pub pivots: Vec<Triad>,
}

pub fn graph_json(g: &PivotGraph) -> GraphJson {
    GraphJson {
        vertices: g
            .vertices()
            .iter()
            .map(|f| VertexJson {
                label: f.label(),
                name: f.label().vertex_name(),
                scales: f.scales().to_vec(),
                triads: f.triads().iter().copied().collect(),
            })
            .collect(),
        edges: g
            .edges()
            .map(|((u, v), pivots)| EdgeJson {
                source: g.label(u),
                target: g.label(v),
                pivots: pivots.iter().copied().collect(),
            })
            .collect(),
    }
}

pub fn graph_to_json(g: &PivotGraph) -> String {
    serde_json::to_string_pretty(&graph_json(g)).expect("graph JSON is always serialisable") + "\n"
}

/// Custom graph definition. Accepts `{"families": [...]}` or an exported
/// graph document (its `vertices` list; derived fields are ignored).
#[derive(Debug, Clone, Deserialize)]
pub struct GraphSpec {
    #[serde(alias = "vertices")]
    pub families: Vec<FamilySpec>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FamilySpec {
    pub label: KeyLabel,
    pub scales: Vec<Scale>,
}

impl GraphSpec {
    pub fn build(self) -> Result<PivotGraph> {
        let families = self
            .families
            .into_iter()
            .map(|f| ScaleFamily::new(f.label, f.scales))
            .collect::<Result<Vec<_>>>()?;
        PivotGraph::new(families)
    }
}

pub fn load_graph_json<R: Read>(reader: R) -> Result<PivotGraph> {
    let spec: GraphSpec = serde_json::from_reader(reader)?;
    spec.build()
}

/// Undirected DOT with vertex names `M_i`/`m_i` and pivot-list edge labels.
pub fn graph_to_dot(g: &PivotGraph) -> String {
    let mut out = String::from("graph pivot_modulation {\n");
    for f in g.vertices() {
        let key = f.label();
        let _ = writeln!(out, "  {} [label=\"{} ({})\"];", key.vertex_name(), key.vertex_name(), key.display_note());
    }
    for ((u, v), pivots) in g.edges() {
        let names: Vec<String> = pivots.iter().map(Triad::to_string).collect();
        let _ = writeln!(
            out,
            "  {} -- {} [label=\"{}\"];",
            g.label(u).vertex_name(),
            g.label(v).vertex_name(),
            names.join(", ")
        );
    }
    out.push_str("}\n");
    out
}

/// Directed DOT of observed modulations: dashed = pivot only, dotted =
/// direct only, both styles when both occurred; blue edges have a
/// theoretical pivot, red ones do not.
pub fn corpus_to_dot(g: &DirectedModulationGraph) -> String {
    let mut out = String::from("digraph modulations {\n");
    for key in &g.vertices {
        let _ = writeln!(out, "  {} [label=\"{}\"];", key.vertex_name(), key.display_note());
    }
    for (&(from, to), flags) in &g.edges {
        let style = match flags.kind() {
            EdgeKind::PivotOnly => "dashed",
            EdgeKind::DirectOnly => "dotted",
            EdgeKind::Both => "\"dashed,dotted\"",
        };
        let color = if flags.theory_permits_pivot { "blue" } else { "red" };
        let _ = writeln!(
            out,
            "  {} -> {} [style={style}, color={color}];",
            from.vertex_name(),
            to.vertex_name()
        );
    }
    out.push_str("}\n");
    out
}
