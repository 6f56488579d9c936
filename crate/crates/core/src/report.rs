//! Whole-graph analysis report, as JSON or as plain-text tables.

use std::fmt::Write as _;

use serde::Serialize;

use crate::analysis::{
    automorphism_group, label_sets, maximal_cliques, maximal_independent_sets,
    transposition_classes, AutomorphismSummary, Diameter, VertexSetClass,
};
use crate::graph::{circulant_signature, PivotGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub circulant: Option<Vec<usize>>,
    pub diameter: Diameter,
    pub omega: usize,
    pub alpha: usize,
    pub clique_classes: Vec<VertexSetClass>,
    pub independent_set_classes: Vec<VertexSetClass>,
    pub automorphism: AutomorphismSummary,
}

pub fn clique_classes(g: &PivotGraph) -> Vec<VertexSetClass> {
    transposition_classes(&label_sets(g, &maximal_cliques(g)))
}

pub fn independent_set_classes(g: &PivotGraph) -> Vec<VertexSetClass> {
    transposition_classes(&label_sets(g, &maximal_independent_sets(g)))
}

pub fn automorphism_summary(g: &PivotGraph) -> AutomorphismSummary {
    let names: Vec<String> = g.labels().iter().map(|k| k.vertex_name()).collect();
    automorphism_group(g).describe(&names)
}

pub fn analyze(g: &PivotGraph) -> AnalysisReport {
    let clique_classes = clique_classes(g);
    let independent_set_classes = independent_set_classes(g);
    let largest = |classes: &[VertexSetClass]| classes.iter().map(VertexSetClass::size).max().unwrap_or(0);
    AnalysisReport {
        vertex_count: g.len(),
        edge_count: g.edge_count(),
        circulant: circulant_signature(g).map(|s| s.into_iter().collect()),
        diameter: g.simple().diameter(),
        omega: largest(&clique_classes),
        alpha: largest(&independent_set_classes),
        clique_classes,
        independent_set_classes,
        automorphism: automorphism_summary(g),
    }
}

/// Two-column "Class of Set | Count" table.
pub fn classes_table(title: &str, classes: &[VertexSetClass]) -> String {
    let rows: Vec<(String, String)> = classes
        .iter()
        .map(|c| (c.notation(), c.count().to_string()))
        .collect();
    let width = rows
        .iter()
        .map(|(n, _)| n.chars().count())
        .chain(["Class of Set".len()])
        .max()
        .unwrap_or(0);
    let mut out = format!("{title}\n");
    let _ = writeln!(out, "{:<width$} | Count", "Class of Set");
    let _ = writeln!(out, "{}-+------", "-".repeat(width));
    for (notation, count) in rows {
        let pad = width - notation.chars().count();
        let _ = writeln!(out, "{notation}{} | {count:>5}", " ".repeat(pad));
    }
    out
}

impl AnalysisReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "vertices: {}", self.vertex_count);
        let _ = writeln!(out, "edges: {}", self.edge_count);
        match &self.circulant {
            Some(s) => {
                let parts: Vec<String> = s.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "circulant: C_{}({})", self.vertex_count, parts.join(", "));
            }
            None => out.push_str("circulant: no\n"),
        }
        let _ = writeln!(out, "diameter: {}", self.diameter);
        let _ = writeln!(out, "clique number: {}", self.omega);
        let _ = writeln!(out, "independence number: {}", self.alpha);
        out.push('\n');
        out.push_str(&classes_table("Maximal independent sets", &self.independent_set_classes));
        out.push('\n');
        out.push_str(&classes_table("Maximal cliques", &self.clique_classes));
        out.push('\n');
        out.push_str(&render_automorphisms(&self.automorphism));
        out
    }
}

pub fn render_automorphisms(summary: &AutomorphismSummary) -> String {
    let mut out = String::new();
    match summary.order {
        Some(order) => {
            let _ = writeln!(out, "automorphism group order: {order}");
        }
        None => out.push_str("automorphism group order: too large to represent\n"),
    }
    out.push_str("generators:\n");
    for g in &summary.generators {
        let _ = writeln!(out, "  {g}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphPreset;

    #[test]
    fn major12_report() {
        let report = analyze(&GraphPreset::Major12.build());
        assert_eq!(report.circulant, Some(vec![2, 3, 5]));
        assert_eq!((report.omega, report.alpha), (4, 3));
        assert_eq!(report.automorphism.order, Some(24));
        let text = report.render_text();
        assert!(text.contains("{M_i, M_{i+4}, M_{i+8}}"));
        assert!(text.contains("circulant: C_12(2, 3, 5)"));
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(analyze(&GraphPreset::Minor12.build())).unwrap();
        assert_eq!(v["diameter"], 2);
        assert_eq!(v["omega"], 6);
        assert_eq!(v["alpha"], 2);
        assert_eq!(v["automorphism"]["order"], 46080);
        assert_eq!(v["independent_set_classes"][0]["representative"], "{m_i, m_{i+6}}");
        assert_eq!(v["independent_set_classes"][0]["count"], 6);
    }
}
