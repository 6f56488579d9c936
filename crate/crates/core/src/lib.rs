//! Pivot-modulation graphs over pitch-class scales.
//!
//! Keys are vertices; two keys are joined when their scale families share a
//! diatonic triad (a pivot chord). The crate builds those graphs, computes
//! their exact combinatorial structure, and analyses observed modulations in
//! annotated song corpora.

pub mod analysis;
pub mod corpus;
pub mod error;
pub mod export;
pub mod graph;
pub mod pitch;
pub mod report;

pub use error::{Error, Result};
pub use graph::{GraphPreset, PivotGraph, ScaleFamily, VertexId};
pub use pitch::{KeyFamily, KeyLabel, PitchClass, Scale, ScaleKind, Triad, TriadQuality};
