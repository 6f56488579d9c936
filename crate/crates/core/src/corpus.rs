//! Observed modulations from annotated song corpora.
//!
//! A corpus is a CSV of key changes, one per row:
//!
//! ```text
//! song_id,title,from_key,to_key,mechanism,pivot
//! tfy,Think For Yourself,a:min,G:maj,pivot,C:maj
//! ```
//!
//! Repeated `(from, to, mechanism)` rows within one song are recorded once.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{GraphPreset, PivotGraph, ScaleFamily};
use crate::pitch::{KeyFamily, KeyLabel, Triad};

pub const CSV_HEADER: [&str; 6] = ["song_id", "title", "from_key", "to_key", "mechanism", "pivot"];

/// Modulations stated in prose for a handful of well-known songs.
pub const FIXTURE_CSV: &str = include_str!("../fixtures/songs.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mechanism {
    Pivot,
    Direct,
    Transitional,
}

impl Mechanism {
    pub fn name(self) -> &'static str {
        match self {
            Mechanism::Pivot => "pivot",
            Mechanism::Direct => "direct",
            Mechanism::Transitional => "transitional",
        }
    }
}

impl FromStr for Mechanism {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pivot" => Ok(Mechanism::Pivot),
            "direct" => Ok(Mechanism::Direct),
            "transitional" => Ok(Mechanism::Transitional),
            other => Err(format!(
                "unknown mechanism {other:?} (expected pivot, direct or transitional)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModulationRecord {
    pub song_id: String,
    pub title: String,
    pub from: KeyLabel,
    pub to: KeyLabel,
    pub mechanism: Mechanism,
    pub pivot: Option<Triad>,
    /// CSV line the record came from.
    #[serde(skip)]
    pub line: u64,
}

impl ModulationRecord {
    pub fn uses_pivot(&self) -> bool {
        self.mechanism == Mechanism::Pivot
    }

    pub fn class(&self) -> ModulationClass {
        ModulationClass::between(self.from, self.to)
    }
}

/// Parse a corpus CSV. The header must match [`CSV_HEADER`] exactly.
pub fn load_corpus<R: Read>(source: R) -> Result<Vec<ModulationRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(source);
    let mut rows = reader.records();

    let header = match rows.next() {
        Some(row) => row.map_err(|e| csv_error(&e))?,
        None => {
            return Err(Error::Corpus {
                line: 1,
                message: "empty corpus: missing header".into(),
            })
        }
    };
    let names: Vec<&str> = header.iter().map(str::trim).collect();
    if names != CSV_HEADER {
        return Err(Error::Corpus {
            line: 1,
            message: format!("header must be {:?}, found {:?}", CSV_HEADER.join(","), names.join(",")),
        });
    }

    let mut records = Vec::new();
    let mut seen: HashSet<(String, KeyLabel, KeyLabel, Mechanism)> = HashSet::new();
    for row in rows {
        let row = row.map_err(|e| csv_error(&e))?;
        let line = row.position().map_or(0, |p| p.line());
        if row.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        let record = parse_row(&row, line)?;
        let key = (record.song_id.clone(), record.from, record.to, record.mechanism);
        if seen.insert(key) {
            records.push(record);
        }
    }
    Ok(records)
}

fn csv_error(e: &csv::Error) -> Error {
    Error::Corpus {
        line: e.position().map_or(0, |p| p.line()),
        message: e.to_string(),
    }
}

fn parse_row(row: &csv::StringRecord, line: u64) -> Result<ModulationRecord> {
    let fail = |message: String| Error::Corpus { line, message };
    if row.len() != CSV_HEADER.len() {
        return Err(fail(format!("expected 6 fields, found {}", row.len())));
    }
    let field = |i: usize| row.get(i).unwrap_or("").trim();
    let song_id = field(0);
    if song_id.is_empty() {
        return Err(fail("song_id is empty".into()));
    }
    let from: KeyLabel = field(2)
        .parse()
        .map_err(|e: Error| fail(format!("from_key: {e}")))?;
    let to: KeyLabel = field(3)
        .parse()
        .map_err(|e: Error| fail(format!("to_key: {e}")))?;
    if from == to {
        return Err(fail(format!("from_key and to_key are both {from}")));
    }
    let mechanism: Mechanism = field(4).parse().map_err(fail)?;
    let pivot = match field(5) {
        "" => None,
        text => Some(
            text.parse::<Triad>()
                .map_err(|e| fail(format!("pivot: {e}")))?,
        ),
    };
    match (mechanism, pivot) {
        (Mechanism::Pivot, None) => return Err(fail("pivot mechanism without a pivot triad".into())),
        (Mechanism::Direct | Mechanism::Transitional, Some(t)) => {
            return Err(fail(format!("{} modulation must not name a pivot (got {t})", mechanism.name())))
        }
        _ => {}
    }
    Ok(ModulationRecord {
        song_id: song_id.to_string(),
        title: field(1).to_string(),
        from,
        to,
        mechanism,
        pivot,
        line,
    })
}

/// A pivot that is not shared by the two keys' preset families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LintWarning {
    pub line: u64,
    pub song_id: String,
    pub message: String,
}

pub fn lint(records: &[ModulationRecord]) -> Vec<LintWarning> {
    records
        .iter()
        .filter_map(|r| {
            let pivot = r.pivot?;
            let shared = ScaleFamily::standard(r.from)
                .triads()
                .contains(&pivot)
                && ScaleFamily::standard(r.to).triads().contains(&pivot);
            (!shared).then(|| LintWarning {
                line: r.line,
                song_id: r.song_id.clone(),
                message: format!("pivot {pivot} is not diatonic to both {} and {}", r.from, r.to),
            })
        })
        .collect()
}

/// Transposition class of a modulation: the two key types and the ascending
/// tonic interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModulationClass {
    pub from_type: KeyFamily,
    pub to_type: KeyFamily,
    pub interval: u8,
}

impl ModulationClass {
    fn between(from: KeyLabel, to: KeyLabel) -> Self {
        ModulationClass {
            from_type: from.family,
            to_type: to.family,
            interval: from.tonic.interval_to(to.tonic),
        }
    }

    pub fn new(from_type: KeyFamily, to_type: KeyFamily, interval: u8) -> Self {
        ModulationClass {
            from_type,
            to_type,
            interval: interval % 12,
        }
    }

    /// Representative pair with the source tonic on C.
    pub fn representative(self) -> (KeyLabel, KeyLabel) {
        (
            KeyLabel::new(crate::PitchClass::C, self.from_type),
            KeyLabel::new(crate::PitchClass::new(self.interval as i64), self.to_type),
        )
    }

    /// Whether the preset families of the two keys share a triad.
    pub fn permits_pivot(self) -> bool {
        let (from, to) = self.representative();
        if from == to {
            return false;
        }
        let a = ScaleFamily::standard(from);
        let b = ScaleFamily::standard(to);
        !a.triads().is_disjoint(b.triads())
    }

    /// Offset notation such as `m_i -> M_{i+3}`.
    pub fn notation(self) -> String {
        let to = match self.interval {
            0 => format!("{}_i", self.to_type.symbol()),
            k => format!("{}_{{i+{k}}}", self.to_type.symbol()),
        };
        format!("{}_i -> {to}", self.from_type.symbol())
    }
}

impl fmt::Display for ModulationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},+{})",
            self.from_type.abbreviation(),
            self.to_type.abbreviation(),
            self.interval
        )
    }
}

impl Serialize for ModulationClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn class_of(from: KeyLabel, to: KeyLabel) -> Result<ModulationClass> {
    if from == to {
        return Err(Error::SameKey(from.to_string()));
    }
    Ok(ModulationClass::between(from, to))
}

/// Number of distinct songs exhibiting each class.
pub fn class_histogram(records: &[ModulationRecord]) -> BTreeMap<ModulationClass, usize> {
    let mut songs: BTreeMap<ModulationClass, BTreeSet<&str>> = BTreeMap::new();
    for r in records {
        songs.entry(r.class()).or_default().insert(&r.song_id);
    }
    songs.into_iter().map(|(c, s)| (c, s.len())).collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EdgeFlags {
    pub observed_with_pivot: bool,
    pub observed_direct: bool,
    pub theory_permits_pivot: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    PivotOnly,
    DirectOnly,
    Both,
}

impl EdgeFlags {
    pub fn kind(&self) -> EdgeKind {
        match (self.observed_with_pivot, self.observed_direct) {
            (true, false) => EdgeKind::PivotOnly,
            (false, true) => EdgeKind::DirectOnly,
            _ => EdgeKind::Both,
        }
    }
}

/// Observed modulations over the 24 preset keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedModulationGraph {
    pub vertices: Vec<KeyLabel>,
    pub edges: BTreeMap<(KeyLabel, KeyLabel), EdgeFlags>,
}

pub fn build_directed_graph(records: &[ModulationRecord]) -> DirectedModulationGraph {
    let theory: PivotGraph = GraphPreset::Combined24.build();
    let mut edges: BTreeMap<(KeyLabel, KeyLabel), EdgeFlags> = BTreeMap::new();
    for r in records {
        let flags = edges.entry((r.from, r.to)).or_insert_with(|| {
            let u = theory.vertex(r.from).expect("every key is a preset vertex");
            let v = theory.vertex(r.to).expect("every key is a preset vertex");
            EdgeFlags {
                theory_permits_pivot: theory.is_adjacent(u, v),
                ..EdgeFlags::default()
            }
        });
        // transitional counts as non-pivot
        if r.uses_pivot() {
            flags.observed_with_pivot = true;
        } else {
            flags.observed_direct = true;
        }
    }
    DirectedModulationGraph {
        vertices: theory.labels(),
        edges,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexDegree {
    pub key: KeyLabel,
    pub in_degree: usize,
    pub out_degree: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EdgeTotals {
    pub edges: usize,
    pub pivot_only: usize,
    pub direct_only: usize,
    pub both: usize,
    /// Observed edges whose keys share no triad at all.
    pub without_theoretical_pivot: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub vertices: Vec<VertexDegree>,
    pub isolated: Vec<KeyLabel>,
    pub totals: EdgeTotals,
}

impl DegreeReport {
    pub fn of(&self, key: KeyLabel) -> Option<&VertexDegree> {
        self.vertices.iter().find(|d| d.key == key)
    }
}

pub fn degree_report(g: &DirectedModulationGraph) -> DegreeReport {
    let mut vertices: Vec<VertexDegree> = g
        .vertices
        .iter()
        .map(|&key| VertexDegree {
            key,
            in_degree: 0,
            out_degree: 0,
        })
        .collect();
    let position: BTreeMap<KeyLabel, usize> =
        g.vertices.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut totals = EdgeTotals::default();
    for (&(from, to), flags) in &g.edges {
        vertices[position[&from]].out_degree += 1;
        vertices[position[&to]].in_degree += 1;
        totals.edges += 1;
        match flags.kind() {
            EdgeKind::PivotOnly => totals.pivot_only += 1,
            EdgeKind::DirectOnly => totals.direct_only += 1,
            EdgeKind::Both => totals.both += 1,
        }
        if !flags.theory_permits_pivot {
            totals.without_theoretical_pivot += 1;
        }
    }
    let isolated = vertices
        .iter()
        .filter(|d| d.in_degree == 0 && d.out_degree == 0)
        .map(|d| d.key)
        .collect();
    DegreeReport {
        vertices,
        isolated,
        totals,
    }
}

/// Directed edge `(from, to)` of a song graph, with tonics as offsets.
pub type SongEdge = (KeyLabel, KeyLabel);

/// Songs sharing one transposition-normalised modulation graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SongGraph {
    pub song_ids: Vec<String>,
    pub canonical_edges: Vec<SongEdge>,
}

impl SongGraph {
    /// Edge list in offset notation, e.g. `M_i -> M_{i+2}`.
    pub fn notation(&self) -> Vec<String> {
        let offset = |k: KeyLabel| match k.tonic.value() {
            0 => format!("{}_i", k.family.symbol()),
            o => format!("{}_{{i+{o}}}", k.family.symbol()),
        };
        self.canonical_edges
            .iter()
            .map(|&(a, b)| format!("{} -> {}", offset(a), offset(b)))
            .collect()
    }

    /// True when every edge of `other` appears here.
    pub fn contains(&self, other: &SongGraph) -> bool {
        contains_up_to_transposition(&self.canonical_edges, &other.canonical_edges)
    }
}

impl Serialize for SongGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("SongGraph", 2)?;
        s.serialize_field("songs", &self.song_ids)?;
        s.serialize_field("edges", &self.notation())?;
        s.end()
    }
}

/// Least of the twelve translates of a directed edge set.
pub fn canonical_edges(edges: &[SongEdge]) -> Vec<SongEdge> {
    (0..12)
        .map(|k| {
            let mut t: Vec<SongEdge> = edges
                .iter()
                .map(|&(a, b)| (a.transpose(k), b.transpose(k)))
                .collect();
            t.sort();
            t.dedup();
            t
        })
        .min()
        .unwrap_or_default()
}

fn contains_up_to_transposition(big: &[SongEdge], small: &[SongEdge]) -> bool {
    let big: BTreeSet<SongEdge> = big.iter().copied().collect();
    (0..12).any(|k| {
        small
            .iter()
            .all(|&(a, b)| big.contains(&(a.transpose(k), b.transpose(k))))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SongGraphs {
    pub graphs: Vec<SongGraph>,
    pub unique: usize,
}

impl SongGraphs {
    pub fn for_song(&self, song_id: &str) -> Option<&SongGraph> {
        self.graphs
            .iter()
            .find(|g| g.song_ids.iter().any(|s| s == song_id))
    }
}

pub fn song_graphs(records: &[ModulationRecord]) -> SongGraphs {
    let mut per_song: Vec<(String, Vec<SongEdge>)> = Vec::new();
    for r in records {
        match per_song.iter_mut().find(|(id, _)| *id == r.song_id) {
            Some((_, edges)) => edges.push((r.from, r.to)),
            None => per_song.push((r.song_id.clone(), vec![(r.from, r.to)])),
        }
    }
    let mut grouped: BTreeMap<Vec<SongEdge>, Vec<String>> = BTreeMap::new();
    for (song, edges) in per_song {
        grouped.entry(canonical_edges(&edges)).or_default().push(song);
    }
    let graphs: Vec<SongGraph> = grouped
        .into_iter()
        .map(|(canonical_edges, song_ids)| SongGraph {
            song_ids,
            canonical_edges,
        })
        .collect();
    SongGraphs {
        unique: graphs.len(),
        graphs,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCount {
    pub class: ModulationClass,
    pub notation: String,
    pub songs: usize,
    pub theory_permits_pivot: bool,
}

/// Everything derived from one corpus, computed once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusAnalysis {
    pub songs: usize,
    pub records: usize,
    pub warnings: Vec<LintWarning>,
    pub distinct_classes: usize,
    pub histogram: Vec<ClassCount>,
    pub degrees: DegreeReport,
    pub song_graphs: SongGraphs,
    #[serde(skip)]
    pub graph: DirectedModulationGraph,
}

impl CorpusAnalysis {
    pub fn new(records: &[ModulationRecord]) -> Self {
        let songs: BTreeSet<&str> = records.iter().map(|r| r.song_id.as_str()).collect();
        let histogram: Vec<ClassCount> = class_histogram(records)
            .into_iter()
            .map(|(class, songs)| ClassCount {
                class,
                notation: class.notation(),
                songs,
                theory_permits_pivot: class.permits_pivot(),
            })
            .collect();
        let graph = build_directed_graph(records);
        CorpusAnalysis {
            songs: songs.len(),
            records: records.len(),
            warnings: lint(records),
            distinct_classes: histogram.len(),
            histogram,
            degrees: degree_report(&graph),
            song_graphs: song_graphs(records),
            graph,
        }
    }

    pub fn class_count(&self, class: ModulationClass) -> usize {
        self.histogram
            .iter()
            .find(|c| c.class == class)
            .map_or(0, |c| c.songs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "song_id,title,from_key,to_key,mechanism,pivot\n";

    fn load(body: &str) -> Result<Vec<ModulationRecord>> {
        load_corpus(format!("{HEADER}{body}").as_bytes())
    }

    fn key(s: &str) -> KeyLabel {
        s.parse().unwrap()
    }

    #[test]
    fn think_for_yourself_row() {
        let records = load("tfy,Think For Yourself,a:min,G:maj,pivot,C:maj\n").unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].pivot.unwrap().to_string(), "C:maj");
        assert_eq!(records[0].line, 2);
        assert!(lint(&records).is_empty());
    }

    #[test]
    fn repeated_modulation_recorded_once() {
        let records = load("s,Song,C:maj,G:maj,direct,\ns,Song,C:maj,G:maj,direct,\n").unwrap();
        assert_eq!(records.len(), 1);
    }

    #[test]
    fn load_errors_carry_line_numbers() {
        let err = load("s,Song,C:maj,G:maj,direct,\ns,Song,C:maj,G:maj,direct,G:maj\n").unwrap_err();
        assert_eq!(err.line(), Some(3));
        let err = load("s,Song,C:maj,X:maj,direct,\n").unwrap_err();
        assert_eq!(err.line(), Some(2));
        assert!(err.to_string().contains("to_key"));
        let err = load("s,Song,C:maj,G:maj,sideways,\n").unwrap_err();
        assert!(err.to_string().contains("unknown mechanism"));
        let err = load("s,Song,C:maj,G:maj,pivot,\n").unwrap_err();
        assert!(err.to_string().contains("without a pivot"));
        let err = load("s,Song,C:maj,c:maj,direct,\n").unwrap_err();
        assert!(err.to_string().contains("both"));
        assert!(load_corpus("".as_bytes()).is_err());
        assert!(load_corpus("a,b,c\n".as_bytes()).is_err());
    }

    #[test]
    fn lint_flags_foreign_pivot() {
        let records = load("s,Song,C:maj,G:maj,pivot,Db:maj\n").unwrap();
        let warnings = lint(&records);
        assert_eq!(warnings.len(), 1);
        assert_eq!(warnings[0].line, 2);
    }

    #[test]
    fn class_examples() {
        let rel = ModulationClass::new(KeyFamily::MinorType, KeyFamily::MajorType, 3);
        assert_eq!(class_of(key("a:min"), key("C:maj")).unwrap(), rel);
        assert_eq!(class_of(key("E:min"), key("G:maj")).unwrap(), rel);
        let parallel = class_of(key("C:maj"), key("c:min")).unwrap();
        assert_eq!(parallel.to_string(), "(maj,min,+0)");
        assert_eq!(rel.notation(), "m_i -> M_{i+3}");
        assert!(class_of(key("C:maj"), key("C:maj")).is_err());
        let down_third = class_of(key("C:maj"), key("a:min")).unwrap();
        assert_eq!(down_third.interval, 9);
    }

    #[test]
    fn no_pivot_major_classes() {
        for interval in [1, 4, 8] {
            let c = ModulationClass::new(KeyFamily::MajorType, KeyFamily::MajorType, interval);
            assert!(!c.permits_pivot(), "{c}");
        }
        assert!(ModulationClass::new(KeyFamily::MinorType, KeyFamily::MajorType, 3).permits_pivot());
    }

    #[test]
    fn directed_graph_flags() {
        let records = load(
            "tfy,T,a:min,G:maj,pivot,C:maj\n\
             x,X,C:maj,E:maj,direct,\n\
             y,Y,C:maj,E:maj,transitional,\n\
             z,Z,a:min,G:maj,direct,\n",
        )
        .unwrap();
        let g = build_directed_graph(&records);
        assert_eq!(g.vertices.len(), 24);
        let tfy = g.edges[&(key("a:min"), key("G:maj"))];
        assert!(tfy.observed_with_pivot && tfy.observed_direct && tfy.theory_permits_pivot);
        assert_eq!(tfy.kind(), EdgeKind::Both);
        let third = g.edges[&(key("C:maj"), key("E:maj"))];
        assert_eq!(third.kind(), EdgeKind::DirectOnly);
        assert!(!third.theory_permits_pivot);
        let report = degree_report(&g);
        assert_eq!(report.totals.edges, 2);
        assert_eq!(report.totals.without_theoretical_pivot, 1);
    }

    #[test]
    fn empty_corpus() {
        let g = build_directed_graph(&[]);
        assert_eq!(g.vertices.len(), 24);
        assert!(g.edges.is_empty());
        assert_eq!(degree_report(&g).isolated.len(), 24);
        assert!(class_histogram(&[]).is_empty());
        assert_eq!(song_graphs(&[]).unique, 0);
    }

    #[test]
    fn single_modulation_is_one_graph() {
        let records = load("s,Song,C:maj,G:maj,direct,\n").unwrap();
        let graphs = song_graphs(&records);
        assert_eq!(graphs.unique, 1);
        assert_eq!(graphs.graphs[0].notation(), ["M_i -> M_{i+7}"]);
    }

    #[test]
    fn histogram_counts_songs_not_rows() {
        let records = load(
            "a,A,C:maj,G:maj,direct,\n\
             a,A,D:maj,A:maj,direct,\n\
             b,B,F:maj,C:maj,pivot,C:maj\n",
        )
        .unwrap();
        let h = class_histogram(&records);
        assert_eq!(h[&ModulationClass::new(KeyFamily::MajorType, KeyFamily::MajorType, 7)], 2);
    }
}
