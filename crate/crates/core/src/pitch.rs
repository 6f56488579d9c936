//! Pitch-class arithmetic, the five scale templates, diatonic triads and
//! the textual key/triad syntax (`G:maj`, `bb:min`, `Eb:aug`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A note modulo octave: semitones above C, always in `0..12`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PitchClass(u8);

const FLAT_SPELLINGS: [&str; 12] = [
    "C", "Db", "D", "Eb", "E", "F", "Gb", "G", "Ab", "A", "Bb", "B",
];

impl PitchClass {
    pub const C: PitchClass = PitchClass(0);

    /// Reduces any integer into its pitch class.
    pub fn new(semitones: i64) -> Self {
        PitchClass(semitones.rem_euclid(12) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn transpose(self, k: i64) -> Self {
        PitchClass::new(self.0 as i64 + k)
    }

    /// Ascending distance `(other - self) mod 12`.
    pub fn interval_to(self, other: PitchClass) -> u8 {
        (other.0 + 12 - self.0) % 12
    }

    /// All twelve classes in chromatic order.
    pub fn all() -> impl Iterator<Item = PitchClass> {
        (0..12).map(PitchClass)
    }

    /// Flat-preferring spelling (`Db`, `Eb`, `Gb`, `Ab`, `Bb`).
    pub fn spelling(self) -> &'static str {
        FLAT_SPELLINGS[self.0 as usize]
    }

    fn bit(self) -> u16 {
        1 << self.0
    }
}

impl fmt::Display for PitchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.spelling())
    }
}

impl FromStr for PitchClass {
    type Err = Error;

    /// Letter `A`..`G` (either case) plus an optional `#`/`♯` or `b`/`♭`.
    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.trim().chars();
        let letter = chars.next().ok_or_else(|| Error::UnknownNote(s.to_string()))?;
        let base: i64 = match letter.to_ascii_uppercase() {
            'C' => 0,
            'D' => 2,
            'E' => 4,
            'F' => 5,
            'G' => 7,
            'A' => 9,
            'B' => 11,
            _ => return Err(Error::UnknownNote(s.to_string())),
        };
        let accidental: i64 = match chars.next() {
            None => 0,
            Some('#') | Some('♯') => 1,
            Some('b') | Some('B') | Some('♭') => -1,
            Some(_) => return Err(Error::UnknownNote(s.to_string())),
        };
        if chars.next().is_some() {
            return Err(Error::UnknownNote(s.to_string()));
        }
        Ok(PitchClass::new(base + accidental))
    }
}

impl Serialize for PitchClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.spelling())
    }
}

impl<'de> Deserialize<'de> for PitchClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(i64),
            Name(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Number(n) if (0..12).contains(&n) => Ok(PitchClass::new(n)),
            Repr::Number(n) => Err(serde::de::Error::custom(format!(
                "pitch class {n} out of range 0..=11"
            ))),
            Repr::Name(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Apply the transposition `x -> x + k` to a pitch class.
pub fn transpose(pc: PitchClass, k: i64) -> PitchClass {
    pc.transpose(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleKind {
    Major,
    Mixolydian,
    NaturalMinor,
    HarmonicMinor,
    MelodicMinor,
}

impl ScaleKind {
    pub const ALL: [ScaleKind; 5] = [
        ScaleKind::Major,
        ScaleKind::Mixolydian,
        ScaleKind::NaturalMinor,
        ScaleKind::HarmonicMinor,
        ScaleKind::MelodicMinor,
    ];

    /// Semitone offsets of the seven degrees above the tonic.
    pub fn template(self) -> [u8; 7] {
        match self {
            ScaleKind::Major => [0, 2, 4, 5, 7, 9, 11],
            ScaleKind::Mixolydian => [0, 2, 4, 5, 7, 9, 10],
            ScaleKind::NaturalMinor => [0, 2, 3, 5, 7, 8, 10],
            ScaleKind::HarmonicMinor => [0, 2, 3, 5, 7, 8, 11],
            ScaleKind::MelodicMinor => [0, 2, 3, 5, 7, 9, 11],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ScaleKind::Major => "major",
            ScaleKind::Mixolydian => "mixolydian",
            ScaleKind::NaturalMinor => "natural_minor",
            ScaleKind::HarmonicMinor => "harmonic_minor",
            ScaleKind::MelodicMinor => "melodic_minor",
        }
    }

    /// Key family the kind is grouped under in the preset graphs.
    pub fn family(self) -> KeyFamily {
        match self {
            ScaleKind::Major | ScaleKind::Mixolydian => KeyFamily::MajorType,
            _ => KeyFamily::MinorType,
        }
    }
}

impl fmt::Display for ScaleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScaleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScaleKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownScaleKind(s.to_string()))
    }
}

/// A seven-note scale. `degrees[0]` is the tonic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "ScaleSpec", into = "ScaleSpec")]
pub struct Scale {
    tonic: PitchClass,
    kind: ScaleKind,
    degrees: [PitchClass; 7],
}

#[derive(Serialize, Deserialize)]
struct ScaleSpec {
    tonic: PitchClass,
    kind: ScaleKind,
}

impl From<ScaleSpec> for Scale {
    fn from(spec: ScaleSpec) -> Self {
        Scale::new(spec.tonic, spec.kind)
    }
}

impl From<Scale> for ScaleSpec {
    fn from(scale: Scale) -> Self {
        ScaleSpec {
            tonic: scale.tonic,
            kind: scale.kind,
        }
    }
}

impl Scale {
    pub fn new(tonic: PitchClass, kind: ScaleKind) -> Self {
        let degrees = kind.template().map(|offset| tonic.transpose(offset as i64));
        Scale {
            tonic,
            kind,
            degrees,
        }
    }

    pub fn tonic(&self) -> PitchClass {
        self.tonic
    }

    pub fn kind(&self) -> ScaleKind {
        self.kind
    }

    pub fn degrees(&self) -> &[PitchClass; 7] {
        &self.degrees
    }

    /// Membership bitmask over the twelve pitch classes.
    pub fn pitch_class_mask(&self) -> u16 {
        self.degrees.iter().fold(0, |acc, pc| acc | pc.bit())
    }

    pub fn transpose(&self, k: i64) -> Scale {
        Scale::new(self.tonic.transpose(k), self.kind)
    }

    /// The seven stacked-third triads `{j_k, j_{k+2}, j_{k+4}}`, in degree order.
    pub fn diatonic_triads(&self) -> Vec<Triad> {
        (0..7)
            .map(|k| {
                let pcs = [
                    self.degrees[k],
                    self.degrees[(k + 2) % 7],
                    self.degrees[(k + 4) % 7],
                ];
                let quality = TriadQuality::of_rooted(pcs[0], &pcs)
                    .expect("every stacked third of the five templates has a quality");
                Triad::new(pcs[0], quality)
            })
            .collect()
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.tonic, self.kind)
    }
}

pub fn build_scale(tonic: PitchClass, kind: ScaleKind) -> Scale {
    Scale::new(tonic, kind)
}

pub fn diatonic_triads(scale: &Scale) -> Vec<Triad> {
    scale.diatonic_triads()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriadQuality {
    Major,
    Minor,
    Diminished,
    Augmented,
}

impl TriadQuality {
    pub const ALL: [TriadQuality; 4] = [
        TriadQuality::Major,
        TriadQuality::Minor,
        TriadQuality::Diminished,
        TriadQuality::Augmented,
    ];

    /// Offsets of third and fifth above the root.
    pub fn shape(self) -> [u8; 2] {
        match self {
            TriadQuality::Major => [4, 7],
            TriadQuality::Minor => [3, 7],
            TriadQuality::Diminished => [3, 6],
            TriadQuality::Augmented => [4, 8],
        }
    }

    pub fn abbreviation(self) -> &'static str {
        match self {
            TriadQuality::Major => "maj",
            TriadQuality::Minor => "min",
            TriadQuality::Diminished => "dim",
            TriadQuality::Augmented => "aug",
        }
    }

    fn of_rooted(root: PitchClass, pcs: &[PitchClass; 3]) -> Option<TriadQuality> {
        let mask = pcs.iter().fold(0u16, |acc, pc| acc | pc.bit());
        TriadQuality::ALL.into_iter().find(|q| {
            let [third, fifth] = q.shape();
            mask == root.bit()
                | root.transpose(third as i64).bit()
                | root.transpose(fifth as i64).bit()
        })
    }
}

impl FromStr for TriadQuality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TriadQuality::ALL
            .into_iter()
            .find(|q| q.abbreviation().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::BadTriad {
                text: s.to_string(),
                reason: "quality must be maj, min, dim or aug".into(),
            })
    }
}

/// A three-note chord. Identity is the pitch-class set; `root` and `quality`
/// are annotations (an augmented triad has three candidate roots).
#[derive(Debug, Clone, Copy)]
pub struct Triad {
    pcs: [PitchClass; 3],
    root: PitchClass,
    quality: TriadQuality,
}

impl Triad {
    pub fn new(root: PitchClass, quality: TriadQuality) -> Self {
        let [third, fifth] = quality.shape();
        let mut pcs = [
            root,
            root.transpose(third as i64),
            root.transpose(fifth as i64),
        ];
        pcs.sort();
        Triad { pcs, root, quality }
    }

    /// Sorted pitch classes.
    pub fn pitch_classes(&self) -> [PitchClass; 3] {
        self.pcs
    }

    pub fn root(&self) -> PitchClass {
        self.root
    }

    pub fn quality(&self) -> TriadQuality {
        self.quality
    }

    fn sort_key(&self) -> (PitchClass, TriadQuality) {
        match self.quality {
            TriadQuality::Augmented => (self.pcs[0], self.quality),
            _ => (self.root, self.quality),
        }
    }

    pub fn mask(&self) -> u16 {
        self.pcs.iter().fold(0, |acc, pc| acc | pc.bit())
    }

    pub fn transpose(&self, k: i64) -> Triad {
        Triad::new(self.root.transpose(k), self.quality)
    }

    /// Same pitch classes, re-rooted on the lowest candidate root.
    pub fn canonical(&self) -> Triad {
        classify_triad(self.pcs).expect("a constructed triad always classifies")
    }
}

impl PartialEq for Triad {
    fn eq(&self, other: &Self) -> bool {
        self.pcs == other.pcs
    }
}

impl Eq for Triad {}

impl std::hash::Hash for Triad {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.pcs.hash(state);
    }
}

impl PartialOrd for Triad {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by canonical root, then quality. The canonical root depends only
/// on the pitch-class set, so this agrees with equality.
impl Ord for Triad {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Triad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.root, self.quality.abbreviation())
    }
}

impl FromStr for Triad {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (note, quality) = s.trim().split_once(':').ok_or_else(|| Error::BadTriad {
            text: s.to_string(),
            reason: "expected <note>:<maj|min|dim|aug>".into(),
        })?;
        let root: PitchClass = note.parse()?;
        let quality: TriadQuality = quality.parse().map_err(|_| Error::BadTriad {
            text: s.to_string(),
            reason: format!("unknown quality {quality:?}"),
        })?;
        Ok(Triad::new(root, quality))
    }
}

impl Serialize for Triad {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Triad {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Quality and root of three pitch classes, or `None` when they match none of
/// the four shapes. Augmented triads get the lowest pitch class as root.
pub fn classify_triad(pcs: [PitchClass; 3]) -> Option<Triad> {
    let mut sorted = pcs;
    sorted.sort();
    if sorted[0] == sorted[1] || sorted[1] == sorted[2] {
        return None;
    }
    sorted.iter().find_map(|&root| {
        TriadQuality::of_rooted(root, &sorted).map(|quality| Triad::new(root, quality))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KeyFamily {
    MajorType,
    MinorType,
}

impl KeyFamily {
    /// `M` or `m`, as in `M_7` / `m_9`.
    pub fn symbol(self) -> char {
        match self {
            KeyFamily::MajorType => 'M',
            KeyFamily::MinorType => 'm',
        }
    }

    pub fn abbreviation(self) -> &'static str {
        match self {
            KeyFamily::MajorType => "maj",
            KeyFamily::MinorType => "min",
        }
    }
}

/// A key: tonic plus major/minor type. Majors display with an upper-case
/// letter (`Gb:maj`), minors lower-case (`bb:min`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KeyLabel {
    pub family: KeyFamily,
    pub tonic: PitchClass,
}

impl KeyLabel {
    pub fn new(tonic: PitchClass, family: KeyFamily) -> Self {
        KeyLabel { family, tonic }
    }

    pub fn major(tonic: u8) -> Self {
        KeyLabel::new(PitchClass::new(tonic as i64), KeyFamily::MajorType)
    }

    pub fn minor(tonic: u8) -> Self {
        KeyLabel::new(PitchClass::new(tonic as i64), KeyFamily::MinorType)
    }

    pub fn transpose(self, k: i64) -> Self {
        KeyLabel::new(self.tonic.transpose(k), self.family)
    }

    /// Note spelling with the case convention applied.
    pub fn display_note(self) -> String {
        match self.family {
            KeyFamily::MajorType => self.tonic.spelling().to_string(),
            KeyFamily::MinorType => self.tonic.spelling().to_lowercase(),
        }
    }

    /// Numeric vertex name such as `M_0` or `m_9`.
    pub fn vertex_name(self) -> String {
        format!("{}_{}", self.family.symbol(), self.tonic.value())
    }
}

impl fmt::Display for KeyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.display_note(), self.family.abbreviation())
    }
}

impl FromStr for KeyLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let (note, family) = text.split_once(':').ok_or_else(|| Error::BadKey {
            text: s.to_string(),
            reason: "expected <note>:<maj|min>".into(),
        })?;
        let tonic: PitchClass = note.parse()?;
        let family = match family.to_ascii_lowercase().as_str() {
            "maj" => KeyFamily::MajorType,
            "min" => KeyFamily::MinorType,
            other => {
                return Err(Error::BadKey {
                    text: s.to_string(),
                    reason: format!("unknown key type {other:?}, expected maj or min"),
                })
            }
        };
        Ok(KeyLabel::new(tonic, family))
    }
}

pub fn parse_key(text: &str) -> Result<KeyLabel> {
    text.parse()
}

pub fn format_key(key: KeyLabel) -> String {
    key.to_string()
}

impl Serialize for KeyLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for KeyLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
