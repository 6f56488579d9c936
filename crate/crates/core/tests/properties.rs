use std::collections::BTreeSet;

use modugraph::corpus::{canonical_edges, class_histogram, class_of, load_corpus, FIXTURE_CSV};
use modugraph::graph::{pivots, GraphPreset};
use modugraph::pitch::{classify_triad, format_key, parse_key, transpose};
use modugraph::{KeyFamily, KeyLabel, PitchClass, Scale, ScaleFamily, ScaleKind, Triad};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = ScaleKind> {
    prop::sample::select(ScaleKind::ALL.to_vec())
}

fn family() -> impl Strategy<Value = KeyFamily> {
    prop::sample::select(vec![KeyFamily::MajorType, KeyFamily::MinorType])
}

fn key() -> impl Strategy<Value = KeyLabel> {
    (0u8..12, family()).prop_map(|(t, f)| KeyLabel::new(PitchClass::new(t as i64), f))
}

fn pc_set(scale: &Scale) -> BTreeSet<PitchClass> {
    scale.degrees().iter().copied().collect()
}

proptest! {
    #[test]
    fn transpose_by_octave_is_identity(pc in 0i64..12, k in -50i64..50) {
        let p = PitchClass::new(pc);
        prop_assert_eq!(transpose(p, 12), p);
        prop_assert_eq!(transpose(transpose(p, k), -k), p);
    }

    #[test]
    fn key_text_round_trip(k in key()) {
        prop_assert_eq!(parse_key(&format_key(k)).unwrap(), k);
    }

    #[test]
    fn triads_are_transposition_equivariant(tonic in 0i64..12, kind in kind(), k in 0i64..12) {
        let scale = Scale::new(PitchClass::new(tonic), kind);
        let moved: BTreeSet<Triad> = scale.transpose(k).diatonic_triads().into_iter().collect();
        let each: BTreeSet<Triad> = scale.diatonic_triads().iter().map(|t| t.transpose(k)).collect();
        prop_assert_eq!(moved, each);
    }

    #[test]
    fn song_graph_canonical_form_is_transposition_invariant(
        edges in prop::collection::vec((key(), key()), 1..6),
        k in 0i64..12,
    ) {
        let edges: Vec<(KeyLabel, KeyLabel)> = edges.into_iter().filter(|(a, b)| a != b).collect();
        let moved: Vec<_> = edges.iter().map(|&(a, b)| (a.transpose(k), b.transpose(k))).collect();
        let canon = canonical_edges(&edges);
        prop_assert_eq!(canonical_edges(&moved), canon.clone());
        prop_assert_eq!(canonical_edges(&canon), canon);
    }
}

#[test]
fn scale_template_relations() {
    for tonic in PitchClass::all() {
        let major = Scale::new(tonic, ScaleKind::Major);
        let mixo = Scale::new(tonic, ScaleKind::Mixolydian);
        let melodic = Scale::new(tonic, ScaleKind::MelodicMinor);
        let differing = |a: &Scale, b: &Scale| {
            (0..7).filter(|&i| a.degrees()[i] != b.degrees()[i]).collect::<Vec<_>>()
        };
        assert_eq!(differing(&major, &mixo), [6]);
        assert_eq!(mixo.degrees()[6], major.degrees()[6].transpose(-1));
        assert_eq!(differing(&major, &melodic), [2]);
        assert_eq!(melodic.degrees()[2], major.degrees()[2].transpose(-1));
        assert_eq!(
            pc_set(&Scale::new(tonic, ScaleKind::NaturalMinor)),
            pc_set(&Scale::new(tonic.transpose(3), ScaleKind::Major))
        );
        for kind in ScaleKind::ALL {
            let scale = Scale::new(tonic, kind);
            assert_eq!(scale.degrees()[0], tonic);
            assert_eq!(pc_set(&scale).len(), 7);
            for t in scale.diatonic_triads() {
                assert!(classify_triad(t.pitch_classes()).is_some());
            }
        }
    }
}

#[test]
fn pivots_are_symmetric_and_transposition_invariant() {
    let labels: Vec<KeyLabel> = GraphPreset::Combined24.build().labels();
    let families: Vec<ScaleFamily> = labels.iter().map(|&l| ScaleFamily::standard(l)).collect();
    for a in &families {
        for b in &families {
            if a.label() == b.label() {
                continue;
            }
            let ab = pivots(a, b).unwrap();
            assert_eq!(ab, pivots(b, a).unwrap());
            for k in 1..12 {
                let a2 = ScaleFamily::standard(a.label().transpose(k));
                let b2 = ScaleFamily::standard(b.label().transpose(k));
                let moved: BTreeSet<Triad> = ab.iter().map(|t| t.transpose(k)).collect();
                assert_eq!(pivots(&a2, &b2).unwrap(), moved);
            }
        }
    }
}

#[test]
fn edges_agree_with_pivot_sets() {
    for preset in GraphPreset::ALL {
        let g = preset.build();
        for u in 0..g.len() {
            for v in 0..g.len() {
                if u == v {
                    continue;
                }
                let shared = !g.family(u).triads().is_disjoint(g.family(v).triads());
                assert_eq!(g.is_adjacent(u, v), shared);
                assert_eq!(!g.pivots_between(u, v).is_empty(), shared);
            }
        }
    }
}

#[test]
fn rings_are_rotation_invariant() {
    for preset in [GraphPreset::Major12, GraphPreset::Minor12] {
        let g = preset.build();
        for u in 0..12 {
            for v in 0..12 {
                assert_eq!(g.is_adjacent(u, v), g.is_adjacent((u + 1) % 12, (v + 1) % 12));
            }
        }
    }
}

#[test]
fn combined_graph_induces_the_ring_graphs() {
    let combined = GraphPreset::Combined24.build();
    let majors: Vec<usize> = (0..12).collect();
    let minors: Vec<usize> = (12..24).collect();
    for (keep, preset) in [(majors, GraphPreset::Major12), (minors, GraphPreset::Minor12)] {
        let induced = combined.induced(&keep).simple();
        assert_eq!(induced, preset.build().simple());
    }
}

#[test]
fn class_of_is_transposition_invariant() {
    for from_type in [KeyFamily::MajorType, KeyFamily::MinorType] {
        for to_type in [KeyFamily::MajorType, KeyFamily::MinorType] {
            for interval in 0..12 {
                let from = KeyLabel::new(PitchClass::C, from_type);
                let to = KeyLabel::new(PitchClass::new(interval), to_type);
                if from == to {
                    continue;
                }
                let base = class_of(from, to).unwrap();
                for k in 0..12 {
                    assert_eq!(class_of(from.transpose(k), to.transpose(k)).unwrap(), base);
                }
            }
        }
    }
}

#[test]
fn loading_twice_concatenated_is_idempotent() {
    let once = load_corpus(FIXTURE_CSV.as_bytes()).unwrap();
    let body = FIXTURE_CSV.split_once('\n').unwrap().1;
    let twice = load_corpus(format!("{FIXTURE_CSV}{body}").as_bytes()).unwrap();
    let strip = |rs: Vec<modugraph::corpus::ModulationRecord>| {
        rs.into_iter().map(|mut r| {
            r.line = 0;
            r
        }).collect::<Vec<_>>()
    };
    assert_eq!(strip(once), strip(twice));
}

#[test]
fn histogram_bounds() {
    let records = load_corpus(FIXTURE_CSV.as_bytes()).unwrap();
    let songs: BTreeSet<&str> = records.iter().map(|r| r.song_id.as_str()).collect();
    let h = class_histogram(&records);
    assert!(h.values().all(|&c| c <= songs.len()));
    assert!(h.values().sum::<usize>() >= songs.len());
}

#[test]
fn theory_flag_matches_pivot_graph_for_every_class() {
    use modugraph::corpus::ModulationClass;
    let g = GraphPreset::Combined24.build();
    for from_type in [KeyFamily::MajorType, KeyFamily::MinorType] {
        for to_type in [KeyFamily::MajorType, KeyFamily::MinorType] {
            for interval in 0..12u8 {
                let class = ModulationClass::new(from_type, to_type, interval);
                let (a, b) = class.representative();
                if a == b {
                    continue;
                }
                let adjacent = g.is_adjacent(g.vertex(a).unwrap(), g.vertex(b).unwrap());
                assert_eq!(class.permits_pivot(), adjacent, "{class}");
            }
        }
    }
}
