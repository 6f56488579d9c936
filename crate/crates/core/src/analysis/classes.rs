use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::pitch::KeyLabel;

/// An orbit of vertex sets under transposing every tonic by the same amount.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSetClass {
    /// Lexicographically least translate; its first element sits at offset 0.
    pub representative: Vec<KeyLabel>,
    /// The input sets that fall in this orbit.
    pub members: Vec<Vec<KeyLabel>>,
}

impl VertexSetClass {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn size(&self) -> usize {
        self.representative.len()
    }

    /// Offset notation, e.g. `{M_i, M_{i+2}, M_{i+7}, M_{i+9}}`.
    pub fn notation(&self) -> String {
        set_notation(&self.representative)
    }
}

impl fmt::Display for VertexSetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

impl Serialize for VertexSetClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("VertexSetClass", 3)?;
        s.serialize_field("representative", &self.notation())?;
        s.serialize_field("size", &self.size())?;
        s.serialize_field("count", &self.count())?;
        s.end()
    }
}

pub fn set_notation(set: &[KeyLabel]) -> String {
    let parts: Vec<String> = set
        .iter()
        .map(|k| match k.tonic.value() {
            0 => format!("{}_i", k.family.symbol()),
            off => format!("{}_{{i+{off}}}", k.family.symbol()),
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Least of the twelve translates, each sorted as (type M<m, offset).
pub fn canonical_translate(set: &[KeyLabel]) -> Vec<KeyLabel> {
    (0..12)
        .map(|k| {
            let mut t: Vec<KeyLabel> = set.iter().map(|l| l.transpose(k)).collect();
            t.sort();
            t
        })
        .min()
        .unwrap_or_default()
}

/// Partition `sets` into transposition orbits. Classes come out ordered by
/// set size, then representative.
pub fn transposition_classes(sets: &[Vec<KeyLabel>]) -> Vec<VertexSetClass> {
    let mut grouped: BTreeMap<(usize, Vec<KeyLabel>), Vec<Vec<KeyLabel>>> = BTreeMap::new();
    for set in sets {
        let rep = canonical_translate(set);
        let mut member = set.clone();
        member.sort();
        grouped.entry((rep.len(), rep)).or_default().push(member);
    }
    grouped
        .into_iter()
        .map(|((_, representative), members)| VertexSetClass {
            representative,
            members,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn majors(offsets: &[u8]) -> Vec<KeyLabel> {
        offsets.iter().map(|&o| KeyLabel::major(o)).collect()
    }

    #[test]
    fn augmented_orbit_has_four_members() {
        let sets: Vec<Vec<KeyLabel>> = (0..4).map(|i| majors(&[i, i + 4, i + 8])).collect();
        let classes = transposition_classes(&sets);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].count(), 4);
        assert_eq!(classes[0].notation(), "{M_i, M_{i+4}, M_{i+8}}");
    }

    #[test]
    fn fifths_clique_representative() {
        let set = majors(&[7, 9, 2, 4]);
        assert_eq!(canonical_translate(&set), majors(&[0, 2, 5, 7]));
    }

    #[test]
    fn mixed_types_sort_majors_first() {
        let set = vec![KeyLabel::minor(3), KeyLabel::major(11)];
        assert_eq!(
            canonical_translate(&set),
            vec![KeyLabel::major(0), KeyLabel::minor(4)]
        );
    }

    #[test]
    fn counts_sum_to_input() {
        let sets: Vec<Vec<KeyLabel>> = (0..12)
            .map(|i| majors(&[i, i + 1]))
            .chain((0..6).map(|i| majors(&[i, i + 6])))
            .collect();
        let classes = transposition_classes(&sets);
        assert_eq!(classes.iter().map(VertexSetClass::count).sum::<usize>(), 18);
        assert_eq!(
            classes.iter().map(|c| (c.notation(), c.count())).collect::<Vec<_>>(),
            [("{M_i, M_{i+1}}".to_string(), 12), ("{M_i, M_{i+6}}".to_string(), 6)]
        );
    }
}
