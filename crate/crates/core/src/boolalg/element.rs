use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Finite or cofinite, the two shapes of a member of the finite–cofinite algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    Finite,
    Cofinite,
}

/// A member of a [`FieldOfSets`](super::FieldOfSets).
///
/// `Blocks` is a characteristic bit-vector over the atom blocks of a finite
/// field. `Tagged` belongs to the (possibly refined) finite–cofinite algebra
/// on the naturals: each residue class carries a default membership, and
/// `part` lists the finitely many points whose membership is flipped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "ElementRepr", try_from = "ElementRepr")]
pub enum SetElement {
    Blocks(u64),
    Tagged(TaggedSet),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaggedSet {
    /// Number of residue classes of the ambient algebra.
    pub modulus: u64,
    /// Bit `r` set: residue class `r` is cofinite-tagged.
    pub cofinite_classes: u64,
    /// Points whose membership differs from their class default.
    pub part: BTreeSet<u64>,
}

impl TaggedSet {
    pub fn empty(modulus: u64) -> Self {
        TaggedSet { modulus, cofinite_classes: 0, part: BTreeSet::new() }
    }

    pub fn class_default(&self, class: u64) -> bool {
        self.cofinite_classes >> class & 1 == 1
    }

    pub fn contains(&self, n: u64) -> bool {
        self.class_default(n % self.modulus) ^ self.part.contains(&n)
    }

    pub fn is_finite(&self) -> bool {
        self.cofinite_classes == 0
    }

    /// Pointwise Boolean combination; the result is again in normal form.
    pub fn combine(&self, other: &TaggedSet, op: impl Fn(bool, bool) -> bool) -> TaggedSet {
        debug_assert_eq!(self.modulus, other.modulus);
        let modulus = self.modulus;
        let mut cofinite_classes = 0;
        for r in 0..modulus {
            if op(self.class_default(r), other.class_default(r)) {
                cofinite_classes |= 1 << r;
            }
        }
        let part = self
            .part
            .union(&other.part)
            .copied()
            .filter(|&n| {
                let default = cofinite_classes >> (n % modulus) & 1 == 1;
                op(self.contains(n), other.contains(n)) != default
            })
            .collect();
        TaggedSet { modulus, cofinite_classes, part }
    }

    /// Members in increasing order. Infinite when any class is cofinite.
    pub fn members(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        if self.is_finite() {
            Box::new(self.part.iter().copied())
        } else {
            Box::new((0u64..).filter(move |&n| self.contains(n)))
        }
    }
}

impl SetElement {
    /// `Finite{..}` in the plain finite–cofinite algebra.
    pub fn finite(points: impl IntoIterator<Item = u64>) -> Self {
        SetElement::Tagged(TaggedSet { modulus: 1, cofinite_classes: 0, part: points.into_iter().collect() })
    }

    /// `Cofinite{..}` in the plain finite–cofinite algebra: the naturals minus `missing`.
    pub fn cofinite(missing: impl IntoIterator<Item = u64>) -> Self {
        SetElement::Tagged(TaggedSet { modulus: 1, cofinite_classes: 1, part: missing.into_iter().collect() })
    }

    /// The tag of an element of the plain (unrefined) finite–cofinite algebra.
    pub fn tag(&self) -> Option<Tag> {
        match self {
            SetElement::Tagged(t) if t.modulus == 1 => {
                Some(if t.cofinite_classes == 1 { Tag::Cofinite } else { Tag::Finite })
            }
            _ => None,
        }
    }

    pub fn as_tagged(&self) -> Option<&TaggedSet> {
        match self {
            SetElement::Tagged(t) => Some(t),
            SetElement::Blocks(_) => None,
        }
    }

    pub fn as_mask(&self) -> Option<u64> {
        match self {
            SetElement::Blocks(m) => Some(*m),
            SetElement::Tagged(_) => None,
        }
    }
}

/// Wire shape: `{"blocks":[..]}`, `{"tag":"finite"|"cofinite","part":[..]}`,
/// or `{"modulus":m,"cofinite_classes":[..],"part":[..]}` for refined algebras.
#[derive(Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum ElementRepr {
    Blocks { blocks: Vec<u64> },
    Tagged { tag: Tag, part: Vec<u64> },
    Refined { modulus: u64, cofinite_classes: Vec<u64>, part: Vec<u64> },
}

impl From<SetElement> for ElementRepr {
    fn from(a: SetElement) -> Self {
        let tag = a.tag();
        match a {
            SetElement::Blocks(mask) => {
                ElementRepr::Blocks { blocks: (0..64).filter(|i| mask >> i & 1 == 1).collect() }
            }
            SetElement::Tagged(t) => {
                let part = t.part.into_iter().collect();
                match tag {
                    Some(tag) => ElementRepr::Tagged { tag, part },
                    None => ElementRepr::Refined {
                        modulus: t.modulus,
                        cofinite_classes: (0..64).filter(|r| t.cofinite_classes >> r & 1 == 1).collect(),
                        part,
                    },
                }
            }
        }
    }
}

impl TryFrom<ElementRepr> for SetElement {
    type Error = String;

    fn try_from(r: ElementRepr) -> Result<Self, String> {
        let mask_of = |items: &[u64], what: &str| {
            items.iter().try_fold(0u64, |m, &i| {
                if i < 64 {
                    Ok(m | 1 << i)
                } else {
                    Err(format!("{what} index {i} out of range"))
                }
            })
        };
        Ok(match r {
            ElementRepr::Blocks { blocks } => SetElement::Blocks(mask_of(&blocks, "block")?),
            ElementRepr::Tagged { tag: Tag::Finite, part } => SetElement::finite(part),
            ElementRepr::Tagged { tag: Tag::Cofinite, part } => SetElement::cofinite(part),
            ElementRepr::Refined { modulus, cofinite_classes, part } => SetElement::Tagged(TaggedSet {
                modulus,
                cofinite_classes: mask_of(&cofinite_classes, "class")?,
                part: part.into_iter().collect(),
            }),
        })
    }
}

impl fmt::Display for SetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, it: impl Iterator<Item = u64>) -> fmt::Result {
            let items: Vec<String> = it.map(|n| n.to_string()).collect();
            write!(f, "{{{}}}", items.join(","))
        }
        match self {
            SetElement::Blocks(mask) => {
                write!(f, "blocks")?;
                list(f, (0..64).filter(|i| mask >> i & 1 == 1))
            }
            SetElement::Tagged(t) => match self.tag() {
                Some(Tag::Finite) => {
                    write!(f, "Finite")?;
                    list(f, t.part.iter().copied())
                }
                Some(Tag::Cofinite) => {
                    write!(f, "Cofinite")?;
                    list(f, t.part.iter().copied())
                }
                None => {
                    write!(f, "Tagged[mod {}; cofinite classes ", t.modulus)?;
                    list(f, (0..64).filter(|r| t.cofinite_classes >> r & 1 == 1))?;
                    write!(f, "; flipped ")?;
                    list(f, t.part.iter().copied())?;
                    write!(f, "]")
                }
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_and_cofinite_with_same_part_differ() {
        assert_ne!(SetElement::finite([2, 5]), SetElement::cofinite([2, 5]));
        assert_eq!(SetElement::finite([2, 5]).tag(), Some(Tag::Finite));
        assert_eq!(SetElement::cofinite([2, 5]).tag(), Some(Tag::Cofinite));
    }

    #[test]
    fn combine_keeps_normal_form() {
        let a = TaggedSet { modulus: 1, cofinite_classes: 1, part: [3].into() };
        let b = TaggedSet { modulus: 1, cofinite_classes: 0, part: [3, 4].into() };
        let union = a.combine(&b, |x, y| x || y);
        assert_eq!(union, TaggedSet { modulus: 1, cofinite_classes: 1, part: BTreeSet::new() });
        let meet = a.combine(&b, |x, y| x && y);
        assert_eq!(meet, TaggedSet { modulus: 1, cofinite_classes: 0, part: [4].into() });
    }

    #[test]
    fn members_of_cofinite_skip_missing_points() {
        let a = TaggedSet { modulus: 1, cofinite_classes: 1, part: [0, 2].into() };
        let first: Vec<u64> = a.members().take(3).collect();
        assert_eq!(first, vec![1, 3, 4]);
    }

    #[test]
    fn wire_format() {
        let a = SetElement::finite([2, 5]);
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"tag":"finite","part":[2,5]}"#);
        let b: SetElement = serde_json::from_str(r#"{"blocks":[0,2]}"#).unwrap();
        assert_eq!(b, SetElement::Blocks(0b101));
        let c: SetElement = serde_json::from_str(r#"{"modulus":2,"cofinite_classes":[1],"part":[3]}"#).unwrap();
        assert_eq!(serde_json::from_str::<SetElement>(&serde_json::to_string(&c).unwrap()).unwrap(), c);
        assert!(serde_json::from_str::<SetElement>(r#"{"blocks":[70]}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(SetElement::finite([2, 5]).to_string(), "Finite{2,5}");
        assert_eq!(SetElement::cofinite([]).to_string(), "Cofinite{}");
        assert_eq!(SetElement::Blocks(0b101).to_string(), "blocks{0,2}");
    }
}
