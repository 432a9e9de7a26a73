//! Representable fields of sets.
//!
//! Two families are supported. A finite field of sets is determined by its
//! atom partition, so it is stored as a partition of a finite universe and
//! its elements are unions of blocks. The finite–cofinite algebra lives on
//! the naturals; it may be refined by the residue classes modulo `classes`,
//! in which case a set belongs to the algebra when its trace on every class
//! is finite or cofinite within that class. `classes = 1` is the plain
//! finite–cofinite algebra.

mod certificate;
mod element;
mod reduce;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use certificate::{
    certify, completeness_counterexample, AtomCount, CompletenessCounterexample, Evidence, Flag, NotRepresentable,
    Progression, RefuterOutcome, StructuralCertificate,
};
pub use element::{SetElement, Tag, TaggedSet};
pub use reduce::{reduce, Reduction};

use crate::{Error, Result};

pub const MAX_BLOCKS: usize = 64;

#[derive(Clone, Debug)]
pub struct FieldOfSets {
    label: String,
    kind: FieldKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldKind {
    FinitePartition(Partition),
    FiniteCofinite { classes: u64 },
}

/// A partition of a finite universe into nonempty blocks, ordered by least point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    universe: Vec<u64>,
    blocks: Vec<Vec<u64>>,
    block_of: BTreeMap<u64, usize>,
}

impl Partition {
    pub fn new(universe: impl IntoIterator<Item = u64>, blocks: Vec<Vec<u64>>) -> Result<Self> {
        let universe: BTreeSet<u64> = universe.into_iter().collect();
        if universe.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        if blocks.len() > MAX_BLOCKS {
            return Err(Error::TooManyBlocks(blocks.len()));
        }
        let mut blocks: Vec<Vec<u64>> = blocks
            .into_iter()
            .map(|b| {
                let set: BTreeSet<u64> = b.into_iter().collect();
                set.into_iter().collect::<Vec<_>>()
            })
            .collect();
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::structural("partition blocks must be nonempty"));
        }
        blocks.sort_by_key(|b| b[0]);
        let mut block_of = BTreeMap::new();
        for (i, block) in blocks.iter().enumerate() {
            for &x in block {
                if !universe.contains(&x) {
                    return Err(Error::OutsideUniverse(x));
                }
                if block_of.insert(x, i).is_some() {
                    return Err(Error::structural(format!("point {x} lies in two blocks")));
                }
            }
        }
        if let Some(x) = universe.iter().find(|x| !block_of.contains_key(x)) {
            return Err(Error::structural(format!("point {x} is not covered by any block")));
        }
        Ok(Partition { universe: universe.into_iter().collect(), blocks, block_of })
    }

    pub fn universe(&self) -> &[u64] {
        &self.universe
    }

    pub fn blocks(&self) -> &[Vec<u64>] {
        &self.blocks
    }

    pub fn block_of(&self, x: u64) -> Option<usize> {
        self.block_of.get(&x).copied()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// The atoms of a field: explicit blocks, or every singleton of the naturals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atoms {
    Blocks(Vec<SetElement>),
    AllSingletons,
}

impl FieldOfSets {
    pub fn finite(
        label: impl Into<String>,
        universe: impl IntoIterator<Item = u64>,
        blocks: Vec<Vec<u64>>,
    ) -> Result<Self> {
        Ok(FieldOfSets { label: label.into(), kind: FieldKind::FinitePartition(Partition::new(universe, blocks)?) })
    }

    /// The full powerset of a finite universe.
    pub fn powerset(label: impl Into<String>, universe: impl IntoIterator<Item = u64>) -> Result<Self> {
        let universe: Vec<u64> = universe.into_iter().collect();
        let blocks = universe.iter().map(|&x| vec![x]).collect();
        Self::finite(label, universe, blocks)
    }

    pub fn finite_cofinite() -> Self {
        FieldOfSets { label: "FC(N)".into(), kind: FieldKind::FiniteCofinite { classes: 1 } }
    }

    /// The finite–cofinite algebra refined by the residue classes modulo `classes`.
    pub fn refined_finite_cofinite(classes: u64) -> Result<Self> {
        if classes == 0 || classes > 64 {
            return Err(Error::structural(format!("residue class count must be in 1..=64, got {classes}")));
        }
        let label = if classes == 1 { "FC(N)".to_string() } else { format!("FC(N) mod {classes}") };
        Ok(FieldOfSets { label, kind: FieldKind::FiniteCofinite { classes } })
    }

    /// The smallest field of subsets of `universe` containing every generator.
    ///
    /// Blocks are the nonempty classes of points sharing the same membership
    /// signature across the generators.
    pub fn generate(universe: &[u64], generators: &[Vec<u64>]) -> Result<Self> {
        let points: BTreeSet<u64> = universe.iter().copied().collect();
        if points.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let gens: Vec<BTreeSet<u64>> = generators.iter().map(|g| g.iter().copied().collect()).collect();
        for g in &gens {
            if let Some(&x) = g.iter().find(|x| !points.contains(x)) {
                return Err(Error::OutsideUniverse(x));
            }
        }
        let mut classes: BTreeMap<Vec<bool>, Vec<u64>> = BTreeMap::new();
        for &x in &points {
            let signature = gens.iter().map(|g| g.contains(&x)).collect();
            classes.entry(signature).or_default().push(x);
        }
        Self::finite("generated", points, classes.into_values().collect())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn partition(&self) -> Option<&Partition> {
        match &self.kind {
            FieldKind::FinitePartition(p) => Some(p),
            FieldKind::FiniteCofinite { .. } => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, FieldKind::FinitePartition(_))
    }

    /// Residue class count of a finite–cofinite algebra.
    pub fn classes(&self) -> Option<u64> {
        match self.kind {
            FieldKind::FiniteCofinite { classes } => Some(classes),
            FieldKind::FinitePartition(_) => None,
        }
    }

    pub fn same_algebra(&self, other: &FieldOfSets) -> bool {
        self.kind == other.kind
    }

    fn full_mask(&self) -> u64 {
        match &self.kind {
            FieldKind::FinitePartition(p) => mask_of_len(p.len()),
            FieldKind::FiniteCofinite { classes } => mask_of_len(*classes as usize),
        }
    }

    /// Verifies that `a` is shaped like a member of this algebra.
    pub fn check(&self, a: &SetElement) -> Result<()> {
        match (&self.kind, a) {
            (FieldKind::FinitePartition(_), SetElement::Blocks(m)) if m & !self.full_mask() == 0 => Ok(()),
            (FieldKind::FiniteCofinite { classes }, SetElement::Tagged(t))
                if t.modulus == *classes && t.cofinite_classes & !self.full_mask() == 0 =>
            {
                Ok(())
            }
            _ => Err(Error::structural(format!("element {a} does not belong to algebra {}", self.label))),
        }
    }

    pub fn zero(&self) -> SetElement {
        match self.kind {
            FieldKind::FinitePartition(_) => SetElement::Blocks(0),
            FieldKind::FiniteCofinite { classes } => SetElement::Tagged(TaggedSet::empty(classes)),
        }
    }

    pub fn one(&self) -> SetElement {
        match self.kind {
            FieldKind::FinitePartition(_) => SetElement::Blocks(self.full_mask()),
            FieldKind::FiniteCofinite { classes } => SetElement::Tagged(TaggedSet {
                modulus: classes,
                cofinite_classes: self.full_mask(),
                part: BTreeSet::new(),
            }),
        }
    }

    fn combine(&self, a: &SetElement, b: &SetElement, op: impl Fn(bool, bool) -> bool) -> Result<SetElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (SetElement::Blocks(x), SetElement::Blocks(y)) => {
                let mut out = 0;
                for i in 0..self.full_mask().count_ones() {
                    if op(x >> i & 1 == 1, y >> i & 1 == 1) {
                        out |= 1 << i;
                    }
                }
                SetElement::Blocks(out)
            }
            (SetElement::Tagged(x), SetElement::Tagged(y)) => SetElement::Tagged(x.combine(y, op)),
            _ => unreachable!("checked above"),
        })
    }

    pub fn join(&self, a: &SetElement, b: &SetElement) -> Result<SetElement> {
        self.combine(a, b, |x, y| x || y)
    }

    pub fn meet(&self, a: &SetElement, b: &SetElement) -> Result<SetElement> {
        self.combine(a, b, |x, y| x && y)
    }

    pub fn complement(&self, a: &SetElement) -> Result<SetElement> {
        self.check(a)?;
        Ok(match a {
            SetElement::Blocks(m) => SetElement::Blocks(!m & self.full_mask()),
            SetElement::Tagged(t) => SetElement::Tagged(TaggedSet {
                modulus: t.modulus,
                cofinite_classes: !t.cofinite_classes & self.full_mask(),
                part: t.part.clone(),
            }),
        })
    }

    /// `a` minus `b`.
    pub fn difference(&self, a: &SetElement, b: &SetElement) -> Result<SetElement> {
        self.combine(a, b, |x, y| x && !y)
    }

    pub fn sym_diff(&self, a: &SetElement, b: &SetElement) -> Result<SetElement> {
        self.combine(a, b, |x, y| x != y)
    }

    pub fn join_all<'a>(&self, items: impl IntoIterator<Item = &'a SetElement>) -> Result<SetElement> {
        items.into_iter().try_fold(self.zero(), |acc, x| self.join(&acc, x))
    }

    /// `a ≤ b`, i.e. `a ⊆ b`.
    pub fn le(&self, a: &SetElement, b: &SetElement) -> Result<bool> {
        Ok(self.is_zero(&self.difference(a, b)?))
    }

    pub fn is_zero(&self, a: &SetElement) -> bool {
        *a == self.zero()
    }

    pub fn is_one(&self, a: &SetElement) -> bool {
        *a == self.one()
    }

    pub fn disjoint(&self, a: &SetElement, b: &SetElement) -> Result<bool> {
        Ok(self.is_zero(&self.meet(a, b)?))
    }

    /// Whether the point `x` of the universe lies in `a`.
    pub fn contains_point(&self, a: &SetElement, x: u64) -> Result<bool> {
        self.check(a)?;
        match (&self.kind, a) {
            (FieldKind::FinitePartition(p), SetElement::Blocks(m)) => {
                let block = p.block_of(x).ok_or(Error::OutsideUniverse(x))?;
                Ok(m >> block & 1 == 1)
            }
            (FieldKind::FiniteCofinite { .. }, SetElement::Tagged(t)) => Ok(t.contains(x)),
            _ => unreachable!("checked above"),
        }
    }

    /// The points of a finite-field element.
    pub fn points_of(&self, a: &SetElement) -> Result<Vec<u64>> {
        self.check(a)?;
        match (&self.kind, a) {
            (FieldKind::FinitePartition(p), SetElement::Blocks(m)) => Ok(p
                .blocks
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .flat_map(|(_, b)| b.iter().copied())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()),
            (FieldKind::FiniteCofinite { .. }, SetElement::Tagged(t)) if t.is_finite() => {
                Ok(t.part.iter().copied().collect())
            }
            _ => Err(Error::Unsupported(format!("{a} has infinitely many points"))),
        }
    }

    /// The element consisting of exactly `points`, when that set is in the algebra.
    pub fn element_from_points(&self, points: &[u64]) -> Result<SetElement> {
        match &self.kind {
            FieldKind::FinitePartition(p) => {
                let wanted: BTreeSet<u64> = points.iter().copied().collect();
                let mut mask = 0u64;
                for &x in &wanted {
                    mask |= 1 << p.block_of(x).ok_or(Error::OutsideUniverse(x))?;
                }
                let covered: BTreeSet<u64> = self.points_of(&SetElement::Blocks(mask))?.into_iter().collect();
                if covered != wanted {
                    return Err(Error::structural(format!("{points:?} is not a union of blocks of {}", self.label)));
                }
                Ok(SetElement::Blocks(mask))
            }
            FieldKind::FiniteCofinite { classes } => Ok(SetElement::Tagged(TaggedSet {
                modulus: *classes,
                cofinite_classes: 0,
                part: points.iter().copied().collect(),
            })),
        }
    }

    pub fn singleton(&self, x: u64) -> Result<SetElement> {
        self.element_from_points(&[x])
    }

    /// The residue class `r` as an element of a refined finite–cofinite algebra.
    pub fn residue_class(&self, r: u64) -> Result<SetElement> {
        match self.kind {
            FieldKind::FiniteCofinite { classes } if r < classes => {
                Ok(SetElement::Tagged(TaggedSet { modulus: classes, cofinite_classes: 1 << r, part: BTreeSet::new() }))
            }
            _ => Err(Error::structural(format!("no residue class {r} in {}", self.label))),
        }
    }

    pub fn atoms(&self) -> Atoms {
        match &self.kind {
            FieldKind::FinitePartition(p) => Atoms::Blocks((0..p.len()).map(|i| SetElement::Blocks(1 << i)).collect()),
            FieldKind::FiniteCofinite { .. } => Atoms::AllSingletons,
        }
    }

    pub fn atom_count(&self) -> Option<usize> {
        self.partition().map(Partition::len)
    }

    /// Whether `a` is an atom: nonzero with no nonzero strict subelement.
    pub fn is_atom(&self, a: &SetElement) -> Result<bool> {
        self.check(a)?;
        Ok(match a {
            SetElement::Blocks(m) => m.count_ones() == 1,
            SetElement::Tagged(t) => t.is_finite() && t.part.len() == 1,
        })
    }

    /// Every element of a finite field, in mask order.
    pub fn elements(&self) -> Result<impl Iterator<Item = SetElement>> {
        match &self.kind {
            FieldKind::FinitePartition(p) if p.len() < 64 => Ok((0..1u64 << p.len()).map(SetElement::Blocks)),
            _ => Err(Error::Unsupported(format!("cannot enumerate the elements of {}", self.label))),
        }
    }

    /// Elements of a finite–cofinite algebra whose flipped points all lie below `window`.
    pub fn window_elements(&self, window: u64) -> Result<Vec<SetElement>> {
        let classes =
            self.classes().ok_or_else(|| Error::structural("window enumeration needs a finite–cofinite algebra"))?;
        if window > 16 || classes > 4 {
            return Err(Error::Unsupported("window enumeration is limited to 16 points and 4 classes".into()));
        }
        let mut out = Vec::new();
        for cofinite_classes in 0..1u64 << classes {
            for bits in 0..1u64 << window {
                let part = (0..window).filter(|i| bits >> i & 1 == 1).collect();
                out.push(SetElement::Tagged(TaggedSet { modulus: classes, cofinite_classes, part }));
            }
        }
        Ok(out)
    }

    /// Least members of `a`, at most `limit` of them.
    pub fn first_members(&self, a: &SetElement, limit: usize) -> Result<Vec<u64>> {
        self.check(a)?;
        Ok(match a {
            SetElement::Blocks(_) => self.points_of(a)?.into_iter().take(limit).collect(),
            SetElement::Tagged(t) => t.members().take(limit).collect(),
        })
    }

    /// Renders an element by its points where that is finite.
    pub fn render(&self, a: &SetElement) -> String {
        match (&self.kind, a) {
            (FieldKind::FinitePartition(_), SetElement::Blocks(_)) => match self.points_of(a) {
                Ok(points) => {
                    let items: Vec<String> = points.iter().map(u64::to_string).collect();
                    format!("{{{}}}", items.join(","))
                }
                Err(_) => a.to_string(),
            },
            _ => a.to_string(),
        }
    }

    /// Turns every element into a pairwise-disjoint family with the same union:
    /// `b_n = a_n \ (a_0 ∨ … ∨ a_{n-1})`.
    pub fn disjointify(&self, family: &[SetElement]) -> Result<Vec<SetElement>> {
        let mut seen = self.zero();
        let mut out = Vec::with_capacity(family.len());
        for a in family {
            out.push(self.difference(a, &seen)?);
            seen = self.join(&seen, a)?;
        }
        Ok(out)
    }

    /// Checks that this algebra's elements embed in `big`'s (same universe,
    /// every element of `self` is an element of `big`).
    pub fn check_embeds_in(&self, big: &FieldOfSets) -> Result<()> {
        match (&self.kind, &big.kind) {
            (FieldKind::FinitePartition(small), FieldKind::FinitePartition(large)) => {
                if small.universe != large.universe {
                    return Err(Error::structural("algebras have different universes"));
                }
                for block in &small.blocks {
                    big.element_from_points(block)?;
                }
                Ok(())
            }
            (FieldKind::FiniteCofinite { classes: s }, FieldKind::FiniteCofinite { classes: l }) if l % s == 0 => {
                Ok(())
            }
            _ => Err(Error::structural(format!("{} does not embed in {}", self.label, big.label))),
        }
    }

    /// The image of one of this algebra's elements inside `big`.
    pub fn embed(&self, a: &SetElement, big: &FieldOfSets) -> Result<SetElement> {
        self.check_embeds_in(big)?;
        self.check(a)?;
        match a {
            SetElement::Blocks(_) => big.element_from_points(&self.points_of(a)?),
            SetElement::Tagged(t) => {
                let (small, large) = (self.classes().unwrap_or(1), big.classes().unwrap_or(1));
                let mut cofinite_classes = 0;
                for r in 0..large {
                    if t.class_default(r % small) {
                        cofinite_classes |= 1 << r;
                    }
                }
                Ok(SetElement::Tagged(TaggedSet { modulus: large, cofinite_classes, part: t.part.clone() }))
            }
        }
    }

    /// A nonzero element of `self` lying below `b ∈ big`, if one exists.
    pub fn nonzero_below(&self, big: &FieldOfSets, b: &SetElement) -> Result<Option<SetElement>> {
        self.check_embeds_in(big)?;
        big.check(b)?;
        match &self.kind {
            FieldKind::FinitePartition(p) => {
                for block in p.blocks() {
                    let mut inside = true;
                    for &x in block {
                        inside &= big.contains_point(b, x)?;
                    }
                    if inside {
                        return self.element_from_points(block).map(Some);
                    }
                }
                Ok(None)
            }
            FieldKind::FiniteCofinite { .. } => match big.first_members(b, 1)?.first() {
                Some(&n) => self.singleton(n).map(Some),
                None => Ok(None),
            },
        }
    }

    /// Whether every nonzero element of `big` contains a nonzero element of `self`.
    pub fn is_dense_in(&self, big: &FieldOfSets) -> Result<bool> {
        self.check_embeds_in(big)?;
        match big.atoms() {
            // Both families are atomic, so density reduces to the atoms of `big`.
            Atoms::Blocks(atoms) => {
                for atom in &atoms {
                    if self.nonzero_below(big, atom)?.is_none() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            // Every singleton of the naturals is already in `self`.
            Atoms::AllSingletons => Ok(true),
        }
    }
}

/// `A` is a dense subalgebra of `B`.
pub fn is_dense_subalgebra(small: &FieldOfSets, big: &FieldOfSets) -> Result<bool> {
    small.is_dense_in(big)
}

fn mask_of_len(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl fmt::Display for FieldOfSets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FieldKind::FinitePartition(p) => {
                let blocks: Vec<String> = p
                    .blocks
                    .iter()
                    .map(|b| format!("{{{}}}", b.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
                    .collect();
                write!(f, "{} [blocks {}]", self.label, blocks.join(" "))
            }
            FieldKind::FiniteCofinite { .. } => write!(f, "{}", self.label),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> FieldOfSets {
        FieldOfSets::finite("sample", [1, 2, 3, 4], vec![vec![1], vec![2], vec![3, 4]]).unwrap()
    }

    #[test]
    fn join_of_blocks_is_set_union() {
        let a = sample();
        let one = a.element_from_points(&[1]).unwrap();
        let three_four = a.element_from_points(&[3, 4]).unwrap();
        let j = a.join(&one, &three_four).unwrap();
        assert_eq!(a.points_of(&j).unwrap(), vec![1, 3, 4]);
        assert_eq!(a.join(&a.zero(), &one).unwrap(), one);
    }

    #[test]
    fn complement_flips_tag() {
        let fc = FieldOfSets::finite_cofinite();
        let c = fc.complement(&SetElement::finite([2, 5])).unwrap();
        assert_eq!(c, SetElement::cofinite([2, 5]));
    }

    #[test]
    fn mixed_algebra_is_rejected() {
        let a = sample();
        let fc = FieldOfSets::finite_cofinite();
        assert!(matches!(a.join(&a.zero(), &fc.zero()), Err(Error::Structural(_))));
        assert!(a.check(&SetElement::Blocks(0b1000)).is_err());
    }

    #[test]
    fn atoms_are_blocks() {
        let a = sample();
        let Atoms::Blocks(atoms) = a.atoms() else { panic!() };
        let points: Vec<Vec<u64>> = atoms.iter().map(|x| a.points_of(x).unwrap()).collect();
        assert_eq!(points, vec![vec![1], vec![2], vec![3, 4]]);
        // exhaustive minimality
        for atom in &atoms {
            for e in a.elements().unwrap() {
                if !a.is_zero(&e) && a.le(&e, atom).unwrap() {
                    assert_eq!(&e, atom);
                }
            }
        }
        let one_block = FieldOfSets::finite("X", [7, 8], vec![vec![7, 8]]).unwrap();
        assert_eq!(one_block.atoms(), Atoms::Blocks(vec![one_block.one()]));
        assert_eq!(FieldOfSets::finite_cofinite().atoms(), Atoms::AllSingletons);
    }

    #[test]
    fn generate_collects_signature_classes() {
        let g = FieldOfSets::generate(&[1, 2, 3, 4], &[vec![1], vec![1, 2]]).unwrap();
        assert_eq!(g.partition().unwrap().blocks(), &[vec![1], vec![2], vec![3, 4]]);
        let trivial = FieldOfSets::generate(&[1, 2, 3], &[]).unwrap();
        assert_eq!(trivial.partition().unwrap().blocks(), &[vec![1, 2, 3]]);
        let discrete = FieldOfSets::generate(&[1, 2, 3], &[vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(discrete.partition().unwrap().blocks(), &[vec![1], vec![2], vec![3]]);
        assert_eq!(FieldOfSets::generate(&[], &[]).unwrap_err(), Error::EmptyUniverse);
        assert_eq!(FieldOfSets::generate(&[1], &[vec![9]]).unwrap_err(), Error::OutsideUniverse(9));
    }

    #[test]
    fn partition_validation() {
        assert!(FieldOfSets::finite("bad", [1, 2], vec![vec![1], vec![1, 2]]).is_err());
        assert!(FieldOfSets::finite("bad", [1, 2], vec![vec![1]]).is_err());
        assert!(FieldOfSets::finite("bad", [1, 2], vec![vec![1], vec![]]).is_err());
        assert!(FieldOfSets::finite("bad", [1], vec![vec![1], vec![5]]).is_err());
    }

    #[test]
    fn disjointify_examples() {
        let p = FieldOfSets::powerset("P3", [1, 2, 3]).unwrap();
        let e = |xs: &[u64]| p.element_from_points(xs).unwrap();
        let out = p.disjointify(&[e(&[1, 2]), e(&[2, 3])]).unwrap();
        assert_eq!(out, vec![e(&[1, 2]), e(&[3])]);
        let disjoint = vec![e(&[1]), e(&[2, 3])];
        assert_eq!(p.disjointify(&disjoint).unwrap(), disjoint);
        assert_eq!(p.disjointify(&[e(&[1, 3]), e(&[1, 3])]).unwrap(), vec![e(&[1, 3]), p.zero()]);
    }

    #[test]
    fn dense_subalgebra_examples() {
        let fc = FieldOfSets::finite_cofinite();
        let parity = FieldOfSets::refined_finite_cofinite(2).unwrap();
        assert!(is_dense_subalgebra(&fc, &parity).unwrap());
        assert!(is_dense_subalgebra(&fc, &fc).unwrap());
        let trivial = FieldOfSets::finite("T", [1, 2], vec![vec![1, 2]]).unwrap();
        let full = FieldOfSets::powerset("P", [1, 2]).unwrap();
        assert!(!is_dense_subalgebra(&trivial, &full).unwrap());
        assert!(is_dense_subalgebra(&full, &full).unwrap());
        assert!(is_dense_subalgebra(&parity, &fc).is_err());
        let other = FieldOfSets::powerset("Q", [1, 3]).unwrap();
        assert!(is_dense_subalgebra(&full, &other).is_err());
    }

    #[test]
    fn embedding_into_parity_refinement() {
        let fc = FieldOfSets::finite_cofinite();
        let parity = FieldOfSets::refined_finite_cofinite(2).unwrap();
        let a = SetElement::cofinite([3]);
        let b = fc.embed(&a, &parity).unwrap();
        for n in 0..20 {
            assert_eq!(fc.contains_point(&a, n).unwrap(), parity.contains_point(&b, n).unwrap());
        }
    }
}
