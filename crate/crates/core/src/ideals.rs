//! Order ideals of a field of sets and the quotient algebras they define.
//!
//! Ideals are intensional. A finitely generated ideal is principal, so it is
//! stored by the join of its generators (its support). The finite–cofinite
//! algebras add two more shapes: the ideal of all finite sets, and the point
//! ideal of sets missing a given index.

use std::fmt;

use crate::boolalg::{FieldKind, FieldOfSets, SetElement, TaggedSet};
use crate::{Error, Result};

/// Exhaustive element scans are used for primality up to this many atoms.
const EXHAUSTIVE_PRIME_ATOMS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealSpec {
    /// Everything below `support`.
    Generated(SetElement),
    /// Every finite set (finite–cofinite algebras only).
    AllFinite,
    /// Every element not containing the index (finite–cofinite algebras only;
    /// finite algebras store it as a principal ideal).
    PointIdeal(u64),
}

#[derive(Clone, Debug)]
pub struct OrderIdeal {
    field: FieldOfSets,
    spec: IdealSpec,
}

impl OrderIdeal {
    /// The ideal generated by `gens`, i.e. everything below their join.
    pub fn generated(field: &FieldOfSets, gens: &[SetElement]) -> Result<Self> {
        let support = field.join_all(gens)?;
        Ok(OrderIdeal { field: field.clone(), spec: IdealSpec::Generated(support) })
    }

    pub fn principal(field: &FieldOfSets, support: SetElement) -> Result<Self> {
        field.check(&support)?;
        Ok(OrderIdeal { field: field.clone(), spec: IdealSpec::Generated(support) })
    }

    pub fn zero(field: &FieldOfSets) -> Self {
        OrderIdeal { field: field.clone(), spec: IdealSpec::Generated(field.zero()) }
    }

    pub fn whole(field: &FieldOfSets) -> Self {
        OrderIdeal { field: field.clone(), spec: IdealSpec::Generated(field.one()) }
    }

    pub fn all_finite(field: &FieldOfSets) -> Result<Self> {
        if field.is_finite() {
            return Err(Error::Unsupported("the all-finite ideal needs a finite–cofinite algebra".into()));
        }
        Ok(OrderIdeal { field: field.clone(), spec: IdealSpec::AllFinite })
    }

    /// Elements not containing `x`.
    pub fn point(field: &FieldOfSets, x: u64) -> Result<Self> {
        let spec = if field.is_finite() {
            IdealSpec::Generated(field.complement(&field.singleton_block(x)?)?)
        } else {
            IdealSpec::PointIdeal(x)
        };
        Ok(OrderIdeal { field: field.clone(), spec })
    }

    /// All `2^k` ideals of a finite field with `k` atoms, in support-mask order.
    pub fn all(field: &FieldOfSets) -> Result<Vec<Self>> {
        Ok(field.elements()?.map(|s| OrderIdeal { field: field.clone(), spec: IdealSpec::Generated(s) }).collect())
    }

    pub fn field(&self) -> &FieldOfSets {
        &self.field
    }

    pub fn spec(&self) -> &IdealSpec {
        &self.spec
    }

    /// The largest element of a principal ideal. `None` for the all-finite ideal.
    pub fn support(&self) -> Option<SetElement> {
        match &self.spec {
            IdealSpec::Generated(s) => Some(s.clone()),
            IdealSpec::AllFinite => None,
            IdealSpec::PointIdeal(x) => Some(
                self.field.complement(&self.field.singleton(*x).expect("index in universe")).expect("same algebra"),
            ),
        }
    }

    pub fn contains(&self, a: &SetElement) -> Result<bool> {
        self.field.check(a)?;
        match &self.spec {
            IdealSpec::Generated(s) => self.field.le(a, s),
            IdealSpec::AllFinite => Ok(a.as_tagged().is_some_and(TaggedSet::is_finite)),
            IdealSpec::PointIdeal(x) => Ok(!self.field.contains_point(a, *x)?),
        }
    }

    pub fn is_proper(&self) -> bool {
        !self.contains(&self.field.one()).expect("one belongs to the algebra")
    }

    pub fn is_zero(&self) -> bool {
        self.support().is_some_and(|s| self.field.is_zero(&s))
    }

    /// `self ⊆ other`.
    pub fn is_subideal(&self, other: &OrderIdeal) -> Result<bool> {
        self.same_field(other)?;
        match self.support() {
            Some(s) => other.contains(&s),
            // every finite set lies below t only when t is everything
            None => Ok(match other.support() {
                Some(t) => self.field.is_one(&t),
                None => true,
            }),
        }
    }

    fn same_field(&self, other: &OrderIdeal) -> Result<()> {
        if self.field.same_algebra(&other.field) {
            Ok(())
        } else {
            Err(Error::structural("ideals live in different algebras"))
        }
    }

    /// `{t : t ∧ a = 0 for every a in the ideal}`.
    pub fn perp(&self) -> OrderIdeal {
        let spec = match self.support() {
            Some(s) => IdealSpec::Generated(self.field.complement(&s).expect("same algebra")),
            // a nonzero element contains a singleton, which is finite
            None => IdealSpec::Generated(self.field.zero()),
        };
        OrderIdeal { field: self.field.clone(), spec }
    }

    /// An element `b` with neither `b` nor its complement in the ideal, if one exists.
    pub fn prime_witness(&self) -> Result<Option<SetElement>> {
        if !self.is_proper() {
            return Err(Error::ImproperIdeal);
        }
        let field = &self.field;
        match (field.kind(), self.support()) {
            (FieldKind::FinitePartition(p), Some(_)) if p.len() <= EXHAUSTIVE_PRIME_ATOMS => {
                for b in field.elements()? {
                    if !self.contains(&b)? && !self.contains(&field.complement(&b)?)? {
                        return Ok(Some(b));
                    }
                }
                Ok(None)
            }
            (_, Some(s)) => {
                // ↓s is prime iff ¬s is an atom; otherwise split ¬s into two nonzero parts.
                let rest = field.complement(&s)?;
                if field.is_atom(&rest)? {
                    return Ok(None);
                }
                let part = match &rest {
                    SetElement::Blocks(m) => SetElement::Blocks(m & m.wrapping_neg()),
                    SetElement::Tagged(_) => field.singleton(field.first_members(&rest, 1)?[0])?,
                };
                Ok(Some(part))
            }
            (FieldKind::FiniteCofinite { classes }, None) => {
                if *classes == 1 {
                    Ok(None)
                } else {
                    field.residue_class(0).map(Some)
                }
            }
            (FieldKind::FinitePartition(_), None) => unreachable!("all-finite ideal needs a finite–cofinite algebra"),
        }
    }

    pub fn is_prime(&self) -> Result<bool> {
        Ok(self.prime_witness()?.is_none())
    }

    /// Maximal among proper order ideals.
    ///
    /// Finite algebras are decided by scanning every ideal. Over the
    /// finite–cofinite algebras this reports primality, which is equivalent
    /// in any Boolean algebra.
    pub fn is_maximal(&self) -> Result<bool> {
        if !self.is_proper() {
            return Err(Error::ImproperIdeal);
        }
        if !self.field.is_finite() {
            return self.is_prime();
        }
        for other in OrderIdeal::all(&self.field)? {
            if other.is_proper() && self.is_subideal(&other)? && !other.is_subideal(self)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn quotient(&self) -> Result<QuotientAlgebra> {
        QuotientAlgebra::new(self.clone())
    }
}

impl PartialEq for OrderIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_algebra(&other.field) && self.support() == other.support()
    }
}

impl Eq for OrderIdeal {}

impl fmt::Display for OrderIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.spec {
            IdealSpec::Generated(s) => write!(f, "Generated({})", self.field.render(s)),
            IdealSpec::AllFinite => write!(f, "AllFinite"),
            IdealSpec::PointIdeal(x) => write!(f, "PointIdeal({x})"),
        }
    }
}

impl FieldOfSets {
    /// The atom containing the point `x`.
    pub fn singleton_block(&self, x: u64) -> Result<SetElement> {
        match self.partition() {
            Some(p) => Ok(SetElement::Blocks(1 << p.block_of(x).ok_or(Error::OutsideUniverse(x))?)),
            None => self.singleton(x),
        }
    }
}

/// `𝒜/I`, with each class stored by a canonical representative.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    ideal: OrderIdeal,
}

impl QuotientAlgebra {
    pub fn new(ideal: OrderIdeal) -> Result<Self> {
        if !ideal.is_proper() {
            return Err(Error::ImproperIdeal);
        }
        Ok(QuotientAlgebra { ideal })
    }

    pub fn base(&self) -> &FieldOfSets {
        &self.ideal.field
    }

    pub fn ideal(&self) -> &OrderIdeal {
        &self.ideal
    }

    /// The canonical member of `a + I`: the part of `a` outside a principal
    /// ideal's support, or only the class tags modulo the finite sets.
    pub fn class_of(&self, a: &SetElement) -> Result<SetElement> {
        let field = self.base();
        field.check(a)?;
        match self.ideal.support() {
            Some(s) => field.difference(a, &s),
            None => {
                let t = a.as_tagged().expect("checked finite–cofinite element");
                Ok(SetElement::Tagged(TaggedSet { part: Default::default(), ..t.clone() }))
            }
        }
    }

    /// `a + I = b + I`, i.e. `a ⊕ b ∈ I`.
    pub fn equivalent(&self, a: &SetElement, b: &SetElement) -> Result<bool> {
        self.ideal.contains(&self.base().sym_diff(a, b)?)
    }

    pub fn zero(&self) -> SetElement {
        self.class_of(&self.base().zero()).expect("zero belongs")
    }

    pub fn one(&self) -> SetElement {
        self.class_of(&self.base().one()).expect("one belongs")
    }

    pub fn join(&self, a: &SetElement, b: &SetElement) -> Result<SetElement> {
        self.class_of(&self.base().join(a, b)?)
    }

    pub fn meet(&self, a: &SetElement, b: &SetElement) -> Result<SetElement> {
        self.class_of(&self.base().meet(a, b)?)
    }

    pub fn complement(&self, a: &SetElement) -> Result<SetElement> {
        self.class_of(&self.base().complement(a)?)
    }

    /// Canonical representatives of every class, when there are finitely many.
    pub fn elements(&self) -> Result<Vec<SetElement>> {
        let field = self.base();
        match (field.kind(), self.ideal.support()) {
            (FieldKind::FinitePartition(_), Some(s)) => {
                let mut out = Vec::new();
                for a in field.elements()? {
                    if field.disjoint(&a, &s)? {
                        out.push(a);
                    }
                }
                Ok(out)
            }
            (FieldKind::FiniteCofinite { classes }, None) => Ok((0..1u64 << classes)
                .map(|cofinite_classes| {
                    SetElement::Tagged(TaggedSet { modulus: *classes, cofinite_classes, part: Default::default() })
                })
                .collect()),
            (FieldKind::FiniteCofinite { .. }, Some(s)) => {
                let rest = field.complement(&s)?;
                let points = field
                    .points_of(&rest)
                    .map_err(|_| Error::Unsupported(format!("{} has infinitely many classes", self.ideal)))?;
                if points.len() > 16 {
                    return Err(Error::Unsupported("quotient has more than 2^16 classes".into()));
                }
                Ok((0..1u64 << points.len())
                    .map(|bits| {
                        let chosen: Vec<u64> =
                            points.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &x)| x).collect();
                        field.element_from_points(&chosen).expect("finite set")
                    })
                    .collect())
            }
            (FieldKind::FinitePartition(_), None) => unreachable!("all-finite ideal needs a finite–cofinite algebra"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> FieldOfSets {
        FieldOfSets::finite("sample", [1, 2, 3, 4], vec![vec![1], vec![2], vec![3, 4]]).unwrap()
    }

    fn el(a: &FieldOfSets, xs: &[u64]) -> SetElement {
        a.element_from_points(xs).unwrap()
    }

    #[test]
    fn membership() {
        let a = sample();
        let i = OrderIdeal::generated(&a, &[el(&a, &[1])]).unwrap();
        assert!(i.contains(&a.zero()).unwrap());
        let j = OrderIdeal::generated(&a, &[el(&a, &[1]), el(&a, &[2])]).unwrap();
        assert!(j.contains(&el(&a, &[1, 2])).unwrap());
        assert!(!j.contains(&el(&a, &[3, 4])).unwrap());
        let fc = FieldOfSets::finite_cofinite();
        let fin = OrderIdeal::all_finite(&fc).unwrap();
        assert!(!fin.contains(&SetElement::cofinite([])).unwrap());
        assert!(fin.contains(&SetElement::finite([1, 9])).unwrap());
    }

    #[test]
    fn perp_examples() {
        let a = sample();
        let i = OrderIdeal::generated(&a, &[el(&a, &[1])]).unwrap();
        assert_eq!(i.perp(), OrderIdeal::generated(&a, &[el(&a, &[2, 3, 4])]).unwrap());
        assert_eq!(OrderIdeal::zero(&a).perp(), OrderIdeal::whole(&a));
        assert!(!OrderIdeal::whole(&a).is_proper());
        let fc = FieldOfSets::finite_cofinite();
        assert!(OrderIdeal::all_finite(&fc).unwrap().perp().is_zero());
        let p = OrderIdeal::point(&fc, 4).unwrap();
        assert_eq!(p.perp(), OrderIdeal::generated(&fc, &[SetElement::finite([4])]).unwrap());
    }

    #[test]
    fn primality() {
        let a = sample();
        let i = OrderIdeal::generated(&a, &[el(&a, &[1])]).unwrap();
        assert!(!i.is_prime().unwrap());
        assert!(!i.is_maximal().unwrap());
        let p = OrderIdeal::point(&a, 3).unwrap();
        assert!(p.is_prime().unwrap() && p.is_maximal().unwrap());
        let fc = FieldOfSets::finite_cofinite();
        assert!(OrderIdeal::all_finite(&fc).unwrap().is_prime().unwrap());
        assert!(OrderIdeal::point(&fc, 7).unwrap().is_prime().unwrap());
        assert!(!OrderIdeal::generated(&fc, &[SetElement::finite([7])]).unwrap().is_prime().unwrap());
        assert_eq!(OrderIdeal::whole(&a).is_prime(), Err(Error::ImproperIdeal));
        let parity = FieldOfSets::refined_finite_cofinite(2).unwrap();
        let w = OrderIdeal::all_finite(&parity).unwrap().prime_witness().unwrap();
        assert_eq!(w, Some(parity.residue_class(0).unwrap()));
    }

    #[test]
    fn quotients() {
        let a = sample();
        let q = OrderIdeal::generated(&a, &[el(&a, &[1])]).unwrap().quotient().unwrap();
        assert_eq!(q.elements().unwrap().len(), 4);
        assert_eq!(q.class_of(&el(&a, &[1, 2])).unwrap(), el(&a, &[2]));
        assert_eq!(OrderIdeal::zero(&a).quotient().unwrap().elements().unwrap().len(), 8);
        let fc = FieldOfSets::finite_cofinite();
        let q = OrderIdeal::all_finite(&fc).unwrap().quotient().unwrap();
        assert_eq!(q.elements().unwrap(), vec![SetElement::finite([]), SetElement::cofinite([])]);
        assert_eq!(q.class_of(&SetElement::cofinite([3, 4])).unwrap(), q.one());
        assert!(OrderIdeal::whole(&a).quotient().is_err());
    }

    #[test]
    fn point_ideal_over_fc_is_principal() {
        let fc = FieldOfSets::finite_cofinite();
        let p = OrderIdeal::point(&fc, 2).unwrap();
        assert_eq!(p, OrderIdeal::principal(&fc, SetElement::cofinite([2])).unwrap());
        assert_eq!(p.to_string(), "PointIdeal(2)");
    }
}
