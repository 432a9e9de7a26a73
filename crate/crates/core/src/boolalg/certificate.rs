//! Structural certification: completeness, σ-additivity and c⁺-additivity.
//!
//! Finite fields are certified by exhausting suprema over subsets of atoms.
//! The finite–cofinite algebras are certified negatively, by counterexample
//! objects that can be re-checked: a countable family of singletons whose
//! union is provably outside the algebra, and a refuter that improves any
//! proposed upper bound of that family.

use num_integer::Integer;
use serde::Serialize;

use super::{FieldKind, FieldOfSets, SetElement, TaggedSet};
use crate::{Error, Result};

/// Largest atom count for which suprema are scanned against every element.
const EXHAUSTIVE_ATOM_LIMIT: usize = 10;

pub const ADDITIVITY_SCOPE: &str =
    "additivity is decided for unions expressible in the representation; families of continuum size are not represented";

/// The arithmetic progression `{start + step·n : n ≥ 0}`, viewed as a family of singletons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Progression {
    pub start: u64,
    pub step: u64,
}

impl Progression {
    pub fn contains(&self, x: u64) -> bool {
        x >= self.start && (x - self.start).is_multiple_of(self.step)
    }

    pub fn nth(&self, n: u64) -> u64 {
        self.start + self.step * n
    }
}

/// Why the union of a progression of singletons is not an element of the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NotRepresentable {
    pub progression: Progression,
    pub modulus: u64,
    /// Residue class on which the union is neither finite nor cofinite.
    pub class: u64,
    /// A member of the union in that class; adding `modulus` repeatedly
    /// alternates between members and non-members forever.
    pub member: u64,
    pub non_member: u64,
}

impl FieldOfSets {
    /// The union of the singletons `{start + step·n}`, or a proof that it is not in the algebra.
    ///
    /// On class `r` the trace of the progression is empty, a tail of the
    /// class (when `step` divides the class modulus), or infinite and
    /// co-infinite within the class.
    pub fn union_of_progression(&self, prog: Progression) -> Result<std::result::Result<SetElement, NotRepresentable>> {
        let modulus = match self.kind {
            FieldKind::FiniteCofinite { classes } => classes,
            FieldKind::FinitePartition(_) => {
                return Err(Error::Unsupported("progressions live in the finite–cofinite algebra".into()))
            }
        };
        if prog.step == 0 {
            return Err(Error::structural("progression step must be positive"));
        }
        let mut out = TaggedSet::empty(modulus);
        for r in 0..modulus {
            if (prog.start % prog.step.gcd(&modulus)) != r % prog.step.gcd(&modulus) {
                continue;
            }
            // least member of the progression lying in class r
            let first = (0..modulus).map(|k| prog.nth(k)).find(|x| x % modulus == r).expect("CRT solution exists");
            if prog.step.lcm(&modulus) != modulus {
                return Ok(Err(NotRepresentable {
                    progression: prog,
                    modulus,
                    class: r,
                    member: first,
                    non_member: first + modulus,
                }));
            }
            out.cofinite_classes |= 1 << r;
            out.part.extend((0..first).filter(|x| x % modulus == r));
        }
        Ok(Ok(SetElement::Tagged(out)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AtomCount {
    Finite { count: usize },
    CountablyInfinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Every subset of atoms was checked to have its join as least upper bound
    /// among all elements, and that join equals the point-set union.
    ExhaustiveSuprema { families: u64, elements_scanned: u64 },
    /// Too many atoms to scan every element; every family of a finite field
    /// is finite, so its supremum is a finite join.
    FiniteJoins { atoms: usize },
    /// A family with no least upper bound.
    NoLeastUpperBound(CompletenessCounterexample),
    /// A countable family whose union lies outside the algebra.
    UnionNotInAlgebra(NotRepresentable),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub holds: bool,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralCertificate {
    pub complete: Flag,
    pub sigma_field: Flag,
    pub c_plus_additive: Flag,
    pub atom_count: AtomCount,
    pub reduced: bool,
    pub additivity_scope: &'static str,
}

impl StructuralCertificate {
    /// complete ⇒ σ-field, and a positive flag never carries a counterexample.
    pub fn is_consistent(&self) -> bool {
        let positive_ok = |f: &Flag| {
            !f.holds || !matches!(f.evidence, Evidence::NoLeastUpperBound(_) | Evidence::UnionNotInAlgebra(_))
        };
        (!self.complete.holds || self.sigma_field.holds)
            && positive_ok(&self.complete)
            && positive_ok(&self.sigma_field)
            && positive_ok(&self.c_plus_additive)
    }
}

/// The family `{{2m·n}}` together with a refuter for every proposed upper bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletenessCounterexample {
    pub family: Progression,
    pub modulus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RefuterOutcome {
    /// The candidate misses this member of the family.
    NotAnUpperBound { missed: u64 },
    /// A strictly smaller upper bound: the candidate minus one point.
    SmallerBound { removed: u64, bound: SetElement },
}

impl CompletenessCounterexample {
    pub fn refute(&self, field: &FieldOfSets, candidate: &SetElement) -> Result<RefuterOutcome> {
        field.check(candidate)?;
        let t = candidate.as_tagged().expect("checked finite–cofinite element");
        let m = self.modulus;
        // A member of the family missing from the candidate.
        let missed = if !t.class_default(0) {
            (0..).map(|n| self.family.nth(n)).find(|&x| !t.contains(x))
        } else {
            t.part.iter().copied().find(|&x| self.family.contains(x))
        };
        if let Some(missed) = missed {
            return Ok(RefuterOutcome::NotAnUpperBound { missed });
        }
        // Class 0 is cofinite in the candidate, so it contains an odd multiple of m.
        let removed =
            (0..).map(|j| m * (2 * j + 1)).find(|&x| t.contains(x)).expect("cofinite class contains odd multiples");
        let bound = field.difference(candidate, &field.singleton(removed)?)?;
        Ok(RefuterOutcome::SmallerBound { removed, bound })
    }

    /// Re-checks a refuter outcome: the new bound is an upper bound strictly below the candidate.
    pub fn validate(&self, field: &FieldOfSets, candidate: &SetElement, outcome: &RefuterOutcome) -> Result<bool> {
        Ok(match outcome {
            RefuterOutcome::NotAnUpperBound { missed } => {
                self.family.contains(*missed) && !field.contains_point(candidate, *missed)?
            }
            RefuterOutcome::SmallerBound { removed, bound } => {
                let t = bound.as_tagged().expect("finite–cofinite bound");
                let still_bound = t.class_default(0) && !t.part.iter().any(|&x| self.family.contains(x));
                still_bound
                    && field.le(bound, candidate)?
                    && bound != candidate
                    && field.contains_point(candidate, *removed)?
                    && !field.contains_point(bound, *removed)?
            }
        })
    }
}

pub fn completeness_counterexample(field: &FieldOfSets) -> Result<CompletenessCounterexample> {
    match field.kind {
        FieldKind::FinitePartition(_) => Err(Error::AlgebraComplete),
        FieldKind::FiniteCofinite { classes } => {
            Ok(CompletenessCounterexample { family: Progression { start: 0, step: 2 * classes }, modulus: classes })
        }
    }
}

pub fn certify(field: &FieldOfSets) -> StructuralCertificate {
    match &field.kind {
        FieldKind::FinitePartition(p) => {
            let k = p.len();
            let evidence = if k <= EXHAUSTIVE_ATOM_LIMIT {
                let (families, elements_scanned, ok) = scan_suprema(field);
                assert!(ok, "finite field failed its supremum scan");
                Evidence::ExhaustiveSuprema { families, elements_scanned }
            } else {
                Evidence::FiniteJoins { atoms: k }
            };
            let flag = Flag { holds: true, evidence };
            StructuralCertificate {
                complete: flag.clone(),
                sigma_field: flag.clone(),
                c_plus_additive: flag,
                atom_count: AtomCount::Finite { count: k },
                reduced: p.blocks().iter().all(|b| b.len() == 1),
                additivity_scope: ADDITIVITY_SCOPE,
            }
        }
        FieldKind::FiniteCofinite { .. } => {
            let counterexample = completeness_counterexample(field).expect("finite–cofinite algebra");
            let refutation = field
                .union_of_progression(counterexample.family)
                .expect("finite–cofinite algebra")
                .expect_err("the family's union is never representable");
            let union_flag = Flag { holds: false, evidence: Evidence::UnionNotInAlgebra(refutation) };
            StructuralCertificate {
                complete: Flag { holds: false, evidence: Evidence::NoLeastUpperBound(counterexample) },
                sigma_field: union_flag.clone(),
                c_plus_additive: union_flag,
                atom_count: AtomCount::CountablyInfinite,
                reduced: true,
                additivity_scope: ADDITIVITY_SCOPE,
            }
        }
    }
}

/// For every subset of atoms, checks that its join is the least upper bound
/// among all elements and coincides with the point-set union of the atoms.
fn scan_suprema(field: &FieldOfSets) -> (u64, u64, bool) {
    let k = field.atom_count().expect("finite field");
    let all: Vec<SetElement> = field.elements().expect("finite field").collect();
    let atoms: Vec<SetElement> = (0..k).map(|i| SetElement::Blocks(1 << i)).collect();
    let mut scanned = 0;
    let mut ok = true;
    for subset in 0..1u64 << k {
        let members: Vec<&SetElement> = (0..k).filter(|i| subset >> i & 1 == 1).map(|i| &atoms[i]).collect();
        let sup = field.join_all(members.iter().copied()).expect("atoms belong to the field");
        for u in &all {
            scanned += 1;
            let is_bound = members.iter().all(|a| field.le(a, u).unwrap());
            if is_bound && !field.le(&sup, u).unwrap() {
                ok = false;
            }
        }
        let mut union: Vec<u64> = members.iter().flat_map(|a| field.points_of(a).unwrap()).collect();
        union.sort_unstable();
        ok &= union == field.points_of(&sup).unwrap();
    }
    (1 << k, scanned, ok)
}
