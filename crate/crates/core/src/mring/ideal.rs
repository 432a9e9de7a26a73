use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::{MRing, MeasurableFn};
use crate::boolalg::{certify, FieldKind, NotRepresentable, Progression, SetElement};
use crate::ideals::OrderIdeal;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// A ring ideal `J`, stored by the order ideal `Θ(J)` of its cozero sets.
#[derive(Clone, Debug)]
pub struct RingIdeal {
    ring: MRing,
    theta: OrderIdeal,
}

/// A generating set for a ring ideal.
#[derive(Clone, Debug)]
pub enum FunctionFamily {
    Explicit(Vec<MeasurableFn>),
    /// All functions with finite support.
    FinitelySupported,
    /// All functions vanishing at a point.
    VanishingAt(u64),
    /// All functions whose class defaults are zero (finite–cofinite only).
    DefaultZero,
}

impl RingIdeal {
    pub fn ring(&self) -> &MRing {
        &self.ring
    }

    pub fn theta(&self) -> &OrderIdeal {
        &self.theta
    }

    pub fn contains(&self, f: &MeasurableFn) -> Result<bool> {
        self.theta.contains(&self.ring.coz(f)?)
    }

    pub fn is_subideal(&self, other: &RingIdeal) -> Result<bool> {
        self.theta.is_subideal(&other.theta)
    }

    pub fn is_proper(&self) -> bool {
        self.theta.is_proper()
    }

    pub fn is_maximal(&self) -> Result<bool> {
        self.theta.is_maximal()
    }
}

impl PartialEq for RingIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.theta == other.theta
    }
}

impl Eq for RingIdeal {}

impl fmt::Display for RingIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "overline({})", self.theta)
    }
}

impl MRing {
    /// `Θ(J)` for the ideal `J` generated by `family`.
    pub fn theta(&self, family: &FunctionFamily) -> Result<OrderIdeal> {
        let field = &self.field;
        match family {
            FunctionFamily::Explicit(fs) => {
                let cozeros = fs.iter().map(|f| self.coz(f)).collect::<Result<Vec<_>>>()?;
                OrderIdeal::generated(field, &cozeros)
            }
            FunctionFamily::FinitelySupported if field.is_finite() => Ok(OrderIdeal::whole(field)),
            FunctionFamily::FinitelySupported | FunctionFamily::DefaultZero => OrderIdeal::all_finite(field),
            FunctionFamily::VanishingAt(x) => OrderIdeal::point(field, *x),
        }
    }

    /// `Ī = {f : coz(f) ∈ I}`.
    pub fn overline(&self, ideal: &OrderIdeal) -> Result<RingIdeal> {
        if !ideal.field().same_algebra(&self.field) {
            return Err(Error::structural("order ideal lives in a different algebra"));
        }
        Ok(RingIdeal { ring: self.clone(), theta: ideal.clone() })
    }

    pub fn ideal_generated(&self, family: &FunctionFamily) -> Result<RingIdeal> {
        self.overline(&self.theta(family)?)
    }

    /// `Ann(Ī) = overline(I^⊥)`.
    pub fn annihilator(&self, ideal: &OrderIdeal) -> Result<RingIdeal> {
        self.overline(&ideal.perp())
    }

    /// `M_x = {f : f(x) = 0}`.
    pub fn point_ideal(&self, x: u64) -> Result<RingIdeal> {
        self.overline(&OrderIdeal::point(&self.field, x)?)
    }

    /// Functions with every class default zero; the ideal of the point at infinity.
    pub fn infinity_ideal(&self) -> Result<RingIdeal> {
        self.overline(&OrderIdeal::all_finite(&self.field)?)
    }

    /// Decides whether every annihilator is generated by an idempotent.
    pub fn is_baer(&self) -> Result<BaerVerdict> {
        match self.field.kind() {
            FieldKind::FinitePartition(p) => {
                let complete = certify(&self.field).complete.holds;
                let k = p.len();
                let grid: Vec<Rational> = if k <= 6 {
                    vec![rational::int(-1), rational::zero(), rational::one(), rational::int(2)]
                } else if k <= 14 {
                    vec![rational::zero(), rational::one()]
                } else {
                    return Ok(BaerVerdict { holds: complete, evidence: BaerEvidence::CompleteAlgebra { atoms: k } });
                };
                let functions = self.grid_functions(&grid)?;
                let mut holds = true;
                // Ann(K) depends on K only through the join of its cozero sets,
                // so subsets of atom idempotents cover every annihilator.
                for mask in 0..1u64 << k {
                    let u = SetElement::Blocks(mask);
                    let e = self.chi(&self.field.complement(&u)?)?;
                    let k_fns: Vec<MeasurableFn> = (0..k)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| self.chi(&SetElement::Blocks(1 << i)))
                        .collect::<Result<_>>()?;
                    for g in &functions {
                        let mut annihilates = true;
                        for s in &k_fns {
                            annihilates &= self.is_zero(&self.mul(g, s)?);
                        }
                        if annihilates != (self.mul(g, &e)? == *g) {
                            holds = false;
                        }
                    }
                }
                Ok(BaerVerdict {
                    holds: holds && complete,
                    evidence: BaerEvidence::ExhaustiveAnnihilators {
                        subsets: 1 << k,
                        functions_checked: functions.len() as u64,
                        agrees_with_completeness: holds == complete,
                    },
                })
            }
            FieldKind::FiniteCofinite { classes } => {
                let family = Progression { start: 0, step: 2 * classes };
                let union = self.field.union_of_progression(family)?;
                let not_representable = union.expect_err("multiples of 2m are never a union of classes");
                Ok(BaerVerdict {
                    holds: false,
                    evidence: BaerEvidence::EvensWitness(EvensAnnihilatorWitness {
                        family,
                        modulus: *classes,
                        support_outside_algebra: not_representable,
                    }),
                })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaerVerdict {
    pub holds: bool,
    pub evidence: BaerEvidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaerEvidence {
    /// Every annihilator of a set of atom idempotents was compared with the
    /// principal ideal of the complementary idempotent over a value grid.
    ExhaustiveAnnihilators {
        subsets: u64,
        functions_checked: u64,
        agrees_with_completeness: bool,
    },
    /// Too many atoms to scan; the algebra is finite, hence complete.
    CompleteAlgebra {
        atoms: usize,
    },
    EvensWitness(EvensAnnihilatorWitness),
}

/// `K = {χ_{2m·n}}`. Its annihilator would have to be generated by the
/// characteristic function of the complement of the union of `K`'s supports,
/// which is not in the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvensAnnihilatorWitness {
    pub family: Progression,
    pub modulus: u64,
    pub support_outside_algebra: NotRepresentable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaerRefutation {
    NotIdempotent,
    /// `e · χ_{member} ≠ 0` for this member of the family.
    FailsToAnnihilate {
        member: u64,
    },
    /// `χ_{point}` annihilates the family but is not a multiple of `e`.
    MissesAnnihilator {
        point: u64,
    },
}

impl EvensAnnihilatorWitness {
    /// Shows that the idempotent `e` does not generate `Ann(K)`.
    pub fn refute(&self, ring: &MRing, e: &MeasurableFn) -> Result<BaerRefutation> {
        if !ring.is_idempotent(e)? {
            return Ok(BaerRefutation::NotIdempotent);
        }
        let support = ring.coz(e)?;
        let t = support.as_tagged().ok_or_else(|| Error::structural("witness needs a finite–cofinite ring"))?;
        if let Some(&member) = t.part.iter().find(|&&x| self.family.contains(x) && t.contains(x)) {
            return Ok(BaerRefutation::FailsToAnnihilate { member });
        }
        if t.class_default(0) {
            let member = (0..).map(|n| self.family.nth(n)).find(|&x| t.contains(x)).expect("cofinite class");
            return Ok(BaerRefutation::FailsToAnnihilate { member });
        }
        // class 0 meets the support finitely, so some odd multiple of m is missed
        let point =
            (0..).map(|j| self.modulus * (2 * j + 1)).find(|&x| !t.contains(x)).expect("finite trace on class 0");
        Ok(BaerRefutation::MissesAnnihilator { point })
    }

    /// Re-checks a refutation by evaluating the functions involved.
    pub fn validate(&self, ring: &MRing, e: &MeasurableFn, outcome: &BaerRefutation) -> Result<bool> {
        let field = ring.field();
        Ok(match outcome {
            BaerRefutation::NotIdempotent => !ring.is_idempotent(e)?,
            BaerRefutation::FailsToAnnihilate { member } => {
                self.family.contains(*member) && !ring.eval(e, *member)?.is_zero()
            }
            BaerRefutation::MissesAnnihilator { point } => {
                let g = ring.chi(&field.singleton(*point)?)?;
                !self.family.contains(*point) && ring.mul(&g, e)? != g
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::FieldOfSets;
    use crate::rational::int;

    fn sample() -> MRing {
        MRing::new(FieldOfSets::finite("sample", [1, 2, 3, 4], vec![vec![1], vec![2], vec![3, 4]]).unwrap())
    }

    #[test]
    fn theta_examples() {
        let r = sample();
        let a = r.field().clone();
        let chi1 = r.chi(&a.element_from_points(&[1]).unwrap()).unwrap();
        let theta = r.theta(&FunctionFamily::Explicit(vec![chi1])).unwrap();
        assert_eq!(theta, OrderIdeal::generated(&a, &[a.element_from_points(&[1]).unwrap()]).unwrap());
        let zero = r.overline(&OrderIdeal::zero(&a)).unwrap();
        assert!(zero.contains(&r.zero()).unwrap());
        assert!(!zero.contains(&r.chi(&a.one()).unwrap()).unwrap());
        let fc = MRing::new(FieldOfSets::finite_cofinite());
        let t = fc.theta(&FunctionFamily::FinitelySupported).unwrap();
        assert_eq!(t, OrderIdeal::all_finite(fc.field()).unwrap());
    }

    #[test]
    fn annihilator_examples() {
        let r = sample();
        let a = r.field().clone();
        let ann = r.annihilator(&OrderIdeal::generated(&a, &[a.element_from_points(&[1]).unwrap()]).unwrap()).unwrap();
        assert!(ann.contains(&r.per_atom(vec![int(0), int(4), int(-1)]).unwrap()).unwrap());
        assert!(!ann.contains(&r.per_atom(vec![int(1), int(0), int(0)]).unwrap()).unwrap());
        assert!(r.annihilator(&OrderIdeal::whole(&a)).unwrap().theta().is_zero());
        let fc = MRing::new(FieldOfSets::finite_cofinite());
        assert!(fc.annihilator(&OrderIdeal::all_finite(fc.field()).unwrap()).unwrap().theta().is_zero());
    }

    #[test]
    fn baer_flags() {
        assert!(sample().is_baer().unwrap().holds);
        let one_atom = MRing::new(FieldOfSets::finite("X", [1, 2], vec![vec![1, 2]]).unwrap());
        assert!(one_atom.is_baer().unwrap().holds);
        let fc = MRing::new(FieldOfSets::finite_cofinite());
        let v = fc.is_baer().unwrap();
        assert!(!v.holds);
        let BaerEvidence::EvensWitness(w) = v.evidence else { panic!() };
        for e in [
            fc.one(),
            fc.zero(),
            fc.chi(&SetElement::finite([1, 3])).unwrap(),
            fc.chi(&SetElement::cofinite([0])).unwrap(),
        ] {
            let out = w.refute(&fc, &e).unwrap();
            assert!(w.validate(&fc, &e, &out).unwrap(), "{e}: {out:?}");
            assert_ne!(out, BaerRefutation::NotIdempotent);
        }
    }

    #[test]
    fn point_ideals() {
        let r = sample();
        let m2 = r.point_ideal(2).unwrap();
        assert!(m2.contains(&r.per_atom(vec![int(2), int(0), int(3)]).unwrap()).unwrap());
        assert!(m2.contains(&r.zero()).unwrap());
        assert!(m2.is_maximal().unwrap());
        let fc = MRing::new(FieldOfSets::finite_cofinite());
        let inf = fc.infinity_ideal().unwrap();
        assert_eq!(inf, fc.ideal_generated(&FunctionFamily::DefaultZero).unwrap());
        assert!(inf.contains(&fc.default_exc(int(0), [(3, int(5))]).unwrap()).unwrap());
        assert!(!inf.contains(&fc.one()).unwrap());
    }
}
