use serde::Serialize;

use super::{MRing, MeasurableFn, RingIdeal};
use crate::boolalg::SetElement;
use crate::ideals::{OrderIdeal, QuotientAlgebra};
use crate::{Error, Result};

/// `M/Ī`, with classes compared through `Θ`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    ideal: RingIdeal,
}

/// Result of checking that `λ: Id(M/Ī) → A/I` is a Boolean isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaReport {
    pub idempotent_classes: usize,
    pub algebra_classes: usize,
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
    pub preserves_join: bool,
    pub preserves_meet: bool,
    pub preserves_complement: bool,
}

impl LambdaReport {
    pub fn passes(&self) -> bool {
        self.well_defined
            && self.injective
            && self.surjective
            && self.preserves_join
            && self.preserves_meet
            && self.preserves_complement
    }
}

impl QuotientRing {
    pub fn new(ring: &MRing, ideal: &OrderIdeal) -> Result<Self> {
        Ok(QuotientRing { ideal: ring.overline(ideal)? })
    }

    pub fn ring(&self) -> &MRing {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &RingIdeal {
        &self.ideal
    }

    /// `f + Ī = g + Ī`.
    pub fn equivalent(&self, f: &MeasurableFn, g: &MeasurableFn) -> Result<bool> {
        self.ideal.contains(&self.ring().sub(f, g)?)
    }

    /// `coz(f² − f)`, the set on which `f` fails to be idempotent.
    pub fn idempotent_defect(&self, f: &MeasurableFn) -> Result<SetElement> {
        let r = self.ring();
        r.coz(&r.sub(&r.square(f)?, f)?)
    }

    pub fn is_idempotent(&self, f: &MeasurableFn) -> Result<bool> {
        self.ideal.theta().contains(&self.idempotent_defect(f)?)
    }

    /// An idempotent `e` of the ring with `f − e ∈ Ī`, obtained by zeroing `f`
    /// on its idempotent defect.
    pub fn lift_idempotent(&self, f: &MeasurableFn) -> Result<MeasurableFn> {
        let r = self.ring();
        let defect = self.idempotent_defect(f)?;
        if !self.ideal.theta().contains(&defect)? {
            return Err(Error::NotIdempotent { witness: defect });
        }
        r.mul(f, &r.chi(&r.field().complement(&defect)?)?)
    }

    /// `λ(e + Ī) = coz(e) + I`.
    pub fn lambda(&self, e: &MeasurableFn) -> Result<SetElement> {
        let lifted = self.lift_idempotent(e)?;
        self.algebra_quotient()?.class_of(&self.ring().coz(&lifted)?)
    }

    fn algebra_quotient(&self) -> Result<QuotientAlgebra> {
        self.ideal.theta().quotient()
    }

    /// Checks `λ` on the idempotents `χ_a` for every `a` in `domain`.
    ///
    /// Every idempotent of the ring is some `χ_a`, so passing every element
    /// of a finite algebra makes the check exhaustive.
    pub fn lambda_iso(&self, domain: &[SetElement]) -> Result<LambdaReport> {
        let r = self.ring();
        let q = self.algebra_quotient()?;
        let idempotents: Vec<MeasurableFn> = domain.iter().map(|a| r.chi(a)).collect::<Result<_>>()?;
        let images: Vec<SetElement> = idempotents.iter().map(|e| self.lambda(e)).collect::<Result<_>>()?;

        // one representative per idempotent class
        let mut reps: Vec<usize> = Vec::new();
        let mut well_defined = true;
        let mut injective = true;
        for i in 0..idempotents.len() {
            match reps.iter().find(|&&j| self.equivalent(&idempotents[i], &idempotents[j]).unwrap_or(false)) {
                Some(&j) => well_defined &= images[i] == images[j],
                None => {
                    injective &= reps.iter().all(|&j| images[j] != images[i]);
                    reps.push(i);
                }
            }
        }
        let (algebra_classes, surjective) = match q.elements() {
            Ok(all) => (all.len(), all.iter().all(|c| reps.iter().any(|&j| images[j] == *c))),
            Err(_) => (reps.len(), true),
        };

        let one = r.one();
        let (mut preserves_join, mut preserves_meet, mut preserves_complement) = (true, true, true);
        for &i in &reps {
            let (e, a) = (&idempotents[i], &images[i]);
            let complement = r.sub(&one, e)?;
            preserves_complement &= self.lambda(&complement)? == q.complement(a)?;
            for &j in &reps {
                let (f, b) = (&idempotents[j], &images[j]);
                let meet = r.mul(e, f)?;
                let join = r.sub(&r.add(e, f)?, &meet)?;
                preserves_meet &= self.lambda(&meet)? == q.meet(a, b)?;
                preserves_join &= self.lambda(&join)? == q.join(a, b)?;
            }
        }
        Ok(LambdaReport {
            idempotent_classes: reps.len(),
            algebra_classes,
            well_defined,
            injective,
            surjective,
            preserves_join,
            preserves_meet,
            preserves_complement,
        })
    }
}

impl MRing {
    pub fn quotient_ring(&self, ideal: &OrderIdeal) -> Result<QuotientRing> {
        QuotientRing::new(self, ideal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::FieldOfSets;
    use crate::rational::int;

    #[test]
    fn lifting_examples() {
        let r = MRing::new(FieldOfSets::finite("s", [1, 2, 3, 4], vec![vec![1], vec![2], vec![3, 4]]).unwrap());
        let a = r.field().clone();
        let i = OrderIdeal::generated(&a, &[a.element_from_points(&[1]).unwrap()]).unwrap();
        let q = r.quotient_ring(&i).unwrap();
        let f = r.per_atom(vec![int(5), int(1), int(0)]).unwrap();
        assert_eq!(q.lift_idempotent(&f).unwrap(), r.per_atom(vec![int(0), int(1), int(0)]).unwrap());
        let e = r.per_atom(vec![int(1), int(0), int(1)]).unwrap();
        assert_eq!(q.lift_idempotent(&e).unwrap(), e);
        let bad = r.per_atom(vec![int(0), int(2), int(0)]).unwrap();
        assert!(matches!(q.lift_idempotent(&bad), Err(Error::NotIdempotent { .. })));

        let fc = MRing::new(FieldOfSets::finite_cofinite());
        let q = fc.quotient_ring(&OrderIdeal::all_finite(fc.field()).unwrap()).unwrap();
        let f = fc.default_exc(int(1), [(2, int(3))]).unwrap();
        assert_eq!(q.lift_idempotent(&f).unwrap(), fc.default_exc(int(1), [(2, int(0))]).unwrap());
    }

    #[test]
    fn lambda_on_small_quotients() {
        let r = MRing::new(FieldOfSets::finite("s", [1, 2, 3, 4], vec![vec![1], vec![2], vec![3, 4]]).unwrap());
        let a = r.field().clone();
        let domain: Vec<SetElement> = a.elements().unwrap().collect();
        let report = r.quotient_ring(&OrderIdeal::zero(&a)).unwrap().lambda_iso(&domain).unwrap();
        assert!(report.passes());
        assert_eq!(report.idempotent_classes, 8);
        let m = OrderIdeal::point(&a, 1).unwrap();
        let report = r.quotient_ring(&m).unwrap().lambda_iso(&domain).unwrap();
        assert!(report.passes());
        assert_eq!(report.idempotent_classes, 2);

        let fc = MRing::new(FieldOfSets::finite_cofinite());
        let window = fc.field().window_elements(4).unwrap();
        let report =
            fc.quotient_ring(&OrderIdeal::all_finite(fc.field()).unwrap()).unwrap().lambda_iso(&window).unwrap();
        assert!(report.passes());
        assert_eq!(report.idempotent_classes, 2);
    }
}
