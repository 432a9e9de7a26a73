//! The orthogonal-separation engine and the self-injectivity classifiers.
//!
//! An element `a` separates `S` from `T` when `s²a = s` for every `s ∈ S` and
//! `at = 0` for every `t ∈ T`. Finite orthogonal families always have a
//! separator. Countable families over the finite–cofinite algebras are given
//! by schemas: `s_n = v(n)·χ_{p(n)}` on the points `p(n) = offset + stride·n`,
//! `n ≥ 1`. A separator must take the forced value `1/v(n)` at `p(n)`, so it
//! exists in the ring exactly when the forced values are eventually constant.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boolalg::{certify, Evidence, FieldKind, FieldOfSets, StructuralCertificate};
use crate::mring::{MRing, MeasurableFn};
use crate::rational::{self, Rational};
use crate::socle::mod_socle;
use crate::{Error, Result};

/// An injective value rule on `n ≥ 1`, with its inverse as the witness of injectivity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistinctRule {
    /// `n ↦ 1/n`, strictly decreasing.
    Reciprocal,
    /// `n ↦ n`, strictly increasing.
    Identity,
}

impl DistinctRule {
    pub fn value(&self, n: u64) -> Rational {
        match self {
            DistinctRule::Reciprocal => rational::ratio(1, n as i64),
            DistinctRule::Identity => rational::int(n as i64),
        }
    }

    /// The unique `n ≥ 1` with `value(n) = r`, if any.
    pub fn solve(&self, r: &Rational) -> Option<u64> {
        let n = match self {
            DistinctRule::Reciprocal if !r.is_zero() => r.recip(),
            DistinctRule::Reciprocal => return None,
            DistinctRule::Identity => r.clone(),
        };
        if n.is_integer() && n >= rational::one() {
            u64::try_from(n.to_integer()).ok()
        } else {
            None
        }
    }

    /// `n ↦ 1/value(n)`.
    pub fn reciprocal(&self) -> DistinctRule {
        match self {
            DistinctRule::Reciprocal => DistinctRule::Identity,
            DistinctRule::Identity => DistinctRule::Reciprocal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValueRule {
    /// `constant` except at finitely many overridden indices. All values nonzero.
    EventuallyConstant {
        #[serde(serialize_with = "rational::serialize")]
        constant: Rational,
        #[serde(serialize_with = "rational::serialize_map")]
        overrides: BTreeMap<u64, Rational>,
    },
    PairwiseDistinct {
        rule: DistinctRule,
    },
}

impl ValueRule {
    pub fn value(&self, n: u64) -> Rational {
        match self {
            ValueRule::EventuallyConstant { constant, overrides } => overrides.get(&n).unwrap_or(constant).clone(),
            ValueRule::PairwiseDistinct { rule } => rule.value(n),
        }
    }

    /// The values a separator is forced to take: `n ↦ 1/v(n)`.
    pub fn forced(&self) -> ValueRule {
        match self {
            ValueRule::EventuallyConstant { constant, overrides } => ValueRule::EventuallyConstant {
                constant: constant.recip(),
                overrides: overrides.iter().map(|(&n, v)| (n, v.recip())).collect(),
            },
            ValueRule::PairwiseDistinct { rule } => ValueRule::PairwiseDistinct { rule: rule.reciprocal() },
        }
    }

    fn check_nonzero(&self) -> Result<()> {
        let zero = match self {
            ValueRule::EventuallyConstant { constant, overrides } => {
                constant.is_zero() || overrides.values().any(Zero::is_zero)
            }
            ValueRule::PairwiseDistinct { .. } => false,
        };
        if zero {
            Err(Error::structural("schema values must be nonzero"))
        } else {
            Ok(())
        }
    }
}

/// `s_n = v(n)·χ_{offset + stride·n}` for `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Schema {
    pub id: String,
    pub offset: u64,
    pub stride: u64,
    pub values: ValueRule,
}

impl Schema {
    pub fn point(&self, n: u64) -> u64 {
        self.offset + self.stride * n
    }

    pub fn member(&self, ring: &MRing, n: u64) -> Result<MeasurableFn> {
        let chi = ring.chi(&ring.field().singleton(self.point(n))?)?;
        ring.scalar_mul(&self.values.value(n), &chi)
    }
}

/// The registered schema families, by id.
pub fn registered_schemas() -> Vec<Schema> {
    vec![
        Schema {
            id: "reciprocal".into(),
            offset: 0,
            stride: 1,
            values: ValueRule::PairwiseDistinct { rule: DistinctRule::Reciprocal },
        },
        Schema {
            id: "identity".into(),
            offset: 0,
            stride: 1,
            values: ValueRule::PairwiseDistinct { rule: DistinctRule::Identity },
        },
        Schema {
            id: "constant".into(),
            offset: 0,
            stride: 1,
            values: ValueRule::EventuallyConstant {
                constant: rational::int(2),
                overrides: [(1, rational::int(5))].into(),
            },
        },
    ]
}

pub fn schema(id: &str) -> Result<Schema> {
    registered_schemas()
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::Unsupported(format!("unknown schema {id:?}")))
}

#[derive(Clone, Debug)]
pub enum OrthogonalFamily {
    Explicit { s: Vec<MeasurableFn>, t: Vec<MeasurableFn> },
    Schema(Schema),
}

/// Proof that no function of the ring separates a schema family.
///
/// A candidate is any choice of class defaults and finite exceptions. Beyond
/// its largest exception the candidate equals its class default at `p(n)`,
/// while the forced values are pairwise distinct, so each default is met by
/// at most one `n` (given by `solve`). Among `classes + 1` consecutive
/// indices past the exceptions one therefore fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonSeparability {
    pub schema: Schema,
    pub forced: DistinctRule,
    pub classes: u64,
}

impl NonSeparability {
    /// An index `n` with `s_n² · a ≠ s_n`.
    pub fn refute(&self, ring: &MRing, a: &MeasurableFn) -> Result<u64> {
        ring.check(a)?;
        let (defaults, exceptions) = (a.defaults().expect("step function"), a.exceptions().expect("step function"));
        let last = exceptions.keys().next_back().copied().unwrap_or(0);
        let start = (last.saturating_sub(self.schema.offset)) / self.schema.stride.max(1) + 1;
        for n in start..start + self.classes + 1 {
            let default = &defaults[(self.schema.point(n) % self.classes) as usize];
            if self.forced.solve(default) != Some(n) {
                return Ok(n);
            }
        }
        unreachable!("each default matches at most one index")
    }

    /// Re-evaluates the failing condition at `n`.
    pub fn validate(&self, ring: &MRing, a: &MeasurableFn, n: u64) -> Result<bool> {
        let s = self.schema.member(ring, n)?;
        Ok(ring.mul(&ring.square(&s)?, a)? != s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SeparationVerdict {
    Separator { a: MeasurableFn },
    NonSeparable { certificate: NonSeparability },
}

impl SeparationVerdict {
    pub fn separator(&self) -> Option<&MeasurableFn> {
        match self {
            SeparationVerdict::Separator { a } => Some(a),
            SeparationVerdict::NonSeparable { .. } => None,
        }
    }
}

pub fn separate(ring: &MRing, family: &OrthogonalFamily) -> Result<SeparationVerdict> {
    match family {
        OrthogonalFamily::Explicit { s, t } => {
            check_orthogonal(ring, s, t)?;
            let mut a = ring.zero();
            for f in s {
                a = ring.add(&a, &ring.mul(&ring.star(f)?, &ring.chi(&ring.coz(f)?)?)?)?;
            }
            Ok(SeparationVerdict::Separator { a })
        }
        OrthogonalFamily::Schema(schema) => {
            let classes = ring
                .field()
                .classes()
                .ok_or_else(|| Error::Unsupported("schema families live over finite–cofinite algebras".into()))?;
            if schema.stride == 0 {
                return Err(Error::NonOrthogonal("stride 0 repeats one support".into()));
            }
            schema.values.check_nonzero()?;
            match schema.values.forced() {
                // off the supports the separator keeps the eventual forced value
                ValueRule::EventuallyConstant { constant, overrides } => {
                    let exceptions = overrides.iter().map(|(&n, v)| (schema.point(n), v.clone())).collect();
                    let a = ring.step(vec![constant; classes as usize], exceptions)?;
                    Ok(SeparationVerdict::Separator { a })
                }
                ValueRule::PairwiseDistinct { rule } => Ok(SeparationVerdict::NonSeparable {
                    certificate: NonSeparability { schema: schema.clone(), forced: rule, classes },
                }),
            }
        }
    }
}

fn check_orthogonal(ring: &MRing, s: &[MeasurableFn], t: &[MeasurableFn]) -> Result<()> {
    let all: Vec<(&str, usize, &MeasurableFn)> =
        s.iter().enumerate().map(|(i, f)| ("S", i, f)).chain(t.iter().enumerate().map(|(i, f)| ("T", i, f))).collect();
    for (x, (side_a, i, f)) in all.iter().enumerate() {
        for (side_b, j, g) in &all[x + 1..] {
            if !ring.is_zero(&ring.mul(f, g)?) {
                return Err(Error::NonOrthogonal(format!("{side_a}[{i}] · {side_b}[{j}] ≠ 0")));
            }
            if side_a != side_b && f == g && !ring.is_zero(f) {
                return Err(Error::NonOrthogonal(format!("{side_a}[{i}] also appears as {side_b}[{j}]")));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "side", content = "index", rename_all = "snake_case")]
pub enum SeparationFailure {
    /// `s² a ≠ s`; for schemas the index is `n`.
    S(u64),
    /// `a t ≠ 0`.
    T(u64),
}

/// Exact check of both separator conditions, reporting the first failure.
pub fn verify_separator(
    ring: &MRing,
    family: &OrthogonalFamily,
    a: &MeasurableFn,
) -> Result<Option<SeparationFailure>> {
    match family {
        OrthogonalFamily::Explicit { s, t } => {
            for (i, f) in s.iter().enumerate() {
                if ring.mul(&ring.square(f)?, a)? != *f {
                    return Ok(Some(SeparationFailure::S(i as u64)));
                }
            }
            for (i, g) in t.iter().enumerate() {
                if !ring.is_zero(&ring.mul(a, g)?) {
                    return Ok(Some(SeparationFailure::T(i as u64)));
                }
            }
            Ok(None)
        }
        OrthogonalFamily::Schema(schema) => {
            // past every exception and override the conditions repeat with the class period
            let classes = ring.field().classes().unwrap_or(1);
            let mut horizon = a.exceptions().and_then(|e| e.keys().next_back().copied()).unwrap_or(0);
            if let ValueRule::EventuallyConstant { overrides, .. } = &schema.values {
                horizon = horizon.max(overrides.keys().next_back().copied().unwrap_or(0));
            }
            for n in 1..=horizon + classes + 1 {
                let s = schema.member(ring, n)?;
                if ring.mul(&ring.square(&s)?, a)? != s {
                    return Ok(Some(SeparationFailure::S(n)));
                }
            }
            Ok(None)
        }
    }
}

/// A random explicit orthogonal family on a finite field: each atom is
/// given to at most one member of `S ∪ T`, with random nonzero values.
pub fn random_orthogonal_family(ring: &MRing, rng: &mut impl Rng) -> Result<OrthogonalFamily> {
    let k =
        ring.field().atom_count().ok_or_else(|| Error::Unsupported("random families need a finite field".into()))?;
    let (s_len, t_len) = (rng.gen_range(0..=3usize), rng.gen_range(0..=3usize));
    let owners: Vec<Option<usize>> =
        (0..k).map(|_| rng.gen_range(0..=s_len + t_len)).map(|o| o.checked_sub(1)).collect();
    let mut members = Vec::with_capacity(s_len + t_len);
    for m in 0..s_len + t_len {
        let values = owners
            .iter()
            .map(|o| {
                if *o == Some(m) {
                    let p = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    rational::ratio(p, rng.gen_range(1..=4))
                } else {
                    rational::zero()
                }
            })
            .collect();
        members.push(ring.per_atom(values)?);
    }
    let t = members.split_off(s_len);
    Ok(OrthogonalFamily::Explicit { s: members, t })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Corroboration {
    SampledSeparations { families: usize, separated: usize, seed: u64 },
    NonSeparable { schema: String, candidates_refuted: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfInjectivityVerdict {
    pub self_injective: bool,
    pub aleph0_self_injective: bool,
    pub certificate: StructuralCertificate,
    pub corroboration: Corroboration,
    /// The structural verdict and the separation engine agree.
    pub consistent: bool,
}

/// Self-injective iff the field is complete and `c⁺`-additive, corroborated
/// by the separation engine.
pub fn classify_self_injectivity(field: &FieldOfSets, samples: usize, seed: u64) -> Result<SelfInjectivityVerdict> {
    let certificate = certify(field);
    let self_injective = certificate.complete.holds && certificate.c_plus_additive.holds;
    let ring = MRing::new(field.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (corroboration, aleph0, consistent) = match field.kind() {
        FieldKind::FinitePartition(_) => {
            let mut separated = 0;
            for _ in 0..samples {
                let family = random_orthogonal_family(&ring, &mut rng)?;
                if let SeparationVerdict::Separator { a } = separate(&ring, &family)? {
                    if verify_separator(&ring, &family, &a)?.is_none() {
                        separated += 1;
                    }
                }
            }
            let all = separated == samples;
            (Corroboration::SampledSeparations { families: samples, separated, seed }, all, all == self_injective)
        }
        FieldKind::FiniteCofinite { .. } => {
            let mut found = None;
            for schema in registered_schemas() {
                if let SeparationVerdict::NonSeparable { certificate } =
                    separate(&ring, &OrthogonalFamily::Schema(schema))?
                {
                    found = Some(certificate);
                    break;
                }
            }
            match found {
                Some(cert) => {
                    let mut refuted = 0;
                    for _ in 0..samples {
                        let a = ring.random_fn(&mut rng);
                        let n = cert.refute(&ring, &a)?;
                        if cert.validate(&ring, &a, n)? {
                            refuted += 1;
                        }
                    }
                    let sound = refuted == samples;
                    (
                        Corroboration::NonSeparable { schema: cert.schema.id.clone(), candidates_refuted: refuted },
                        false,
                        sound && !self_injective,
                    )
                }
                None => {
                    (Corroboration::NonSeparable { schema: String::new(), candidates_refuted: 0 }, true, self_injective)
                }
            }
        }
    };
    Ok(SelfInjectivityVerdict { self_injective, aleph0_self_injective: aleph0, certificate, corroboration, consistent })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModSocleVerdict {
    /// The classifier needs a σ-field; this is the evidence that the field is not one.
    PreconditionUnmet { sigma_field_evidence: Evidence },
    Verdict {
        self_injective_mod_socle: bool,
        atom_count: usize,
        /// `M/Soc` computed directly is the zero ring.
        direct_quotient_zero: bool,
        consistent: bool,
    },
}

/// Self-injective modulo the socle iff complete, `c⁺`-additive and finitely
/// atomic; only issued for σ-fields.
pub fn classify_mod_socle(field: &FieldOfSets) -> Result<ModSocleVerdict> {
    let certificate = certify(field);
    if !certificate.sigma_field.holds {
        return Ok(ModSocleVerdict::PreconditionUnmet { sigma_field_evidence: certificate.sigma_field.evidence });
    }
    let atom_count = field.atom_count().expect("σ-fields in the representation are finite");
    let verdict = certificate.complete.holds && certificate.c_plus_additive.holds;
    let direct = mod_socle(&MRing::new(field.clone()), &[])?;
    let direct_quotient_zero = direct.quotient_kind == crate::socle::QuotientKind::Zero;
    Ok(ModSocleVerdict::Verdict {
        self_injective_mod_socle: verdict,
        atom_count,
        direct_quotient_zero,
        // the zero ring is self-injective
        consistent: verdict == direct_quotient_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn sample() -> MRing {
        MRing::new(FieldOfSets::finite("s", [1, 2, 3, 4], vec![vec![1], vec![2], vec![3, 4]]).unwrap())
    }

    #[test]
    fn explicit_separation() {
        let r = sample();
        let s = r.per_atom(vec![int(2), int(0), int(0)]).unwrap();
        let t = r.per_atom(vec![int(0), int(0), int(5)]).unwrap();
        let fam = OrthogonalFamily::Explicit { s: vec![s], t: vec![t] };
        let a = separate(&r, &fam).unwrap().separator().unwrap().clone();
        assert_eq!(a, r.per_atom(vec![ratio(1, 2), int(0), int(0)]).unwrap());
        assert_eq!(verify_separator(&r, &fam, &a).unwrap(), None);
        let empty = OrthogonalFamily::Explicit { s: vec![], t: vec![r.one()] };
        assert_eq!(separate(&r, &empty).unwrap().separator(), Some(&r.zero()));
    }

    #[test]
    fn verify_reports_first_failure() {
        let r = sample();
        let s = r.per_atom(vec![int(2), int(0), int(0)]).unwrap();
        let t = r.per_atom(vec![int(0), int(0), int(5)]).unwrap();
        let fam = OrthogonalFamily::Explicit { s: vec![s], t: vec![t] };
        assert_eq!(verify_separator(&r, &fam, &r.zero()).unwrap(), Some(SeparationFailure::S(0)));
        let only_t =
            OrthogonalFamily::Explicit { s: vec![], t: vec![r.per_atom(vec![int(0), int(0), int(5)]).unwrap()] };
        assert_eq!(verify_separator(&r, &only_t, &r.one()).unwrap(), Some(SeparationFailure::T(0)));
    }

    #[test]
    fn non_orthogonal_input() {
        let r = sample();
        let s = r.per_atom(vec![int(2), int(1), int(0)]).unwrap();
        let t = r.per_atom(vec![int(0), int(3), int(0)]).unwrap();
        let err = separate(&r, &OrthogonalFamily::Explicit { s: vec![s], t: vec![t] }).unwrap_err();
        assert!(matches!(err, Error::NonOrthogonal(_)));
    }

    #[test]
    fn reciprocal_schema_is_not_separable() {
        let fc = MRing::new(FieldOfSets::finite_cofinite());
        let v = separate(&fc, &OrthogonalFamily::Schema(schema("reciprocal").unwrap())).unwrap();
        let SeparationVerdict::NonSeparable { certificate } = v else { panic!() };
        assert_eq!(certificate.forced, DistinctRule::Identity);
        // the candidate matching the forced values on a prefix
        let a = fc.default_exc(int(7), (1..=6).map(|n| (n, int(n as i64)))).unwrap();
        let n = certificate.refute(&fc, &a).unwrap();
        assert!(n > 6 && certificate.validate(&fc, &a, n).unwrap());
    }

    #[test]
    fn constant_schema_is_separable() {
        let fc = MRing::new(FieldOfSets::finite_cofinite());
        let fam = OrthogonalFamily::Schema(schema("constant").unwrap());
        let a = separate(&fc, &fam).unwrap().separator().unwrap().clone();
        assert_eq!(verify_separator(&fc, &fam, &a).unwrap(), None);
        assert_eq!(verify_separator(&fc, &fam, &fc.one()).unwrap(), Some(SeparationFailure::S(1)));
    }

    #[test]
    fn distinct_rules_invert() {
        for rule in [DistinctRule::Reciprocal, DistinctRule::Identity] {
            for n in 1..20 {
                assert_eq!(rule.solve(&rule.value(n)), Some(n));
            }
            assert_eq!(rule.solve(&int(0)), None);
            assert_eq!(rule.solve(&ratio(2, 3)), None);
        }
    }

    #[test]
    fn classifiers() {
        let v = classify_self_injectivity(&sample().field().clone(), 50, 7).unwrap();
        assert!(v.self_injective && v.consistent);
        let fc = classify_self_injectivity(&FieldOfSets::finite_cofinite(), 50, 7).unwrap();
        assert!(!fc.self_injective && !fc.aleph0_self_injective && fc.consistent);
        assert!(matches!(
            classify_mod_socle(&FieldOfSets::finite_cofinite()).unwrap(),
            ModSocleVerdict::PreconditionUnmet { .. }
        ));
        let m = classify_mod_socle(sample().field()).unwrap();
        assert!(matches!(
            m,
            ModSocleVerdict::Verdict {
                self_injective_mod_socle: true,
                direct_quotient_zero: true,
                consistent: true,
                ..
            }
        ));
    }
}
