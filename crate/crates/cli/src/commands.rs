//! The `witness`, `stone` and `quotient` reports.

use measfield::boolalg::FieldKind;
use measfield::injectivity::{schema, separate, verify_separator, OrthogonalFamily, SeparationVerdict};
use measfield::mring::LambdaReport;
use measfield::socle::{mod_socle, ModSocleReport};
use measfield::stone::{spectrum, stone_representation, SpecPoint, StoneReport};
use measfield::{FieldOfSets, MRing, MeasurableFn, OrderIdeal, SetElement};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{CliError, Result};

/// Candidate separators refuted by a non-separability certificate in `witness`.
const REFUTATION_SAMPLES: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Refutation {
    pub candidate: MeasurableFn,
    /// Index `n` with `s_n² · a ≠ s_n`.
    pub fails_at: u64,
    pub validated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessReport {
    pub schema: String,
    pub ring: String,
    #[serde(flatten)]
    pub verdict: SeparationVerdict,
    pub sound: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub refutations: Vec<Refutation>,
}

/// Runs the separation engine on a registered schema over the finite–cofinite ring.
pub fn witness(schema_id: &str, seed: u64) -> Result<WitnessReport> {
    let s = schema(schema_id).map_err(|_| CliError::UnknownSchema(schema_id.into()))?;
    let ring = MRing::new(FieldOfSets::finite_cofinite());
    let family = OrthogonalFamily::Schema(s.clone());
    let verdict = separate(&ring, &family)?;
    let mut refutations = Vec::new();
    let sound = match &verdict {
        SeparationVerdict::Separator { a } => verify_separator(&ring, &family, a)?.is_none(),
        SeparationVerdict::NonSeparable { certificate } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut candidates = vec![ring.one(), ring.zero()];
            candidates.extend((0..REFUTATION_SAMPLES).map(|_| ring.random_fn(&mut rng)));
            for a in candidates {
                let n = certificate.refute(&ring, &a)?;
                let validated = certificate.validate(&ring, &a, n)?;
                refutations.push(Refutation { candidate: a, fails_at: n, validated });
            }
            refutations.iter().all(|r| r.validated)
        }
    };
    Ok(WitnessReport { schema: s.id, ring: ring.field().label().into(), verdict, sound, refutations })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpecEntry {
    pub point: SpecPoint,
    pub ideal: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisRow {
    pub element: SetElement,
    pub open: Vec<SpecPoint>,
    /// For the finite–cofinite algebra: whether `∞` lies in the full open set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub with_infinity: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StoneDoc {
    pub instance: String,
    /// Observation window for the finite–cofinite spectrum.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<u64>,
    pub points: Vec<SpecEntry>,
    pub basis: Vec<BasisRow>,
    pub report: StoneReport,
}

/// Basis rows are listed for at most this many elements.
const BASIS_ROWS: usize = 64;

pub fn stone(field: &FieldOfSets) -> Result<StoneDoc> {
    let space = spectrum(field)?;
    let elements: Vec<SetElement> = match field.kind() {
        FieldKind::FinitePartition(_) => field.elements()?.take(BASIS_ROWS).collect(),
        FieldKind::FiniteCofinite { .. } => {
            field.window_elements(space.window().expect("finite–cofinite"))?.into_iter().take(BASIS_ROWS).collect()
        }
    };
    let mut basis = Vec::with_capacity(elements.len());
    for a in elements {
        let open = space.basis_open(&a)?.into_iter().collect();
        let with_infinity = match space.window() {
            Some(_) => Some(space.compactification_open(&a)?.with_infinity),
            None => None,
        };
        basis.push(BasisRow { element: a, open, with_infinity });
    }
    Ok(StoneDoc {
        instance: field.label().into(),
        window: space.window(),
        points: space.entries().iter().map(|(p, i)| SpecEntry { point: *p, ideal: i.to_string() }).collect(),
        basis,
        report: stone_representation(field)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdealQuotient {
    pub ideal: String,
    /// Classes of `A/I`, when finitely many.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra_classes: Option<usize>,
    pub lambda: LambdaReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuotientDoc {
    pub instance: String,
    #[serde(flatten)]
    pub socle: ModSocleReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub by_ideal: Option<IdealQuotient>,
}

impl QuotientDoc {
    pub fn passes(&self) -> bool {
        self.socle.passes() && self.by_ideal.as_ref().is_none_or(|q| q.lambda.passes())
    }
}

/// `M/Soc`, and `M/Ī` with its idempotent algebra when an ideal is given.
pub fn quotient(field: &FieldOfSets, ideal: Option<&OrderIdeal>, seed: u64) -> Result<QuotientDoc> {
    let ring = MRing::new(field.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes: Vec<MeasurableFn> = if field.is_finite() {
        Vec::new()
    } else {
        (0..crate::suites::SAMPLES).map(|_| ring.random_fn(&mut rng)).collect()
    };
    let socle = mod_socle(&ring, &classes)?;
    let by_ideal = match ideal {
        Some(i) => {
            let q = ring.quotient_ring(i)?;
            let domain: Vec<SetElement> = match field.kind() {
                FieldKind::FinitePartition(_) => field.elements()?.collect(),
                FieldKind::FiniteCofinite { .. } => field.window_elements(4)?,
            };
            let algebra_classes = i.quotient()?.elements().ok().map(|e| e.len());
            Some(IdealQuotient { ideal: i.to_string(), algebra_classes, lambda: q.lambda_iso(&domain)? })
        }
        None => None,
    };
    Ok(QuotientDoc { instance: field.label().into(), socle, by_ideal })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_witness_is_non_separable() {
        let report = witness("reciprocal", 1).unwrap();
        assert!(report.sound);
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v["verdict"], "non_separable");
        assert!(witness("constant", 1).unwrap().refutations.is_empty());
        assert!(witness("nope", 1).is_err());
    }

    #[test]
    fn two_element_algebra_has_one_point() {
        let field = FieldOfSets::finite("two", [1, 2], vec![vec![1, 2]]).unwrap();
        let doc = stone(&field).unwrap();
        assert_eq!(doc.points.len(), 1);
        assert!(doc.report.passes());
    }

    #[test]
    fn quotient_kinds() {
        let fc = FieldOfSets::finite_cofinite();
        let doc = quotient(&fc, Some(&OrderIdeal::all_finite(&fc).unwrap()), 3).unwrap();
        assert!(doc.passes());
        let v = serde_json::to_value(&doc).unwrap();
        assert_eq!(v["quotient_kind"], "field");
        assert_eq!(v["by_ideal"]["lambda"]["idempotent_classes"], 2);
    }
}
