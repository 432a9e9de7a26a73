//! Verification suites. Each runs a family of checks on one instance and
//! reports a JSON document with a single pass flag; randomized checks draw
//! from a ChaCha stream seeded by the caller.

use measfield::boolalg::FieldKind;
use measfield::injectivity::{
    classify_self_injectivity, random_orthogonal_family, registered_schemas, schema, separate, verify_separator,
    OrthogonalFamily, SeparationVerdict, ValueRule,
};
use measfield::mring::{BaerEvidence, FunctionFamily, ReducedTransport};
use measfield::rational::{int, one, zero};
use measfield::socle::{
    cf_vs_md_check, in_cf, is_minimal, minimal_ideal_at, minimal_ideals, mod_socle, socle, socle_transport,
    MinimalIdeals, QuotientKind,
};
use measfield::stone::{max_spec_homeomorphism, stone_representation};
use measfield::{FieldOfSets, MRing, MeasurableFn, OrderIdeal, Rational, SetElement};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{CliError, Result};

/// Randomized samples per check.
pub const SAMPLES: usize = 1000;

/// Suite ids with their accepted aliases.
pub const SUITES: &[(&str, &[&str])] = &[
    ("ideal_bijection", &["prop_2_1"]),
    ("idempotent_lifting", &["prop_2_2", "cor_2_3"]),
    ("max_spec", &["prop_2_4", "cor_2_5"]),
    ("stone", &["thm_1_2_1", "ex_2_6"]),
    ("regularity", &["lemma_1_3_1"]),
    ("annihilators", &["lemma_2_7_5", "cor_2_10"]),
    ("separation", &["lemma_3_8"]),
    ("self_injectivity", &["prop_3_9", "thm_3_15"]),
    ("reduction", &["prop_3_13", "cor_3_14"]),
    ("socle", &["lemma_4_1", "cor_4_2", "prop_4_3"]),
    ("census", &[]),
];

pub fn resolve(id: &str) -> Result<&'static str> {
    SUITES
        .iter()
        .find(|(name, aliases)| *name == id || aliases.contains(&id))
        .map(|(name, _)| *name)
        .ok_or_else(|| CliError::UnknownSuite(id.into()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub instance: String,
    pub seed: u64,
    pub passed: bool,
    pub details: Value,
}

pub fn run(field: &FieldOfSets, id: &str, seed: u64) -> Result<SuiteReport> {
    let suite = resolve(id)?;
    let ring = MRing::new(field.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (passed, details) = match suite {
        "ideal_bijection" => ideal_bijection(&ring)?,
        "idempotent_lifting" => idempotent_lifting(&ring, &mut rng)?,
        "max_spec" => max_spec(&ring, &mut rng)?,
        "stone" => {
            let report = stone_representation(field)?;
            (report.passes(), serde_json::to_value(report)?)
        }
        "regularity" => regularity(&ring, &mut rng)?,
        "annihilators" => annihilators(&ring, &mut rng)?,
        "separation" => separation(&ring, &mut rng)?,
        "self_injectivity" => self_injectivity(&ring, seed, &mut rng)?,
        "reduction" => reduction(&ring, &mut rng)?,
        "socle" => socle_suite(&ring, &mut rng)?,
        "census" => {
            let record = crate::census::record_for(field, seed)?;
            (record.checks_passed == record.checks_total, serde_json::to_value(record)?)
        }
        _ => unreachable!("resolved suite"),
    };
    Ok(SuiteReport { suite: suite.into(), instance: field.label().into(), seed, passed, details })
}

pub(crate) fn grid() -> Vec<Rational> {
    vec![int(-1), zero(), one(), int(2)]
}

fn samples(ring: &MRing, rng: &mut ChaCha8Rng, count: usize) -> Vec<MeasurableFn> {
    (0..count).map(|_| ring.random_fn(rng)).collect()
}

/// Per-atom values of a function on a finite field.
fn values(f: &MeasurableFn) -> &[Rational] {
    match f {
        MeasurableFn::PerAtom(v) => v,
        _ => panic!("finite field functions are per-atom"),
    }
}

fn value_support(f: &MeasurableFn) -> u64 {
    values(f).iter().enumerate().filter(|(_, v)| **v != zero()).fold(0, |m, (i, _)| m | 1 << i)
}

/// Grid functions of a finite ring; up to five atoms use four values, beyond that two.
fn small_functions(ring: &MRing) -> Result<Vec<MeasurableFn>> {
    let k = ring.field().atom_count().unwrap_or(0);
    let g = if k <= 5 { grid() } else { vec![zero(), one()] };
    Ok(ring.grid_functions(&g)?)
}

/// The representable ideal shapes of a finite–cofinite algebra used as probes.
fn cofinite_ideals(field: &FieldOfSets) -> Result<Vec<OrderIdeal>> {
    let mut out = vec![
        OrderIdeal::zero(field),
        OrderIdeal::principal(field, field.element_from_points(&[1, 3])?)?,
        OrderIdeal::all_finite(field)?,
    ];
    if field.classes() == Some(1) {
        out.push(OrderIdeal::point(field, 2)?);
    }
    Ok(out)
}

fn ideal_bijection(ring: &MRing) -> Result<(bool, Value)> {
    let field = ring.field();
    if field.is_finite() {
        let k = field.atom_count().expect("finite");
        let fs = small_functions(ring)?;
        let order_ideals = OrderIdeal::all(field)?;
        // ring ideals found by support: J_S = functions vanishing off S
        let mut ring_ideals = Vec::new();
        let mut recovered = true;
        for s in 0..1u64 << k {
            let members: Vec<MeasurableFn> = fs.iter().filter(|f| value_support(f) & !s == 0).cloned().collect();
            let theta = ring.theta(&FunctionFamily::Explicit(members))?;
            let bar = ring.overline(&theta)?;
            for f in &fs {
                recovered &= bar.contains(f)? == (value_support(f) & !s == 0);
            }
            ring_ideals.push(theta);
        }
        let mut roundtrip = true;
        for ideal in &order_ideals {
            let bar = ring.overline(ideal)?;
            let members: Vec<MeasurableFn> = fs.iter().filter(|f| bar.contains(f).unwrap_or(false)).cloned().collect();
            roundtrip &= ring.theta(&FunctionFamily::Explicit(members))? == *ideal;
        }
        let distinct = ring_ideals.iter().enumerate().all(|(i, a)| ring_ideals[..i].iter().all(|b| a != b));
        let bijective =
            distinct && ring_ideals.len() == order_ideals.len() && order_ideals.iter().all(|i| ring_ideals.contains(i));
        let passed = recovered && roundtrip && bijective;
        Ok((
            passed,
            json!({
                "order_ideals": order_ideals.len(),
                "ring_ideals": ring_ideals.len(),
                "functions": fs.len(),
                "theta_of_overline_is_identity": roundtrip,
                "ring_ideals_are_overlines": recovered,
                "bijective": bijective,
            }),
        ))
    } else {
        let mut checks = vec![
            ring.theta(&FunctionFamily::DefaultZero)? == OrderIdeal::all_finite(field)?,
            ring.theta(&FunctionFamily::FinitelySupported)? == OrderIdeal::all_finite(field)?,
        ];
        let a = field.element_from_points(&[0, 4])?;
        checks.push(ring.theta(&FunctionFamily::Explicit(vec![ring.chi(&a)?]))? == OrderIdeal::principal(field, a)?);
        if field.classes() == Some(1) {
            checks.push(ring.theta(&FunctionFamily::VanishingAt(3))? == OrderIdeal::point(field, 3)?);
        }
        for ideal in cofinite_ideals(field)? {
            checks.push(ring.overline(&ideal)?.theta() == &ideal);
        }
        let passed = checks.iter().all(|c| *c);
        Ok((passed, json!({ "shapes_checked": checks.len(), "all_agree": passed })))
    }
}

fn regularity(ring: &MRing, rng: &mut ChaCha8Rng) -> Result<(bool, Value)> {
    let (mut square_law, mut cozero_law) = (0, 0);
    let fs = samples(ring, rng, SAMPLES);
    for f in &fs {
        let star = ring.star(f)?;
        if ring.mul(&ring.square(f)?, &star)? == *f {
            square_law += 1;
        }
        if ring.mul(f, &star)? == ring.chi(&ring.coz(f)?)? {
            cozero_law += 1;
        }
    }
    let passed = square_law == fs.len() && cozero_law == fs.len();
    Ok((passed, json!({ "functions": fs.len(), "f2_fstar_eq_f": square_law, "f_fstar_eq_chi_coz": cozero_law })))
}

fn separation(ring: &MRing, rng: &mut ChaCha8Rng) -> Result<(bool, Value)> {
    if ring.field().is_finite() {
        let (mut separated, mut non_separable) = (0, 0);
        for _ in 0..SAMPLES {
            let family = random_orthogonal_family(ring, rng)?;
            match separate(ring, &family)? {
                SeparationVerdict::Separator { a } => {
                    if verify_separator(ring, &family, &a)?.is_none() {
                        separated += 1;
                    }
                }
                SeparationVerdict::NonSeparable { .. } => non_separable += 1,
            }
        }
        let passed = separated == SAMPLES && non_separable == 0;
        Ok((passed, json!({ "families": SAMPLES, "separated": separated, "non_separable": non_separable })))
    } else {
        let mut rows = Vec::new();
        let mut passed = true;
        for s in registered_schemas() {
            let expect_separator = matches!(s.values, ValueRule::EventuallyConstant { .. });
            let family = OrthogonalFamily::Schema(s.clone());
            let (kind, sound) = match separate(ring, &family)? {
                SeparationVerdict::Separator { a } => ("separator", verify_separator(ring, &family, &a)?.is_none()),
                SeparationVerdict::NonSeparable { certificate } => {
                    let mut sound = true;
                    for a in samples(ring, rng, SAMPLES / 10) {
                        let n = certificate.refute(ring, &a)?;
                        sound &= certificate.validate(ring, &a, n)?;
                    }
                    ("non_separable", sound)
                }
            };
            passed &= sound && (kind == "separator") == expect_separator;
            rows.push(json!({ "schema": s.id, "verdict": kind, "sound": sound }));
        }
        Ok((passed, json!({ "schemas": rows })))
    }
}

fn self_injectivity(ring: &MRing, seed: u64, rng: &mut ChaCha8Rng) -> Result<(bool, Value)> {
    let field = ring.field();
    let classifier = classify_self_injectivity(field, SAMPLES / 10, seed)?;
    if field.is_finite() {
        let passed = classifier.self_injective && classifier.consistent;
        return Ok((passed, json!({ "classifier": classifier })));
    }
    let verdict = separate(ring, &OrthogonalFamily::Schema(schema("reciprocal")?))?;
    let mut refuted = 0;
    if let SeparationVerdict::NonSeparable { certificate } = &verdict {
        for a in samples(ring, rng, SAMPLES) {
            let n = certificate.refute(ring, &a)?;
            if certificate.validate(ring, &a, n)? {
                refuted += 1;
            }
        }
    }
    let non_separable = matches!(verdict, SeparationVerdict::NonSeparable { .. });
    let passed = non_separable && refuted == SAMPLES && !classifier.self_injective && classifier.consistent;
    Ok((
        passed,
        json!({
            "verdict": verdict,
            "candidates_refuted": refuted,
            "classifier": classifier,
            "verdicts_agree": non_separable == !classifier.self_injective,
        }),
    ))
}

fn annihilators(ring: &MRing, rng: &mut ChaCha8Rng) -> Result<(bool, Value)> {
    let field = ring.field();
    let baer = ring.is_baer()?;
    if field.is_finite() {
        let fs = small_functions(ring)?;
        let mut agree = true;
        let ideals = OrderIdeal::all(field)?;
        for ideal in &ideals {
            let bar = ring.overline(ideal)?;
            let inside: Vec<&MeasurableFn> = fs.iter().filter(|f| bar.contains(f).unwrap_or(false)).collect();
            let ann = ring.annihilator(ideal)?;
            for g in &fs {
                let kills = inside.iter().all(|f| values(f).iter().zip(values(g)).all(|(x, y)| (x * y) == zero()));
                agree &= ann.contains(g)? == kills;
            }
        }
        let passed = agree && baer.holds;
        Ok((
            passed,
            json!({ "ideals": ideals.len(), "functions": fs.len(), "annihilators_agree": agree, "baer": baer }),
        ))
    } else {
        let BaerEvidence::EvensWitness(witness) = &baer.evidence else {
            return Ok((false, json!({ "baer": baer })));
        };
        // candidates: idempotents over window elements and random supports
        let mut candidates: Vec<SetElement> = match field.classes() {
            Some(m) if m <= 4 => field.window_elements(8)?,
            _ => Vec::new(),
        };
        for f in samples(ring, rng, SAMPLES / 10) {
            candidates.push(ring.coz(&f)?);
        }
        let mut refuted = 0;
        for a in &candidates {
            let e = ring.chi(a)?;
            let outcome = witness.refute(ring, &e)?;
            if witness.validate(ring, &e, &outcome)? {
                refuted += 1;
            }
        }
        let nr = &witness.support_outside_algebra;
        // the class holds both members and non-members beyond any bound
        let neither = nr.member % nr.modulus == nr.class
            && nr.non_member % nr.modulus == nr.class
            && nr.progression.contains(nr.member)
            && !nr.progression.contains(nr.non_member);
        let passed = !baer.holds && refuted == candidates.len() && neither;
        Ok((
            passed,
            json!({ "baer": baer, "candidates": candidates.len(), "refuted": refuted, "support_neither_finite_nor_cofinite": neither }),
        ))
    }
}

fn idempotent_lifting(ring: &MRing, rng: &mut ChaCha8Rng) -> Result<(bool, Value)> {
    let field = ring.field();
    let (ideals, fs, domain) = if field.is_finite() {
        (OrderIdeal::all(field)?, small_functions(ring)?, field.elements()?.collect::<Vec<_>>())
    } else {
        let mut fs = samples(ring, rng, SAMPLES / 4);
        // functions idempotent modulo finite sets
        let m = field.classes().unwrap_or(1) as usize;
        let bump = ring.step(vec![zero(); m], [(1, int(3)), (6, int(-2))].into())?;
        for a in field.window_elements(4)? {
            let chi = ring.chi(&a)?;
            fs.push(ring.add(&chi, &bump)?);
            fs.push(chi);
        }
        (cofinite_ideals(field)?, fs, field.window_elements(4)?)
    };
    let (mut quotients, mut idempotent_classes, mut lifted, mut lambda_ok) = (0, 0, 0, true);
    let mut lambda_reports = Vec::new();
    for ideal in ideals.iter().filter(|i| i.is_proper()) {
        quotients += 1;
        let q = ring.quotient_ring(ideal)?;
        for f in &fs {
            if !q.is_idempotent(f)? {
                continue;
            }
            idempotent_classes += 1;
            let e = q.lift_idempotent(f)?;
            // e² = e and coz(f − e) ∈ I
            if ring.is_idempotent(&e)? && ideal.contains(&ring.coz(&ring.sub(f, &e)?)?)? {
                lifted += 1;
            }
        }
        let report = q.lambda_iso(&domain)?;
        lambda_ok &= report.passes();
        lambda_reports.push(json!({ "ideal": ideal.to_string(), "lambda": report }));
    }
    let passed = lifted == idempotent_classes && lambda_ok;
    Ok((
        passed,
        json!({
            "quotients": quotients,
            "idempotent_classes": idempotent_classes,
            "lifted": lifted,
            "lambda_isomorphism": lambda_ok,
            "lambda": lambda_reports,
        }),
    ))
}

fn max_spec(ring: &MRing, rng: &mut ChaCha8Rng) -> Result<(bool, Value)> {
    let field = ring.field();
    if field.classes().is_some_and(|m| m > 1) {
        return Err(measfield::Error::Unsupported(
            "maximal spectra need a finite field or the plain finite–cofinite algebra".into(),
        )
        .into());
    }
    let (ideals, fs) = if field.is_finite() {
        (OrderIdeal::all(field)?, small_functions(ring)?)
    } else {
        (cofinite_ideals(field)?, samples(ring, rng, SAMPLES / 10))
    };
    let mut reports = Vec::new();
    let mut passed = true;
    for ideal in ideals.iter().filter(|i| i.is_proper()) {
        let report = max_spec_homeomorphism(ring, ideal, &fs)?;
        passed &= report.passes();
        reports.push(report);
    }
    Ok((passed, json!({ "quotients": reports.len(), "reports": reports })))
}

fn reduction(ring: &MRing, rng: &mut ChaCha8Rng) -> Result<(bool, Value)> {
    let transport = ReducedTransport::new(ring);
    if ring.field().is_finite() {
        let report = transport.verify(&grid())?;
        Ok((report.passes(), serde_json::to_value(report)?))
    } else {
        // the finite–cofinite algebra already separates points
        let mut identity = transport.reduction().is_bijective();
        for f in samples(ring, rng, SAMPLES / 10) {
            identity &= transport.phi(&f)? == f && transport.phi_inverse(&f)? == f;
        }
        Ok((identity, json!({ "reduced": transport.reduction().is_bijective(), "phi_is_identity": identity })))
    }
}

fn socle_suite(ring: &MRing, rng: &mut ChaCha8Rng) -> Result<(bool, Value)> {
    let field = ring.field();
    let soc = socle(ring)?;
    let fs = if field.is_finite() { small_functions(ring)? } else { samples(ring, rng, SAMPLES) };
    let mut soc_is_cf = true;
    for f in &fs {
        soc_is_cf &= soc.contains(f)? == in_cf(ring, f)?;
    }
    let (minimal, minimal_count) = match minimal_ideals(ring)? {
        MinimalIdeals::Listed(list) => {
            let mut ok = true;
            for m in &list {
                ok &= is_minimal(m)?;
            }
            // their sum is the socle
            let supports: Vec<SetElement> = list.iter().filter_map(|m| m.theta().support()).collect();
            ok &= OrderIdeal::generated(field, &supports)? == *soc.theta();
            (ok, list.len())
        }
        MinimalIdeals::PerIndex => {
            let mut ok = true;
            for n in 0..8 {
                let m = minimal_ideal_at(ring, n)?;
                let single = field.singleton(n)?;
                ok &= m.contains(&ring.chi(&single)?)? && m.is_subideal(&soc)?;
                // every nonzero member has cozero set {n}
                for f in &fs {
                    if m.contains(f)? && !ring.is_zero(f) {
                        ok &= ring.coz(f)? == single;
                    }
                }
            }
            (ok, 8)
        }
    };
    let classes = if field.is_finite() { Vec::new() } else { samples(ring, rng, SAMPLES) };
    let quotient = mod_socle(ring, &classes)?;
    let expected_kind = match field.kind() {
        FieldKind::FinitePartition(_) => QuotientKind::Zero,
        FieldKind::FiniteCofinite { classes: 1 } => QuotientKind::Field,
        FieldKind::FiniteCofinite { .. } => QuotientKind::Other,
    };
    let quotient_ok = quotient.passes() && quotient.quotient_kind == expected_kind;
    let cf_md = cf_vs_md_check(ring)?;
    let transport_ok = if field.is_finite() {
        socle_transport(ring, &grid())?.maps_onto
    } else {
        // Φ is the identity here, so it maps the socle onto itself
        let t = ReducedTransport::new(ring);
        let mut ok = true;
        for f in fs.iter().take(SAMPLES / 10) {
            ok &= soc.contains(&t.phi(f)?)? == soc.contains(f)?;
        }
        ok
    };
    let passed = soc_is_cf && minimal && quotient_ok && cf_md.consistent && transport_ok;
    Ok((
        passed,
        json!({
            "socle_theta": soc.theta().to_string(),
            "minimal_ideals_checked": minimal_count,
            "minimal_ideals_sum_to_socle": minimal,
            "socle_equals_cf": soc_is_cf,
            "functions": fs.len(),
            "mod_socle": quotient,
            "cf_vs_md": cf_md,
            "phi_maps_socle_onto_socle": transport_ok,
        }),
    ))
}
