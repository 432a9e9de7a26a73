//! Minimal ideals, the socle, and the quotient of the ring by its socle.
//!
//! Each minimal ideal of `M(X, A)` is `overline({0, a})` for an atom `a`, so
//! the socle is stored by the order ideal generated by all atoms: everything
//! for a finite field, the finite sets for the finite–cofinite algebras.
//! [`in_cf`] decides membership in `C_F` from function values alone, which
//! gives an independent cross-check.

use serde::Serialize;

use crate::boolalg::{Atoms, FieldKind, SetElement};
use crate::ideals::OrderIdeal;
use crate::mring::{MRing, MeasurableFn, ReducedTransport, RingIdeal};
use crate::rational::{self, Rational};
use crate::stone::FiniteTopology;
use crate::{Error, Result};

/// The minimal ideals: one list for a finite field, one per index otherwise.
#[derive(Clone, Debug)]
pub enum MinimalIdeals {
    Listed(Vec<RingIdeal>),
    /// `n ↦ overline({0, {n}})`, the principal ideal of `χ_{n}`.
    PerIndex,
}

pub fn minimal_ideals(ring: &MRing) -> Result<MinimalIdeals> {
    match ring.field().atoms() {
        Atoms::Blocks(atoms) => Ok(MinimalIdeals::Listed(
            atoms
                .into_iter()
                .map(|a| ring.overline(&OrderIdeal::principal(ring.field(), a)?))
                .collect::<Result<_>>()?,
        )),
        Atoms::AllSingletons => Ok(MinimalIdeals::PerIndex),
    }
}

/// `overline({0, {n}})` on a finite–cofinite ring.
pub fn minimal_ideal_at(ring: &MRing, n: u64) -> Result<RingIdeal> {
    ring.overline(&OrderIdeal::principal(ring.field(), ring.field().singleton(n)?)?)
}

/// Nonzero, and no nonzero ideal lies strictly below. Finite fields only.
pub fn is_minimal(ideal: &RingIdeal) -> Result<bool> {
    if ideal.theta().is_zero() {
        return Ok(false);
    }
    for other in OrderIdeal::all(ideal.ring().field())? {
        if !other.is_zero() && other.is_subideal(ideal.theta())? && other != *ideal.theta() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Soc(M)`, the sum of the minimal ideals.
pub fn socle(ring: &MRing) -> Result<RingIdeal> {
    match minimal_ideals(ring)? {
        MinimalIdeals::Listed(ideals) => {
            let supports: Vec<SetElement> = ideals.iter().map(|i| i.theta().support().expect("principal")).collect();
            ring.overline(&OrderIdeal::generated(ring.field(), &supports)?)
        }
        // every finite set is a finite join of singletons, and nothing else is
        MinimalIdeals::PerIndex => ring.infinity_ideal(),
    }
}

/// `f ∈ C_F(X_A)`: `f` is nonzero on only finitely many atoms. Decided from
/// values: per-atom functions qualify trivially, step functions when every
/// class default is zero.
pub fn in_cf(ring: &MRing, f: &MeasurableFn) -> Result<bool> {
    ring.check(f)?;
    Ok(match f {
        MeasurableFn::PerAtom(_) => true,
        MeasurableFn::DefaultPlusExceptions { defaults, .. } => defaults.iter().all(|d| *d == rational::zero()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientKind {
    Zero,
    Field,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverseWitness {
    pub class: MeasurableFn,
    pub inverse: MeasurableFn,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModSocleReport {
    pub socle_theta: String,
    pub quotient_kind: QuotientKind,
    /// Classes tested for invertibility.
    pub classes_checked: usize,
    pub zero_classes: usize,
    pub inverted: usize,
    /// Two nonzero classes with zero product, when the quotient is not a field.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_divisors: Option<(MeasurableFn, MeasurableFn)>,
    pub witnesses: Vec<InverseWitness>,
    /// For a field quotient, `class ↦ default value` onto the rationals.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isomorphism: Option<&'static str>,
}

impl ModSocleReport {
    pub fn passes(&self) -> bool {
        match self.quotient_kind {
            QuotientKind::Zero => true,
            QuotientKind::Field => self.zero_classes + self.inverted == self.classes_checked,
            QuotientKind::Other => self.zero_divisors.is_some(),
        }
    }
}

/// The inverse class of `f` in `M/Soc` on the plain finite–cofinite ring: the constant `1/default(f)`.
pub fn inverse_class(ring: &MRing, f: &MeasurableFn) -> Result<Option<MeasurableFn>> {
    match f.default_value() {
        Some(d) if *d != rational::zero() => Ok(Some(ring.constant(d.recip()))),
        Some(_) => Ok(None),
        None => Err(Error::Unsupported("inverse classes need the plain finite–cofinite ring".into())),
    }
}

/// `M/Soc` with a structure report. `classes` are tested for invertibility.
pub fn mod_socle(ring: &MRing, classes: &[MeasurableFn]) -> Result<ModSocleReport> {
    let soc = socle(ring)?;
    let q = ring.quotient_ring(soc.theta())?;
    let one = ring.one();
    let mut report = ModSocleReport {
        socle_theta: soc.theta().to_string(),
        quotient_kind: QuotientKind::Other,
        classes_checked: classes.len(),
        zero_classes: 0,
        inverted: 0,
        zero_divisors: None,
        witnesses: Vec::new(),
        isomorphism: None,
    };
    if soc.contains(&one)? {
        report.quotient_kind = QuotientKind::Zero;
        report.zero_classes = classes.len();
        return Ok(report);
    }
    match ring.field().kind() {
        FieldKind::FiniteCofinite { classes: 1 } => {
            report.quotient_kind = QuotientKind::Field;
            report.isomorphism = Some("class of f ↦ default(f)");
            for f in classes {
                if soc.contains(f)? {
                    report.zero_classes += 1;
                    continue;
                }
                let g = inverse_class(ring, f)?.expect("nonzero class has nonzero default");
                if q.equivalent(&ring.mul(f, &g)?, &one)? {
                    report.inverted += 1;
                    if report.witnesses.len() < 3 {
                        report.witnesses.push(InverseWitness { class: f.clone(), inverse: g });
                    }
                }
            }
        }
        FieldKind::FiniteCofinite { .. } => {
            let (a, b) = (ring.chi(&ring.field().residue_class(0)?)?, ring.chi(&ring.field().residue_class(1)?)?);
            if !soc.contains(&a)? && !soc.contains(&b)? && soc.contains(&ring.mul(&a, &b)?)? {
                report.zero_divisors = Some((a, b));
            }
            for f in classes {
                if soc.contains(f)? {
                    report.zero_classes += 1;
                }
            }
        }
        FieldKind::FinitePartition(_) => unreachable!("finite socle contains 1"),
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CfVsMdReport {
    /// Isolated points of `X_A` itself (points whose atom is a singleton);
    /// `None` for an infinite universe, where every index is isolated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isolated_points_of_x: Option<Vec<u64>>,
    /// Non-isolated points of the reduced space `Y_B`.
    pub non_isolated: Vec<u64>,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<MeasurableFn>,
    /// Equality is predicted exactly when every infinite set of isolated
    /// points has a limit point, which holds vacuously for finite spaces.
    pub predicted_equal: bool,
    pub consistent: bool,
}

/// Compares `C_F` with `M^d` over the non-isolated points, on the reduced space `Y_B`.
pub fn cf_vs_md_check(ring: &MRing) -> Result<CfVsMdReport> {
    let transport = ReducedTransport::new(ring);
    let reduced = transport.target();
    let field = reduced.field();
    let soc = socle(reduced)?;
    let (isolated_points_of_x, non_isolated, predicted_equal) = match ring.field().partition() {
        Some(p) => {
            let raw = FiniteTopology::of_field(ring.field())
                .map(|t| t.isolated_points())
                .unwrap_or_else(|_| p.blocks().iter().filter(|b| b.len() == 1).map(|b| b[0]).collect());
            let top = FiniteTopology::of_field(field)?;
            let iso = top.isolated_points();
            let non: Vec<u64> = top.points().iter().copied().filter(|x| !iso.contains(x)).collect();
            (Some(raw), non, true)
        }
        // every singleton is in the algebra, so every index is isolated, and ℕ
        // is an infinite set of isolated points without a limit point
        None => (None, Vec::new(), false),
    };
    // M^d over the non-isolated points: functions vanishing there
    let vanish = field.element_from_points(&non_isolated)?;
    let md = reduced.overline(&OrderIdeal::principal(field, field.complement(&vanish)?)?)?;
    let equal = md == soc;
    let witness = if equal {
        None
    } else {
        let support = md.theta().support().expect("principal");
        let w = reduced.chi(&support)?;
        debug_assert!(md.contains(&w)? && !soc.contains(&w)?);
        Some(transport.phi(&w)?)
    };
    Ok(CfVsMdReport {
        isolated_points_of_x,
        non_isolated,
        equal,
        witness,
        predicted_equal,
        consistent: equal == predicted_equal,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SocleTransportReport {
    pub functions_checked: usize,
    /// `Φ(f) ∈ Soc(M(X, A))` iff `f ∈ C_F(Y_B)` for every checked `f`.
    pub maps_onto: bool,
}

/// Checks `Φ(C_F(Y_B)) = Soc(M(X, A))` over per-atom functions with values in `grid`.
pub fn socle_transport(ring: &MRing, grid: &[Rational]) -> Result<SocleTransportReport> {
    let transport = ReducedTransport::new(ring);
    let soc = socle(ring)?;
    let fs = transport.target().grid_functions(grid)?;
    let mut maps_onto = true;
    for f in &fs {
        maps_onto &= soc.contains(&transport.phi(f)?)? == in_cf(transport.target(), f)?;
    }
    for h in ring.grid_functions(grid)? {
        if soc.contains(&h)? {
            maps_onto &= in_cf(transport.target(), &transport.phi_inverse(&h)?)?;
        }
    }
    Ok(SocleTransportReport { functions_checked: fs.len(), maps_onto })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::FieldOfSets;
    use crate::rational::{int, ratio};

    fn sample() -> MRing {
        MRing::new(FieldOfSets::finite("s", [1, 2, 3, 4], vec![vec![1], vec![2], vec![3, 4]]).unwrap())
    }

    #[test]
    fn minimal_ideal_counts() {
        let MinimalIdeals::Listed(ideals) = minimal_ideals(&sample()).unwrap() else { panic!() };
        assert_eq!(ideals.len(), 3);
        assert!(ideals.iter().all(|i| is_minimal(i).unwrap()));
        let one = MRing::new(FieldOfSets::finite("X", [1, 2], vec![vec![1, 2]]).unwrap());
        let MinimalIdeals::Listed(ideals) = minimal_ideals(&one).unwrap() else { panic!() };
        assert_eq!(ideals.len(), 1);
        let fc = MRing::new(FieldOfSets::finite_cofinite());
        assert!(matches!(minimal_ideals(&fc).unwrap(), MinimalIdeals::PerIndex));
        assert!(minimal_ideal_at(&fc, 4).unwrap().contains(&fc.default_exc(int(0), [(4, int(9))]).unwrap()).unwrap());
    }

    #[test]
    fn socle_examples() {
        let r = sample();
        let soc = socle(&r).unwrap();
        assert!(soc.contains(&r.one()).unwrap());
        assert!(soc.contains(&r.chi(&r.field().element_from_points(&[3, 4]).unwrap()).unwrap()).unwrap());
        let fc = MRing::new(FieldOfSets::finite_cofinite());
        let soc = socle(&fc).unwrap();
        assert!(soc.contains(&fc.default_exc(int(0), [(1, int(2))]).unwrap()).unwrap());
        assert!(!soc.contains(&fc.one()).unwrap());
    }

    #[test]
    fn quotient_by_socle() {
        assert_eq!(mod_socle(&sample(), &[]).unwrap().quotient_kind, QuotientKind::Zero);
        let fc = MRing::new(FieldOfSets::finite_cofinite());
        let f = fc.default_exc(int(2), [(5, int(0))]).unwrap();
        assert_eq!(inverse_class(&fc, &f).unwrap(), Some(fc.constant(ratio(1, 2))));
        let report = mod_socle(&fc, &[f, fc.zero()]).unwrap();
        assert_eq!(report.quotient_kind, QuotientKind::Field);
        assert!(report.passes());
        let parity = MRing::new(FieldOfSets::refined_finite_cofinite(2).unwrap());
        let report = mod_socle(&parity, &[]).unwrap();
        assert_eq!(report.quotient_kind, QuotientKind::Other);
        assert!(report.passes());
    }

    #[test]
    fn cf_versus_md() {
        let r = cf_vs_md_check(&sample()).unwrap();
        assert!(r.equal && r.consistent);
        assert_eq!(r.isolated_points_of_x, Some(vec![1, 2]));
        let fc = MRing::new(FieldOfSets::finite_cofinite());
        let r = cf_vs_md_check(&fc).unwrap();
        assert!(!r.equal && r.consistent);
        assert_eq!(r.witness, Some(fc.one()));
        let single = MRing::new(FieldOfSets::powerset("P", [0]).unwrap());
        assert!(cf_vs_md_check(&single).unwrap().equal);
    }

    #[test]
    fn socle_transports() {
        let r = socle_transport(&sample(), &[int(-1), int(0), int(1), int(2)]).unwrap();
        assert!(r.maps_onto);
    }
}
