//! Prime spectra with the Stone topology, finite topologies, and the
//! correspondence between maximal ideals of `M/Ī` and primes of `A/I`.
//!
//! A finite algebra has one prime per atom. The plain finite–cofinite
//! algebra has the point ideals `PointIdeal(n)` and the all-finite ideal,
//! rendered as the point `∞` of the one-point compactification of `ℕ`.
//! Statements about that infinite space are checked on an observation window
//! `0..=w` plus `∞`: every element whose flipped points lie below `w` behaves
//! at each index `n ≥ w` exactly as at `w`, so such checks are exhaustive for
//! the elements of the window.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::boolalg::{FieldKind, FieldOfSets, SetElement};
use crate::ideals::OrderIdeal;
use crate::mring::{MRing, MeasurableFn};
use crate::rational::Rational;
use crate::{Error, Result};

/// Largest finite space handled by [`FiniteTopology`].
pub const MAX_TOPOLOGY_POINTS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "at", rename_all = "snake_case")]
pub enum SpecPoint {
    /// The prime of elements missing atom `i`.
    Atom(usize),
    /// `PointIdeal(n)` of the finite–cofinite algebra.
    Index(u64),
    /// The all-finite ideal.
    Infinity,
}

impl fmt::Display for SpecPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecPoint::Atom(i) => write!(f, "atom{i}"),
            SpecPoint::Index(n) => write!(f, "PointIdeal({n})"),
            SpecPoint::Infinity => write!(f, "∞"),
        }
    }
}

/// `Spec(A)`: its points, each with the prime ideal it stands for.
#[derive(Clone, Debug)]
pub struct StoneSpace {
    field: FieldOfSets,
    /// Points of a finite spectrum; for the finite–cofinite algebra, the
    /// observed indices `0..=window` followed by `∞`.
    points: Vec<(SpecPoint, OrderIdeal)>,
    window: Option<u64>,
}

/// Default observation window for the finite–cofinite spectrum.
pub const DEFAULT_WINDOW: u64 = 5;

pub fn spectrum(field: &FieldOfSets) -> Result<StoneSpace> {
    spectrum_with_window(field, DEFAULT_WINDOW)
}

pub fn spectrum_with_window(field: &FieldOfSets, window: u64) -> Result<StoneSpace> {
    match field.kind() {
        FieldKind::FinitePartition(p) => {
            let points = (0..p.len())
                .map(|i| {
                    let ideal = OrderIdeal::principal(field, field.complement(&SetElement::Blocks(1 << i))?)?;
                    Ok((SpecPoint::Atom(i), ideal))
                })
                .collect::<Result<_>>()?;
            Ok(StoneSpace { field: field.clone(), points, window: None })
        }
        FieldKind::FiniteCofinite { classes: 1 } => {
            let mut points = (0..=window)
                .map(|n| Ok((SpecPoint::Index(n), OrderIdeal::point(field, n)?)))
                .collect::<Result<Vec<_>>>()?;
            points.push((SpecPoint::Infinity, OrderIdeal::all_finite(field)?));
            Ok(StoneSpace { field: field.clone(), points, window: Some(window) })
        }
        FieldKind::FiniteCofinite { .. } => Err(Error::Unsupported(
            "the spectrum of a refined finite–cofinite algebra has primes outside the representation".into(),
        )),
    }
}

/// `𝒰(a)` for the finite–cofinite spectrum: the indices in `a`, plus `∞`
/// exactly when `a` is cofinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompactificationOpen {
    pub indices: SetElement,
    pub with_infinity: bool,
}

impl StoneSpace {
    pub fn field(&self) -> &FieldOfSets {
        &self.field
    }

    pub fn points(&self) -> impl Iterator<Item = SpecPoint> + '_ {
        self.points.iter().map(|(p, _)| *p)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn window(&self) -> Option<u64> {
        self.window
    }

    pub fn ideal_of(&self, point: SpecPoint) -> Option<&OrderIdeal> {
        self.points.iter().find(|(p, _)| *p == point).map(|(_, i)| i)
    }

    pub fn entries(&self) -> &[(SpecPoint, OrderIdeal)] {
        &self.points
    }

    /// Points of `𝒰(a) = {P : a ∉ P}` among the listed points.
    pub fn basis_open(&self, a: &SetElement) -> Result<BTreeSet<SpecPoint>> {
        let mut out = BTreeSet::new();
        for (p, ideal) in &self.points {
            if !ideal.contains(a)? {
                out.insert(*p);
            }
        }
        Ok(out)
    }

    /// The full (possibly infinite) `𝒰(a)` on the finite–cofinite spectrum.
    pub fn compactification_open(&self, a: &SetElement) -> Result<CompactificationOpen> {
        if self.window.is_none() {
            return Err(Error::Unsupported("compactification opens need the finite–cofinite spectrum".into()));
        }
        let with_infinity = !OrderIdeal::all_finite(&self.field)?.contains(a)?;
        Ok(CompactificationOpen { indices: a.clone(), with_infinity })
    }

    /// The primes containing `ideal`, i.e. the points of `Spec(A/I)`.
    pub fn above(&self, ideal: &OrderIdeal) -> Result<StoneSpace> {
        let mut points = Vec::new();
        for (p, prime) in &self.points {
            if ideal.is_subideal(prime)? {
                points.push((*p, prime.clone()));
            }
        }
        Ok(StoneSpace { field: self.field.clone(), points, window: self.window })
    }

    /// The Stone topology on a finite spectrum, with points numbered in listing order.
    pub fn topology(&self) -> Result<FiniteTopology> {
        if self.window.is_some() {
            return Err(Error::Unsupported("the finite–cofinite spectrum is infinite".into()));
        }
        let base = self
            .field
            .elements()?
            .map(|a| {
                let open = self.basis_open(&a)?;
                Ok(self.points().enumerate().filter(|(_, p)| open.contains(p)).map(|(i, _)| i as u64).collect())
            })
            .collect::<Result<Vec<BTreeSet<u64>>>>()?;
        FiniteTopology::from_base((0..self.len() as u64).collect(), &base)
    }
}

/// One named law of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl LawCheck {
    fn new(law: &str) -> Self {
        LawCheck { law: law.into(), passed: true, counterexample: None }
    }

    fn fail(&mut self, why: impl FnOnce() -> String) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(why());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StoneReport {
    pub points: usize,
    pub elements_checked: usize,
    pub laws: Vec<LawCheck>,
}

impl StoneReport {
    pub fn passes(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }
}

/// Checks that `a ↦ 𝒰(a)` is a Boolean isomorphism onto the clopen sets.
///
/// Finite algebras are checked on every element and pair. The finite–cofinite
/// algebra is checked on the elements flipping points below the window, with
/// clopens of the compactification taken as the finite sets of indices and
/// their complements with `∞` added.
pub fn stone_representation(field: &FieldOfSets) -> Result<StoneReport> {
    let space = spectrum(field)?;
    let elements: Vec<SetElement> = match field.kind() {
        FieldKind::FinitePartition(_) => field.elements()?.collect(),
        _ => field.window_elements(space.window.expect("finite–cofinite"))?,
    };
    let all: BTreeSet<SpecPoint> = space.points().collect();
    let opens: Vec<BTreeSet<SpecPoint>> = elements.iter().map(|a| space.basis_open(a)).collect::<Result<_>>()?;

    let mut prime = LawCheck::new("every point is prime");
    for (p, ideal) in &space.points {
        if !ideal.is_prime()? {
            prime.fail(|| p.to_string());
        }
    }
    let mut bounds = LawCheck::new("U(0) is empty and U(1) is every point");
    if !space.basis_open(&field.zero())?.is_empty() || space.basis_open(&field.one())? != all {
        bounds.fail(|| "U(0) or U(1)".into());
    }
    let (mut join, mut meet, mut complement) = (
        LawCheck::new("U(a ∨ b) = U(a) ∪ U(b)"),
        LawCheck::new("U(a ∧ b) = U(a) ∩ U(b)"),
        LawCheck::new("U(¬a) = ¬U(a)"),
    );
    let mut injective = LawCheck::new("injective");
    for (i, a) in elements.iter().enumerate() {
        let not_a: BTreeSet<SpecPoint> = all.difference(&opens[i]).copied().collect();
        if space.basis_open(&field.complement(a)?)? != not_a {
            complement.fail(|| field.render(a));
        }
        for (j, b) in elements.iter().enumerate() {
            let u: BTreeSet<SpecPoint> = opens[i].union(&opens[j]).copied().collect();
            if space.basis_open(&field.join(a, b)?)? != u {
                join.fail(|| format!("{} , {}", field.render(a), field.render(b)));
            }
            let n: BTreeSet<SpecPoint> = opens[i].intersection(&opens[j]).copied().collect();
            if space.basis_open(&field.meet(a, b)?)? != n {
                meet.fail(|| format!("{} , {}", field.render(a), field.render(b)));
            }
            if i < j && opens[i] == opens[j] {
                injective.fail(|| format!("{} , {}", field.render(a), field.render(b)));
            }
        }
    }
    let mut onto = LawCheck::new("onto the clopen sets");
    match field.kind() {
        FieldKind::FinitePartition(_) => {
            let top = space.topology()?;
            let listed: Vec<SpecPoint> = space.points().collect();
            let images: BTreeSet<u64> = opens.iter().map(|o| mask_of(&listed, o)).collect();
            let clopens: BTreeSet<u64> = top.clopens().into_iter().collect();
            if images != clopens {
                onto.fail(|| format!("{} images, {} clopens", images.len(), clopens.len()));
            }
        }
        _ => {
            let window = space.window.expect("finite–cofinite");
            let mut shape = LawCheck::new("each U(a) is a finite set without ∞ or a cofinite set with ∞");
            for a in &elements {
                let open = space.compactification_open(a)?;
                let cofinite = !a.as_tagged().expect("tagged").is_finite();
                if open.with_infinity != cofinite {
                    shape.fail(|| a.to_string());
                }
            }
            onto_compactification(&space, window, &opens, &mut onto)?;
            let mut infinity = LawCheck::new("∞ ∈ U(a) iff a is cofinite");
            for (a, open) in elements.iter().zip(&opens) {
                if open.contains(&SpecPoint::Infinity) != (a.tag() == Some(crate::boolalg::Tag::Cofinite)) {
                    infinity.fail(|| a.to_string());
                }
            }
            let mut laws = vec![prime, bounds, join, meet, complement, injective, onto, shape, infinity];
            laws.sort_by(|a, b| a.law.cmp(&b.law));
            return Ok(StoneReport { points: space.len(), elements_checked: elements.len(), laws });
        }
    }
    Ok(StoneReport {
        points: space.len(),
        elements_checked: elements.len(),
        laws: vec![prime, bounds, join, meet, complement, injective, onto],
    })
}

/// Every clopen of the compactification visible in the window is some `U(a)`:
/// for each finite set `S` of indices below the window, `S` itself and its
/// complement with `∞` must both occur.
fn onto_compactification(
    space: &StoneSpace,
    window: u64,
    opens: &[BTreeSet<SpecPoint>],
    check: &mut LawCheck,
) -> Result<()> {
    let listed: Vec<SpecPoint> = space.points().collect();
    let found: BTreeSet<u64> = opens.iter().map(|o| mask_of(&listed, o)).collect();
    let infinity_bit = 1u64 << (listed.len() - 1);
    let observed = listed.len() as u64;
    for bits in 0..1u64 << window {
        let finite = bits;
        // the complement includes every index at or beyond the window, and ∞
        let cofinite = !bits & ((1u64 << observed) - 1);
        for target in [finite, cofinite] {
            if !found.contains(&target) {
                check.fail(|| format!("no element maps onto mask {target:#b}"));
            }
        }
        debug_assert!(cofinite & infinity_bit != 0);
    }
    Ok(())
}

fn mask_of(listed: &[SpecPoint], set: &BTreeSet<SpecPoint>) -> u64 {
    listed.iter().enumerate().filter(|(_, p)| set.contains(p)).fold(0, |m, (i, _)| m | 1 << i)
}

/// A topology on at most [`MAX_TOPOLOGY_POINTS`] points, stored by its open sets as bitmasks.
#[derive(Clone, Debug)]
pub struct FiniteTopology {
    points: Vec<u64>,
    opens: BTreeSet<u64>,
}

impl FiniteTopology {
    /// The topology generated by `base` (all unions of base sets, plus `∅` and the whole space).
    pub fn from_base(points: Vec<u64>, base: &[BTreeSet<u64>]) -> Result<Self> {
        if points.len() > MAX_TOPOLOGY_POINTS {
            return Err(Error::Unsupported(format!("topologies are limited to {MAX_TOPOLOGY_POINTS} points")));
        }
        let index: BTreeMap<u64, usize> = points.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut masks = BTreeSet::new();
        for set in base {
            let mut m = 0u64;
            for x in set {
                m |= 1 << index.get(x).ok_or(Error::OutsideUniverse(*x))?;
            }
            masks.insert(m);
        }
        // also close under intersection so that a subbase works too
        let mut opens: BTreeSet<u64> = [0, full(points.len())].into();
        let mut frontier: Vec<u64> = masks.iter().copied().collect();
        while let Some(m) = frontier.pop() {
            if opens.insert(m) {
                for &o in opens.clone().iter() {
                    for next in [m | o, m & o] {
                        if !opens.contains(&next) {
                            frontier.push(next);
                        }
                    }
                }
            }
        }
        Ok(FiniteTopology { points, opens })
    }

    /// `X_A`: the topology on the universe of a finite field with the field as a base.
    pub fn of_field(field: &FieldOfSets) -> Result<Self> {
        let p = field.partition().ok_or_else(|| Error::Unsupported("X_A needs a finite field".into()))?;
        let base = field
            .elements()?
            .map(|a| field.points_of(&a).map(|v| v.into_iter().collect()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_base(p.universe().to_vec(), &base)
    }

    pub fn points(&self) -> &[u64] {
        &self.points
    }

    pub fn opens(&self) -> impl Iterator<Item = u64> + '_ {
        self.opens.iter().copied()
    }

    fn full(&self) -> u64 {
        full(self.points.len())
    }

    pub fn is_open(&self, m: u64) -> bool {
        self.opens.contains(&m)
    }

    pub fn is_closed(&self, m: u64) -> bool {
        self.is_open(!m & self.full())
    }

    /// Smallest closed superset of `m`.
    pub fn closure(&self, m: u64) -> u64 {
        let outside = !m & self.full();
        let interior = self.opens.iter().filter(|&&o| o & !outside == 0).fold(0, |acc, &o| acc | o);
        !interior & self.full()
    }

    pub fn clopens(&self) -> Vec<u64> {
        self.opens.iter().copied().filter(|&o| self.is_closed(o)).collect()
    }

    /// The closure of every open set is open.
    pub fn is_extremally_disconnected(&self) -> bool {
        self.opens.iter().all(|&o| self.is_open(self.closure(o)))
    }

    pub fn isolated_points(&self) -> Vec<u64> {
        (0..self.points.len()).filter(|&i| self.is_open(1 << i)).map(|i| self.points[i]).collect()
    }

    /// Smallest open set containing the point with index `i`.
    fn neighbourhood(&self, i: usize) -> u64 {
        self.opens.iter().filter(|&&o| o >> i & 1 == 1).fold(self.full(), |acc, &o| acc & o)
    }

    /// Every point has an open neighbourhood on which `values` is constant.
    pub fn is_locally_constant(&self, values: &BTreeMap<u64, Rational>) -> Result<bool> {
        for (i, x) in self.points.iter().enumerate() {
            let here = values.get(x).ok_or(Error::OutsideUniverse(*x))?;
            let nbhd = self.neighbourhood(i);
            for (j, y) in self.points.iter().enumerate() {
                if nbhd >> j & 1 == 1 && values.get(y) != Some(here) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_points(&self, m: u64) -> Vec<u64> {
        (0..self.points.len()).filter(|i| m >> i & 1 == 1).map(|i| self.points[i]).collect()
    }
}

fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

/// Measurable functions are exactly the locally constant functions on `X_A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocallyConstantReport {
    pub clopens_equal_algebra: bool,
    pub functions_checked: usize,
    pub disagreements: usize,
}

impl LocallyConstantReport {
    pub fn passes(&self) -> bool {
        self.clopens_equal_algebra && self.disagreements == 0
    }
}

/// Compares `CO(X_A)` with `A`, and measurability with local constancy for
/// every point function with values in `grid`.
pub fn locally_constant_check(field: &FieldOfSets, grid: &[Rational]) -> Result<LocallyConstantReport> {
    let top = FiniteTopology::of_field(field)?;
    let ring = MRing::new(field.clone());
    let algebra: BTreeSet<Vec<u64>> = field.elements()?.map(|a| field.points_of(&a)).collect::<Result<_>>()?;
    let clopens: BTreeSet<Vec<u64>> = top.clopens().into_iter().map(|m| top.to_points(m)).collect();
    let n = top.points().len();
    let total = (grid.len() as u64)
        .checked_pow(n as u32)
        .filter(|&t| t <= 1 << 16)
        .ok_or_else(|| Error::Unsupported(format!("{} point functions is too many", grid.len())))?;
    let mut disagreements = 0;
    for code in 0..total {
        let mut c = code;
        let values: BTreeMap<u64, Rational> = top
            .points()
            .iter()
            .map(|&x| {
                let v = grid[(c % grid.len() as u64) as usize].clone();
                c /= grid.len() as u64;
                (x, v)
            })
            .collect();
        if top.is_locally_constant(&values)? != ring.from_point_values(&values).is_ok() {
            disagreements += 1;
        }
    }
    Ok(LocallyConstantReport {
        clopens_equal_algebra: algebra == clopens,
        functions_checked: total as usize,
        disagreements,
    })
}

/// Whether the Stone space of a finite algebra is extremally disconnected.
pub fn spectrum_is_extremally_disconnected(field: &FieldOfSets) -> Result<bool> {
    Ok(spectrum(field)?.topology()?.is_extremally_disconnected())
}

/// A point of `Max(M/Ī)` with its image under `φ(M) = Θ(M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxPoint {
    pub ring_ideal: String,
    pub image: SpecPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxSpecReport {
    pub ideal: String,
    pub pairs: Vec<MaxPoint>,
    pub bijective: bool,
    pub functions_checked: usize,
    pub elements_checked: usize,
    /// `φ(𝔻(f̄)) = 𝒰(coz(f) + I)` for every checked `f`.
    pub forward_formula: bool,
    /// `φ⁻¹(𝒰(A + I)) = 𝔻(χ_A + Ī)` for every checked `A`.
    pub inverse_formula: bool,
}

impl MaxSpecReport {
    pub fn passes(&self) -> bool {
        self.bijective && self.forward_formula && self.inverse_formula
    }
}

/// Builds `φ: Max(M/Ī) → Spec(A/I)` and checks both basis formulas.
///
/// Maximal ideals of `M/Ī` are the maximal ideals of `M` containing `Ī`:
/// the point ideals `M_x`, and on the finite–cofinite ring also the ideal of
/// functions with default zero. `functions` is the domain for the first
/// formula; the second uses every element of a finite algebra, or the
/// window elements of the finite–cofinite algebra.
pub fn max_spec_homeomorphism(ring: &MRing, ideal: &OrderIdeal, functions: &[MeasurableFn]) -> Result<MaxSpecReport> {
    let field = ring.field();
    let space = spectrum(field)?;
    let quotient_space = space.above(ideal)?;
    let ideal_bar = ring.overline(ideal)?;

    // ring side, enumerated from points of the universe
    let mut ring_points = Vec::new();
    let observed: Vec<u64> = match field.partition() {
        Some(p) => p.universe().to_vec(),
        None => (0..=space.window.expect("finite–cofinite")).collect(),
    };
    for x in observed {
        let m = ring.point_ideal(x)?;
        if !ring_points.contains(&m) {
            ring_points.push(m);
        }
    }
    if !field.is_finite() {
        ring_points.push(ring.infinity_ideal()?);
    }
    let mut max_points = Vec::new();
    for m in ring_points {
        if ideal_bar.is_subideal(&m)? && m.is_maximal()? {
            max_points.push(m);
        }
    }

    // φ(M) = Θ(M), located among the listed primes
    let mut pairs = Vec::new();
    let mut images = Vec::new();
    for m in &max_points {
        let image = quotient_space
            .entries()
            .iter()
            .find(|(_, prime)| prime == m.theta())
            .map(|(p, _)| *p)
            .ok_or_else(|| Error::structural(format!("Θ({m}) is not a point of Spec(A/I)")))?;
        pairs.push(MaxPoint { ring_ideal: m.to_string(), image });
        images.push(image);
    }
    let distinct: BTreeSet<SpecPoint> = images.iter().copied().collect();
    let bijective = distinct.len() == images.len() && distinct == quotient_space.points().collect();

    let hull = |f: &MeasurableFn| -> Result<BTreeSet<SpecPoint>> {
        let mut out = BTreeSet::new();
        for (m, image) in max_points.iter().zip(&images) {
            if !m.contains(f)? {
                out.insert(*image);
            }
        }
        Ok(out)
    };
    let mut forward_formula = true;
    for f in functions {
        forward_formula &= hull(f)? == quotient_space.basis_open(&ring.coz(f)?)?;
    }
    let elements: Vec<SetElement> = match field.kind() {
        FieldKind::FinitePartition(_) => field.elements()?.collect(),
        _ => field.window_elements(space.window.expect("finite–cofinite"))?,
    };
    let mut inverse_formula = true;
    for a in &elements {
        inverse_formula &= quotient_space.basis_open(a)? == hull(&ring.chi(a)?)?;
    }
    Ok(MaxSpecReport {
        ideal: ideal.to_string(),
        pairs,
        bijective,
        functions_checked: functions.len(),
        elements_checked: elements.len(),
        forward_formula,
        inverse_formula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn sample() -> FieldOfSets {
        FieldOfSets::finite("sample", [1, 2, 3, 4], vec![vec![1], vec![2], vec![3, 4]]).unwrap()
    }

    #[test]
    fn spectrum_sizes() {
        assert_eq!(spectrum(&sample()).unwrap().len(), 3);
        let two = FieldOfSets::finite("2", [1, 2], vec![vec![1, 2]]).unwrap();
        assert_eq!(spectrum(&two).unwrap().len(), 1);
        let fc = spectrum(&FieldOfSets::finite_cofinite()).unwrap();
        assert_eq!(fc.points().last(), Some(SpecPoint::Infinity));
        assert_eq!(fc.ideal_of(SpecPoint::Index(3)).unwrap().to_string(), "PointIdeal(3)");
        assert!(spectrum(&FieldOfSets::refined_finite_cofinite(2).unwrap()).is_err());
    }

    #[test]
    fn basis_opens() {
        let fc = FieldOfSets::finite_cofinite();
        let s = spectrum(&fc).unwrap();
        assert!(s.basis_open(&fc.zero()).unwrap().is_empty());
        let u = s.basis_open(&SetElement::finite([3, 7])).unwrap();
        assert_eq!(u, [SpecPoint::Index(3)].into());
        assert!(!s.compactification_open(&SetElement::finite([3, 7])).unwrap().with_infinity);
        let v = s.basis_open(&SetElement::cofinite([0])).unwrap();
        assert!(
            v.contains(&SpecPoint::Infinity) && !v.contains(&SpecPoint::Index(0)) && v.contains(&SpecPoint::Index(1))
        );
    }

    #[test]
    fn representation_reports() {
        let r = stone_representation(&sample()).unwrap();
        assert!(r.passes(), "{r:?}");
        assert_eq!(r.points, 3);
        let two = FieldOfSets::finite("2", [1, 2], vec![vec![1, 2]]).unwrap();
        assert!(stone_representation(&two).unwrap().passes());
        let fc = stone_representation(&FieldOfSets::finite_cofinite()).unwrap();
        assert!(fc.passes(), "{fc:?}");
    }

    #[test]
    fn topologies() {
        let top = FiniteTopology::of_field(&sample()).unwrap();
        assert!(top.is_extremally_disconnected());
        assert_eq!(top.isolated_points(), vec![1, 2]);
        let discrete = FiniteTopology::from_base(vec![0, 1, 2], &[[0].into(), [1].into(), [2].into()]).unwrap();
        assert!(discrete.is_extremally_disconnected());
        // Sierpinski-like chain {∅, {0}, {0,1}, X}: closure of {0} is X, open
        let chain = FiniteTopology::from_base(vec![0, 1, 2], &[[0].into(), [0, 1].into()]).unwrap();
        assert!(chain.is_extremally_disconnected());
        // two disjoint opens whose closures overlap: not extremally disconnected
        let v = FiniteTopology::from_base(vec![0, 1, 2], &[[0].into(), [1].into()]).unwrap();
        assert!(!v.is_extremally_disconnected());
        assert!(spectrum_is_extremally_disconnected(&sample()).unwrap());
    }

    #[test]
    fn locally_constant_functions_are_measurable() {
        let r = locally_constant_check(&sample(), &[int(0), int(1), int(2)]).unwrap();
        assert!(r.passes());
        assert_eq!(r.functions_checked, 81);
    }

    #[test]
    fn max_spec_examples() {
        let a = sample();
        let ring = MRing::new(a.clone());
        let fs = ring.grid_functions(&[int(0), int(1), int(2)]).unwrap();
        let r = max_spec_homeomorphism(&ring, &OrderIdeal::zero(&a), &fs).unwrap();
        assert!(r.passes(), "{r:?}");
        assert_eq!(r.pairs.len(), 3);
        let fc = MRing::new(FieldOfSets::finite_cofinite());
        let fs = vec![fc.zero(), fc.one(), fc.default_exc(int(0), [(2, int(1))]).unwrap()];
        let r = max_spec_homeomorphism(&fc, &OrderIdeal::zero(fc.field()), &fs).unwrap();
        assert!(r.passes(), "{r:?}");
        assert!(r.pairs.iter().any(|p| p.image == SpecPoint::Infinity && p.ring_ideal == "overline(AllFinite)"));
    }
}
