//! The ring `M(X, A)` of rational-valued measurable step functions.
//!
//! A function on a finite field stores one value per atom. On a
//! finite–cofinite algebra it stores one default per residue class and a
//! finite map of exceptions; an exception never repeats its class default,
//! so equality of functions is structural.

mod ideal;
mod quotient;
mod transport;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::boolalg::{FieldKind, FieldOfSets, SetElement, TaggedSet};
use crate::rational::{self, Rational};
use crate::{Error, Result};

pub use ideal::{BaerEvidence, BaerRefutation, BaerVerdict, EvensAnnihilatorWitness, FunctionFamily, RingIdeal};
pub use quotient::{LambdaReport, QuotientRing};
pub use transport::{ring_of_quotients_witness, QuotientWitness, ReducedTransport, TransportReport};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "FnRepr", try_from = "FnRepr")]
pub enum MeasurableFn {
    /// Value on each atom block, in block order.
    PerAtom(Vec<Rational>),
    /// Value `defaults[n mod m]` at `n` unless `n` is an exception.
    DefaultPlusExceptions { defaults: Vec<Rational>, exceptions: BTreeMap<u64, Rational> },
}

impl MeasurableFn {
    /// Default value of a function on the plain finite–cofinite algebra.
    pub fn default_value(&self) -> Option<&Rational> {
        match self {
            MeasurableFn::DefaultPlusExceptions { defaults, .. } if defaults.len() == 1 => defaults.first(),
            _ => None,
        }
    }

    pub fn defaults(&self) -> Option<&[Rational]> {
        match self {
            MeasurableFn::DefaultPlusExceptions { defaults, .. } => Some(defaults),
            MeasurableFn::PerAtom(_) => None,
        }
    }

    pub fn exceptions(&self) -> Option<&BTreeMap<u64, Rational>> {
        match self {
            MeasurableFn::DefaultPlusExceptions { exceptions, .. } => Some(exceptions),
            MeasurableFn::PerAtom(_) => None,
        }
    }
}

/// `M(X, A)` for one field of sets.
#[derive(Clone, Debug)]
pub struct MRing {
    field: FieldOfSets,
}

impl MRing {
    pub fn new(field: FieldOfSets) -> Self {
        MRing { field }
    }

    pub fn field(&self) -> &FieldOfSets {
        &self.field
    }

    pub fn check(&self, f: &MeasurableFn) -> Result<()> {
        match (self.field.kind(), f) {
            (FieldKind::FinitePartition(p), MeasurableFn::PerAtom(v)) if v.len() == p.len() => Ok(()),
            (FieldKind::FiniteCofinite { classes }, MeasurableFn::DefaultPlusExceptions { defaults, exceptions })
                if defaults.len() as u64 == *classes =>
            {
                if exceptions.iter().any(|(n, v)| *v == defaults[(n % classes) as usize]) {
                    return Err(Error::structural("exception repeats its class default"));
                }
                Ok(())
            }
            _ => Err(Error::structural(format!("function {f} is not in the ring over {}", self.field.label()))),
        }
    }

    pub fn per_atom(&self, values: Vec<Rational>) -> Result<MeasurableFn> {
        let f = MeasurableFn::PerAtom(values);
        self.check(&f)?;
        Ok(f)
    }

    /// A function with one default per residue class and finitely many exceptions.
    pub fn step(&self, defaults: Vec<Rational>, exceptions: BTreeMap<u64, Rational>) -> Result<MeasurableFn> {
        let classes = self
            .field
            .classes()
            .ok_or_else(|| Error::structural("default-plus-exceptions functions need a finite–cofinite algebra"))?;
        if defaults.len() as u64 != classes {
            return Err(Error::structural(format!("expected {classes} defaults, got {}", defaults.len())));
        }
        Ok(normalize(defaults, exceptions))
    }

    /// `step` on the plain finite–cofinite algebra.
    pub fn default_exc(
        &self,
        default: Rational,
        exceptions: impl IntoIterator<Item = (u64, Rational)>,
    ) -> Result<MeasurableFn> {
        self.step(vec![default], exceptions.into_iter().collect())
    }

    pub fn constant(&self, r: Rational) -> MeasurableFn {
        match self.field.kind() {
            FieldKind::FinitePartition(p) => MeasurableFn::PerAtom(vec![r; p.len()]),
            FieldKind::FiniteCofinite { classes } => MeasurableFn::DefaultPlusExceptions {
                defaults: vec![r; *classes as usize],
                exceptions: BTreeMap::new(),
            },
        }
    }

    pub fn zero(&self) -> MeasurableFn {
        self.constant(rational::zero())
    }

    pub fn one(&self) -> MeasurableFn {
        self.constant(rational::one())
    }

    /// The characteristic function `χ_a`.
    pub fn chi(&self, a: &SetElement) -> Result<MeasurableFn> {
        self.field.check(a)?;
        let bit = |b: bool| if b { rational::one() } else { rational::zero() };
        Ok(match a {
            SetElement::Blocks(mask) => {
                MeasurableFn::PerAtom((0..self.atom_len()).map(|i| bit(mask >> i & 1 == 1)).collect())
            }
            SetElement::Tagged(t) => MeasurableFn::DefaultPlusExceptions {
                defaults: (0..t.modulus).map(|r| bit(t.class_default(r))).collect(),
                exceptions: t.part.iter().map(|&n| (n, bit(t.contains(n)))).collect(),
            },
        })
    }

    fn atom_len(&self) -> usize {
        self.field.atom_count().unwrap_or(0)
    }

    pub fn map(&self, f: &MeasurableFn, op: impl Fn(&Rational) -> Rational) -> Result<MeasurableFn> {
        self.check(f)?;
        Ok(match f {
            MeasurableFn::PerAtom(v) => MeasurableFn::PerAtom(v.iter().map(&op).collect()),
            MeasurableFn::DefaultPlusExceptions { defaults, exceptions } => {
                normalize(defaults.iter().map(&op).collect(), exceptions.iter().map(|(&n, v)| (n, op(v))).collect())
            }
        })
    }

    pub fn zip(
        &self,
        f: &MeasurableFn,
        g: &MeasurableFn,
        op: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<MeasurableFn> {
        self.check(f)?;
        self.check(g)?;
        Ok(match (f, g) {
            (MeasurableFn::PerAtom(a), MeasurableFn::PerAtom(b)) => {
                MeasurableFn::PerAtom(a.iter().zip(b).map(|(x, y)| op(x, y)).collect())
            }
            (
                MeasurableFn::DefaultPlusExceptions { defaults: da, exceptions: ea },
                MeasurableFn::DefaultPlusExceptions { defaults: db, .. },
            ) => {
                let defaults = da.iter().zip(db).map(|(x, y)| op(x, y)).collect();
                let keys: BTreeSet<u64> = ea.keys().chain(g.exceptions().expect("step").keys()).copied().collect();
                let exceptions = keys.into_iter().map(|n| (n, op(&step_eval(f, n), &step_eval(g, n)))).collect();
                normalize(defaults, exceptions)
            }
            _ => unreachable!("checked above"),
        })
    }

    pub fn add(&self, f: &MeasurableFn, g: &MeasurableFn) -> Result<MeasurableFn> {
        self.zip(f, g, |x, y| x + y)
    }

    pub fn sub(&self, f: &MeasurableFn, g: &MeasurableFn) -> Result<MeasurableFn> {
        self.zip(f, g, |x, y| x - y)
    }

    pub fn mul(&self, f: &MeasurableFn, g: &MeasurableFn) -> Result<MeasurableFn> {
        self.zip(f, g, |x, y| x * y)
    }

    pub fn neg(&self, f: &MeasurableFn) -> Result<MeasurableFn> {
        self.map(f, |x| -x)
    }

    pub fn scalar_mul(&self, r: &Rational, f: &MeasurableFn) -> Result<MeasurableFn> {
        self.map(f, |x| r * x)
    }

    pub fn square(&self, f: &MeasurableFn) -> Result<MeasurableFn> {
        self.mul(f, f)
    }

    /// `f*`: `1/f` on `coz(f)` and `1` on `Z(f)`.
    pub fn star(&self, f: &MeasurableFn) -> Result<MeasurableFn> {
        self.map(f, |x| if x.is_zero() { rational::one() } else { x.recip() })
    }

    /// The value of `f` at a point of the universe.
    pub fn eval(&self, f: &MeasurableFn, x: u64) -> Result<Rational> {
        self.check(f)?;
        match (self.field.kind(), f) {
            (FieldKind::FinitePartition(p), MeasurableFn::PerAtom(v)) => {
                Ok(v[p.block_of(x).ok_or(Error::OutsideUniverse(x))?].clone())
            }
            _ => Ok(step_eval(f, x)),
        }
    }

    /// The finite set of values taken by `f`, ascending.
    pub fn image(&self, f: &MeasurableFn) -> Result<Vec<Rational>> {
        self.check(f)?;
        let values: BTreeSet<Rational> = match f {
            MeasurableFn::PerAtom(v) => v.iter().cloned().collect(),
            MeasurableFn::DefaultPlusExceptions { defaults, exceptions } => {
                defaults.iter().chain(exceptions.values()).cloned().collect()
            }
        };
        Ok(values.into_iter().collect())
    }

    /// `f⁻¹(r)` as an element of the algebra.
    pub fn level_set(&self, f: &MeasurableFn, r: &Rational) -> Result<SetElement> {
        self.check(f)?;
        Ok(match f {
            MeasurableFn::PerAtom(v) => {
                SetElement::Blocks(v.iter().enumerate().filter(|(_, x)| *x == r).fold(0, |m, (i, _)| m | 1 << i))
            }
            MeasurableFn::DefaultPlusExceptions { defaults, exceptions } => {
                let modulus = defaults.len() as u64;
                let cofinite_classes =
                    defaults.iter().enumerate().filter(|(_, x)| *x == r).fold(0, |m, (i, _)| m | 1 << i);
                // an exception flips membership exactly when its value or its default equals r
                let part = exceptions
                    .iter()
                    .filter(|(&n, v)| *v == r || defaults[(n % modulus) as usize] == *r)
                    .map(|(&n, _)| n)
                    .collect();
                SetElement::Tagged(TaggedSet { modulus, cofinite_classes, part })
            }
        })
    }

    pub fn zset(&self, f: &MeasurableFn) -> Result<SetElement> {
        self.level_set(f, &rational::zero())
    }

    pub fn coz(&self, f: &MeasurableFn) -> Result<SetElement> {
        self.field.complement(&self.zset(f)?)
    }

    pub fn is_zero(&self, f: &MeasurableFn) -> bool {
        *f == self.zero()
    }

    pub fn is_idempotent(&self, f: &MeasurableFn) -> Result<bool> {
        Ok(self.square(f)? == *f)
    }

    pub fn is_unit(&self, f: &MeasurableFn) -> Result<bool> {
        Ok(self.field.is_zero(&self.zset(f)?))
    }

    /// Builds a function on a finite field from its values at every point,
    /// failing when it is not constant on some block.
    pub fn from_point_values(&self, values: &BTreeMap<u64, Rational>) -> Result<MeasurableFn> {
        let p = self.field.partition().ok_or_else(|| Error::Unsupported("point tables need a finite field".into()))?;
        let mut out = Vec::with_capacity(p.len());
        for block in p.blocks() {
            let first = values.get(&block[0]).ok_or(Error::OutsideUniverse(block[0]))?;
            if block.iter().any(|x| values.get(x) != Some(first)) {
                return Err(Error::structural(format!("values are not constant on block {block:?}")));
            }
            out.push(first.clone());
        }
        Ok(MeasurableFn::PerAtom(out))
    }

    /// Every per-atom function with values drawn from `grid`. Finite fields only.
    pub fn grid_functions(&self, grid: &[Rational]) -> Result<Vec<MeasurableFn>> {
        let k = self
            .field
            .atom_count()
            .ok_or_else(|| Error::Unsupported("grid enumeration needs a finite field".into()))?;
        let total = (grid.len() as u128).checked_pow(k as u32).filter(|&t| t <= 1 << 20);
        if total.is_none() || grid.is_empty() {
            return Err(Error::Unsupported(format!("grid of {} values over {k} atoms is too large", grid.len())));
        }
        let mut out = vec![Vec::with_capacity(k)];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Rational>| {
                    grid.iter().map(move |v| {
                        let mut next = prefix.clone();
                        next.push(v.clone());
                        next
                    })
                })
                .collect();
        }
        Ok(out.into_iter().map(MeasurableFn::PerAtom).collect())
    }

    /// A random function with small rational values; on finite–cofinite
    /// algebras exceptions are drawn from `0..16`.
    pub fn random_fn(&self, rng: &mut impl Rng) -> MeasurableFn {
        fn value(rng: &mut impl Rng) -> Rational {
            if rng.gen_bool(0.3) {
                return rational::zero();
            }
            rational::ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
        }
        match self.field.kind() {
            FieldKind::FinitePartition(p) => MeasurableFn::PerAtom((0..p.len()).map(|_| value(rng)).collect()),
            FieldKind::FiniteCofinite { classes } => {
                let defaults = (0..*classes).map(|_| value(rng)).collect();
                let count = rng.gen_range(0..5);
                let exceptions = (0..count).map(|_| (rng.gen_range(0..16), value(rng))).collect();
                normalize(defaults, exceptions)
            }
        }
    }

    pub fn render(&self, f: &MeasurableFn) -> String {
        f.to_string()
    }
}

fn step_eval(f: &MeasurableFn, n: u64) -> Rational {
    match f {
        MeasurableFn::DefaultPlusExceptions { defaults, exceptions } => {
            exceptions.get(&n).cloned().unwrap_or_else(|| defaults[(n % defaults.len() as u64) as usize].clone())
        }
        MeasurableFn::PerAtom(_) => unreachable!("step functions only"),
    }
}

fn normalize(defaults: Vec<Rational>, mut exceptions: BTreeMap<u64, Rational>) -> MeasurableFn {
    let modulus = defaults.len() as u64;
    exceptions.retain(|n, v| *v != defaults[(n % modulus) as usize]);
    MeasurableFn::DefaultPlusExceptions { defaults, exceptions }
}

/// Wire shape: `{"kind":"per_atom","values":["2","0","3"]}` or
/// `{"kind":"default_exc","default":"1","exc":{"3":"0"}}`; refined algebras
/// use `"defaults":[..]` in place of `"default"`.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum FnRepr {
    PerAtom {
        values: Vec<String>,
    },
    DefaultExc {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        default: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        defaults: Option<Vec<String>>,
        // string keys: integer map keys do not survive internally tagged decoding
        #[serde(default)]
        exc: BTreeMap<String, String>,
    },
}

impl From<MeasurableFn> for FnRepr {
    fn from(f: MeasurableFn) -> Self {
        match f {
            MeasurableFn::PerAtom(v) => FnRepr::PerAtom { values: v.iter().map(rational::format).collect() },
            MeasurableFn::DefaultPlusExceptions { defaults, exceptions } => {
                let exc = exceptions.iter().map(|(n, v)| (n.to_string(), rational::format(v))).collect();
                if defaults.len() == 1 {
                    FnRepr::DefaultExc { default: Some(rational::format(&defaults[0])), defaults: None, exc }
                } else {
                    FnRepr::DefaultExc {
                        default: None,
                        defaults: Some(defaults.iter().map(rational::format).collect()),
                        exc,
                    }
                }
            }
        }
    }
}

impl TryFrom<FnRepr> for MeasurableFn {
    type Error = Error;

    fn try_from(r: FnRepr) -> Result<Self> {
        let parse_all = |xs: &[String]| xs.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>();
        Ok(match r {
            FnRepr::PerAtom { values } => MeasurableFn::PerAtom(parse_all(&values)?),
            FnRepr::DefaultExc { default, defaults, exc } => {
                let defaults = match (default, defaults) {
                    (Some(d), None) => vec![rational::parse(&d)?],
                    (None, Some(ds)) if !ds.is_empty() => parse_all(&ds)?,
                    _ => return Err(Error::Parse("give exactly one of \"default\" or \"defaults\"".into())),
                };
                let exceptions = exc
                    .into_iter()
                    .map(|(n, v)| {
                        let index = n.parse().map_err(|_| Error::Parse(format!("invalid exception index {n:?}")))?;
                        Ok((index, rational::parse(&v)?))
                    })
                    .collect::<Result<BTreeMap<u64, _>>>()?;
                normalize(defaults, exceptions)
            }
        })
    }
}

impl fmt::Display for MeasurableFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |vs: &mut dyn Iterator<Item = String>| vs.collect::<Vec<_>>().join(",");
        match self {
            MeasurableFn::PerAtom(v) => write!(f, "({})", join(&mut v.iter().map(rational::format))),
            MeasurableFn::DefaultPlusExceptions { defaults, exceptions } => {
                if defaults.len() == 1 {
                    write!(f, "(default {}", rational::format(&defaults[0]))?;
                } else {
                    write!(f, "(defaults [{}]", join(&mut defaults.iter().map(rational::format)))?;
                }
                let exc = join(&mut exceptions.iter().map(|(n, v)| format!("{n}↦{}", rational::format(v))));
                write!(f, ", {{{exc}}})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn sample() -> MRing {
        MRing::new(FieldOfSets::finite("sample", [1, 2, 3, 4], vec![vec![1], vec![2], vec![3, 4]]).unwrap())
    }

    fn pa(r: &MRing, xs: &[i64]) -> MeasurableFn {
        r.per_atom(xs.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn pointwise_ops() {
        let r = sample();
        let f = pa(&r, &[2, 0, 3]);
        assert_eq!(r.add(&f, &r.zero()).unwrap(), f);
        assert_eq!(r.mul(&f, &pa(&r, &[1, 5, 0])).unwrap(), pa(&r, &[2, 0, 0]));
        let fc = MRing::new(FieldOfSets::finite_cofinite());
        let a = fc.default_exc(int(1), [(3, int(0))]).unwrap();
        let b = fc.default_exc(int(2), [(5, int(7))]).unwrap();
        assert_eq!(fc.add(&a, &b).unwrap(), fc.default_exc(int(3), [(3, int(2)), (5, int(8))]).unwrap());
    }

    #[test]
    fn cozero_sets() {
        let r = sample();
        assert!(r.field().is_zero(&r.coz(&r.zero()).unwrap()));
        let c = r.coz(&pa(&r, &[2, 0, 3])).unwrap();
        assert_eq!(r.field().points_of(&c).unwrap(), vec![1, 3, 4]);
        let fc = MRing::new(FieldOfSets::finite_cofinite());
        let f = fc.default_exc(int(0), [(4, int(1))]).unwrap();
        assert_eq!(fc.coz(&f).unwrap(), SetElement::finite([4]));
    }

    #[test]
    fn star_examples() {
        let r = sample();
        assert_eq!(r.star(&r.zero()).unwrap(), r.one());
        let f = pa(&r, &[2, 0, 3]);
        let s = r.star(&f).unwrap();
        assert_eq!(s, r.per_atom(vec![ratio(1, 2), int(1), ratio(1, 3)]).unwrap());
        assert_eq!(r.mul(&f, &s).unwrap(), pa(&r, &[1, 0, 1]));
        let fc = MRing::new(FieldOfSets::finite_cofinite());
        let g = fc.default_exc(int(2), [(1, int(0))]).unwrap();
        assert_eq!(fc.star(&g).unwrap(), fc.default_exc(ratio(1, 2), [(1, int(1))]).unwrap());
    }

    #[test]
    fn normal_form_drops_redundant_exceptions() {
        let fc = MRing::new(FieldOfSets::finite_cofinite());
        let a = fc.default_exc(int(1), [(3, int(0))]).unwrap();
        let b = fc.default_exc(int(0), [(3, int(1))]).unwrap();
        assert_eq!(fc.add(&a, &b).unwrap(), fc.one());
        let bad = MeasurableFn::DefaultPlusExceptions { defaults: vec![int(1)], exceptions: [(2, int(1))].into() };
        assert!(fc.check(&bad).is_err());
    }

    #[test]
    fn level_sets_refined() {
        let parity = MRing::new(FieldOfSets::refined_finite_cofinite(2).unwrap());
        let f = parity.step(vec![int(3), int(0)], [(4, int(0)), (5, int(3))].into()).unwrap();
        let three = parity.level_set(&f, &int(3)).unwrap();
        for n in 0..20 {
            assert_eq!(parity.field().contains_point(&three, n).unwrap(), parity.eval(&f, n).unwrap() == int(3));
        }
    }

    #[test]
    fn wire_format() {
        let fc = MRing::new(FieldOfSets::finite_cofinite());
        let f = fc.default_exc(int(1), [(3, int(0))]).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"kind":"default_exc","default":"1","exc":{"3":"0"}}"#);
        assert_eq!(serde_json::from_str::<MeasurableFn>(&json).unwrap(), f);
        let g: MeasurableFn = serde_json::from_str(r#"{"kind":"per_atom","values":["2","0","-1/3"]}"#).unwrap();
        assert_eq!(g, MeasurableFn::PerAtom(vec![int(2), int(0), ratio(-1, 3)]));
        assert!(serde_json::from_str::<MeasurableFn>(r#"{"kind":"per_atom","values":["1/0"]}"#).is_err());
    }

    #[test]
    fn grid_enumeration() {
        let r = sample();
        let grid = [int(-1), int(0), int(1), int(2)];
        assert_eq!(r.grid_functions(&grid).unwrap().len(), 64);
    }
}
