use std::collections::{BTreeMap, HashSet};

use num_traits::Zero;
use serde::Serialize;

use super::{MRing, MeasurableFn};
use crate::boolalg::{reduce, FieldKind, Reduction, SetElement};
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// `g ∈ small` with `0 ≠ g·f ∈ small`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientWitness {
    pub g: MeasurableFn,
    /// The nonzero value of `f` that was picked.
    pub value: String,
    pub support: SetElement,
    /// `g·f`, which equals `value · g`.
    pub product: MeasurableFn,
}

impl MRing {
    /// The image of `g ∈ self` in the ring over a finer algebra.
    pub fn embed_fn(&self, big: &MRing, g: &MeasurableFn) -> Result<MeasurableFn> {
        self.field.check_embeds_in(&big.field)?;
        self.check(g)?;
        match g {
            MeasurableFn::PerAtom(_) => {
                let p = big.field.partition().expect("finite embeds in finite");
                let values =
                    p.universe().iter().map(|&x| Ok((x, self.eval(g, x)?))).collect::<Result<BTreeMap<_, _>>>()?;
                let out = p.blocks().iter().map(|b| values[&b[0]].clone()).collect();
                big.per_atom(out)
            }
            MeasurableFn::DefaultPlusExceptions { defaults, exceptions } => {
                let m = big.field.classes().expect("finite–cofinite embeds in finite–cofinite");
                let wide = (0..m).map(|r| defaults[(r % defaults.len() as u64) as usize].clone()).collect();
                big.step(wide, exceptions.clone())
            }
        }
    }

    /// The function of `self` whose image in `big` is `f`, if there is one.
    pub fn descend(&self, big: &MRing, f: &MeasurableFn) -> Result<Option<MeasurableFn>> {
        self.field.check_embeds_in(&big.field)?;
        big.check(f)?;
        match self.field.kind() {
            FieldKind::FinitePartition(p) => {
                let mut out = Vec::with_capacity(p.len());
                for block in p.blocks() {
                    let v = big.eval(f, block[0])?;
                    for &x in block {
                        if big.eval(f, x)? != v {
                            return Ok(None);
                        }
                    }
                    out.push(v);
                }
                Ok(Some(MeasurableFn::PerAtom(out)))
            }
            FieldKind::FiniteCofinite { classes } => {
                let defaults = f.defaults().expect("step function");
                let narrow: Vec<Rational> = defaults[..*classes as usize].to_vec();
                if defaults.iter().enumerate().any(|(r, v)| *v != narrow[r % *classes as usize]) {
                    return Ok(None);
                }
                Ok(Some(self.step(narrow, f.exceptions().expect("step function").clone())?))
            }
        }
    }
}

/// For `A` dense in `B` and `0 ≠ f ∈ M(X, B)`: picks a nonzero value `r` of
/// `f`, a nonzero `a ∈ A` inside `f⁻¹(r)`, and returns `g = χ_a`.
pub fn ring_of_quotients_witness(small: &MRing, big: &MRing, f: &MeasurableFn) -> Result<QuotientWitness> {
    if !small.field.is_dense_in(&big.field)? {
        return Err(Error::NotDense(format!("{} in {}", small.field.label(), big.field.label())));
    }
    let r = big.image(f)?.into_iter().find(|v| !v.is_zero()).ok_or_else(|| Error::structural("f must be nonzero"))?;
    let level = big.level_set(f, &r)?;
    let a = small
        .field
        .nonzero_below(&big.field, &level)?
        .ok_or_else(|| Error::NotDense(format!("no element below {level}")))?;
    let g = small.chi(&a)?;
    let product_big = big.mul(&small.embed_fn(big, &g)?, f)?;
    let product = small.descend(big, &product_big)?.ok_or_else(|| Error::structural("g·f left the small ring"))?;
    Ok(QuotientWitness { g, value: rational::format(&r), support: a, product })
}

/// `Φ: M(Y, B) → M(X, A)`, `Φ(f) = f ∘ π`, along the reduction of `A`.
#[derive(Clone, Debug)]
pub struct ReducedTransport {
    reduction: Reduction,
    source: MRing,
    target: MRing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransportReport {
    pub functions: usize,
    pub pairs: usize,
    pub preserves_add: bool,
    pub preserves_mul: bool,
    pub preserves_one: bool,
    pub injective: bool,
    pub surjective: bool,
    pub atoms_to_singletons: bool,
}

impl TransportReport {
    pub fn passes(&self) -> bool {
        self.preserves_add
            && self.preserves_mul
            && self.preserves_one
            && self.injective
            && self.surjective
            && self.atoms_to_singletons
    }
}

impl ReducedTransport {
    pub fn new(ring: &MRing) -> Self {
        let reduction = reduce(&ring.field);
        let target = MRing::new(reduction.target().clone());
        ReducedTransport { reduction, source: ring.clone(), target }
    }

    pub fn reduction(&self) -> &Reduction {
        &self.reduction
    }

    /// `M(X, A)`.
    pub fn source(&self) -> &MRing {
        &self.source
    }

    /// `M(Y, B)`.
    pub fn target(&self) -> &MRing {
        &self.target
    }

    /// `Φ(f) = f ∘ π`.
    pub fn phi(&self, f: &MeasurableFn) -> Result<MeasurableFn> {
        self.target.check(f)?;
        match self.source.field.partition() {
            Some(p) => {
                let values = p
                    .universe()
                    .iter()
                    .map(|&x| Ok((x, self.target.eval(f, self.reduction.project(x)?)?)))
                    .collect::<Result<BTreeMap<_, _>>>()?;
                self.source.from_point_values(&values)
            }
            None => Ok(f.clone()),
        }
    }

    /// `Φ⁻¹(h)`: the value at `y` is the value of `h` on the fibre over `y`.
    pub fn phi_inverse(&self, h: &MeasurableFn) -> Result<MeasurableFn> {
        self.source.check(h)?;
        match self.target.field.partition() {
            Some(p) => {
                let values = p
                    .universe()
                    .iter()
                    .map(|&y| Ok((y, self.source.eval(h, self.reduction.fibre(y)?[0])?)))
                    .collect::<Result<BTreeMap<_, _>>>()?;
                self.target.from_point_values(&values)
            }
            None => Ok(h.clone()),
        }
    }

    /// Exhaustive check over all per-atom functions with values in `grid`.
    pub fn verify(&self, grid: &[Rational]) -> Result<TransportReport> {
        let fs = self.target.grid_functions(grid)?;
        let images: Vec<MeasurableFn> = fs.iter().map(|f| self.phi(f)).collect::<Result<_>>()?;
        let (mut preserves_add, mut preserves_mul) = (true, true);
        for (f, pf) in fs.iter().zip(&images) {
            for (g, pg) in fs.iter().zip(&images) {
                preserves_add &= self.phi(&self.target.add(f, g)?)? == self.source.add(pf, pg)?;
                preserves_mul &= self.phi(&self.target.mul(f, g)?)? == self.source.mul(pf, pg)?;
            }
        }
        let distinct: HashSet<&MeasurableFn> = images.iter().collect();
        let injective = distinct.len() == fs.len();
        let mut surjective = true;
        for h in self.source.grid_functions(grid)? {
            surjective &= self.phi(&self.phi_inverse(&h)?)? == h;
        }
        let mut atoms_to_singletons = true;
        if let Some(p) = self.source.field.partition() {
            for i in 0..p.len() {
                let image = self.reduction.push_forward(&SetElement::Blocks(1 << i))?;
                atoms_to_singletons &= self.target.field.points_of(&image)?.len() == 1;
            }
        }
        Ok(TransportReport {
            functions: fs.len(),
            pairs: fs.len() * fs.len(),
            preserves_add,
            preserves_mul,
            preserves_one: self.phi(&self.target.one())? == self.source.one(),
            injective,
            surjective,
            atoms_to_singletons,
        })
    }
}
