use std::collections::BTreeMap;

use super::{FieldKind, FieldOfSets, SetElement};
use crate::{Error, Result};

/// Quotient of a field of sets by the relation "no element separates the two points".
///
/// For a finite field the reduced universe is the set of block indices and
/// the reduced field is its powerset; the finite–cofinite algebras are already
/// reduced and project identically.
#[derive(Clone, Debug)]
pub struct Reduction {
    source: FieldOfSets,
    target: FieldOfSets,
    projection: Projection,
}

#[derive(Clone, Debug)]
enum Projection {
    ToBlocks(BTreeMap<u64, u64>),
    Identity,
}

pub fn reduce(field: &FieldOfSets) -> Reduction {
    match field.kind() {
        FieldKind::FinitePartition(p) => {
            let map = p.universe().iter().map(|&x| (x, p.block_of(x).expect("covered") as u64)).collect();
            let target = FieldOfSets::powerset(format!("reduced({})", field.label()), 0..p.len() as u64)
                .expect("nonempty block set");
            Reduction { source: field.clone(), target, projection: Projection::ToBlocks(map) }
        }
        FieldKind::FiniteCofinite { .. } => {
            Reduction { source: field.clone(), target: field.clone(), projection: Projection::Identity }
        }
    }
}

impl Reduction {
    pub fn source(&self) -> &FieldOfSets {
        &self.source
    }

    pub fn target(&self) -> &FieldOfSets {
        &self.target
    }

    /// `π(x)`.
    pub fn project(&self, x: u64) -> Result<u64> {
        match &self.projection {
            Projection::ToBlocks(map) => map.get(&x).copied().ok_or(Error::OutsideUniverse(x)),
            Projection::Identity => Ok(x),
        }
    }

    /// The points of the source universe mapped to `y`.
    pub fn fibre(&self, y: u64) -> Result<Vec<u64>> {
        match &self.projection {
            Projection::ToBlocks(map) => Ok(map.iter().filter(|(_, &b)| b == y).map(|(&x, _)| x).collect()),
            Projection::Identity => Ok(vec![y]),
        }
    }

    /// Whether `π` is injective on the source universe.
    pub fn is_bijective(&self) -> bool {
        match &self.projection {
            Projection::ToBlocks(map) => {
                let mut images: Vec<u64> = map.values().copied().collect();
                images.sort_unstable();
                images.dedup();
                images.len() == map.len()
            }
            Projection::Identity => true,
        }
    }

    /// `φ(B) = π⁻¹(B)`: reduced element to source element.
    pub fn pull_back(&self, b: &SetElement) -> Result<SetElement> {
        self.target.check(b)?;
        match &self.projection {
            Projection::ToBlocks(_) => {
                let mut points = Vec::new();
                for y in self.target.points_of(b)? {
                    points.extend(self.fibre(y)?);
                }
                self.source.element_from_points(&points)
            }
            Projection::Identity => Ok(b.clone()),
        }
    }

    /// `φ⁻¹(A) = π(A)`: source element to reduced element.
    pub fn push_forward(&self, a: &SetElement) -> Result<SetElement> {
        self.source.check(a)?;
        match &self.projection {
            Projection::ToBlocks(_) => {
                let mut points = Vec::new();
                for x in self.source.points_of(a)? {
                    points.push(self.project(x)?);
                }
                points.sort_unstable();
                points.dedup();
                self.target.element_from_points(&points)
            }
            Projection::Identity => Ok(a.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_collapse_to_points() {
        let a = FieldOfSets::finite("s", [1, 2, 3, 4], vec![vec![1], vec![2], vec![3, 4]]).unwrap();
        let r = reduce(&a);
        assert_eq!(r.project(3).unwrap(), r.project(4).unwrap());
        assert_eq!(r.project(3).unwrap(), 2);
        assert_eq!(r.target().partition().unwrap().universe(), &[0, 1, 2]);
        assert!(!r.is_bijective());
        let atom = a.element_from_points(&[3, 4]).unwrap();
        let image = r.push_forward(&atom).unwrap();
        assert_eq!(r.target().points_of(&image).unwrap(), vec![2]);
        assert_eq!(r.pull_back(&image).unwrap(), atom);
    }

    #[test]
    fn reduced_field_projects_bijectively() {
        let p = FieldOfSets::powerset("P", [5, 9]).unwrap();
        assert!(reduce(&p).is_bijective());
        assert!(reduce(&FieldOfSets::finite_cofinite()).is_bijective());
    }
}
