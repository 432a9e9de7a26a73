//! Wire formats for instances, ideals and functions.
//!
//! Instances: `{"kind":"finite","universe":[..],"blocks":[[..],..]}` or
//! `{"kind":"finite_cofinite"}` with an optional `"classes"` refinement.
//! Ideals: `{"ideal":{"kind":"generated","gens":[..]}}`, where each
//! generator is a point list or an element, or `{"ideal":{"kind":"all_finite"}}`
//! or `{"ideal":{"kind":"point","x":n}}`. Functions: `{"fn":{..}}`.
//!
//! Parse errors carry the line and column reported by `serde_json`.

use serde::{Deserialize, Serialize};

use crate::boolalg::{FieldKind, FieldOfSets, SetElement};
use crate::ideals::{IdealSpec, OrderIdeal};
use crate::mring::{MRing, MeasurableFn};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceSpec {
    Finite {
        universe: Vec<u64>,
        blocks: Vec<Vec<u64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    FiniteCofinite {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        classes: Option<u64>,
    },
}

impl InstanceSpec {
    pub fn build(&self) -> Result<FieldOfSets> {
        match self {
            InstanceSpec::Finite { universe, blocks, label } => FieldOfSets::finite(
                label.clone().unwrap_or_else(|| "X".into()),
                universe.iter().copied(),
                blocks.clone(),
            ),
            InstanceSpec::FiniteCofinite { classes } => FieldOfSets::refined_finite_cofinite(classes.unwrap_or(1)),
        }
    }

    pub fn of_field(field: &FieldOfSets) -> Self {
        match field.kind() {
            FieldKind::FinitePartition(p) => InstanceSpec::Finite {
                universe: p.universe().to_vec(),
                blocks: p.blocks().to_vec(),
                label: Some(field.label().to_string()),
            },
            FieldKind::FiniteCofinite { classes } => {
                InstanceSpec::FiniteCofinite { classes: (*classes != 1).then_some(*classes) }
            }
        }
    }
}

/// A generator: either the points of a set or an element in wire form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Generator {
    Points(Vec<u64>),
    Element(SetElement),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum IdealDto {
    Generated { gens: Vec<Generator> },
    AllFinite,
    Point { x: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDoc {
    pub ideal: IdealDto,
}

impl IdealDto {
    pub fn build(&self, field: &FieldOfSets) -> Result<OrderIdeal> {
        match self {
            IdealDto::Generated { gens } => {
                let gens = gens
                    .iter()
                    .map(|g| match g {
                        Generator::Points(points) => field.element_from_points(points),
                        Generator::Element(a) => field.check(a).map(|()| a.clone()),
                    })
                    .collect::<Result<Vec<_>>>()?;
                OrderIdeal::generated(field, &gens)
            }
            IdealDto::AllFinite => OrderIdeal::all_finite(field),
            IdealDto::Point { x } => OrderIdeal::point(field, *x),
        }
    }

    pub fn of_ideal(ideal: &OrderIdeal) -> Self {
        match ideal.spec() {
            IdealSpec::Generated(s) => IdealDto::Generated { gens: vec![Generator::Element(s.clone())] },
            IdealSpec::AllFinite => IdealDto::AllFinite,
            IdealSpec::PointIdeal(x) => IdealDto::Point { x: *x },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FnDoc {
    #[serde(rename = "fn")]
    pub function: MeasurableFn,
}

fn from_text<T: for<'de> Deserialize<'de>>(what: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn parse_instance(text: &str) -> Result<FieldOfSets> {
    from_text::<InstanceSpec>("instance", text)?.build()
}

pub fn parse_ideal(field: &FieldOfSets, text: &str) -> Result<OrderIdeal> {
    from_text::<IdealDoc>("ideal", text)?.ideal.build(field)
}

pub fn parse_fn(ring: &MRing, text: &str) -> Result<MeasurableFn> {
    let f = from_text::<FnDoc>("function", text)?.function;
    ring.check(&f)?;
    Ok(f)
}

pub fn parse_element(field: &FieldOfSets, text: &str) -> Result<SetElement> {
    let a: SetElement = from_text("element", text)?;
    field.check(&a)?;
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn instances_round_trip() {
        let field = parse_instance(r#"{"kind":"finite","universe":[1,2,3,4],"blocks":[[1],[2],[3,4]]}"#).unwrap();
        assert_eq!(field.atom_count(), Some(3));
        let spec = InstanceSpec::of_field(&field);
        assert!(spec.build().unwrap().same_algebra(&field));
        let fc = parse_instance(r#"{"kind":"finite_cofinite"}"#).unwrap();
        assert_eq!(fc.classes(), Some(1));
        assert_eq!(serde_json::to_string(&InstanceSpec::of_field(&fc)).unwrap(), r#"{"kind":"finite_cofinite"}"#);
    }

    #[test]
    fn parse_errors_carry_location() {
        let Err(Error::Parse(msg)) = parse_instance("{\"kind\":\"finite\",\n \"universe\": [1,}") else { panic!() };
        assert!(msg.contains("line 2"), "{msg}");
        assert!(matches!(parse_instance(r#"{"kind":"torus"}"#), Err(Error::Parse(_))));
        assert!(parse_instance(r#"{"kind":"finite","universe":[1,2],"blocks":[[1]]}"#).is_err());
    }

    #[test]
    fn ideals() {
        let field = FieldOfSets::finite("s", [1, 2, 3, 4], vec![vec![1], vec![2], vec![3, 4]]).unwrap();
        let i = parse_ideal(&field, r#"{"ideal":{"kind":"generated","gens":[[1],[3,4]]}}"#).unwrap();
        assert_eq!(i.support(), Some(SetElement::Blocks(0b101)));
        let j = parse_ideal(&field, r#"{"ideal":{"kind":"generated","gens":[{"blocks":[0,2]}]}}"#).unwrap();
        assert_eq!(i, j);
        assert!(parse_ideal(&field, r#"{"ideal":{"kind":"generated","gens":[[3]]}}"#).is_err());
        let fc = FieldOfSets::finite_cofinite();
        assert_eq!(parse_ideal(&fc, r#"{"ideal":{"kind":"all_finite"}}"#).unwrap().support(), None);
        let p = parse_ideal(&fc, r#"{"ideal":{"kind":"point","x":3}}"#).unwrap();
        assert!(!p.contains(&SetElement::finite([3])).unwrap());
        let back = IdealDto::of_ideal(&i).build(&field).unwrap();
        assert_eq!(back, i);
    }

    #[test]
    fn functions() {
        let ring = MRing::new(FieldOfSets::finite_cofinite());
        let f = parse_fn(&ring, r#"{"fn":{"kind":"default_exc","default":"1","exc":{"3":"0"}}}"#).unwrap();
        assert_eq!(f, ring.default_exc(int(1), [(3, int(0))]).unwrap());
        let finite = MRing::new(FieldOfSets::powerset("P", [1, 2]).unwrap());
        assert!(parse_fn(&finite, r#"{"fn":{"kind":"per_atom","values":["2","0","3"]}}"#).is_err());
    }
}
