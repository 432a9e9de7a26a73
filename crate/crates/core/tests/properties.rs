use std::collections::BTreeSet;

use measfield::boolalg::TaggedSet;
use measfield::injectivity::{random_orthogonal_family, separate, verify_separator, SeparationVerdict};
use measfield::{FieldOfSets, MRing, MeasurableFn, OrderIdeal, SetElement};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A field on `{0..n}` whose blocks are the classes of `labels`.
fn field_strategy() -> impl Strategy<Value = FieldOfSets> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(0u64..n as u64, n).prop_map(move |labels| {
            let mut blocks: Vec<Vec<u64>> = Vec::new();
            let mut seen: Vec<u64> = Vec::new();
            for (x, l) in labels.iter().enumerate() {
                match seen.iter().position(|s| s == l) {
                    Some(i) => blocks[i].push(x as u64),
                    None => {
                        seen.push(*l);
                        blocks.push(vec![x as u64]);
                    }
                }
            }
            FieldOfSets::finite("p", 0..n as u64, blocks).unwrap()
        })
    })
}

fn finite_element(field: &FieldOfSets, bits: u64) -> SetElement {
    SetElement::Blocks(bits & ((1 << field.atom_count().unwrap()) - 1))
}

fn tagged(modulus: u64, classes: u64, part: BTreeSet<u64>) -> SetElement {
    SetElement::Tagged(TaggedSet { modulus, cofinite_classes: classes & ((1 << modulus) - 1), part })
}

fn tagged_strategy(modulus: u64) -> impl Strategy<Value = SetElement> {
    (any::<u64>(), prop::collection::btree_set(0u64..24, 0..6)).prop_map(move |(c, p)| tagged(modulus, c, p))
}

fn boolean_laws(f: &FieldOfSets, a: &SetElement, b: &SetElement, c: &SetElement) {
    let j = |x: &SetElement, y: &SetElement| f.join(x, y).unwrap();
    let m = |x: &SetElement, y: &SetElement| f.meet(x, y).unwrap();
    let n = |x: &SetElement| f.complement(x).unwrap();
    assert_eq!(j(a, b), j(b, a));
    assert_eq!(m(a, b), m(b, a));
    assert_eq!(j(a, &j(b, c)), j(&j(a, b), c));
    assert_eq!(m(a, &j(b, c)), j(&m(a, b), &m(a, c)));
    assert_eq!(j(a, &m(b, c)), m(&j(a, b), &j(a, c)));
    assert_eq!(n(&j(a, b)), m(&n(a), &n(b)));
    assert_eq!(n(&n(a)), *a);
    assert!(f.is_one(&j(a, &n(a))));
    assert!(f.is_zero(&m(a, &n(a))));
    assert_eq!(f.le(a, b).unwrap(), m(a, b) == *a);
}

/// Agreement of element operations with point sets on `0..limit`.
fn pointwise(f: &FieldOfSets, a: &SetElement, b: &SetElement, limit: u64) {
    let j = f.join(a, b).unwrap();
    let m = f.meet(a, b).unwrap();
    let n = f.complement(a).unwrap();
    for x in 0..limit {
        let (ia, ib) = (f.contains_point(a, x).unwrap(), f.contains_point(b, x).unwrap());
        assert_eq!(f.contains_point(&j, x).unwrap(), ia || ib);
        assert_eq!(f.contains_point(&m, x).unwrap(), ia && ib);
        assert_eq!(f.contains_point(&n, x).unwrap(), !ia);
    }
}

fn random_fns(ring: &MRing, seed: u64, count: usize) -> Vec<MeasurableFn> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| ring.random_fn(&mut rng)).collect()
}

fn ring_strategy() -> impl Strategy<Value = MRing> {
    prop_oneof![
        field_strategy().prop_map(MRing::new),
        (1u64..=3).prop_map(|m| MRing::new(FieldOfSets::refined_finite_cofinite(m).unwrap())),
    ]
}

proptest! {
    #[test]
    fn finite_boolean_laws(f in field_strategy(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (finite_element(&f, a), finite_element(&f, b), finite_element(&f, c));
        boolean_laws(&f, &a, &b, &c);
        pointwise(&f, &a, &b, f.partition().unwrap().universe().len() as u64);
    }

    #[test]
    fn cofinite_boolean_laws(m in 1u64..=3, a in tagged_strategy(3), b in tagged_strategy(3), c in tagged_strategy(3)) {
        let f = FieldOfSets::refined_finite_cofinite(m).unwrap();
        let fix = |e: SetElement| match e {
            SetElement::Tagged(t) => tagged(m, t.cofinite_classes, t.part),
            other => other,
        };
        let (a, b, c) = (fix(a), fix(b), fix(c));
        boolean_laws(&f, &a, &b, &c);
        pointwise(&f, &a, &b, 30);
    }

    #[test]
    fn disjointify_keeps_union(f in field_strategy(), bits in prop::collection::vec(any::<u64>(), 0..6)) {
        let family: Vec<SetElement> = bits.into_iter().map(|b| finite_element(&f, b)).collect();
        let out = f.disjointify(&family).unwrap();
        prop_assert_eq!(f.join_all(&out).unwrap(), f.join_all(&family).unwrap());
        for (i, a) in out.iter().enumerate() {
            prop_assert!(f.le(a, &family[i]).unwrap());
            for b in &out[i + 1..] {
                prop_assert!(f.disjoint(a, b).unwrap());
            }
        }
    }

    #[test]
    fn ring_axioms(ring in ring_strategy(), seed in any::<u64>()) {
        let fs = random_fns(&ring, seed, 3);
        let (f, g, h) = (&fs[0], &fs[1], &fs[2]);
        let r = &ring;
        prop_assert_eq!(r.add(f, g).unwrap(), r.add(g, f).unwrap());
        prop_assert_eq!(r.mul(f, g).unwrap(), r.mul(g, f).unwrap());
        prop_assert_eq!(r.mul(f, &r.mul(g, h).unwrap()).unwrap(), r.mul(&r.mul(f, g).unwrap(), h).unwrap());
        prop_assert_eq!(
            r.mul(f, &r.add(g, h).unwrap()).unwrap(),
            r.add(&r.mul(f, g).unwrap(), &r.mul(f, h).unwrap()).unwrap()
        );
        prop_assert_eq!(r.mul(f, &r.one()).unwrap(), f.clone());
        prop_assert!(r.is_zero(&r.add(f, &r.neg(f).unwrap()).unwrap()));
        for x in 0..20u64 {
            let Ok(v) = r.eval(&r.mul(f, g).unwrap(), x) else { break };
            prop_assert_eq!(v, r.eval(f, x).unwrap() * r.eval(g, x).unwrap());
        }
    }

    #[test]
    fn regularity(ring in ring_strategy(), seed in any::<u64>()) {
        for f in random_fns(&ring, seed, 4) {
            let star = ring.star(&f).unwrap();
            prop_assert_eq!(ring.mul(&ring.square(&f).unwrap(), &star).unwrap(), f.clone());
            prop_assert_eq!(ring.mul(&f, &star).unwrap(), ring.chi(&ring.coz(&f).unwrap()).unwrap());
            prop_assert!(ring.is_unit(&star).unwrap());
            let chi = ring.chi(&ring.coz(&f).unwrap()).unwrap();
            prop_assert_eq!(ring.mul(&ring.star(&star).unwrap(), &chi).unwrap(), f.clone());
        }
    }

    #[test]
    fn perp_is_antitone_and_disjoint(f in field_strategy(), a in any::<u64>(), b in any::<u64>()) {
        let (a, b) = (finite_element(&f, a), finite_element(&f, b));
        let small = OrderIdeal::principal(&f, f.meet(&a, &b).unwrap()).unwrap();
        let big = OrderIdeal::principal(&f, a).unwrap();
        prop_assert!(small.is_subideal(&big).unwrap());
        prop_assert!(big.perp().is_subideal(&small.perp()).unwrap());
        for e in f.elements().unwrap() {
            if big.contains(&e).unwrap() && big.perp().contains(&e).unwrap() {
                prop_assert!(f.is_zero(&e));
            }
        }
        prop_assert!(big.perp().perp() == big);
    }

    #[test]
    fn quotient_classes_are_well_defined(f in field_strategy(), s in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let ideal = OrderIdeal::principal(&f, finite_element(&f, s)).unwrap();
        prop_assume!(ideal.is_proper());
        let q = ideal.quotient().unwrap();
        let (a, b) = (finite_element(&f, a), finite_element(&f, b));
        // a ~ b iff their symmetric difference lies in the ideal
        let related = ideal.contains(&f.sym_diff(&a, &b).unwrap()).unwrap();
        prop_assert_eq!(q.class_of(&a).unwrap() == q.class_of(&b).unwrap(), related);
        prop_assert_eq!(q.equivalent(&a, &b).unwrap(), related);
        prop_assert_eq!(q.class_of(&f.join(&a, &b).unwrap()).unwrap(), q.join(&q.class_of(&a).unwrap(), &q.class_of(&b).unwrap()).unwrap());
        prop_assert_eq!(q.class_of(&f.complement(&a).unwrap()).unwrap(), q.complement(&q.class_of(&a).unwrap()).unwrap());
    }

    #[test]
    fn separators_are_sound(f in field_strategy(), seed in any::<u64>()) {
        let ring = MRing::new(f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let family = random_orthogonal_family(&ring, &mut rng).unwrap();
        let SeparationVerdict::Separator { a } = separate(&ring, &family).unwrap() else {
            panic!("finite rings separate every orthogonal family");
        };
        prop_assert_eq!(verify_separator(&ring, &family, &a).unwrap(), None);
    }
}
