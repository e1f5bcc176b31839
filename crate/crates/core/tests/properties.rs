//! Randomized invariants across the four group families.

use std::collections::HashMap;

use horofunc::cayley::Ball;
use horofunc::convex::{convex_hull, in_convex_hull, ratio, Q};
use horofunc::group::lattice;
use horofunc::{catalog, Element, GeneratingSet, Group};
use proptest::prelude::*;

fn families() -> Vec<(&'static str, Group, GeneratingSet)> {
    let mut out = Vec::new();
    for (name, (g, s)) in [
        ("cylinder", catalog::cylinder(5)),
        ("p4", catalog::p4()),
        ("s3", catalog::s3()),
        ("lamplighter", catalog::lamplighter()),
    ] {
        out.push((name, g, s));
    }
    // A non-split extension: Z over its index-2 sublattice, (0|1)^2 = (1|0).
    let spec = horofunc::GroupSpec::VAbExtension {
        rank: 1,
        table: horofunc::GroupSpec::cyclic_table(2),
        actions: vec![vec![vec![1]], vec![vec![1]]],
        cocycle: vec![vec![vec![0], vec![0]], vec![vec![0], vec![1]]],
    };
    let g = Group::new(spec).unwrap();
    let s = g
        .symmetric_generating_set(&[Element::Extension { v: vec![0], q: 1 }], None)
        .unwrap();
    out.push(("twisted", g, s));
    out
}

/// Random element from raw integers in the family's layout.
fn element(g: &Group, raw: &[i64]) -> Element {
    match g.spec() {
        horofunc::GroupSpec::FgAbelian { rank, torsion } => g.element_from_ints(&raw[..rank + torsion.len()]).unwrap(),
        horofunc::GroupSpec::VAbExtension { rank, table, .. } => {
            let mut v = raw[..*rank].to_vec();
            v.push(raw[*rank].rem_euclid(table.len() as i64));
            g.element_from_ints(&v).unwrap()
        }
        horofunc::GroupSpec::FiniteGroup { table } => g.element_from_ints(&[raw[0].rem_euclid(table.len() as i64)]).unwrap(),
        horofunc::GroupSpec::LamplighterZ2 => g.element_from_ints(&raw[..4]).unwrap(),
    }
}

fn raw() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn group_axioms(a in raw(), b in raw(), c in raw()) {
        for (name, g, _) in families() {
            let (a, b, c) = (element(&g, &a), element(&g, &b), element(&g, &c));
            let e = g.identity();
            prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)), "{}", name);
            prop_assert_eq!(g.mul(&a, &e), a.clone());
            prop_assert_eq!(g.mul(&e, &a), a.clone());
            prop_assert_eq!(g.inverse(&g.inverse(&a)), a.clone());
            prop_assert_eq!(g.inverse(&g.mul(&a, &b)), g.mul(&g.inverse(&b), &g.inverse(&a)));
            prop_assert!(g.is_identity(&g.mul(&a, &g.inverse(&a))));
        }
    }

    #[test]
    fn text_round_trip(a in raw()) {
        for (_, g, _) in families() {
            let x = element(&g, &a);
            prop_assert_eq!(g.parse_element(&x.to_string()).unwrap(), x.clone());
            let json = serde_json::to_string(&x).unwrap();
            prop_assert_eq!(serde_json::from_str::<Element>(&json).unwrap(), x);
        }
    }

    #[test]
    fn conjugation_matches_action(gr in raw(), v in prop::collection::vec(-6i64..=6, 2)) {
        let (g, _) = catalog::p4();
        let h = element(&g, &gr);
        let x = g.lattice_element(v.clone());
        let conj = g.mul(&g.mul(&h, &x), &g.inverse(&h));
        let q = match &h { Element::Extension { q, .. } => *q, _ => unreachable!() };
        prop_assert_eq!(conj, g.lattice_element(lattice::mat_vec(g.action(q), &v)));
    }
}

/// Word norms by breadth-first search over a hash map.
fn oracle(g: &Group, s: &GeneratingSet, radius: u32) -> HashMap<Element, u32> {
    let mut dist = HashMap::from([(g.identity(), 0)]);
    let mut frontier = vec![g.identity()];
    for d in 1..=radius {
        let mut next = Vec::new();
        for x in &frontier {
            for t in s.elements() {
                let y = g.mul(x, t);
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), d);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    dist
}

#[test]
fn ball_matches_oracle_and_left_invariance() {
    for (name, g, s) in families() {
        let ball = Ball::grow(&g, &s, 8).unwrap();
        let o = oracle(&g, &s, 8);
        assert_eq!(ball.len(), o.len(), "{name}");
        for (x, d) in &o {
            assert_eq!(ball.norm(x), Some(*d), "{name} {x}");
        }
        let inner = &ball.elements()[..ball.count_within(2)];
        for z in inner {
            for x in inner {
                for y in inner {
                    let (zx, zy) = (g.mul(z, x), g.mul(z, y));
                    assert_eq!(ball.distance(&zx, &zy).unwrap(), ball.distance(x, y).unwrap(), "{name}");
                }
            }
        }
    }
}

#[test]
fn hull_descriptions_agree() {
    let pts: Vec<Vec<Q>> = [(3, 0), (0, 2), (-2, -1), (1, 1), (-1, 2), (0, 0), (2, -2)]
        .iter()
        .map(|&(a, b)| vec![ratio(a, 1), ratio(b, 1)])
        .collect();
    let p = convex_hull(&pts, 3).unwrap();
    for v in &pts {
        assert!(p.contains(v));
    }
    for a in -8..=8 {
        for b in -8..=8 {
            let x = vec![ratio(a, 3), ratio(b, 3)];
            assert_eq!(p.contains(&x), in_convex_hull(&pts, &x), "({a}/3, {b}/3)");
        }
    }
}
