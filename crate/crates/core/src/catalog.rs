//! Ready-made groups with generating sets used throughout the examples and tests.

use crate::group::{lattice, Element, GeneratingSet, Group, GroupSpec};

fn ab(v: &[i64]) -> Element {
    Element::Abelian(v.to_vec())
}

fn build(spec: GroupSpec, gens: &[Element]) -> (Group, GeneratingSet) {
    let g = Group::new(spec).expect("catalog spec is valid");
    let s = g.symmetric_generating_set(gens, None).expect("catalog generators generate");
    (g, s)
}

/// `Z` with `S = {+1, -1}`.
pub fn line() -> (Group, GeneratingSet) {
    build(GroupSpec::FgAbelian { rank: 1, torsion: vec![] }, &[ab(&[1])])
}

/// `Z^2` with the standard generators, ordered `e1, -e1, e2, -e2`.
pub fn z2_standard() -> (Group, GeneratingSet) {
    build(
        GroupSpec::FgAbelian { rank: 2, torsion: vec![] },
        &[ab(&[1, 0]), ab(&[0, 1])],
    )
}

/// The cylinder `Z x Z/n` with `S = {(+-1,0), (+-1,+-1)}`.
pub fn cylinder(n: i64) -> (Group, GeneratingSet) {
    build(
        GroupSpec::FgAbelian { rank: 1, torsion: vec![n] },
        &[ab(&[1, 0]), ab(&[1, 1]), ab(&[1, n - 1])],
    )
}

/// The cylinder `Z x Z/n` with `S = {(+-1,0), (1,1), (-1,-1)}`.
pub fn cylinder_diagonal(n: i64) -> (Group, GeneratingSet) {
    build(
        GroupSpec::FgAbelian { rank: 1, torsion: vec![n] },
        &[ab(&[1, 0]), ab(&[1, 1])],
    )
}

/// The cylinder `Z x Z/n` written as an extension of `H = Z` by `Q = Z/n`,
/// with the generators of [`cylinder`].
pub fn cylinder_extension(n: usize) -> (Group, GeneratingSet) {
    let spec = GroupSpec::split_extension(1, GroupSpec::cyclic_table(n), vec![vec![vec![1]]; n]);
    let ext = |v: i64, q: usize| Element::Extension { v: vec![v], q };
    build(spec, &[ext(1, 0), ext(1, 1), ext(1, n - 1)])
}

/// `Z^2` as an extension with trivial quotient, standard generators.
pub fn z2_extension() -> (Group, GeneratingSet) {
    let ext = |v: [i64; 2]| Element::Extension { v: v.to_vec(), q: 0 };
    build(GroupSpec::free_abelian_extension(2), &[ext([1, 0]), ext([0, 1])])
}

/// `Z^2 x| Z/4` with `Z/4` acting by quarter turns; generators are the
/// standard lattice generators and the rotation.
pub fn p4() -> (Group, GeneratingSet) {
    let rot = vec![vec![0, -1], vec![1, 0]];
    let mut actions = vec![lattice::identity(2)];
    for _ in 1..4 {
        let last = actions.last().expect("nonempty").clone();
        actions.push(lattice::mat_mul(&rot, &last));
    }
    let spec = GroupSpec::split_extension(2, GroupSpec::cyclic_table(4), actions);
    let ext = |v: [i64; 2], q: usize| Element::Extension { v: v.to_vec(), q };
    build(spec, &[ext([1, 0], 0), ext([0, 1], 0), ext([0, 0], 1)])
}

/// `Z x Z/3` with `S = F S1 F` minus the identity, where `F = {0} x Z/3`
/// and `S1 = {(+-1,0), (0,+-1)}`.
pub fn fsf() -> (Group, GeneratingSet) {
    let g = Group::new(GroupSpec::FgAbelian { rank: 1, torsion: vec![3] }).expect("valid");
    let f: Vec<Element> = (0..3).map(|j| ab(&[0, j])).collect();
    let s1 = [ab(&[1, 0]), ab(&[-1, 0]), ab(&[0, 1]), ab(&[0, 2])];
    let mut gens = Vec::new();
    for a in &f {
        for s in &s1 {
            for b in &f {
                let x = g.mul(&g.mul(a, s), b);
                if !g.is_identity(&x) && !gens.contains(&x) {
                    gens.push(x);
                }
            }
        }
    }
    gens.sort();
    let s = g.symmetric_generating_set(&gens, None).expect("generates");
    (g, s)
}

/// The finite subgroup `F = {0} x Z/3` of [`fsf`].
pub fn fsf_subgroup() -> Vec<Element> {
    (0..3).map(|j| ab(&[0, j])).collect()
}

/// The lamplighter with `S = {t, t^-1, a}` (shift and the lamp at the origin).
pub fn lamplighter() -> (Group, GeneratingSet) {
    build(
        GroupSpec::LamplighterZ2,
        &[
            Element::Lamp { support: vec![], shift: 1 },
            Element::Lamp { support: vec![0], shift: 0 },
        ],
    )
}

/// The symmetric group `S_3` as a multiplication table, generated by two transpositions.
pub fn s3() -> (Group, GeneratingSet) {
    // Elements as permutations of {0,1,2} in a fixed order; index 0 is the identity.
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("perm");
    let table = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| {
                    let (a, b) = (perms[i], perms[j]);
                    idx([a[b[0]], a[b[1]], a[b[2]]])
                })
                .collect()
        })
        .collect();
    build(GroupSpec::FiniteGroup { table }, &[Element::Finite(1), Element::Finite(2)])
}
