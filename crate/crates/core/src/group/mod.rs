//! Exact group elements and validated group specifications.
//!
//! Four computable families are supported: finitely generated abelian
//! groups, extensions of `Z^d` by a finite group, finite groups given by
//! a multiplication table, and the lamplighter `Z/2 wr Z`. Every family
//! has canonical element forms, so equality and hashing are exact.

mod element;
pub mod lattice;

use std::collections::VecDeque;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use element::{Element, ParseElementError};
pub use lattice::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not a group: {0}")]
    TableNotGroup(String),
    #[error("cocycle identity fails: {0}")]
    BadCocycle(String),
    #[error("action matrix for quotient element {q} is not unimodular (det {det})")]
    NonUnimodularAction { q: usize, det: i128 },
    #[error("malformed group specification: {0}")]
    Malformed(String),
    #[error("element {0} does not belong to this group")]
    GroupMismatch(String),
    #[error("identity element {0} cannot be a generator")]
    IdentityGenerator(String),
    #[error("generators do not generate the group: {0}")]
    DoesNotGenerate(String),
}

/// Declarative description of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GroupSpec {
    /// `Z^rank x Z/t_1 x ... x Z/t_k`.
    FgAbelian { rank: usize, torsion: Vec<i64> },
    /// Extension `1 -> Z^rank -> G -> Q -> 1` with `(v,q)(v',q') = (v + A_q v' + c(q,q'), qq')`.
    VAbExtension {
        rank: usize,
        table: Vec<Vec<usize>>,
        actions: Vec<IntMatrix>,
        cocycle: Vec<Vec<Vec<i64>>>,
    },
    FiniteGroup { table: Vec<Vec<usize>> },
    LamplighterZ2,
}

impl GroupSpec {
    /// Cyclic group table `Z/n`.
    pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
    }

    /// Split extension `Z^rank x| Q` with zero cocycle.
    pub fn split_extension(rank: usize, table: Vec<Vec<usize>>, actions: Vec<IntMatrix>) -> Self {
        let order = table.len();
        GroupSpec::VAbExtension {
            rank,
            table,
            actions,
            cocycle: vec![vec![vec![0; rank]; order]; order],
        }
    }

    /// `Z^rank` written as an extension with trivial quotient.
    pub fn free_abelian_extension(rank: usize) -> Self {
        Self::split_extension(rank, vec![vec![0]], vec![lattice::identity(rank)])
    }
}

#[derive(Clone, Debug)]
struct FiniteTable {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteTable {
    fn new(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::TableNotGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::TableNotGroup(format!("row {i} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::TableNotGroup(format!("row {i} is not a permutation")));
                }
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if std::mem::replace(&mut seen[row[j]], true) {
                    return Err(GroupError::TableNotGroup(format!("column {j} is not a permutation")));
                }
            }
        }
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return Err(GroupError::TableNotGroup(format!(
                    "index 0 is not a two-sided identity (fails at {i})"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::TableNotGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|a| table[a].iter().position(|&x| x == 0).expect("latin square"))
            .collect();
        Ok(FiniteTable { table, inverse })
    }

    fn order(&self) -> usize {
        self.table.len()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

#[derive(Clone, Debug)]
struct Extension {
    rank: usize,
    quotient: FiniteTable,
    actions: Vec<IntMatrix>,
    cocycle: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug)]
enum Kind {
    Abelian { rank: usize, torsion: Vec<i64> },
    Extension(Extension),
    Finite(FiniteTable),
    Lamplighter,
}

/// A validated group handle. Cheap to clone; all operations are pure.
#[derive(Clone, Debug)]
pub struct Group {
    spec: GroupSpec,
    kind: Kind,
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sym_diff_shifted(a: &[i64], b: &[i64], shift: i64) -> Vec<i64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let bj = b.get(j).map(|x| x + shift);
        match (a.get(i), bj) {
            (Some(&x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(&x), Some(y)) if x < y => {
                out.push(x);
                i += 1;
            }
            (Some(_), Some(y)) | (None, Some(y)) => {
                out.push(y);
                j += 1;
            }
            (Some(&x), None) => {
                out.push(x);
                i += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

impl Group {
    /// Validates `spec` eagerly and returns a group handle.
    pub fn new(spec: GroupSpec) -> Result<Self, GroupError> {
        let kind = match &spec {
            GroupSpec::FgAbelian { rank, torsion } => {
                if let Some(t) = torsion.iter().find(|&&t| t < 2) {
                    return Err(GroupError::Malformed(format!("torsion order {t} < 2")));
                }
                Kind::Abelian {
                    rank: *rank,
                    torsion: torsion.clone(),
                }
            }
            GroupSpec::FiniteGroup { table } => Kind::Finite(FiniteTable::new(table.clone())?),
            GroupSpec::LamplighterZ2 => Kind::Lamplighter,
            GroupSpec::VAbExtension {
                rank,
                table,
                actions,
                cocycle,
            } => Kind::Extension(Self::validate_extension(*rank, table, actions, cocycle)?),
        };
        Ok(Group { spec, kind })
    }

    fn validate_extension(
        rank: usize,
        table: &[Vec<usize>],
        actions: &[IntMatrix],
        cocycle: &[Vec<Vec<i64>>],
    ) -> Result<Extension, GroupError> {
        if rank == 0 {
            return Err(GroupError::Malformed("extension rank must be at least 1".into()));
        }
        let quotient = FiniteTable::new(table.to_vec())?;
        let n = quotient.order();
        if actions.len() != n {
            return Err(GroupError::Malformed(format!(
                "expected {n} action matrices, got {}",
                actions.len()
            )));
        }
        for (q, m) in actions.iter().enumerate() {
            if m.len() != rank || m.iter().any(|r| r.len() != rank) {
                return Err(GroupError::Malformed(format!("action {q} is not {rank}x{rank}")));
            }
            let det = lattice::determinant(m);
            if det.abs() != 1 {
                return Err(GroupError::NonUnimodularAction { q, det });
            }
        }
        if actions[0] != lattice::identity(rank) {
            return Err(GroupError::BadCocycle("action of the identity must be the identity matrix".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if lattice::mat_mul(&actions[a], &actions[b]) != actions[quotient.mul(a, b)] {
                    return Err(GroupError::BadCocycle(format!(
                        "actions are not a homomorphism at ({a},{b})"
                    )));
                }
            }
        }
        if cocycle.len() != n
            || cocycle
                .iter()
                .any(|row| row.len() != n || row.iter().any(|v| v.len() != rank))
        {
            return Err(GroupError::Malformed(format!("cocycle must be {n}x{n} vectors of length {rank}")));
        }
        for q in 0..n {
            if cocycle[0][q].iter().any(|&x| x != 0) || cocycle[q][0].iter().any(|&x| x != 0) {
                return Err(GroupError::BadCocycle(format!("cocycle not normalized at {q}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = add(
                        &lattice::mat_vec(&actions[a], &cocycle[b][c]),
                        &cocycle[a][quotient.mul(b, c)],
                    );
                    let rhs = add(&cocycle[a][b], &cocycle[quotient.mul(a, b)][c]);
                    if lhs != rhs {
                        return Err(GroupError::BadCocycle(format!("identity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(Extension {
            rank,
            quotient,
            actions: actions.to_vec(),
            cocycle: cocycle.to_vec(),
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn identity(&self) -> Element {
        match &self.kind {
            Kind::Abelian { rank, torsion } => Element::Abelian(vec![0; rank + torsion.len()]),
            Kind::Extension(e) => Element::Extension {
                v: vec![0; e.rank],
                q: 0,
            },
            Kind::Finite(_) => Element::Finite(0),
            Kind::Lamplighter => Element::Lamp {
                support: Vec::new(),
                shift: 0,
            },
        }
    }

    pub fn is_identity(&self, a: &Element) -> bool {
        *a == self.identity()
    }

    /// True iff `a` is a canonical element of this group.
    pub fn contains(&self, a: &Element) -> bool {
        match (&self.kind, a) {
            (Kind::Abelian { rank, torsion }, Element::Abelian(v)) => {
                v.len() == rank + torsion.len()
                    && v[*rank..].iter().zip(torsion).all(|(&x, &t)| (0..t).contains(&x))
            }
            (Kind::Extension(e), Element::Extension { v, q }) => v.len() == e.rank && *q < e.quotient.order(),
            (Kind::Finite(t), Element::Finite(i)) => *i < t.order(),
            (Kind::Lamplighter, Element::Lamp { support, .. }) => support.windows(2).all(|w| w[0] < w[1]),
            _ => false,
        }
    }

    /// Canonical product; callers guarantee membership (checked in debug builds).
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        debug_assert!(self.contains(a) && self.contains(b), "{a} * {b}");
        match (&self.kind, a, b) {
            (Kind::Abelian { rank, torsion }, Element::Abelian(x), Element::Abelian(y)) => {
                let mut v = add(x, y);
                for (c, t) in v[*rank..].iter_mut().zip(torsion) {
                    *c = c.rem_euclid(*t);
                }
                Element::Abelian(v)
            }
            (Kind::Extension(e), Element::Extension { v: x, q: p }, Element::Extension { v: y, q }) => {
                let mut v = add(x, &lattice::mat_vec(&e.actions[*p], y));
                for (c, k) in v.iter_mut().zip(&e.cocycle[*p][*q]) {
                    *c += k;
                }
                Element::Extension {
                    v,
                    q: e.quotient.mul(*p, *q),
                }
            }
            (Kind::Finite(t), Element::Finite(i), Element::Finite(j)) => Element::Finite(t.mul(*i, *j)),
            (
                Kind::Lamplighter,
                Element::Lamp { support: a, shift: t },
                Element::Lamp { support: b, shift: u },
            ) => Element::Lamp {
                support: sym_diff_shifted(a, b, *t),
                shift: t + u,
            },
            _ => unreachable!("family mismatch in mul"),
        }
    }

    /// Checked product.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, GroupError> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(GroupError::GroupMismatch(x.to_string()));
            }
        }
        Ok(self.mul(a, b))
    }

    pub fn inverse(&self, a: &Element) -> Element {
        debug_assert!(self.contains(a));
        match (&self.kind, a) {
            (Kind::Abelian { rank, torsion }, Element::Abelian(x)) => {
                let mut v: Vec<i64> = x.iter().map(|c| -c).collect();
                for (c, t) in v[*rank..].iter_mut().zip(torsion) {
                    *c = c.rem_euclid(*t);
                }
                Element::Abelian(v)
            }
            (Kind::Extension(e), Element::Extension { v, q }) => {
                let qi = e.quotient.inverse[*q];
                let w = add(v, &e.cocycle[*q][qi]);
                let v = lattice::mat_vec(&e.actions[qi], &w).into_iter().map(|c| -c).collect();
                Element::Extension { v, q: qi }
            }
            (Kind::Finite(t), Element::Finite(i)) => Element::Finite(t.inverse[*i]),
            (Kind::Lamplighter, Element::Lamp { support, shift }) => Element::Lamp {
                support: support.iter().map(|s| s - shift).collect(),
                shift: -shift,
            },
            _ => unreachable!("family mismatch in inverse"),
        }
    }

    pub fn pow(&self, a: &Element, n: i64) -> Element {
        let base = if n < 0 { self.inverse(a) } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..n.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// Builds a canonical element from raw integers.
    ///
    /// Layouts: abelian `[coords..]`, extension `[v.., q]`, finite `[i]`,
    /// lamplighter `[shift, lamp positions..]` (positions toggled, so
    /// repeats cancel).
    pub fn element_from_ints(&self, raw: &[i64]) -> Result<Element, GroupError> {
        let bad = || GroupError::GroupMismatch(format!("{raw:?}"));
        match &self.kind {
            Kind::Abelian { rank, torsion } => {
                if raw.len() != rank + torsion.len() {
                    return Err(bad());
                }
                let mut v = raw.to_vec();
                for (c, t) in v[*rank..].iter_mut().zip(torsion) {
                    *c = c.rem_euclid(*t);
                }
                Ok(Element::Abelian(v))
            }
            Kind::Extension(e) => {
                if raw.len() != e.rank + 1 {
                    return Err(bad());
                }
                let q = usize::try_from(raw[e.rank]).map_err(|_| bad())?;
                if q >= e.quotient.order() {
                    return Err(bad());
                }
                Ok(Element::Extension {
                    v: raw[..e.rank].to_vec(),
                    q,
                })
            }
            Kind::Finite(t) => match raw {
                [i] if (0..t.order() as i64).contains(i) => Ok(Element::Finite(*i as usize)),
                _ => Err(bad()),
            },
            Kind::Lamplighter => {
                let (&shift, lamps) = raw.split_first().ok_or_else(bad)?;
                Ok(Element::Lamp {
                    support: lamp_set(lamps.iter().copied()),
                    shift,
                })
            }
        }
    }

    /// Parses canonical text and checks membership.
    pub fn parse_element(&self, text: &str) -> Result<Element, GroupError> {
        let e: Element = text
            .parse()
            .map_err(|e: ParseElementError| GroupError::GroupMismatch(e.to_string()))?;
        if self.contains(&e) {
            Ok(e)
        } else {
            Err(GroupError::GroupMismatch(text.to_string()))
        }
    }

    /// Lattice rank `d` of an extension, or of the free part of an abelian group.
    pub fn rank(&self) -> usize {
        match &self.kind {
            Kind::Abelian { rank, .. } => *rank,
            Kind::Extension(e) => e.rank,
            Kind::Finite(_) => 0,
            Kind::Lamplighter => 0,
        }
    }

    pub fn is_extension(&self) -> bool {
        matches!(self.kind, Kind::Extension(_))
    }

    /// Order of the finite quotient `Q` (extensions) or of the torsion part (abelian).
    pub fn quotient_order(&self) -> Option<usize> {
        match &self.kind {
            Kind::Abelian { torsion, .. } => Some(torsion.iter().product::<i64>() as usize),
            Kind::Extension(e) => Some(e.quotient.order()),
            Kind::Finite(t) => Some(t.order()),
            Kind::Lamplighter => None,
        }
    }

    /// Multiplication in the finite quotient of an extension.
    pub fn quotient_mul(&self, p: usize, q: usize) -> usize {
        match &self.kind {
            Kind::Extension(e) => e.quotient.mul(p, q),
            _ => panic!("quotient_mul on a non-extension group"),
        }
    }

    pub fn quotient_inverse(&self, q: usize) -> usize {
        match &self.kind {
            Kind::Extension(e) => e.quotient.inverse[q],
            _ => panic!("quotient_inverse on a non-extension group"),
        }
    }

    /// The matrix `A_q` describing conjugation by any lift of `q` on the lattice.
    pub fn action(&self, q: usize) -> &IntMatrix {
        match &self.kind {
            Kind::Extension(e) => &e.actions[q],
            _ => panic!("action on a non-extension group"),
        }
    }

    /// Lattice element `(v, 1_Q)`.
    pub fn lattice_element(&self, v: Vec<i64>) -> Element {
        debug_assert!(self.is_extension());
        Element::Extension { v, q: 0 }
    }

    /// Splits an extension element into `(v, q)`.
    pub fn coordinates<'a>(&self, a: &'a Element) -> Option<(&'a [i64], usize)> {
        match a {
            Element::Extension { v, q } => Some((v, *q)),
            _ => None,
        }
    }

    /// Inverse-closes `elems`, deduplicates in first-seen order and verifies generation.
    ///
    /// Each input is followed by its inverse (when new), so the listing
    /// order fixes every downstream tie-break.
    pub fn symmetric_generating_set(
        &self,
        elems: &[Element],
        labels: Option<&[String]>,
    ) -> Result<GeneratingSet, GroupError> {
        let mut elements: Vec<Element> = Vec::new();
        let mut names: Vec<String> = Vec::new();
        for (i, s) in elems.iter().enumerate() {
            if !self.contains(s) {
                return Err(GroupError::GroupMismatch(s.to_string()));
            }
            if self.is_identity(s) {
                return Err(GroupError::IdentityGenerator(s.to_string()));
            }
            let label = labels
                .and_then(|l| l.get(i).cloned())
                .unwrap_or_else(|| s.to_string());
            if !elements.contains(s) {
                elements.push(s.clone());
                names.push(label.clone());
            }
            let inv = self.inverse(s);
            if !elements.contains(&inv) {
                let inv_label = if labels.is_some() {
                    format!("{label}^-1")
                } else {
                    inv.to_string()
                };
                elements.push(inv);
                names.push(inv_label);
            }
        }
        let inverse_index = elements
            .iter()
            .map(|s| {
                let inv = self.inverse(s);
                elements.iter().position(|t| *t == inv).expect("inverse closed")
            })
            .collect();
        let verification = self.verify_generation(&elements)?;
        Ok(GeneratingSet {
            elements,
            labels: names,
            inverse_index,
            symmetric: true,
            verification,
        })
    }

    fn verify_generation(&self, gens: &[Element]) -> Result<Verification, GroupError> {
        match &self.kind {
            Kind::Abelian { rank, torsion } => {
                let dim = rank + torsion.len();
                let mut vectors: Vec<Vec<i64>> = gens
                    .iter()
                    .map(|s| match s {
                        Element::Abelian(v) => v.clone(),
                        _ => unreachable!(),
                    })
                    .collect();
                for (i, &t) in torsion.iter().enumerate() {
                    let mut r = vec![0; dim];
                    r[rank + i] = t;
                    vectors.push(r);
                }
                if lattice::spans_unit_lattice(&vectors, dim) {
                    Ok(Verification::Exact)
                } else {
                    Err(GroupError::DoesNotGenerate("generators span a proper sublattice".into()))
                }
            }
            Kind::Extension(e) => {
                // Schreier generators of the lattice from a BFS transversal of Q.
                let n = e.quotient.order();
                let mut transversal: Vec<Option<Element>> = vec![None; n];
                transversal[0] = Some(self.identity());
                let mut queue = VecDeque::from([0usize]);
                while let Some(q) = queue.pop_front() {
                    let t = transversal[q].clone().expect("visited");
                    for s in gens {
                        let ts = self.mul(&t, s);
                        let (_, q2) = self.coordinates(&ts).expect("extension");
                        if transversal[q2].is_none() {
                            transversal[q2] = Some(ts);
                            queue.push_back(q2);
                        }
                    }
                }
                if transversal.iter().any(Option::is_none) {
                    return Err(GroupError::DoesNotGenerate(
                        "generators do not project onto the finite quotient".into(),
                    ));
                }
                let mut vectors = Vec::new();
                for t in transversal.iter().flatten() {
                    for s in gens {
                        let ts = self.mul(t, s);
                        let (_, q2) = self.coordinates(&ts).expect("extension");
                        let back = self.inverse(transversal[q2].as_ref().expect("visited"));
                        let h = self.mul(&ts, &back);
                        let (v, q) = self.coordinates(&h).expect("extension");
                        debug_assert_eq!(q, 0);
                        vectors.push(v.to_vec());
                    }
                }
                if lattice::spans_unit_lattice(&vectors, e.rank) {
                    Ok(Verification::Exact)
                } else {
                    Err(GroupError::DoesNotGenerate(
                        "lattice translates span a proper sublattice".into(),
                    ))
                }
            }
            Kind::Finite(t) => {
                let reached = self.bfs_reach(gens, usize::MAX, t.order());
                if reached.len() == t.order() {
                    Ok(Verification::Exact)
                } else {
                    Err(GroupError::DoesNotGenerate(format!(
                        "generated subgroup has order {} < {}",
                        reached.len(),
                        t.order()
                    )))
                }
            }
            Kind::Lamplighter => {
                let witnesses = [
                    Element::Lamp { support: vec![], shift: 1 },
                    Element::Lamp { support: vec![0], shift: 0 },
                ];
                let reached = self.bfs_reach(gens, LAMPLIGHTER_WITNESS_RADIUS, 200_000);
                if witnesses.iter().all(|w| reached.contains(w)) {
                    Ok(Verification::Witnessed {
                        radius: LAMPLIGHTER_WITNESS_RADIUS,
                    })
                } else {
                    Ok(Verification::Unverified)
                }
            }
        }
    }

    fn bfs_reach(&self, gens: &[Element], radius: usize, cap: usize) -> FxHashSet<Element> {
        let mut seen = FxHashSet::default();
        seen.insert(self.identity());
        let mut frontier = vec![self.identity()];
        let mut depth = 0;
        while !frontier.is_empty() && depth < radius && seen.len() < cap {
            let mut next = Vec::new();
            for x in &frontier {
                for s in gens {
                    let y = self.mul(x, s);
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
            depth += 1;
        }
        seen
    }
}

/// Sorted, duplicate-free lamp set obtained by toggling each position.
pub fn lamp_set(positions: impl IntoIterator<Item = i64>) -> Vec<i64> {
    let mut counts: FxHashMap<i64, usize> = FxHashMap::default();
    for p in positions {
        *counts.entry(p).or_default() += 1;
    }
    let mut out: Vec<i64> = counts.into_iter().filter(|(_, c)| c % 2 == 1).map(|(p, _)| p).collect();
    out.sort_unstable();
    out
}

const LAMPLIGHTER_WITNESS_RADIUS: usize = 8;

/// How generation of the group by a generating set was established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verification {
    /// Decided exactly (lattice index or exhaustive closure).
    Exact,
    /// A known generating set was reached within `radius`.
    Witnessed { radius: usize },
    Unverified,
}

/// An ordered, inverse-closed generating set without the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSet {
    elements: Vec<Element>,
    labels: Vec<String>,
    inverse_index: Vec<usize>,
    symmetric: bool,
    verification: Verification,
}

impl GeneratingSet {
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Index of the inverse generator.
    pub fn inverse_of(&self, i: usize) -> usize {
        self.inverse_index[i]
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn verification(&self) -> &Verification {
        &self.verification
    }

    pub fn position(&self, s: &Element) -> Option<usize> {
        self.elements.iter().position(|t| t == s)
    }
}
