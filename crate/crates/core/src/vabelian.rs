//! The convex-geometry construction for groups with a finite-index lattice
//! `H = Z^d`: simple cycles of the quotient graph, the conjugation cloud and
//! its hull, supporting functionals, 1-Lipschitz homomorphisms, and finite
//! certificates of many distinct Busemann points.
//!
//! Works on extensions of `Z^d` by a finite quotient and on abelian groups
//! `Z^d x T`, where `H` is the free part and `T` acts trivially.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boundary::busemann_functional;
use crate::cayley::{Ball, CayleyError};
use crate::convex::{
    self, convex_hull, supporting_functional, vector_string, ConvexError, PolytopeJson, RationalPolytope, Q,
};
use crate::group::{lattice, Element, GeneratingSet, Group, GroupSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VabelianError {
    #[error("group has no finite-index free abelian lattice in a supported form: {0}")]
    Unsupported(String),
    #[error("lattice rank {rank} is too small, need at least {need}")]
    RankTooSmall { rank: usize, need: usize },
    #[error("generators do not reach every coset of the lattice ({reached} of {total})")]
    NotConnected { reached: usize, total: usize },
    #[error(transparent)]
    Convex(#[from] ConvexError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error("verification '{check}' failed at {element}")]
    VerificationFailed { check: String, element: String },
    #[error("extreme point selector {0} out of range")]
    BadSelector(String),
}

pub type Result<T> = std::result::Result<T, VabelianError>;

/// Coordinates `(xi(g), coset(g))` for the two supported group shapes.
#[derive(Clone, Debug)]
pub struct LatticeView {
    group: Group,
    rank: usize,
    /// Torsion orders for abelian groups; empty for extensions.
    torsion: Vec<i64>,
    order: usize,
}

impl LatticeView {
    pub fn new(group: &Group) -> Result<Self> {
        match group.spec() {
            GroupSpec::FgAbelian { rank, torsion } => Ok(LatticeView {
                group: group.clone(),
                rank: *rank,
                torsion: torsion.clone(),
                order: torsion.iter().product::<i64>() as usize,
            }),
            GroupSpec::VAbExtension { .. } => Ok(LatticeView {
                group: group.clone(),
                rank: group.rank(),
                torsion: Vec::new(),
                order: group.quotient_order().expect("extension"),
            }),
            other => Err(VabelianError::Unsupported(format!("{other:?}").chars().take(40).collect())),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn quotient_order(&self) -> usize {
        self.order
    }

    fn encode(&self, t: &[i64]) -> usize {
        t.iter()
            .zip(&self.torsion)
            .fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    fn decode(&self, mut q: usize) -> Vec<i64> {
        let mut out = vec![0; self.torsion.len()];
        for i in (0..self.torsion.len()).rev() {
            let n = self.torsion[i] as usize;
            out[i] = (q % n) as i64;
            q /= n;
        }
        out
    }

    pub fn coset(&self, a: &Element) -> usize {
        match a {
            Element::Extension { q, .. } => *q,
            Element::Abelian(v) => self.encode(&v[self.rank..]),
            _ => unreachable!("validated group"),
        }
    }

    pub fn xi(&self, a: &Element) -> Vec<i64> {
        match a {
            Element::Extension { v, .. } => v.clone(),
            Element::Abelian(v) => v[..self.rank].to_vec(),
            _ => unreachable!("validated group"),
        }
    }

    pub fn in_lattice(&self, a: &Element) -> bool {
        self.coset(a) == 0
    }

    pub fn lattice_element(&self, v: &[i64]) -> Element {
        if self.torsion.is_empty() && self.group.is_extension() {
            self.group.lattice_element(v.to_vec())
        } else {
            let mut full = v.to_vec();
            full.resize(self.rank + self.torsion.len(), 0);
            Element::Abelian(full)
        }
    }

    pub fn coset_mul(&self, p: usize, q: usize) -> usize {
        if self.group.is_extension() {
            self.group.quotient_mul(p, q)
        } else {
            let (a, b) = (self.decode(p), self.decode(q));
            let sum: Vec<i64> = a
                .iter()
                .zip(&b)
                .zip(&self.torsion)
                .map(|((x, y), n)| (x + y) % n)
                .collect();
            self.encode(&sum)
        }
    }

    pub fn coset_inverse(&self, q: usize) -> usize {
        (0..self.order).find(|&p| self.coset_mul(q, p) == 0).expect("group")
    }

    /// `pi_q v`: the conjugation action of coset `q` on the lattice.
    pub fn act(&self, q: usize, v: &[i64]) -> Vec<i64> {
        if self.group.is_extension() {
            lattice::mat_vec(self.group.action(q), v)
        } else {
            v.to_vec()
        }
    }
}

/// `Gamma(H\G, S)`: vertex `u`, generator `j` leads to `edges[u][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientGraph {
    pub vertices: usize,
    pub base: usize,
    pub edges: Vec<Vec<usize>>,
}

pub fn quotient_graph(view: &LatticeView, gens: &GeneratingSet) -> Result<QuotientGraph> {
    let n = view.quotient_order();
    let steps: Vec<usize> = gens.elements().iter().map(|s| view.coset(s)).collect();
    let edges: Vec<Vec<usize>> = (0..n)
        .map(|u| steps.iter().map(|&c| view.coset_mul(u, c)).collect())
        .collect();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for &v in &edges[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    let reached = seen.iter().filter(|&&b| b).count();
    if reached != n {
        return Err(VabelianError::NotConnected { reached, total: n });
    }
    Ok(QuotientGraph {
        vertices: n,
        base: 0,
        edges,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleLabel {
    pub element: Element,
    /// Generator indices around the cycle.
    pub word: Vec<usize>,
    /// `|x|_S`, computed in the ball.
    pub norm: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleCycleSet {
    /// Every closing word, in DFS order (generator order at each step).
    pub cycles: Vec<CycleLabel>,
    /// Distinct nontrivial labels, first word kept.
    pub labels: Vec<CycleLabel>,
    pub inverse_closed: bool,
}

struct CycleSearch<'a> {
    qg: &'a QuotientGraph,
    group: &'a Group,
    gens: &'a GeneratingSet,
    on_path: Vec<bool>,
    word: Vec<usize>,
    found: Vec<(Element, Vec<usize>)>,
}

impl CycleSearch<'_> {
    fn extend(&mut self, u: usize, elem: &Element) {
        for j in 0..self.gens.len() {
            let v = self.qg.edges[u][j];
            let next = self.group.mul(elem, self.gens.get(j));
            self.word.push(j);
            if v == self.qg.base {
                self.found.push((next, self.word.clone()));
            } else if !self.on_path[v] {
                self.on_path[v] = true;
                self.extend(v, &next);
                self.on_path[v] = false;
            }
            self.word.pop();
        }
    }
}

/// All simple cycles at the base vertex; labels equal to the identity are
/// dropped since they cannot be normalized by their norm.
pub fn simple_cycle_labels(qg: &QuotientGraph, ball: &Ball) -> Result<SimpleCycleSet> {
    let g = ball.group();
    let gens = ball.generators();
    let mut cycles = Vec::new();
    let mut search = CycleSearch {
        qg,
        group: g,
        gens,
        on_path: vec![false; qg.vertices],
        word: Vec::new(),
        found: Vec::new(),
    };
    search.on_path[qg.base] = true;
    search.extend(qg.base, &g.identity());
    let raw = search.found;
    let mut labels: Vec<CycleLabel> = Vec::new();
    for (element, word) in raw {
        if g.is_identity(&element) {
            continue;
        }
        let norm = ball
            .norm(&element)
            .ok_or_else(|| CayleyError::OutOfBall(element.to_string()))?;
        let label = CycleLabel { element, word, norm };
        if !labels.iter().any(|l| l.element == label.element) {
            labels.push(label.clone());
        }
        cycles.push(label);
    }
    let inverse_closed = labels
        .iter()
        .all(|l| labels.iter().any(|m| m.element == g.inverse(&l.element)));
    Ok(SimpleCycleSet {
        cycles,
        labels,
        inverse_closed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CloudPoint {
    pub point: Vec<Q>,
    /// Coset `q` of the conjugating element.
    pub conjugator: usize,
    /// Cycle label `w` with `point = pi_q(xi(w)) / |w|`.
    pub label: Element,
    pub norm: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateCloud {
    pub points: Vec<CloudPoint>,
    pub invariant: bool,
    pub symmetric: bool,
}

impl ConjugateCloud {
    pub fn vectors(&self) -> Vec<Vec<Q>> {
        self.points.iter().map(|p| p.point.clone()).collect()
    }

    pub fn find(&self, v: &[Q]) -> Option<&CloudPoint> {
        self.points.iter().find(|p| p.point.as_slice() == v)
    }
}

fn scaled(v: &[i64], norm: u32) -> Vec<Q> {
    v.iter()
        .map(|&x| Q::new(BigInt::from(x), BigInt::from(norm)))
        .collect()
}

/// `F = { pi_q(xi(x)) / |x|_S : q in Q, x in C }`, sorted and deduplicated.
pub fn conjugate_cloud(c: &SimpleCycleSet, view: &LatticeView) -> ConjugateCloud {
    let mut map: BTreeMap<Vec<Q>, CloudPoint> = BTreeMap::new();
    for l in &c.labels {
        let base = view.xi(&l.element);
        for q in 0..view.quotient_order() {
            let point = scaled(&view.act(q, &base), l.norm);
            map.entry(point.clone()).or_insert(CloudPoint {
                point,
                conjugator: q,
                label: l.element.clone(),
                norm: l.norm,
            });
        }
    }
    let points: Vec<CloudPoint> = map.into_values().collect();
    let contains = |v: &[Q]| points.iter().any(|p| p.point.as_slice() == v);
    let invariant = (0..view.quotient_order()).all(|q| {
        points.iter().all(|p| {
            let image: Vec<Q> = (0..view.rank())
                .map(|i| {
                    (0..view.rank()).fold(Q::zero(), |acc, j| {
                        let mut e = vec![0; view.rank()];
                        e[j] = 1;
                        acc + Q::from_integer(BigInt::from(view.act(q, &e)[i])) * &p.point[j]
                    })
                })
                .collect();
            contains(&image)
        })
    });
    let symmetric = points.iter().all(|p| {
        let neg: Vec<Q> = p.point.iter().map(|x| -x.clone()).collect();
        contains(&neg)
    });
    ConjugateCloud {
        points,
        invariant,
        symmetric,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step1Report {
    pub radius: u32,
    pub checked: usize,
    pub violations: Vec<Element>,
}

/// Checks `xi(x)/|x|_S in P` for every nontrivial lattice element of `B_r`.
pub fn step1_membership(p: &RationalPolytope, view: &LatticeView, ball: &Ball, r: u32) -> Result<Step1Report> {
    if r > ball.radius() {
        return Err(CayleyError::OutOfBall(format!("radius {r} beyond ball radius {}", ball.radius())).into());
    }
    let mut checked = 0;
    let mut violations = Vec::new();
    for i in 1..ball.count_within(r) {
        let x = ball.element(i);
        if !view.in_lattice(x) {
            continue;
        }
        checked += 1;
        if !p.contains(&scaled(&view.xi(x), ball.norm_at(i))) {
            violations.push(x.clone());
        }
    }
    Ok(Step1Report {
        radius: r,
        checked,
        violations,
    })
}

/// Which extreme point of the hull to build the homomorphism from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtremeSelector {
    /// Lexicographically smallest vertex.
    Lex,
    /// Vertex at this index in lexicographic order.
    Index(usize),
    Point(Vec<Q>),
}

impl std::str::FromStr for ExtremeSelector {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "lex" {
            return Ok(ExtremeSelector::Lex);
        }
        if let Some(i) = s.strip_prefix("index:") {
            return i.parse().map(ExtremeSelector::Index).map_err(|e| format!("{s}: {e}"));
        }
        Err(format!("expected 'lex' or 'index:<i>', got '{s}'"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LipschitzHomData {
    /// Chosen extreme point `e'` of the hull.
    pub extreme: Vec<Q>,
    pub conjugator: usize,
    /// `e = pi_{q^-1}(e') = xi(w) / |w|_S`.
    pub pulled_back: Vec<Q>,
    pub functional: Vec<Q>,
    pub slack: Q,
    /// Cycle label `w = x^p`.
    pub label: Element,
    pub primitive: Element,
    pub power: i64,
    /// Lattice elements of the ball where `f(y) = |y|_S`.
    pub equality_locus: Vec<Element>,
    pub checked: usize,
}

impl LipschitzHomData {
    /// `f(y) = phi_e(xi(y))`.
    pub fn eval(&self, view: &LatticeView, y: &Element) -> Q {
        view.xi(y)
            .iter()
            .zip(&self.functional)
            .fold(Q::zero(), |acc, (&a, c)| acc + Q::from_integer(BigInt::from(a)) * c)
    }

    /// The lattice element `w = x^p`.
    pub fn period(&self) -> &Element {
        &self.label
    }
}

fn select<'a>(p: &'a RationalPolytope, selector: &ExtremeSelector) -> Result<&'a Vec<Q>> {
    match selector {
        ExtremeSelector::Lex => p.vertices.first().ok_or_else(|| VabelianError::BadSelector("lex".into())),
        ExtremeSelector::Index(i) => p
            .vertices
            .get(*i)
            .ok_or_else(|| VabelianError::BadSelector(format!("index:{i}"))),
        ExtremeSelector::Point(v) => p
            .vertices
            .iter()
            .find(|w| *w == v)
            .ok_or_else(|| VabelianError::Convex(ConvexError::NotExtreme(vector_string(v)))),
    }
}

/// Builds `f = phi_e o xi` from an extreme point and verifies its three
/// properties on the lattice points of the ball.
pub fn lipschitz_hom(
    p: &RationalPolytope,
    cloud: &ConjugateCloud,
    selector: &ExtremeSelector,
    view: &LatticeView,
    ball: &Ball,
) -> Result<LipschitzHomData> {
    let extreme = select(p, selector)?.clone();
    let source = cloud
        .find(&extreme)
        .ok_or_else(|| VabelianError::Convex(ConvexError::NotExtreme(vector_string(&extreme))))?;
    let w_xi = view.xi(&source.label);
    let pulled_back = scaled(&w_xi, source.norm);
    let phi = supporting_functional(p, &pulled_back)?;
    let gcd = w_xi.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    let prim: Vec<i64> = w_xi.iter().map(|x| x / gcd).collect();
    let mut data = LipschitzHomData {
        extreme,
        conjugator: source.conjugator,
        pulled_back,
        functional: phi.coefficients,
        slack: phi.slack,
        label: source.label.clone(),
        primitive: view.lattice_element(&prim),
        power: gcd,
        equality_locus: Vec::new(),
        checked: 0,
    };
    let fail = |check: &str, y: &Element| VabelianError::VerificationFailed {
        check: check.to_string(),
        element: y.to_string(),
    };
    let w_norm = ball
        .norm(&data.label)
        .ok_or_else(|| CayleyError::OutOfBall(data.label.to_string()))?;
    if data.eval(view, &data.label) != convex::q(i64::from(w_norm)) {
        return Err(fail("f(x^p) = |x^p|", &data.label));
    }
    let in_cyclic = |y: &[i64]| -> bool {
        let Some(i) = prim.iter().position(|&c| c != 0) else { return false };
        if y[i] % prim[i] != 0 {
            return false;
        }
        let k = y[i] / prim[i];
        y.iter().zip(&prim).all(|(a, b)| *a == k * b)
    };
    for i in 0..ball.len() {
        let y = ball.element(i);
        if !view.in_lattice(y) {
            continue;
        }
        data.checked += 1;
        let fy = data.eval(view, y);
        let ny = convex::q(i64::from(ball.norm_at(i)));
        if fy > ny || -fy.clone() > ny {
            return Err(fail("|f(y)| <= |y|", y));
        }
        if fy == ny {
            if i > 0 && !in_cyclic(&view.xi(y)) {
                return Err(fail("equality locus inside <x>", y));
            }
            data.equality_locus.push(y.clone());
        }
    }
    Ok(data)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Separation {
    Separated,
    UndeterminedAtLevel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub verdict: Separation,
    pub exponent: i64,
    /// `y^-1 z` lies outside `<x>`, so the limits must differ.
    pub predicted_separated: bool,
}

/// Largest `n <= cap` with `|y w^n| <= r`.
fn max_exponent(ball: &Ball, y: &Element, w: &Element, r: u32) -> Option<i64> {
    let g = ball.group();
    let mut cur = y.clone();
    let mut best = None;
    for n in 0..=i64::from(r) {
        match ball.norm(&cur) {
            Some(k) if k <= r => best = Some(n),
            _ => break,
        }
        cur = g.mul(&cur, w);
    }
    best
}

fn in_primitive_cyclic(view: &LatticeView, data: &LipschitzHomData, a: &Element) -> bool {
    if !view.in_lattice(a) {
        return false;
    }
    let v = view.xi(a);
    let x = view.xi(&data.primitive);
    let Some(i) = x.iter().position(|&c| c != 0) else { return v.iter().all(|&c| c == 0) };
    v[i] % x[i] == 0 && v.iter().zip(&x).all(|(a, b)| *a == (v[i] / x[i]) * b)
}

/// Compares `b_{y w^n}` and `b_{z w^n}` on `B_m` at the largest `n` both fit in `B_r`.
pub fn busemann_coset_separation(
    y: &Element,
    z: &Element,
    data: &LipschitzHomData,
    view: &LatticeView,
    ball: &Ball,
    r: u32,
    m: u32,
) -> Result<SeparationReport> {
    if r + m > ball.radius() {
        return Err(CayleyError::OutOfBall(format!("level r={r}, m={m} beyond radius {}", ball.radius())).into());
    }
    let g = ball.group();
    let w = data.period();
    let ny = max_exponent(ball, y, w, r).ok_or_else(|| CayleyError::OutOfBall(y.to_string()))?;
    let nz = max_exponent(ball, z, w, r).ok_or_else(|| CayleyError::OutOfBall(z.to_string()))?;
    let n = ny.min(nz);
    let wn = g.pow(w, n);
    let by = busemann_functional(ball, &g.mul(y, &wn), m).map_err(|e| VabelianError::Unsupported(e.to_string()))?;
    let bz = busemann_functional(ball, &g.mul(z, &wn), m).map_err(|e| VabelianError::Unsupported(e.to_string()))?;
    Ok(SeparationReport {
        verdict: if by.values != bz.values {
            Separation::Separated
        } else {
            Separation::UndeterminedAtLevel
        },
        exponent: n,
        predicted_separated: !in_primitive_cyclic(view, data, &g.mul(&g.inverse(y), z)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRow {
    pub representative: Element,
    pub exponent: i64,
    pub endpoint: Element,
    pub values: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomSummary {
    pub extreme: String,
    pub pulled_back: String,
    pub functional: String,
    pub slack: String,
    pub label: Element,
    pub primitive: Element,
    pub power: i64,
    pub equality_locus_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub rank: usize,
    pub quotient_order: usize,
    pub outer_radius: u32,
    pub domain_radius: u32,
    pub cycle_labels: Vec<Element>,
    pub cloud: Vec<String>,
    pub cloud_invariant: bool,
    pub polytope: PolytopeJson,
    pub step1: Step1Report,
    pub homomorphism: HomSummary,
    pub periodic_geodesic_checked: i64,
    pub requested: usize,
    pub witnesses: Vec<WitnessRow>,
    pub pairwise_distinct: bool,
}

impl WitnessReport {
    pub fn complete(&self) -> bool {
        self.pairwise_distinct && self.witnesses.len() >= self.requested
    }
}

/// Runs the whole construction and greedily collects `k` lattice points
/// `y_i`, pairwise in distinct cosets of `<x>`, whose functionals
/// `b_{y_i w^n}|B_m` are pairwise distinct.
pub fn infinite_boundary_witness(
    group: &Group,
    gens: &GeneratingSet,
    k: usize,
    r: u32,
    m: u32,
    selector: &ExtremeSelector,
    dimension_cap: usize,
) -> Result<WitnessReport> {
    let view = LatticeView::new(group)?;
    if view.rank() < 2 {
        return Err(VabelianError::RankTooSmall { rank: view.rank(), need: 2 });
    }
    let ball = Ball::grow(group, gens, r + m)?;
    let qg = quotient_graph(&view, gens)?;
    let cycles = simple_cycle_labels(&qg, &ball)?;
    let cloud = conjugate_cloud(&cycles, &view);
    let polytope = convex_hull(&cloud.vectors(), dimension_cap)?;
    let step1 = step1_membership(&polytope, &view, &ball, r.clamp(1, 8))?;
    if let Some(v) = step1.violations.first() {
        return Err(VabelianError::VerificationFailed {
            check: "lattice point ratio inside the hull".into(),
            element: v.to_string(),
        });
    }
    let data = lipschitz_hom(&polytope, &cloud, selector, &view, &ball)?;

    // Powers of w should lie on one geodesic: |w^n| = n |w|.
    let w = data.period().clone();
    let w_norm = i64::from(ball.norm(&w).expect("label in ball"));
    let mut periodic = 0;
    for n in 1..=i64::from(ball.radius()) {
        if n * w_norm > i64::from(ball.radius()) {
            break;
        }
        let wn = group.pow(&w, n);
        if ball.norm(&wn).map(i64::from) != Some(n * w_norm) {
            return Err(VabelianError::VerificationFailed {
                check: "|w^n| = n|w|".into(),
                element: wn.to_string(),
            });
        }
        periodic = n;
    }

    let mut witnesses: Vec<WitnessRow> = Vec::new();
    let mut chosen: Vec<Element> = Vec::new();
    for i in 0..ball.count_within(r) {
        if witnesses.len() >= k {
            break;
        }
        let y = ball.element(i);
        if !view.in_lattice(y) {
            continue;
        }
        let fresh_coset = chosen
            .iter()
            .all(|c| !in_primitive_cyclic(&view, &data, &group.mul(&group.inverse(c), y)));
        if !fresh_coset {
            continue;
        }
        let Some(n) = max_exponent(&ball, y, &w, r) else { continue };
        let endpoint = group.mul(y, &group.pow(&w, n));
        let f = busemann_functional(&ball, &endpoint, m).map_err(|e| VabelianError::Unsupported(e.to_string()))?;
        if witnesses.iter().any(|row| row.values == f.values) {
            continue;
        }
        chosen.push(y.clone());
        witnesses.push(WitnessRow {
            representative: y.clone(),
            exponent: n,
            endpoint,
            values: f.values,
        });
    }
    let pairwise_distinct = witnesses
        .iter()
        .enumerate()
        .all(|(i, a)| witnesses[i + 1..].iter().all(|b| a.values != b.values));
    Ok(WitnessReport {
        rank: view.rank(),
        quotient_order: view.quotient_order(),
        outer_radius: r,
        domain_radius: m,
        cycle_labels: cycles.labels.iter().map(|l| l.element.clone()).collect(),
        cloud: cloud.points.iter().map(|p| vector_string(&p.point)).collect(),
        cloud_invariant: cloud.invariant,
        polytope: polytope.to_json(),
        step1,
        homomorphism: HomSummary {
            extreme: vector_string(&data.extreme),
            pulled_back: vector_string(&data.pulled_back),
            functional: vector_string(&data.functional),
            slack: convex::ratio_string(&data.slack),
            label: data.label.clone(),
            primitive: data.primitive.clone(),
            power: data.power,
            equality_locus_size: data.equality_locus.len(),
        },
        periodic_geodesic_checked: periodic,
        requested: k,
        witnesses,
        pairwise_distinct,
    })
}

/// Convenience: the pipeline up to the hull.
pub fn polytope_of(group: &Group, gens: &GeneratingSet, cap: usize) -> Result<(LatticeView, Ball, SimpleCycleSet, ConjugateCloud, RationalPolytope)> {
    let view = LatticeView::new(group)?;
    let qg = quotient_graph(&view, gens)?;
    let ball = Ball::grow(group, gens, qg.vertices.max(1) as u32 + 8)?;
    let cycles = simple_cycle_labels(&qg, &ball)?;
    let cloud = conjugate_cloud(&cycles, &view);
    let p = convex_hull(&cloud.vectors(), cap)?;
    Ok((view, ball, cycles, cloud, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::convex::{q, DEFAULT_DIMENSION_CAP};

    fn pt(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn quotient_graphs() {
        let (g, s) = catalog::z2_standard();
        let qg = quotient_graph(&LatticeView::new(&g).unwrap(), &s).unwrap();
        assert_eq!(qg.vertices, 1);
        assert_eq!(qg.edges[0], vec![0; 4]);

        let (g, s) = catalog::cylinder_extension(4);
        let qg = quotient_graph(&LatticeView::new(&g).unwrap(), &s).unwrap();
        assert_eq!(qg.vertices, 4);
        assert!(qg.edges.iter().all(|e| e.len() == 6));

        let (g, s) = catalog::p4();
        let qg = quotient_graph(&LatticeView::new(&g).unwrap(), &s).unwrap();
        assert_eq!(qg.vertices, 4);

    }

    #[test]
    fn z2_cycles_cloud_and_hull() {
        let (g, s) = catalog::z2_standard();
        let (view, ball, cycles, cloud, p) = polytope_of(&g, &s, DEFAULT_DIMENSION_CAP).unwrap();
        let mut labels: Vec<Element> = cycles.labels.iter().map(|l| l.element.clone()).collect();
        labels.sort();
        let mut want = s.elements().to_vec();
        want.sort();
        assert_eq!(labels, want);
        assert!(cycles.cycles.iter().all(|c| c.word.len() == 1));
        assert!(cycles.inverse_closed);
        assert_eq!(cloud.points.len(), 4);
        assert!(cloud.symmetric && cloud.invariant);
        assert_eq!(p.vertices.len(), 4);
        assert!(p.contains(&pt(&[0, 0])));
        let step = step1_membership(&p, &view, &ball, 8).unwrap();
        assert!(step.violations.is_empty());
        assert_eq!(step.checked, 144);
    }

    #[test]
    fn z2_homomorphism() {
        let (g, s) = catalog::z2_standard();
        let (view, _, _, cloud, p) = polytope_of(&g, &s, DEFAULT_DIMENSION_CAP).unwrap();
        let ball = Ball::grow(&g, &s, 8).unwrap();
        let data = lipschitz_hom(&p, &cloud, &ExtremeSelector::Point(pt(&[1, 0])), &view, &ball).unwrap();
        assert_eq!(data.functional, pt(&[1, 0]));
        assert_eq!(data.power, 1);
        assert_eq!(data.primitive, Element::Abelian(vec![1, 0]));
        let mut locus = data.equality_locus.clone();
        locus.sort();
        assert_eq!(locus, (0..=8).map(|a| Element::Abelian(vec![a, 0])).collect::<Vec<_>>());
        let lex = lipschitz_hom(&p, &cloud, &ExtremeSelector::Lex, &view, &ball).unwrap();
        assert_eq!(lex.extreme, pt(&[-1, 0]));
    }

    #[test]
    fn separation_on_z2() {
        let (g, s) = catalog::z2_standard();
        let (view, _, _, cloud, p) = polytope_of(&g, &s, DEFAULT_DIMENSION_CAP).unwrap();
        let ball = Ball::grow(&g, &s, 10).unwrap();
        let data = lipschitz_hom(&p, &cloud, &ExtremeSelector::Point(pt(&[1, 0])), &view, &ball).unwrap();
        let o = Element::Abelian(vec![0, 0]);
        let sep = busemann_coset_separation(&o, &Element::Abelian(vec![0, 1]), &data, &view, &ball, 8, 2).unwrap();
        assert_eq!(sep.verdict, Separation::Separated);
        assert!(sep.predicted_separated);
        let same = busemann_coset_separation(&o, &Element::Abelian(vec![3, 0]), &data, &view, &ball, 8, 2).unwrap();
        assert_eq!(same.verdict, Separation::UndeterminedAtLevel);
        assert!(!same.predicted_separated);
        let refl = busemann_coset_separation(&o, &o, &data, &view, &ball, 8, 2).unwrap();
        assert_eq!(refl.verdict, Separation::UndeterminedAtLevel);
    }

    #[test]
    fn z2_witness() {
        let (g, s) = catalog::z2_standard();
        let rep = infinite_boundary_witness(&g, &s, 5, 14, 2, &ExtremeSelector::Point(pt(&[1, 0])), 3).unwrap();
        assert!(rep.complete());
        let reps: Vec<Element> = rep.witnesses.iter().map(|w| w.representative.clone()).collect();
        let ab = |v: [i64; 2]| Element::Abelian(v.to_vec());
        assert_eq!(reps, vec![ab([0, 0]), ab([0, 1]), ab([0, -1]), ab([0, 2]), ab([0, -2])]);
    }

    #[test]
    fn rank_one_is_rejected() {
        let (g, s) = catalog::cylinder(4);
        assert_eq!(
            infinite_boundary_witness(&g, &s, 3, 10, 2, &ExtremeSelector::Lex, 3).unwrap_err(),
            VabelianError::RankTooSmall { rank: 1, need: 2 }
        );
    }

    #[test]
    fn p4_pipeline() {
        let (g, s) = catalog::p4();
        let (view, ball, cycles, cloud, p) = polytope_of(&g, &s, DEFAULT_DIMENSION_CAP).unwrap();
        assert!(cycles.inverse_closed);
        assert!(cloud.invariant && cloud.symmetric);
        assert!(step1_membership(&p, &view, &ball, 6).unwrap().violations.is_empty());
        // pi permutes the vertex set.
        for qq in 0..4 {
            for v in &p.vertices {
                let ints: Vec<Q> = (0..2)
                    .map(|i| {
                        let row = &g.action(qq)[i];
                        q(row[0]) * &v[0] + q(row[1]) * &v[1]
                    })
                    .collect();
                assert!(p.is_vertex(&ints));
            }
        }
        let data = lipschitz_hom(&p, &cloud, &ExtremeSelector::Lex, &view, &ball).unwrap();
        assert!(!data.equality_locus.is_empty());
        let rep = infinite_boundary_witness(&g, &s, 3, 12, 2, &ExtremeSelector::Lex, 3).unwrap();
        assert!(rep.complete());
    }

    #[test]
    fn cylinder_extension_cloud() {
        let (g, s) = catalog::cylinder_extension(4);
        let (_, _, cycles, cloud, p) = polytope_of(&g, &s, DEFAULT_DIMENSION_CAP).unwrap();
        assert!(cycles.inverse_closed);
        assert!(cloud.symmetric);
        assert_eq!(p.dim, 1);
        assert_eq!(p.vertices, vec![pt(&[-1]), pt(&[1])]);
        for v in &p.vertices {
            let rest: Vec<Vec<Q>> = cloud.vectors().into_iter().filter(|w| w != v).collect();
            assert!(!convex::in_convex_hull(&rest, v));
        }
    }

    #[test]
    fn gcd_power() {
        // A label with xi(w) = (2,0) gives x = (1,0), p = 2.
        let spec = GroupSpec::FgAbelian { rank: 2, torsion: vec![] };
        let g = Group::new(spec).unwrap();
        let s = g
            .symmetric_generating_set(
                &[Element::Abelian(vec![2, 0]), Element::Abelian(vec![1, 1]), Element::Abelian(vec![0, 1])],
                None,
            )
            .unwrap();
        let (view, ball, _, cloud, p) = polytope_of(&g, &s, 3).unwrap();
        let data = lipschitz_hom(&p, &cloud, &ExtremeSelector::Point(pt(&[2, 0])), &view, &ball).unwrap();
        assert_eq!(data.power, 2);
        assert_eq!(data.primitive, Element::Abelian(vec![1, 0]));
    }
}
