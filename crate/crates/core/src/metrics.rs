//! Proper integer-valued left-invariant metrics beyond word metrics: ball
//! systems `B_n = F_n (U_k B_k B_{n-k}) F_n` built from a chain of finite
//! subgroups, and metric axiom checks shared with Cayley balls.

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::Ball;
use crate::group::{Element, GeneratingSet, Group};

/// Default cap on `|B_n|`.
pub const DEFAULT_SIZE_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("chain entry {index} is not a subgroup: {reason}")]
    NotASubgroup { index: usize, reason: String },
    #[error("B_{level} exceeds the size budget of {budget}")]
    SizeBudget { level: usize, budget: usize },
    #[error("{0} lies outside the computed range")]
    OutOfRange(String),
    #[error("{element} is not in F_{index}")]
    NotInChain { element: String, index: usize },
    #[error("invalid ball system: {0}")]
    Invalid(String),
    #[error("{axiom} fails at ({x}, {y}, {z})")]
    AxiomViolation { axiom: String, x: String, y: String, z: String },
}

pub type Result<T> = std::result::Result<T, MetricsError>;

#[derive(Clone, Debug)]
pub struct BallSystem {
    group: Group,
    /// `chain[n - 1] = F_n`, padded with the last entry up to `n_max`.
    chain: Vec<Vec<Element>>,
    /// `layers[n] = B_n`, sorted.
    layers: Vec<Vec<Element>>,
    norms: FxHashMap<Element, u32>,
}

/// Greedy generating subset of a finite subgroup.
fn subgroup_generators(group: &Group, elems: &[Element]) -> Vec<Element> {
    let mut gens: Vec<Element> = Vec::new();
    let mut span: FxHashSet<Element> = [group.identity()].into_iter().collect();
    for f in elems {
        if span.contains(f) {
            continue;
        }
        gens.push(f.clone());
        let mut frontier: Vec<Element> = span.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = group.mul(&x, g);
                if span.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

fn check_subgroup(group: &Group, elems: &[Element], index: usize) -> Result<()> {
    let set: FxHashSet<&Element> = elems.iter().collect();
    let fail = |reason: String| MetricsError::NotASubgroup { index, reason };
    if !set.contains(&group.identity()) {
        return Err(fail("missing the identity".into()));
    }
    for a in elems {
        if !group.contains(a) {
            return Err(fail(format!("{a} is not a group element")));
        }
        if !set.contains(&group.inverse(a)) {
            return Err(fail(format!("inverse of {a} missing")));
        }
        for b in elems {
            if !set.contains(&group.mul(a, b)) {
                return Err(fail(format!("{a} * {b} missing")));
            }
        }
    }
    Ok(())
}

/// Closes `seed` under left and right multiplication by `gens`.
fn double_coset_closure(
    group: &Group,
    seed: FxHashSet<Element>,
    gens: &[Element],
    level: usize,
    budget: usize,
) -> Result<FxHashSet<Element>> {
    let mut out = seed;
    let mut frontier: Vec<Element> = out.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for g in gens {
            for y in [group.mul(g, &x), group.mul(&x, g)] {
                if out.insert(y.clone()) {
                    if out.len() > budget {
                        return Err(MetricsError::SizeBudget { level, budget });
                    }
                    frontier.push(y);
                }
            }
        }
    }
    Ok(out)
}

pub fn build_ball_system(
    group: &Group,
    gens: &GeneratingSet,
    chain: &[Vec<Element>],
    n_max: usize,
) -> Result<BallSystem> {
    build_ball_system_with_budget(group, gens, chain, n_max, DEFAULT_SIZE_BUDGET)
}

pub fn build_ball_system_with_budget(
    group: &Group,
    gens: &GeneratingSet,
    chain: &[Vec<Element>],
    n_max: usize,
    budget: usize,
) -> Result<BallSystem> {
    if n_max == 0 {
        return Err(MetricsError::Invalid("n_max must be at least 1".into()));
    }
    if chain.is_empty() {
        return Err(MetricsError::Invalid("empty subgroup chain".into()));
    }
    let mut padded: Vec<Vec<Element>> = chain.iter().take(n_max).cloned().collect();
    while padded.len() < n_max {
        padded.push(padded.last().expect("nonempty").clone());
    }
    for (i, f) in padded.iter().enumerate() {
        check_subgroup(group, f, i + 1)?;
        if i > 0 {
            let prev: FxHashSet<&Element> = padded[i].iter().collect();
            if let Some(x) = padded[i - 1].iter().find(|x| !prev.contains(x)) {
                return Err(MetricsError::NotASubgroup {
                    index: i + 1,
                    reason: format!("does not contain {x} from F_{i}"),
                });
            }
        }
    }

    let mut layers: Vec<Vec<Element>> = vec![vec![group.identity()]];
    let mut b1: Vec<Element> = gens.elements().to_vec();
    b1.push(group.identity());
    b1.sort();
    layers.push(b1);
    for n in 2..=n_max {
        let products: FxHashSet<Element> = (1..n)
            .into_par_iter()
            .flat_map_iter(|k| {
                let (left, right) = (&layers[k], &layers[n - k]);
                left.iter()
                    .flat_map(move |a| right.iter().map(move |b| group.mul(a, b)))
                    .collect::<Vec<_>>()
            })
            .collect();
        if products.len() > budget {
            return Err(MetricsError::SizeBudget { level: n, budget });
        }
        let fgens = subgroup_generators(group, &padded[n - 1]);
        let mut layer: Vec<Element> = double_coset_closure(group, products, &fgens, n, budget)?
            .into_iter()
            .collect();
        layer.sort();
        layers.push(layer);
    }

    let bs = BallSystem::from_layers(group.clone(), padded, layers);
    for (n, layer) in bs.layers.iter().enumerate() {
        for x in layer {
            let inv = group.inverse(x);
            if bs.norms.get(&inv) != bs.norms.get(x) {
                return Err(MetricsError::AxiomViolation {
                    axiom: format!("symmetry of B_{n}"),
                    x: x.to_string(),
                    y: inv.to_string(),
                    z: String::new(),
                });
            }
        }
    }
    Ok(bs)
}

impl BallSystem {
    /// Wraps precomputed layers without checking any invariant.
    pub fn from_layers(group: Group, chain: Vec<Vec<Element>>, layers: Vec<Vec<Element>>) -> Self {
        let mut norms = FxHashMap::default();
        for (n, layer) in layers.iter().enumerate() {
            for x in layer {
                norms.entry(x.clone()).or_insert(n as u32);
            }
        }
        BallSystem {
            group,
            chain,
            layers,
            norms,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn n_max(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer(&self, n: usize) -> &[Element] {
        &self.layers[n]
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    /// `F_n` for `1 <= n <= n_max`.
    pub fn chain_member(&self, n: usize) -> &[Element] {
        &self.chain[n - 1]
    }

    pub fn norm(&self, g: &Element) -> Option<u32> {
        self.norms.get(g).copied()
    }

    pub fn report(&self) -> BallSystemReport {
        BallSystemReport {
            n_max: self.n_max(),
            layer_sizes: self.layer_sizes(),
            chain_sizes: self.chain.iter().map(Vec::len).collect(),
        }
    }

    /// `B_n` in canonical text form, one element per line.
    pub fn layer_text(&self, n: usize) -> String {
        self.layers[n].iter().map(|x| format!("{x}\n")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallSystemReport {
    pub n_max: usize,
    pub layer_sizes: Vec<usize>,
    pub chain_sizes: Vec<usize>,
}

pub fn bs_norm(bs: &BallSystem, g: &Element) -> Result<u32> {
    bs.norm(g).ok_or_else(|| MetricsError::OutOfRange(g.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormPair {
    pub element: Element,
    pub norm: u32,
    pub shifted_norm: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BsAnnihilatorReport {
    pub f: Element,
    pub chain_index: usize,
    /// Norm threshold above which `|f^-1 g| = |g|` is checked; at least 2
    /// since `B_1` is not `F_1`-invariant.
    pub threshold: u32,
    pub range_radius: u32,
    pub checked: usize,
    pub violations: Vec<NormPair>,
    /// Elements below the threshold where the two norms differ.
    pub exceptions: Vec<NormPair>,
}

/// Compares `|f^-1 g|` with `|g|` over `g in B_{n_max - n}`.
pub fn bs_annihilator_check(bs: &BallSystem, f: &Element, n: usize) -> Result<BsAnnihilatorReport> {
    if n == 0 || n > bs.n_max() {
        return Err(MetricsError::OutOfRange(format!("chain index {n}")));
    }
    if !bs.chain_member(n).contains(f) {
        return Err(MetricsError::NotInChain {
            element: f.to_string(),
            index: n,
        });
    }
    let g = bs.group();
    let finv = g.inverse(f);
    let threshold = n.max(2) as u32;
    let range_radius = (bs.n_max() - n) as u32;
    let mut report = BsAnnihilatorReport {
        f: f.clone(),
        chain_index: n,
        threshold,
        range_radius,
        checked: 0,
        violations: Vec::new(),
        exceptions: Vec::new(),
    };
    for x in bs.layer(range_radius as usize) {
        let norm = bs_norm(bs, x)?;
        let shifted_norm = bs_norm(bs, &g.mul(&finv, x))?;
        report.checked += 1;
        if norm == shifted_norm {
            continue;
        }
        let pair = NormPair {
            element: x.clone(),
            norm,
            shifted_norm,
        };
        if norm >= threshold && shifted_norm >= threshold {
            report.violations.push(pair);
        } else {
            report.exceptions.push(pair);
        }
    }
    Ok(report)
}

/// Anything that assigns integer norms to the elements of a finite range.
pub trait NormSource {
    fn source_group(&self) -> &Group;
    /// Largest radius with complete norm information.
    fn max_radius(&self) -> u32;
    fn norm_of(&self, x: &Element) -> Option<u32>;
    /// All elements of norm at most `n`.
    fn within(&self, n: u32) -> Vec<Element>;
}

impl NormSource for Ball {
    fn source_group(&self) -> &Group {
        self.group()
    }

    fn max_radius(&self) -> u32 {
        self.radius()
    }

    fn norm_of(&self, x: &Element) -> Option<u32> {
        self.norm(x)
    }

    fn within(&self, n: u32) -> Vec<Element> {
        self.elements()[..self.count_within(n)].to_vec()
    }
}

impl NormSource for BallSystem {
    fn source_group(&self) -> &Group {
        self.group()
    }

    fn max_radius(&self) -> u32 {
        self.n_max() as u32
    }

    fn norm_of(&self, x: &Element) -> Option<u32> {
        self.norm(x)
    }

    fn within(&self, n: u32) -> Vec<Element> {
        self.layer(n as usize).to_vec()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub radius: u32,
    /// `|B_n|` for `n = 0..=radius`.
    pub ball_sizes: Vec<usize>,
    pub pairs_checked: usize,
}

/// Checks positivity, symmetry and the triangle inequality on every pair
/// `x, y` with `|x| + |y| <= radius`.
pub fn metric_axiom_check<S: NormSource + Sync>(source: &S, radius: u32) -> Result<AxiomReport> {
    if radius > source.max_radius() {
        return Err(MetricsError::OutOfRange(format!("radius {radius}")));
    }
    let g = source.source_group();
    let violation = |axiom: &str, x: &Element, y: &Element, z: &Element| MetricsError::AxiomViolation {
        axiom: axiom.into(),
        x: x.to_string(),
        y: y.to_string(),
        z: z.to_string(),
    };
    let all = source.within(radius);
    let mut ball_sizes = vec![0usize; radius as usize + 1];
    let id = g.identity();
    for x in &all {
        let n = source.norm_of(x).ok_or_else(|| violation("norm defined", x, x, x))?;
        if n > radius {
            return Err(violation("norm within radius", x, x, x));
        }
        for size in &mut ball_sizes[n as usize..] {
            *size += 1;
        }
        if (n == 0) != g.is_identity(x) {
            return Err(violation("|x| = 0 iff x = 1", x, &id, &id));
        }
        let inv = g.inverse(x);
        if source.norm_of(&inv) != Some(n) {
            return Err(violation("|x| = |x^-1|", x, &inv, &id));
        }
    }
    let by_norm: Vec<(Element, u32)> = all
        .iter()
        .map(|x| (x.clone(), source.norm_of(x).expect("checked")))
        .collect();
    let checked: Result<Vec<usize>> = by_norm
        .par_iter()
        .map(|(x, nx)| {
            let mut count = 0;
            for (y, ny) in by_norm.iter().filter(|(_, ny)| nx + ny <= radius) {
                let z = g.mul(x, y);
                match source.norm_of(&z) {
                    Some(nz) if nz <= nx + ny => count += 1,
                    _ => return Err(violation("|xy| <= |x| + |y|", x, y, &z)),
                }
            }
            Ok(count)
        })
        .collect();
    Ok(AxiomReport {
        radius,
        ball_sizes,
        pairs_checked: checked?.into_iter().sum(),
    })
}

/// `F_n`: lamp configurations supported on `[-n, n]` with zero shift.
pub fn lamp_chain(n_max: usize) -> Vec<Vec<Element>> {
    (1..=n_max as i64)
        .map(|n| {
            let width = 2 * n + 1;
            (0u64..1 << width)
                .map(|mask| Element::Lamp {
                    support: (0..width).filter(|i| mask >> i & 1 == 1).map(|i| i - n).collect(),
                    shift: 0,
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn lamp(support: &[i64], shift: i64) -> Element {
        Element::Lamp {
            support: support.to_vec(),
            shift,
        }
    }

    #[test]
    fn small_cases() {
        let (g, s) = catalog::lamplighter();
        let bs = build_ball_system(&g, &s, &lamp_chain(1), 1).unwrap();
        let mut want: Vec<Element> = s.elements().to_vec();
        want.push(g.identity());
        want.sort();
        assert_eq!(bs.layer(1), want.as_slice());
        assert_eq!(bs_norm(&bs, &g.identity()), Ok(0));
        assert_eq!(bs_norm(&bs, &lamp(&[0], 0)), Ok(1));
        assert!(matches!(bs_norm(&bs, &lamp(&[5], 0)), Err(MetricsError::OutOfRange(_))));
    }

    #[test]
    fn trivial_chain_gives_word_balls() {
        for (g, s) in [catalog::lamplighter(), catalog::z2_standard(), catalog::cylinder(4)] {
            let bs = build_ball_system(&g, &s, &[vec![g.identity()]], 5).unwrap();
            let ball = Ball::grow(&g, &s, 5).unwrap();
            let cumulative: Vec<usize> = (0..=5).map(|k| ball.count_within(k)).collect();
            assert_eq!(bs.layer_sizes(), cumulative);
            for x in ball.elements() {
                assert_eq!(bs.norm(x), ball.norm(x));
            }
        }
    }

    /// Oracle: B_n by brute force from the definition with plain loops.
    fn oracle_layers(g: &Group, s: &GeneratingSet, chain: &[Vec<Element>], n_max: usize) -> Vec<FxHashSet<Element>> {
        let mut b: Vec<FxHashSet<Element>> = vec![[g.identity()].into_iter().collect()];
        let mut b1: FxHashSet<Element> = s.elements().iter().cloned().collect();
        b1.insert(g.identity());
        b.push(b1);
        for n in 2..=n_max {
            let mut mid = FxHashSet::default();
            for k in 1..n {
                for x in &b[k] {
                    for y in &b[n - k] {
                        mid.insert(g.mul(x, y));
                    }
                }
            }
            let f = &chain[n - 1];
            let mut out = FxHashSet::default();
            for a in f {
                for x in &mid {
                    let ax = g.mul(a, x);
                    for c in f {
                        out.insert(g.mul(&ax, c));
                    }
                }
            }
            b.push(out);
        }
        b
    }

    #[test]
    fn lamplighter_matches_oracle() {
        let (g, s) = catalog::lamplighter();
        let chain = lamp_chain(3);
        let bs = build_ball_system(&g, &s, &chain, 3).unwrap();
        let oracle = oracle_layers(&g, &s, &chain, 3);
        for n in 0..=3 {
            let got: FxHashSet<Element> = bs.layer(n).iter().cloned().collect();
            assert_eq!(got, oracle[n], "layer {n}");
        }
        // a_2 lies in F_2 = F_2 * 1 * F_2 but not in B_1.
        assert_eq!(bs_norm(&bs, &lamp(&[2], 0)), Ok(2));
        assert!(metric_axiom_check(&bs, 3).is_ok());
    }

    #[test]
    fn annihilator_in_range() {
        let (g, s) = catalog::lamplighter();
        let bs = build_ball_system(&g, &s, &lamp_chain(3), 3).unwrap();
        let id = bs_annihilator_check(&bs, &g.identity(), 1).unwrap();
        assert!(id.violations.is_empty() && id.exceptions.is_empty());
        for f in bs.chain_member(1) {
            let rep = bs_annihilator_check(&bs, f, 1).unwrap();
            assert!(rep.violations.is_empty(), "{f}: {:?}", rep.violations);
            assert!(rep.exceptions.iter().all(|p| p.norm < 2 || p.shifted_norm < 2));
        }
        assert!(matches!(
            bs_annihilator_check(&bs, &lamp(&[2], 0), 1),
            Err(MetricsError::NotInChain { .. })
        ));
    }

    #[test]
    fn cayley_balls_satisfy_axioms() {
        let (g, s) = catalog::cylinder(4);
        let ball = Ball::grow(&g, &s, 6).unwrap();
        let rep = metric_axiom_check(&ball, 6).unwrap();
        assert_eq!(rep.ball_sizes[6], ball.len());
    }

    #[test]
    fn corrupted_system_is_caught() {
        let (g, s) = catalog::lamplighter();
        let bs = build_ball_system(&g, &s, &lamp_chain(2), 2).unwrap();
        let victim = lamp(&[1], 1);
        assert_eq!(bs.norm(&victim), Some(2));
        assert_ne!(g.inverse(&victim), victim);
        let mut layers: Vec<Vec<Element>> = (0..=2).map(|n| bs.layer(n).to_vec()).collect();
        layers[2].retain(|x| *x != victim);
        let broken = BallSystem::from_layers(g.clone(), lamp_chain(2), layers);
        assert!(matches!(
            metric_axiom_check(&broken, 2),
            Err(MetricsError::AxiomViolation { .. })
        ));
    }

    #[test]
    fn non_subgroup_chain_rejected() {
        let (g, s) = catalog::lamplighter();
        let bad = vec![vec![g.identity(), lamp(&[0], 0), lamp(&[1], 0)]];
        assert!(matches!(
            build_ball_system(&g, &s, &bad, 2),
            Err(MetricsError::NotASubgroup { index: 1, .. })
        ));
        assert!(matches!(
            build_ball_system_with_budget(&g, &s, &lamp_chain(3), 3, 100),
            Err(MetricsError::SizeBudget { .. })
        ));
    }
}
