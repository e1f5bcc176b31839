//! Busemann functionals restricted to finite balls, truncated boundary
//! enumeration, the group action on functionals, and bend-scan diagnostics
//! along geodesics.
//!
//! Every functional is stored as a vector of values in the ball's
//! enumeration order, so two functionals with the same domain radius are
//! equal iff their vectors are equal, and restricting to a smaller radius
//! is taking a prefix.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::{Ball, CayleyError, GeodesicPrefix};
use crate::group::Element;

/// Number of trailing outer radii a class must persist over to be called stable.
pub const DEFAULT_WINDOW: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundaryError {
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error("functional domain radius {have} is too small, need {need}")]
    DomainExhausted { need: u32, have: u32 },
    #[error("functionals have different domains ({left} vs {right})")]
    DomainMismatch { left: u32, right: u32 },
    #[error("no geodesic-prefix class dominates the given functional at level r={r}, m={m}")]
    NoDominatorAtLevel { r: u32, m: u32 },
    #[error("admissible range is empty: {0}")]
    RangeEmpty(String),
    #[error("class {class} takes value {value} at the slow geodesic's m-th vertex, above the bound {bound}")]
    BoundViolated { class: usize, value: i64, bound: i64 },
    #[error("no converged geodesic-prefix class at level r={r}, m={m}")]
    NoStableClasses { r: u32, m: u32 },
    #[error("invalid level: {0}")]
    InvalidLevel(String),
}

pub type Result<T> = std::result::Result<T, BoundaryError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// `b_y` for a point `y` of the ball.
    Interior,
    /// `b_y` for the endpoint of a maximally extendable geodesic prefix.
    GeodesicPrefix,
    /// A class persisting over the stability window.
    LimitClass,
    /// The image of another functional under the group action.
    Translated,
}

/// A 1-Lipschitz functional on `B_radius`, vanishing at the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Functional {
    pub radius: u32,
    pub values: Vec<i64>,
    pub provenance: Provenance,
    pub stable: bool,
}

impl Functional {
    pub fn new(ball: &Ball, radius: u32, values: Vec<i64>, provenance: Provenance) -> Self {
        let f = Functional {
            radius,
            values,
            provenance,
            stable: false,
        };
        debug_assert!(f.is_valid(ball), "functional violates normalization or Lipschitz bound");
        f
    }

    /// Checks `h(1) = 0`, `|h(x)| <= |x|` and `|h(x) - h(xs)| <= 1` on the domain.
    pub fn is_valid(&self, ball: &Ball) -> bool {
        let n = ball.count_within(self.radius);
        if self.values.len() != n || self.values.first() != Some(&0) {
            return false;
        }
        (0..n).all(|i| {
            self.values[i].unsigned_abs() <= u64::from(ball.norm_at(i))
                && (0..ball.generators().len()).all(|j| match ball.neighbor(i, j) {
                    Some(w) if w < n => (self.values[i] - self.values[w]).abs() <= 1,
                    _ => true,
                })
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value_at(&self, i: usize) -> Option<i64> {
        self.values.get(i).copied()
    }

    pub fn value_of(&self, ball: &Ball, x: &Element) -> Option<i64> {
        ball.index_of(x).and_then(|i| self.value_at(i))
    }

    /// Values on the smaller ball `B_k`.
    pub fn restricted(&self, ball: &Ball, k: u32) -> &[i64] {
        &self.values[..ball.count_within(k.min(self.radius))]
    }

    /// True if `self >= other` pointwise on the common domain.
    pub fn dominates(&self, other: &Functional) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a >= b)
    }
}

fn busemann_values(ball: &Ball, yi: usize, m: u32) -> Vec<i64> {
    let g = ball.group();
    let yinv = g.inverse(ball.element(yi));
    let ny = i64::from(ball.norm_at(yi));
    (0..ball.count_within(m))
        .map(|xi| {
            let z = g.mul(&yinv, ball.element(xi));
            let d = ball.norm(&z).expect("|y| + m within ball radius");
            i64::from(d) - ny
        })
        .collect()
}

/// `b_y(x) = |y^-1 x| - |y|` on `B_m`.
pub fn busemann_functional(ball: &Ball, y: &Element, m: u32) -> Result<Functional> {
    let yi = ball
        .index_of(y)
        .ok_or_else(|| CayleyError::OutOfBall(y.to_string()))?;
    let need = ball.norm_at(yi) + m;
    if need > ball.radius() {
        return Err(CayleyError::OutOfBall(format!(
            "b_{y} on B_{m} needs radius {need}, ball has {}",
            ball.radius()
        ))
        .into());
    }
    Ok(Functional::new(ball, m, busemann_values(ball, yi, m), Provenance::Interior))
}

/// One restriction class at a truncation level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub functional: Functional,
    /// First sphere point realizing the class, in ball order.
    pub witness: Element,
    /// Number of sphere points realizing the class.
    pub count: usize,
    /// Realized by the endpoint of a maximally extendable geodesic prefix.
    pub busemann: bool,
    /// Present in the full class set at every radius of the window.
    pub stable: bool,
    /// Realized by a maximally extendable prefix at every radius of the window.
    pub converged: bool,
    /// Equal to some `b_z` with `|z| <= m`; `None` when the ball is too small to decide.
    pub interior_shadow: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryApprox {
    pub outer_radius: u32,
    pub domain_radius: u32,
    pub window: u32,
    pub classes: Vec<ClassEntry>,
}

impl BoundaryApprox {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn stable_count(&self) -> usize {
        self.classes.iter().filter(|c| c.stable).count()
    }

    pub fn stable(&self) -> impl Iterator<Item = &ClassEntry> {
        self.classes.iter().filter(|c| c.stable)
    }

    pub fn busemann(&self) -> impl Iterator<Item = &ClassEntry> {
        self.classes.iter().filter(|c| c.busemann)
    }

    pub fn converged(&self) -> impl Iterator<Item = &ClassEntry> {
        self.classes.iter().filter(|c| c.converged)
    }

    /// Indices of the converged geodesic-prefix classes, falling back to all
    /// geodesic-prefix classes when none has converged.
    pub fn tracked_indices(&self) -> Vec<usize> {
        let conv: Vec<usize> = (0..self.classes.len()).filter(|&i| self.classes[i].converged).collect();
        if conv.is_empty() {
            (0..self.classes.len()).filter(|&i| self.classes[i].busemann).collect()
        } else {
            conv
        }
    }
}

struct SphereClasses {
    /// (values, first witness index, count, realized by a maximal prefix)
    classes: Vec<(Vec<i64>, usize, usize, bool)>,
}

fn sphere_classes(ball: &Ball, r: u32, m: u32) -> SphereClasses {
    let horizon = ball.horizons();
    let sphere: Vec<usize> = ball.sphere(r).collect();
    let vals: Vec<Vec<i64>> = sphere.par_iter().map(|&yi| busemann_values(ball, yi, m)).collect();
    let mut index: FxHashMap<&[i64], usize> = FxHashMap::default();
    let mut classes: Vec<(Vec<i64>, usize, usize, bool)> = Vec::new();
    for (k, v) in vals.iter().enumerate() {
        let yi = sphere[k];
        let maximal = horizon[yi] >= ball.radius();
        match index.get(v.as_slice()) {
            Some(&c) => {
                classes[c].2 += 1;
                classes[c].3 |= maximal;
            }
            None => {
                index.insert(v.as_slice(), classes.len());
                classes.push((v.clone(), yi, 1, maximal));
            }
        }
    }
    SphereClasses { classes }
}

fn check_level(ball: &Ball, r: u32, m: u32) -> Result<()> {
    if m >= r {
        return Err(BoundaryError::InvalidLevel(format!("need m < r, got m={m}, r={r}")));
    }
    if r + m > ball.radius() {
        return Err(CayleyError::OutOfBall(format!(
            "level r={r}, m={m} needs ball radius {}, have {}",
            r + m,
            ball.radius()
        ))
        .into());
    }
    Ok(())
}

/// The set `{b_y|B_m : |y| = r}` with stability over `[r - window, r]`.
pub fn boundary_approx(ball: &Ball, r: u32, m: u32) -> Result<BoundaryApprox> {
    boundary_approx_with_window(ball, r, m, DEFAULT_WINDOW)
}

pub fn boundary_approx_with_window(ball: &Ball, r: u32, m: u32, window: u32) -> Result<BoundaryApprox> {
    check_level(ball, r, m)?;
    let current = sphere_classes(ball, r, m);
    let lo = r.saturating_sub(window).max(1);
    let earlier: Vec<SphereClasses> = (lo..r).map(|rr| sphere_classes(ball, rr, m)).collect();
    let all_sets: Vec<HashSet<&[i64]>> = earlier
        .iter()
        .map(|sc| sc.classes.iter().map(|c| c.0.as_slice()).collect())
        .collect();
    let bus_sets: Vec<HashSet<&[i64]>> = earlier
        .iter()
        .map(|sc| sc.classes.iter().filter(|c| c.3).map(|c| c.0.as_slice()).collect())
        .collect();
    let shadows: Option<HashSet<Vec<i64>>> = (2 * m <= ball.radius()).then(|| {
        (0..ball.count_within(m))
            .into_par_iter()
            .map(|zi| busemann_values(ball, zi, m))
            .collect::<Vec<_>>()
            .into_iter()
            .collect()
    });
    let classes = current
        .classes
        .into_iter()
        .map(|(values, yi, count, busemann)| {
            let stable = all_sets.iter().all(|s| s.contains(values.as_slice()));
            let converged = busemann && bus_sets.iter().all(|s| s.contains(values.as_slice()));
            let interior_shadow = shadows.as_ref().map(|s| s.contains(&values));
            let provenance = if stable {
                Provenance::LimitClass
            } else if busemann {
                Provenance::GeodesicPrefix
            } else {
                Provenance::Interior
            };
            let mut functional = Functional::new(ball, m, values, provenance);
            functional.stable = stable;
            ClassEntry {
                functional,
                witness: ball.element(yi).clone(),
                count,
                busemann,
                stable,
                converged,
                interior_shadow,
            }
        })
        .collect();
    Ok(BoundaryApprox {
        outer_radius: r,
        domain_radius: m,
        window,
        classes,
    })
}

/// Restrictions `b_{gamma_r}|B_m` over maximally extendable geodesic prefixes
/// of length `r`; `stable` marks classes that have converged over the window.
pub fn busemann_point_approx(ball: &Ball, r: u32, m: u32) -> Result<Vec<Functional>> {
    let approx = boundary_approx(ball, r, m)?;
    Ok(approx
        .classes
        .into_iter()
        .filter(|c| c.busemann)
        .map(|c| Functional {
            provenance: Provenance::GeodesicPrefix,
            stable: c.converged,
            ..c.functional
        })
        .collect())
}

/// `x.h(y) = h(x^-1 y) - h(x^-1)` on `B_{m - |x|}`.
pub fn act(h: &Functional, x: &Element, ball: &Ball) -> Result<Functional> {
    let nx = ball
        .norm(x)
        .ok_or_else(|| CayleyError::OutOfBall(x.to_string()))?;
    if nx > h.radius {
        return Err(BoundaryError::DomainExhausted { need: nx, have: h.radius });
    }
    let g = ball.group();
    let xinv = g.inverse(x);
    let base = h.values[ball.index_of(&xinv).expect("inverse has the same norm")];
    let radius = h.radius - nx;
    let values = (0..ball.count_within(radius))
        .map(|yi| {
            let z = g.mul(&xinv, ball.element(yi));
            h.values[ball.index_of(&z).expect("|x^-1 y| <= m")] - base
        })
        .collect();
    Ok(Functional::new(ball, radius, values, Provenance::Translated))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionEntry {
    pub generator: String,
    pub class: usize,
    /// `s.h` on `B_{m-1}`.
    pub image: Vec<i64>,
    /// Classes whose restriction to `B_{m-1}` equals the image.
    pub matches: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionTable {
    pub domain_radius: u32,
    pub entries: Vec<ActionEntry>,
}

impl ActionTable {
    pub fn entry(&self, generator: usize, class: usize, classes: usize) -> &ActionEntry {
        &self.entries[generator * classes + class]
    }
}

pub fn action_table(approx: &BoundaryApprox, ball: &Ball) -> Result<ActionTable> {
    let m = approx.domain_radius;
    if m == 0 {
        return Err(BoundaryError::DomainExhausted { need: 1, have: 0 });
    }
    let gens = ball.generators();
    let mut entries = Vec::with_capacity(gens.len() * approx.classes.len());
    for (j, s) in gens.elements().iter().enumerate() {
        for (ci, c) in approx.classes.iter().enumerate() {
            let image = act(&c.functional, s, ball)?.values;
            let matches = approx
                .classes
                .iter()
                .enumerate()
                .filter(|(_, d)| d.functional.restricted(ball, m - 1) == image.as_slice())
                .map(|(i, _)| i)
                .collect();
            entries.push(ActionEntry {
                generator: gens.label(j).to_string(),
                class: ci,
                image,
                matches,
            });
        }
    }
    Ok(ActionTable {
        domain_radius: m - 1,
        entries,
    })
}

/// Elements of `B_search` fixing every tracked geodesic-prefix class on the common domain.
pub fn kernel_approx(approx: &BoundaryApprox, search_radius: u32, ball: &Ball) -> Result<Vec<Element>> {
    let m = approx.domain_radius;
    if search_radius > m {
        return Err(BoundaryError::DomainExhausted { need: search_radius, have: m });
    }
    let tracked = approx.tracked_indices();
    let mut out = Vec::new();
    for xi in 0..ball.count_within(search_radius) {
        let x = ball.element(xi);
        let fixes_all = tracked.iter().all(|&c| {
            let h = &approx.classes[c].functional;
            let moved = act(h, x, ball).expect("|x| <= m");
            moved.values.as_slice() == h.restricted(ball, moved.radius)
        });
        if fixes_all {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// Estimate of the index of the kernel of the action on geodesic-prefix classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum IndexEstimate {
    Exact(u64),
    LowerBound(u64),
}

impl IndexEstimate {
    pub fn value(self) -> u64 {
        match self {
            IndexEstimate::Exact(v) | IndexEstimate::LowerBound(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, IndexEstimate::Exact(_))
    }
}

const PERMUTATION_GROUP_CAP: usize = 200_000;

/// Order of the permutation group the generators induce on the tracked
/// classes. When some generator does not map tracked classes bijectively
/// onto tracked classes, the size of the largest orbit is a lower bound.
pub fn index_estimate(approx: &BoundaryApprox, ball: &Ball) -> Result<IndexEstimate> {
    let tracked = approx.tracked_indices();
    let n = tracked.len();
    if n == 0 {
        return Ok(IndexEstimate::LowerBound(1));
    }
    let table = action_table(approx, ball)?;
    let pos: FxHashMap<usize, usize> = tracked.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut partial: Vec<Vec<Option<usize>>> = Vec::new();
    let mut well_defined = true;
    for j in 0..ball.generators().len() {
        let images: Vec<Option<usize>> = tracked
            .iter()
            .map(|&c| {
                let e = table.entry(j, c, approx.classes.len());
                let hits: Vec<usize> = e.matches.iter().filter_map(|m| pos.get(m).copied()).collect();
                (hits.len() == 1).then(|| hits[0])
            })
            .collect();
        let bijective = images.iter().all(Option::is_some)
            && images.iter().flatten().collect::<BTreeSet<_>>().len() == n;
        if bijective {
            perms.push(images.iter().map(|i| i.expect("checked")).collect());
        } else {
            well_defined = false;
        }
        partial.push(images);
    }
    if !well_defined {
        let mut best = 1;
        for start in 0..n {
            let mut seen = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(a) = stack.pop() {
                for p in &partial {
                    if let Some(b) = p[a] {
                        if seen.insert(b) {
                            stack.push(b);
                        }
                    }
                }
            }
            best = best.max(seen.len());
        }
        return Ok(IndexEstimate::LowerBound(best as u64));
    }
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in &perms {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                if seen.len() > PERMUTATION_GROUP_CAP {
                    return Ok(IndexEstimate::LowerBound(seen.len() as u64));
                }
                frontier.push(q);
            }
        }
    }
    Ok(IndexEstimate::Exact(seen.len() as u64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignMatch {
    pub q: i64,
    pub kernel_deviation: i64,
    pub full_deviation: i64,
}

/// Chooses `q` in `{1, -1}` minimizing `max_{x in K} |g(x) - q h(x)|`; ties go to `+1`.
pub fn sign_match(g: &Functional, h: &Functional, kernel: &[Element], ball: &Ball) -> Result<SignMatch> {
    if g.radius != h.radius {
        return Err(BoundaryError::DomainMismatch { left: g.radius, right: h.radius });
    }
    let idx: Vec<usize> = kernel
        .iter()
        .map(|x| {
            ball.index_of(x)
                .filter(|&i| i < g.len())
                .ok_or_else(|| BoundaryError::DomainExhausted {
                    need: ball.norm(x).unwrap_or(u32::MAX),
                    have: g.radius,
                })
        })
        .collect::<Result<_>>()?;
    let dev = |q: i64, it: &mut dyn Iterator<Item = usize>| -> i64 {
        it.map(|i| (g.values[i] - q * h.values[i]).abs()).max().unwrap_or(0)
    };
    let plus = dev(1, &mut idx.iter().copied());
    let minus = dev(-1, &mut idx.iter().copied());
    let q = if minus < plus { -1 } else { 1 };
    Ok(SignMatch {
        q,
        kernel_deviation: plus.min(minus),
        full_deviation: dev(q, &mut (0..g.len())),
    })
}

/// A geodesic-prefix class at level `(r, h.radius)` dominating `h` pointwise.
pub fn dominating_busemann(h: &Functional, ball: &Ball, r: u32) -> Result<Functional> {
    let candidates = busemann_point_approx(ball, r, h.radius)?;
    if let Some(same) = candidates.iter().find(|g| g.values == h.values) {
        return Ok(same.clone());
    }
    candidates
        .into_iter()
        .find(|g| g.dominates(h))
        .ok_or(BoundaryError::NoDominatorAtLevel { r, m: h.radius })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BendScan {
    pub step: u32,
    /// `phi[k] = h(alpha_{k+step}) - h(alpha_k)`.
    pub phi: Vec<i64>,
    pub signs: Vec<i8>,
    pub epsilon: i64,
    pub argmin: usize,
}

impl BendScan {
    /// Largest `|phi(k+1) - phi(k)|`.
    pub fn max_jump(&self) -> i64 {
        self.phi.windows(2).map(|w| (w[1] - w[0]).abs()).max().unwrap_or(0)
    }

    /// First index in `0..=upto` minimizing `|phi|`.
    pub fn argmin_within(&self, upto: usize) -> (usize, i64) {
        let mut best = (0, i64::MAX);
        for (k, v) in self.phi.iter().enumerate().take(upto + 1) {
            if v.abs() < best.1 {
                best = (k, v.abs());
            }
        }
        best
    }
}

pub fn bend_scan(alpha: &GeodesicPrefix, step: u32, h: &Functional, ball: &Ball) -> Result<BendScan> {
    let n = alpha.len();
    if (step as usize) > n {
        return Err(BoundaryError::RangeEmpty(format!("geodesic of length {n} is shorter than step {step}")));
    }
    let vals: Vec<i64> = alpha
        .vertices
        .iter()
        .map(|v| {
            h.value_of(ball, v).ok_or_else(|| BoundaryError::DomainExhausted {
                need: ball.norm(v).unwrap_or(u32::MAX),
                have: h.radius,
            })
        })
        .collect::<Result<_>>()?;
    let s = step as usize;
    let phi: Vec<i64> = (0..=n - s).map(|k| vals[k + s] - vals[k]).collect();
    let signs = phi.iter().map(|v| v.signum() as i8).collect();
    let mut scan = BendScan {
        step,
        phi,
        signs,
        epsilon: 0,
        argmin: 0,
    };
    let (t, eps) = scan.argmin_within(n - s);
    scan.argmin = t;
    scan.epsilon = eps;
    Ok(scan)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlowGeodesic {
    pub target: Element,
    pub step: u32,
    pub length: u32,
    pub offset: usize,
    pub beta: GeodesicPrefix,
    pub scan: BendScan,
    pub index: IndexEstimate,
    pub bound: i64,
    /// `(class index, h(beta_step))` for every tracked class.
    pub values: Vec<(usize, i64)>,
}

/// Re-roots a geodesic from the identity to `x` at the bend-scan index to get
/// a geodesic `beta` of length `len` along which every tracked class moves slowly.
pub fn slow_geodesic(
    x: &Element,
    step: u32,
    len: u32,
    ball: &Ball,
    approx: &BoundaryApprox,
) -> Result<SlowGeodesic> {
    let nx = ball
        .norm(x)
        .ok_or_else(|| CayleyError::OutOfBall(x.to_string()))?;
    let upper = 2 * i64::from(nx) / (i64::from(step) + 2) - i64::from(step);
    if step == 0 || i64::from(step) > upper || i64::from(len) < i64::from(step) || i64::from(len) > upper {
        return Err(BoundaryError::RangeEmpty(format!(
            "need 1 <= m <= l <= {upper} for |x| = {nx}, got m={step}, l={len}"
        )));
    }
    let tracked: Vec<usize> = (0..approx.classes.len()).filter(|&i| approx.classes[i].converged).collect();
    if tracked.is_empty() {
        return Err(BoundaryError::NoStableClasses {
            r: approx.outer_radius,
            m: approx.domain_radius,
        });
    }
    let index = index_estimate(approx, ball)?;
    let bound = 6 * index.value() as i64 + 1;
    let alpha = ball.geodesic_between(&ball.group().identity(), x)?;
    let h = &approx.classes[tracked[0]].functional;
    let scan = bend_scan(&alpha, step, h, ball)?;
    let reach = (nx / (step + 2) + 1) as usize * step as usize;
    let (t, _) = scan.argmin_within(reach.min(nx as usize - len as usize));
    let g = ball.group();
    let base = g.inverse(&alpha.vertices[t]);
    let vertices: Vec<Element> = (0..=len as usize).map(|j| g.mul(&base, &alpha.vertices[t + j])).collect();
    let end = ball.index_of(vertices.last().expect("nonempty")).expect("in ball");
    let beta = GeodesicPrefix {
        vertices,
        horizon: ball.horizons()[end],
    };
    debug_assert!(beta.is_geodesic(ball));
    let probe = &beta.vertices[step as usize];
    let mut values = Vec::new();
    for &c in &tracked {
        let v = approx.classes[c]
            .functional
            .value_of(ball, probe)
            .expect("|beta_m| = m <= domain radius");
        if v.abs() > bound {
            return Err(BoundaryError::BoundViolated { class: c, value: v, bound });
        }
        values.push((c, v));
    }
    Ok(SlowGeodesic {
        target: x.clone(),
        step,
        length: len,
        offset: t,
        beta,
        scan,
        index,
        bound,
        values,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub seed: u64,
    pub samples: usize,
    pub sample_radius: u32,
    pub domain_radius: u32,
    pub comparisons: usize,
    /// `(y, z, x)` with `z` on a geodesic from the identity to `y` and `b_z(x) < b_y(x)`.
    pub violations: Vec<(Element, Element, Element)>,
}

/// Samples `y` uniformly from `B_{sample_radius}` and checks `b_z >= b_y` on
/// `B_{domain_radius}` for every `z` in the segment from the identity to `y`.
pub fn interval_monotonicity(
    ball: &Ball,
    samples: usize,
    sample_radius: u32,
    domain_radius: u32,
    seed: u64,
) -> Result<MonotonicityReport> {
    if sample_radius + domain_radius > ball.radius() {
        return Err(CayleyError::OutOfBall(format!(
            "sampling B_{sample_radius} against B_{domain_radius} needs radius {}",
            sample_radius + domain_radius
        ))
        .into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = ball.count_within(sample_radius);
    let picks: Vec<usize> = (0..samples).map(|_| rng.gen_range(0..pool)).collect();
    let id = ball.group().identity();
    type Triple = (Element, Element, Element);
    let per_sample: Vec<(usize, Vec<Triple>)> = picks
        .par_iter()
        .map(|&yi| {
            let y = ball.element(yi);
            let by = busemann_functional(ball, y, domain_radius)?;
            let mut count = 0;
            let mut bad = Vec::new();
            for z in ball.segment(&id, y)? {
                let bz = busemann_functional(ball, &z, domain_radius)?;
                for (i, (a, b)) in bz.values.iter().zip(&by.values).enumerate() {
                    count += 1;
                    if a < b {
                        bad.push((y.clone(), z.clone(), ball.element(i).clone()));
                    }
                }
            }
            Ok((count, bad))
        })
        .collect::<Result<_>>()?;
    Ok(MonotonicityReport {
        seed,
        samples,
        sample_radius,
        domain_radius,
        comparisons: per_sample.iter().map(|(c, _)| c).sum(),
        violations: per_sample.into_iter().flat_map(|(_, v)| v).collect(),
    })
}
