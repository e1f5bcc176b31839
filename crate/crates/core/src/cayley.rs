//! Word-metric balls, distances, segments and geodesic prefix trees in
//! Cayley graphs.
//!
//! A [`Ball`] stores every element of norm at most `radius` in BFS order,
//! so the elements of norm at most `k` always form a prefix of the
//! enumeration. Parents are assigned by the first generator (in generating
//! set order) that discovers an element, which makes every downstream
//! tie-break deterministic.

use std::fmt::Write as _;
use std::ops::Range;
use std::sync::OnceLock;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{Element, GeneratingSet, Group};

/// Default element-count budget for ball growth.
pub const DEFAULT_BUDGET: usize = 5_000_000;

const NONE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("ball of radius {radius} exceeds the element budget {budget}")]
    BallTooLarge { radius: u32, budget: usize },
    #[error("{0} lies outside the computed ball")]
    OutOfBall(String),
    #[error("invalid request: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug)]
pub struct Ball {
    group: Group,
    gens: GeneratingSet,
    radius: u32,
    elements: Vec<Element>,
    index: FxHashMap<Element, u32>,
    dist: Vec<u32>,
    parent: Vec<(u32, u32)>,
    layer_ends: Vec<usize>,
    neighbors: Vec<u32>,
    horizons: OnceLock<Vec<u32>>,
}

impl Ball {
    /// Grows the ball `{x : |x|_S <= radius}` with the default budget.
    pub fn grow(group: &Group, gens: &GeneratingSet, radius: u32) -> Result<Self, CayleyError> {
        Self::grow_with_budget(group, gens, radius, DEFAULT_BUDGET)
    }

    pub fn grow_with_budget(
        group: &Group,
        gens: &GeneratingSet,
        radius: u32,
        budget: usize,
    ) -> Result<Self, CayleyError> {
        let k = gens.len();
        let mut elements = vec![group.identity()];
        let mut index = FxHashMap::default();
        index.insert(group.identity(), 0u32);
        let mut dist = vec![0u32];
        let mut parent = vec![(NONE, NONE)];
        let mut layer_ends = vec![1usize];
        let mut neighbors: Vec<u32> = Vec::new();
        let mut start = 0;
        for layer in 0..=radius {
            let end = elements.len();
            for i in start..end {
                for (si, s) in gens.elements().iter().enumerate() {
                    let y = group.mul(&elements[i], s);
                    let j = match index.get(&y) {
                        Some(&j) => j,
                        None if layer < radius => {
                            if elements.len() >= budget {
                                return Err(CayleyError::BallTooLarge { radius, budget });
                            }
                            let j = elements.len() as u32;
                            index.insert(y.clone(), j);
                            elements.push(y);
                            dist.push(layer + 1);
                            parent.push((i as u32, si as u32));
                            j
                        }
                        None => NONE,
                    };
                    neighbors.push(j);
                }
            }
            if layer < radius {
                layer_ends.push(elements.len());
            }
            start = end;
        }
        debug_assert_eq!(neighbors.len(), elements.len() * k);
        Ok(Ball {
            group: group.clone(),
            gens: gens.clone(),
            radius,
            elements,
            index,
            dist,
            parent,
            layer_ends,
            neighbors,
            horizons: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn generators(&self) -> &GeneratingSet {
        &self.gens
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    /// `|x|_S`, if `x` lies in the ball.
    pub fn norm(&self, x: &Element) -> Option<u32> {
        self.index_of(x).map(|i| self.dist[i])
    }

    pub fn norm_at(&self, i: usize) -> u32 {
        self.dist[i]
    }

    /// Number of elements of norm at most `k` (clamped to the radius).
    pub fn count_within(&self, k: u32) -> usize {
        self.layer_ends[k.min(self.radius) as usize]
    }

    /// Index range of the sphere of radius `k`.
    pub fn sphere(&self, k: u32) -> Range<usize> {
        if k > self.radius {
            return 0..0;
        }
        let start = if k == 0 { 0 } else { self.layer_ends[k as usize - 1] };
        start..self.layer_ends[k as usize]
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        (0..=self.radius).map(|k| self.sphere(k).len()).collect()
    }

    /// BFS parent of element `i` and the generator index of the edge into `i`.
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        let (p, s) = self.parent[i];
        (p != NONE).then_some((p as usize, s as usize))
    }

    /// Index of `x_i * s_j`, if inside the ball.
    pub fn neighbor(&self, i: usize, j: usize) -> Option<usize> {
        let n = self.neighbors[i * self.gens.len() + j];
        (n != NONE).then_some(n as usize)
    }

    /// Generator word of the BFS-parent path from the identity to element `i`.
    pub fn word(&self, i: usize) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.dist[i] as usize);
        let mut cur = i;
        while let Some((p, s)) = self.parent(cur) {
            w.push(s);
            cur = p;
        }
        w.reverse();
        w
    }

    /// Vertex indices along the BFS-parent path from the identity to `i`.
    pub fn path(&self, i: usize) -> Vec<usize> {
        let mut p = vec![i];
        let mut cur = i;
        while let Some((q, _)) = self.parent(cur) {
            p.push(q);
            cur = q;
        }
        p.reverse();
        p
    }

    fn locate(&self, x: &Element) -> Result<usize, CayleyError> {
        self.index_of(x).ok_or_else(|| CayleyError::OutOfBall(x.to_string()))
    }

    /// Index of `x^-1 y`.
    pub fn relative_index(&self, x: &Element, y: &Element) -> Result<usize, CayleyError> {
        let z = self.group.mul(&self.group.inverse(x), y);
        self.locate(&z)
    }

    /// `d_S(x, y) = |x^-1 y|_S`.
    pub fn distance(&self, x: &Element, y: &Element) -> Result<u32, CayleyError> {
        Ok(self.dist[self.relative_index(x, y)?])
    }

    /// The metric segment `[x, y] = {z : d(x,y) = d(x,z) + d(z,y)}`, in ball order of `x^-1 z`.
    pub fn segment(&self, x: &Element, y: &Element) -> Result<Vec<Element>, CayleyError> {
        let target = self.group.mul(&self.group.inverse(x), y);
        let t = self.locate(&target)?;
        let n = self.dist[t];
        let mut out = Vec::new();
        for zi in 0..self.count_within(n) {
            let z = &self.elements[zi];
            let rest = self.group.mul(&self.group.inverse(z), &target);
            if let Some(ri) = self.index_of(&rest) {
                if self.dist[zi] + self.dist[ri] == n {
                    out.push(self.group.mul(x, z));
                }
            }
        }
        Ok(out)
    }

    /// `horizon[i]`: the largest `r <= radius` such that element `i` lies on
    /// a geodesic from the identity to the sphere of radius `r`.
    pub fn horizons(&self) -> &[u32] {
        self.horizons.get_or_init(|| {
            let mut h = self.dist.clone();
            let k = self.gens.len();
            for i in (0..self.len()).rev() {
                for j in 0..k {
                    if let Some(w) = self.neighbor(i, j) {
                        if self.dist[w] == self.dist[i] + 1 && h[w] > h[i] {
                            h[i] = h[w];
                        }
                    }
                }
            }
            h
        })
    }

    /// One deterministic geodesic from `x` to `y`: the BFS-parent path to
    /// `x^-1 y`, translated by `x`.
    pub fn geodesic_between(&self, x: &Element, y: &Element) -> Result<GeodesicPrefix, CayleyError> {
        let t = self.relative_index(x, y)?;
        let vertices = self
            .path(t)
            .into_iter()
            .map(|i| self.group.mul(x, &self.elements[i]))
            .collect();
        Ok(GeodesicPrefix {
            vertices,
            horizon: self.horizons()[t],
        })
    }

    /// All length-`n` geodesic prefixes from the identity that extend to
    /// geodesics of length `r`.
    pub fn geodesic_prefixes(&self, n: u32, r: u32) -> Result<PrefixTree, CayleyError> {
        if n > r || r > self.radius {
            return Err(CayleyError::OutOfBall(format!(
                "prefix request n={n}, r={r} with ball radius {}",
                self.radius
            )));
        }
        let h = self.horizons();
        let mut nodes = vec![PrefixNode {
            vertex: 0,
            parent: None,
            depth: 0,
            horizon: h[0],
        }];
        let mut frontier = vec![0usize];
        for depth in 0..n {
            let mut next = Vec::new();
            for &node in &frontier {
                let v = nodes[node].vertex;
                let mut children: Vec<usize> = Vec::new();
                for j in 0..self.gens.len() {
                    if let Some(w) = self.neighbor(v, j) {
                        if self.dist[w] == depth + 1 && h[w] >= r && !children.contains(&w) {
                            children.push(w);
                        }
                    }
                }
                for w in children {
                    nodes.push(PrefixNode {
                        vertex: w,
                        parent: Some(node),
                        depth: depth + 1,
                        horizon: h[w],
                    });
                    next.push(nodes.len() - 1);
                }
            }
            frontier = next;
        }
        Ok(PrefixTree {
            depth: n,
            required_horizon: r,
            nodes,
        })
    }

    /// CSV with header `element,distance,parent`; the parent column is the
    /// label of the generator on the BFS edge into the element.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("element,distance,parent\n");
        for i in 0..self.len() {
            let label = self.parent(i).map_or("", |(_, s)| self.gens.label(s));
            let _ = writeln!(out, "\"{}\",{},{}", self.elements[i], self.dist[i], label);
        }
        out
    }
}

/// A finite geodesic `(gamma_0, ..., gamma_n)` with its extendability horizon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodesicPrefix {
    pub vertices: Vec<Element>,
    pub horizon: u32,
}

impl GeodesicPrefix {
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() <= 1
    }

    pub fn endpoint(&self) -> &Element {
        self.vertices.last().expect("nonempty")
    }

    /// Checks `d(gamma_i, gamma_j) = |i - j|` for all pairs.
    pub fn is_geodesic(&self, ball: &Ball) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            (i..n).all(|j| ball.distance(&self.vertices[i], &self.vertices[j]).ok() == Some((j - i) as u32))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixNode {
    /// Ball index of the vertex.
    pub vertex: usize,
    pub parent: Option<usize>,
    pub depth: u32,
    pub horizon: u32,
}

/// Rooted tree of geodesic prefixes from the identity.
#[derive(Clone, Debug)]
pub struct PrefixTree {
    pub depth: u32,
    pub required_horizon: u32,
    pub nodes: Vec<PrefixNode>,
}

impl PrefixTree {
    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(move |&i| self.nodes[i].depth == self.depth)
    }

    /// Ball indices along the prefix ending at `node`.
    pub fn vertex_path(&self, node: usize) -> Vec<usize> {
        let mut out = vec![self.nodes[node].vertex];
        let mut cur = node;
        while let Some(p) = self.nodes[cur].parent {
            out.push(self.nodes[p].vertex);
            cur = p;
        }
        out.reverse();
        out
    }

    /// All depth-`n` prefixes.
    pub fn prefixes(&self, ball: &Ball) -> Vec<GeodesicPrefix> {
        self.leaves()
            .map(|leaf| GeodesicPrefix {
                vertices: self
                    .vertex_path(leaf)
                    .into_iter()
                    .map(|i| ball.element(i).clone())
                    .collect(),
                horizon: self.nodes[leaf].horizon,
            })
            .collect()
    }

    /// Graphviz rendering; node labels carry the element and its horizon.
    pub fn to_dot(&self, ball: &Ball) -> String {
        let mut out = String::from("digraph prefixes {\n  rankdir=LR;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(
                out,
                "  n{i} [label=\"{} h={}\"];",
                ball.element(n.vertex),
                n.horizon
            );
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some(p) = n.parent {
                let _ = writeln!(out, "  n{p} -> n{i};");
            }
        }
        out.push_str("}\n");
        out
    }
}
