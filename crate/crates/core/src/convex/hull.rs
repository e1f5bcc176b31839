//! Exact convex hulls of small rational point clouds by facet enumeration
//! inside the affine hull.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{ratio_string, ConvexError, Q};

/// `normal . x <= bound` (or `=` for equalities), with coprime integer entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Inequality {
    pub normal: Vec<i64>,
    pub bound: i64,
}

impl Inequality {
    pub fn evaluate(&self, x: &[Q]) -> Q {
        self.normal
            .iter()
            .zip(x)
            .fold(Q::zero(), |acc, (&a, v)| acc + Q::from_integer(BigInt::from(a)) * v)
    }

    fn bound_q(&self) -> Q {
        Q::from_integer(BigInt::from(self.bound))
    }

    pub fn satisfied_by(&self, x: &[Q]) -> bool {
        self.evaluate(x) <= self.bound_q()
    }

    pub fn tight_at(&self, x: &[Q]) -> bool {
        self.evaluate(x) == self.bound_q()
    }
}

/// A polytope with matching vertex and half-space descriptions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    pub dim: usize,
    /// Dimension of the affine hull.
    pub affine_dim: usize,
    /// Extreme points, sorted lexicographically.
    pub vertices: Vec<Vec<Q>>,
    pub inequalities: Vec<Inequality>,
    /// Equations `normal . x = bound` cutting out the affine hull.
    pub equalities: Vec<Inequality>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub affine_dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub inequalities: Vec<Inequality>,
    pub equalities: Vec<Inequality>,
}

impl RationalPolytope {
    pub fn contains(&self, x: &[Q]) -> bool {
        self.inequalities.iter().all(|h| h.satisfied_by(x)) && self.equalities.iter().all(|h| h.tight_at(x))
    }

    pub fn is_vertex(&self, x: &[Q]) -> bool {
        self.vertices.iter().any(|v| v.as_slice() == x)
    }

    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson {
            dim: self.dim,
            affine_dim: self.affine_dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(ratio_string).collect())
                .collect(),
            inequalities: self.inequalities.clone(),
            equalities: self.equalities.clone(),
        }
    }
}

/// Reduced row echelon form; returns the pivot columns.
pub(crate) fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let lead = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &lead;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : m x = 0}`.
pub(crate) fn nullspace(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -a[i][f].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational row `(a, b)` to coprime integers.
fn integer_normalize(normal: &[Q], bound: &Q) -> Result<Inequality, ConvexError> {
    let mut lcm = BigInt::one();
    for x in normal.iter().chain(std::iter::once(bound)) {
        lcm = lcm.lcm(x.denom());
    }
    let scaled: Vec<BigInt> = normal
        .iter()
        .chain(std::iter::once(bound))
        .map(|x| (x * Q::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for x in &scaled {
        g = g.gcd(x);
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    let ints: Vec<i64> = scaled
        .iter()
        .map(|x| (x / &g).to_i64().ok_or(ConvexError::Overflow))
        .collect::<Result<_, _>>()?;
    let (bound, normal) = ints.split_last().expect("nonempty");
    Ok(Inequality {
        normal: normal.to_vec(),
        bound: *bound,
    })
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Exact hull of `points`; fails if the ambient dimension exceeds `cap`.
pub fn convex_hull(points: &[Vec<Q>], cap: usize) -> Result<RationalPolytope, ConvexError> {
    let first = points.first().ok_or(ConvexError::Empty)?;
    let dim = first.len();
    if dim > cap {
        return Err(ConvexError::DimensionCap { dim, cap });
    }
    if points.iter().any(|p| p.len() != dim) {
        return Err(ConvexError::Ragged);
    }
    let pts: Vec<Vec<Q>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let base = &pts[0];
    let diffs: Vec<Vec<Q>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let mut echelon = diffs.clone();
    let pivots = rref(&mut echelon);
    let k = pivots.len();

    let mut equalities = Vec::new();
    let directions: Vec<Vec<Q>> = echelon.into_iter().take(k).collect();
    for n in nullspace(&directions, dim) {
        let b = dot(&n, base);
        equalities.push(integer_normalize(&n, &b)?);
    }

    // Project onto the pivot coordinates, where the affine hull is a graph.
    let local: Vec<Vec<Q>> = pts.iter().map(|p| pivots.iter().map(|&c| p[c].clone()).collect()).collect();
    let lift = |a: &[Q]| -> Vec<Q> {
        let mut full = vec![Q::zero(); dim];
        for (i, &c) in pivots.iter().enumerate() {
            full[c] = a[i].clone();
        }
        full
    };

    let mut facets: BTreeSet<Inequality> = BTreeSet::new();
    if k >= 1 {
        for combo in combinations(pts.len(), k) {
            let q0 = &local[combo[0]];
            let rows: Vec<Vec<Q>> = combo[1..]
                .iter()
                .map(|&i| local[i].iter().zip(q0).map(|(a, b)| a - b).collect())
                .collect();
            let ns = if rows.is_empty() {
                vec![vec![Q::one()]]
            } else {
                nullspace(&rows, k)
            };
            if ns.len() != 1 {
                continue;
            }
            let normal = &ns[0];
            let b = dot(normal, q0);
            let side: Vec<std::cmp::Ordering> = local.iter().map(|p| dot(normal, p).cmp(&b)).collect();
            let above = side.iter().any(|o| o.is_gt());
            let below = side.iter().any(|o| o.is_lt());
            let (n, bb) = match (above, below) {
                (false, true) => (normal.clone(), b),
                (true, false) => (normal.iter().map(|x| -x.clone()).collect(), -b),
                _ => continue,
            };
            facets.insert(integer_normalize(&lift(&n), &bb)?);
        }
    }
    let inequalities: Vec<Inequality> = facets.into_iter().collect();

    let vertices: Vec<Vec<Q>> = pts
        .iter()
        .zip(&local)
        .filter(|(p, _)| {
            if k == 0 {
                return true;
            }
            let tight: Vec<Vec<Q>> = inequalities
                .iter()
                .filter(|h| h.tight_at(p))
                .map(|h| pivots.iter().map(|&c| Q::from_integer(BigInt::from(h.normal[c]))).collect())
                .collect();
            let mut m = tight;
            rref(&mut m).len() == k
        })
        .map(|(p, _)| p.clone())
        .collect();

    Ok(RationalPolytope {
        dim,
        affine_dim: k,
        vertices,
        inequalities,
        equalities,
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
