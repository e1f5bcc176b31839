//! Exact rational convex geometry: hulls with vertex and half-space
//! descriptions, hull membership by linear feasibility, and strictly
//! supporting linear functionals.

pub mod hull;
pub mod lp;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use hull::{convex_hull, Inequality, PolytopeJson, RationalPolytope};
use lp::{LinearProgram, LpOutcome, Relation};

pub type Q = BigRational;

/// Default cap on the ambient dimension.
pub const DEFAULT_DIMENSION_CAP: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConvexError {
    #[error("ambient dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("empty point cloud")]
    Empty,
    #[error("points have different dimensions")]
    Ragged,
    #[error("coefficient does not fit in 64 bits")]
    Overflow,
    #[error("{0} is not an extreme point")]
    NotExtreme(String),
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q`, or `p` for integers.
pub fn ratio_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn vector_string(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(ratio_string).collect();
    format!("({})", parts.join(","))
}

/// Decides `target in conv(points)` exactly.
pub fn in_convex_hull(points: &[Vec<Q>], target: &[Q]) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = points.len();
    let mut lp = LinearProgram::new(vec![false; n]).constraint(vec![Q::one(); n], Relation::Eq, Q::one());
    for (c, t) in target.iter().enumerate() {
        lp = lp.constraint(points.iter().map(|p| p[c].clone()).collect(), Relation::Eq, t.clone());
    }
    !matches!(lp.solve(), LpOutcome::Infeasible)
}

/// A linear functional `phi` with `phi(e) = 1` and `phi(v) < 1` at every other vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportingFunctional {
    pub coefficients: Vec<Q>,
    /// `min_{v != e} (1 - phi(v))`, capped at 1.
    pub slack: Q,
}

impl SupportingFunctional {
    pub fn eval(&self, x: &[Q]) -> Q {
        self.coefficients.iter().zip(x).fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }
}

/// Maximizes the minimum slack `1 - phi(v)` over the other vertices subject
/// to `phi(e) = 1`.
pub fn supporting_functional(p: &RationalPolytope, e: &[Q]) -> Result<SupportingFunctional, ConvexError> {
    let d = p.dim;
    let not_extreme = || ConvexError::NotExtreme(vector_string(e));
    if !p.contains(e) {
        return Err(not_extreme());
    }
    // Variables: phi (free, d of them) then t (free).
    let mut free = vec![true; d];
    free.push(true);
    let mut objective = vec![Q::zero(); d];
    objective.push(Q::one());
    let mut at_e: Vec<Q> = e.to_vec();
    at_e.push(Q::zero());
    let mut cap = vec![Q::zero(); d];
    cap.push(Q::one());
    let mut lp = LinearProgram::new(free)
        .maximize(objective)
        .constraint(at_e, Relation::Eq, Q::one())
        .constraint(cap, Relation::Le, Q::one());
    let others: Vec<&Vec<Q>> = p.vertices.iter().filter(|v| v.as_slice() != e).collect();
    for v in &others {
        let mut row: Vec<Q> = (*v).clone();
        row.push(Q::one());
        lp = lp.constraint(row, Relation::Le, Q::one());
    }
    let (slack, point) = match lp.solve() {
        LpOutcome::Optimal { value, point } => (value, point),
        _ => return Err(not_extreme()),
    };
    if !slack.is_positive() {
        return Err(not_extreme());
    }
    let f = SupportingFunctional {
        coefficients: point[..d].to_vec(),
        slack,
    };
    let strict = f.eval(e) == Q::one() && others.iter().all(|v| f.eval(v) < Q::one());
    if !strict {
        return Err(not_extreme());
    }
    Ok(f)
}
