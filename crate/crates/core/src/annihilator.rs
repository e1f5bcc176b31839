//! Annihilator detection through indistinguishability: `x` annihilates the
//! boundary iff `d(x, y) = d(1, y)` for all but finitely many `y`.
//!
//! Candidacy is evidence at a finite level, never a membership proof. Every
//! report carries the last radius at which a disagreement was seen.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boundary::BoundaryApprox;
use crate::cayley::{Ball, CayleyError};
use crate::group::Element;

/// Default width of the outer annulus on which a candidate must agree with the identity.
pub const DEFAULT_GAP: u32 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnnihilatorError {
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error("functionals live on B_{have}, asked for B_{need}")]
    DomainMismatch { need: u32, have: u32 },
    #[error("closure of the generating candidates leaves the radius-{bound} ball at {escaped}")]
    ClosureEscapedBound { bound: i64, escaped: Element },
    #[error("{0} has no profile in the report")]
    MissingProfile(Element),
}

pub type Result<T> = std::result::Result<T, AnnihilatorError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub element: Element,
    pub norm: u32,
    /// Largest `|y| <= r` with `d(x, y) != d(1, y)`, or `-1`.
    pub rho: i64,
    /// `rho + 1`: agreement holds from this radius on, up to the outer radius.
    pub witness_radius: i64,
    pub candidate: bool,
}

/// Profiles `x` against every `y` in `B_r`.
pub fn indistinguishability_profile(x: &Element, ball: &Ball, r: u32, gap: u32) -> Result<Profile> {
    let norm = ball
        .norm(x)
        .ok_or_else(|| CayleyError::OutOfBall(x.to_string()))?;
    if norm + r > ball.radius() {
        return Err(CayleyError::OutOfBall(format!(
            "profiling {x} up to radius {r} needs ball radius {}, have {}",
            norm + r,
            ball.radius()
        ))
        .into());
    }
    let g = ball.group();
    let xinv = g.inverse(x);
    let mut rho = -1i64;
    for yi in (0..ball.count_within(r)).rev() {
        let d = ball.norm(&g.mul(&xinv, ball.element(yi))).expect("within radius");
        if d != ball.norm_at(yi) {
            rho = i64::from(ball.norm_at(yi));
            break;
        }
    }
    Ok(Profile {
        element: x.clone(),
        norm,
        rho,
        witness_radius: rho + 1,
        candidate: rho < i64::from(r) - i64::from(gap),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatorReport {
    pub inner_radius: u32,
    pub outer_radius: u32,
    pub gap: u32,
    pub profiles: Vec<Profile>,
    pub candidates: Vec<Element>,
    pub inverse_closed: bool,
    pub product_closed: bool,
    /// Human-readable closure failures, e.g. `a*b=c not a candidate`.
    pub closure_violations: Vec<String>,
}

impl AnnihilatorReport {
    pub fn profile(&self, x: &Element) -> Option<&Profile> {
        self.profiles.iter().find(|p| &p.element == x)
    }

    pub fn candidate_count(&self) -> usize {
        self.candidates.len()
    }

    /// Header plus one row per candidate.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("element,norm,rho,witness_radius\n");
        for p in self.profiles.iter().filter(|p| p.candidate) {
            let _ = writeln!(out, "\"{}\",{},{},{}", p.element, p.norm, p.rho, p.witness_radius);
        }
        out
    }
}

/// Profiles every `x` in `B_m` up to outer radius `r`.
pub fn annihilator_candidates(ball: &Ball, m: u32, r: u32, gap: u32) -> Result<AnnihilatorReport> {
    if m + r > ball.radius() {
        return Err(CayleyError::OutOfBall(format!(
            "level m={m}, r={r} needs ball radius {}, have {}",
            m + r,
            ball.radius()
        ))
        .into());
    }
    let n = ball.count_within(m);
    let profiles: Vec<Profile> = (0..n)
        .into_par_iter()
        .map(|i| indistinguishability_profile(ball.element(i), ball, r, gap))
        .collect::<Result<_>>()?;
    let candidates: Vec<Element> = profiles
        .iter()
        .filter(|p| p.candidate)
        .map(|p| p.element.clone())
        .collect();
    let set: BTreeSet<&Element> = candidates.iter().collect();
    let g = ball.group();
    let mut violations = Vec::new();
    let mut inverse_closed = true;
    for a in &candidates {
        let inv = g.inverse(a);
        if !set.contains(&inv) {
            inverse_closed = false;
            violations.push(format!("{a}^-1={inv} not a candidate"));
        }
    }
    let mut product_closed = true;
    for a in &candidates {
        for b in &candidates {
            let c = g.mul(a, b);
            if ball.norm(&c).is_some_and(|k| k <= m) && !set.contains(&c) {
                product_closed = false;
                violations.push(format!("{a}*{b}={c} not a candidate"));
            }
        }
    }
    Ok(AnnihilatorReport {
        inner_radius: m,
        outer_radius: r,
        gap,
        profiles,
        candidates,
        inverse_closed,
        product_closed,
        closure_violations: violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalAnnihilator {
    pub domain_radius: u32,
    /// Zero set of every stable class.
    pub boundary_side: Vec<Element>,
    /// Zero set of every converged geodesic-prefix class.
    pub busemann_side: Vec<Element>,
    pub coincide: bool,
}

/// `{x in B_m : h(x) = 0}` over the stable classes and over the converged
/// geodesic-prefix classes.
pub fn functional_annihilator(approx: &BoundaryApprox, ball: &Ball, m: u32) -> Result<FunctionalAnnihilator> {
    if m > approx.domain_radius {
        return Err(AnnihilatorError::DomainMismatch {
            need: m,
            have: approx.domain_radius,
        });
    }
    let zero_set = |pick: &dyn Fn(&crate::boundary::ClassEntry) -> bool| -> Vec<Element> {
        (0..ball.count_within(m))
            .filter(|&i| {
                approx
                    .classes
                    .iter()
                    .filter(|c| pick(c))
                    .all(|c| c.functional.values[i] == 0)
            })
            .map(|i| ball.element(i).clone())
            .collect()
    };
    let boundary_side = zero_set(&|c| c.stable);
    let busemann_side = zero_set(&|c| c.converged);
    let coincide = boundary_side == busemann_side;
    Ok(FunctionalAnnihilator {
        domain_radius: m,
        boundary_side,
        busemann_side,
        coincide,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedSubgroup {
    pub bound: i64,
    pub elements: Vec<Element>,
}

/// Closes `units` under multiplication, failing as soon as an element of
/// norm above `max r(u)` appears.
pub fn generated_subgroup_bound(
    units: &[Element],
    report: &AnnihilatorReport,
    ball: &Ball,
) -> Result<GeneratedSubgroup> {
    let bound = units
        .iter()
        .map(|u| {
            report
                .profile(u)
                .map(|p| p.witness_radius)
                .ok_or_else(|| AnnihilatorError::MissingProfile(u.clone()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0)
        .max(0);
    let g = ball.group();
    let mut seen: BTreeSet<Element> = BTreeSet::from([g.identity()]);
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(z) = queue.pop_front() {
        for u in units {
            let y = g.mul(u, &z);
            if seen.contains(&y) {
                continue;
            }
            match ball.norm(&y) {
                Some(k) if i64::from(k) <= bound => {
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
                _ => return Err(AnnihilatorError::ClosureEscapedBound { bound, escaped: y }),
            }
        }
    }
    Ok(GeneratedSubgroup {
        bound,
        elements: seen.into_iter().collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexBoundVerdict {
    pub candidates: usize,
    pub index: u64,
    pub holds: bool,
    pub saturated: bool,
    /// All candidates, listed only when the bound fails.
    pub offending: Vec<Element>,
}

/// Compares the candidate count with a caller-supplied index of a torsion-free subgroup.
pub fn index_bound_check(report: &AnnihilatorReport, index: u64) -> IndexBoundVerdict {
    let n = report.candidates.len();
    let holds = n as u64 <= index;
    IndexBoundVerdict {
        candidates: n,
        index,
        holds,
        saturated: n as u64 == index,
        offending: if holds { Vec::new() } else { report.candidates.clone() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::boundary_approx;
    use crate::catalog;

    fn ab(v: &[i64]) -> Element {
        Element::Abelian(v.to_vec())
    }

    #[test]
    fn identity_profile() {
        let (g, s) = catalog::z2_standard();
        let b = Ball::grow(&g, &s, 8).unwrap();
        let p = indistinguishability_profile(&g.identity(), &b, 6, DEFAULT_GAP).unwrap();
        assert_eq!((p.rho, p.candidate), (-1, true));
        let p = indistinguishability_profile(&ab(&[1, 0]), &b, 6, DEFAULT_GAP).unwrap();
        assert_eq!((p.rho, p.candidate), (6, false));
    }

    #[test]
    fn cylinder_candidates_are_the_fibre() {
        for n in 3..=6 {
            // (0,3) has norm 4 in Z x Z/6, so the inner ball must grow to see it.
            let m = if n == 6 { 4 } else { 3 };
            let (g, s) = catalog::cylinder(n);
            let b = Ball::grow(&g, &s, 16).unwrap();
            let rep = annihilator_candidates(&b, m, 12, DEFAULT_GAP).unwrap();
            let mut got = rep.candidates.clone();
            got.sort();
            let want: Vec<Element> = (0..n).map(|j| ab(&[0, j])).collect();
            assert_eq!(got, want, "n={n}");
            assert!(rep.inverse_closed && rep.product_closed);
            let v = index_bound_check(&rep, n as u64);
            assert!(v.holds && v.saturated);
            assert_eq!(rep.to_csv().lines().count(), 1 + n as usize);
        }
    }

    #[test]
    fn line_candidates() {
        let (g, s) = catalog::line();
        let b = Ball::grow(&g, &s, 15).unwrap();
        let rep = annihilator_candidates(&b, 3, 12, DEFAULT_GAP).unwrap();
        assert_eq!(rep.candidates, vec![g.identity()]);
        assert!(index_bound_check(&rep, 1).holds);
    }

    #[test]
    fn fsf_contains_finite_subgroup() {
        let (g, s) = catalog::fsf();
        let b = Ball::grow(&g, &s, 12).unwrap();
        let rep = annihilator_candidates(&b, 2, 10, DEFAULT_GAP).unwrap();
        for f in catalog::fsf_subgroup() {
            assert!(rep.candidates.contains(&f), "{f}");
        }
    }

    #[test]
    fn raising_outer_radius_with_fixed_annulus_start() {
        // Agreement on [a, r'] for r' > r implies agreement on [a, r].
        let (g, s) = catalog::cylinder(4);
        let b = Ball::grow(&g, &s, 16).unwrap();
        let start = 6;
        let mut prev: Option<BTreeSet<Element>> = None;
        for r in 8..=13 {
            let rep = annihilator_candidates(&b, 3, r, r - start).unwrap();
            let cur: BTreeSet<Element> = rep.candidates.into_iter().collect();
            if let Some(p) = &prev {
                assert!(cur.is_subset(p));
            }
            prev = Some(cur);
        }
    }

    #[test]
    fn subgroup_closure() {
        let (g, s) = catalog::cylinder(4);
        let b = Ball::grow(&g, &s, 15).unwrap();
        let rep = annihilator_candidates(&b, 3, 12, DEFAULT_GAP).unwrap();
        let h = generated_subgroup_bound(&[ab(&[0, 1]), ab(&[0, 3])], &rep, &b).unwrap();
        assert_eq!(h.elements.len(), 4);
        let one = generated_subgroup_bound(&[g.identity()], &rep, &b).unwrap();
        assert_eq!(one.elements, vec![g.identity()]);

        let (g, s) = catalog::z2_standard();
        let b = Ball::grow(&g, &s, 12).unwrap();
        let rep = annihilator_candidates(&b, 3, 9, DEFAULT_GAP).unwrap();
        let err = generated_subgroup_bound(&[ab(&[1, 0]), ab(&[-1, 0])], &rep, &b).unwrap_err();
        assert!(matches!(err, AnnihilatorError::ClosureEscapedBound { .. }));
    }

    #[test]
    fn functional_zero_sets() {
        let (g, s) = catalog::cylinder(4);
        let b = Ball::grow(&g, &s, 18).unwrap();
        let a = boundary_approx(&b, 12, 3).unwrap();
        let fa = functional_annihilator(&a, &b, 3).unwrap();
        let mut got = fa.boundary_side.clone();
        got.sort();
        assert_eq!(got, (0..4).map(|j| ab(&[0, j])).collect::<Vec<_>>());
        assert!(fa.coincide);

        let (g, s) = catalog::z2_standard();
        let b = Ball::grow(&g, &s, 12).unwrap();
        let a = boundary_approx(&b, 10, 2).unwrap();
        let fa = functional_annihilator(&a, &b, 2).unwrap();
        assert_eq!(fa.boundary_side, vec![g.identity()]);
        assert!(fa.coincide);
        assert!(matches!(
            functional_annihilator(&a, &b, 3),
            Err(AnnihilatorError::DomainMismatch { .. })
        ));
    }
}
