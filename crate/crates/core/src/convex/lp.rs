//! Dense two-phase simplex over exact rationals with Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Q>,
    relation: Relation,
    rhs: Q,
}

/// Maximize `objective . x` subject to linear constraints; each variable is
/// either free or nonnegative.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    free: Vec<bool>,
    objective: Vec<Q>,
    rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Q, point: Vec<Q> },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    /// `free[i]` marks variable `i` as unrestricted in sign.
    pub fn new(free: Vec<bool>) -> Self {
        let n = free.len();
        LinearProgram {
            free,
            objective: vec![Q::zero(); n],
            rows: Vec::new(),
        }
    }

    pub fn maximize(mut self, objective: Vec<Q>) -> Self {
        assert_eq!(objective.len(), self.free.len());
        self.objective = objective;
        self
    }

    pub fn constraint(mut self, coeffs: Vec<Q>, relation: Relation, rhs: Q) -> Self {
        assert_eq!(coeffs.len(), self.free.len());
        self.rows.push(Row { coeffs, relation, rhs });
        self
    }

    pub fn solve(&self) -> LpOutcome {
        // Column layout: one column per nonnegative variable, two per free
        // variable, then one slack per inequality.
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::new();
        let mut ncols = 0;
        for &f in &self.free {
            if f {
                col_of.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                col_of.push((ncols, None));
                ncols += 1;
            }
        }
        let structural = ncols;
        let slacks = self.rows.iter().filter(|r| r.relation != Relation::Eq).count();
        let total = structural + slacks;
        let mut a: Vec<Vec<Q>> = Vec::with_capacity(self.rows.len());
        let mut b: Vec<Q> = Vec::with_capacity(self.rows.len());
        let mut slack = structural;
        for row in &self.rows {
            let mut line = vec![Q::zero(); total];
            for (v, c) in row.coeffs.iter().enumerate() {
                let (p, n) = col_of[v];
                line[p] = c.clone();
                if let Some(n) = n {
                    line[n] = -c.clone();
                }
            }
            match row.relation {
                Relation::Le => {
                    line[slack] = Q::one();
                    slack += 1;
                }
                Relation::Ge => {
                    line[slack] = -Q::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            let mut rhs = row.rhs.clone();
            if rhs.is_negative() {
                line.iter_mut().for_each(|x| *x = -x.clone());
                rhs = -rhs;
            }
            a.push(line);
            b.push(rhs);
        }
        let mut cost = vec![Q::zero(); total];
        for (v, c) in self.objective.iter().enumerate() {
            let (p, n) = col_of[v];
            cost[p] = c.clone();
            if let Some(n) = n {
                cost[n] = -c.clone();
            }
        }
        match standard_form(a, b, cost) {
            StdOutcome::Infeasible => LpOutcome::Infeasible,
            StdOutcome::Unbounded => LpOutcome::Unbounded,
            StdOutcome::Optimal(value, x) => {
                let point = col_of
                    .iter()
                    .map(|&(p, n)| match n {
                        Some(n) => &x[p] - &x[n],
                        None => x[p].clone(),
                    })
                    .collect();
                LpOutcome::Optimal { value, point }
            }
        }
    }
}

enum StdOutcome {
    Optimal(Q, Vec<Q>),
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = &*x / &p;
        }
        self.rhs[r] = &self.rhs[r] / &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &f * y;
                }
            }
            self.rhs[i] = &self.rhs[i] - &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost . x` over the columns allowed by `usable`; returns false if unbounded.
    fn optimize(&mut self, cost: &[Q], usable: &dyn Fn(usize) -> bool) -> bool {
        let ncols = cost.len();
        loop {
            let entering = (0..ncols).filter(|&j| usable(j) && !self.basis.contains(&j)).find(|&j| {
                let mut reduced = cost[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    if !self.rows[i][j].is_zero() {
                        reduced -= &cost[bi] * &self.rows[i][j];
                    }
                }
                reduced.is_positive()
            });
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn value(&self, cost: &[Q]) -> Q {
        self.basis
            .iter()
            .zip(&self.rhs)
            .fold(Q::zero(), |acc, (&j, v)| acc + &cost[j] * v)
    }
}

/// Maximize `cost . x` subject to `a x = b`, `x >= 0`, with `b >= 0`.
fn standard_form(a: Vec<Vec<Q>>, b: Vec<Q>, cost: Vec<Q>) -> StdOutcome {
    let m = a.len();
    let n = cost.len();
    let mut rows = a;
    for (i, row) in rows.iter_mut().enumerate() {
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
    }
    let mut t = Tableau {
        rows,
        rhs: b,
        basis: (n..n + m).collect(),
    };
    let mut phase1 = vec![Q::zero(); n + m];
    for c in phase1.iter_mut().skip(n) {
        *c = -Q::one();
    }
    t.optimize(&phase1, &|_| true);
    if t.value(&phase1).is_negative() {
        return StdOutcome::Infeasible;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    let mut cost2 = cost;
    cost2.extend((0..m).map(|_| Q::zero()));
    if !t.optimize(&cost2, &|j| j < n) {
        return StdOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bi) in t.basis.iter().enumerate() {
        if bi < n {
            x[bi] = t.rhs[i].clone();
        }
    }
    StdOutcome::Optimal(t.value(&cost2), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    fn qf(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_program() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x,y >= 0 -> (8/5, 6/5), value 14/5.
        let lp = LinearProgram::new(vec![false, false])
            .maximize(vec![q(1), q(1)])
            .constraint(vec![q(1), q(2)], Relation::Le, q(4))
            .constraint(vec![q(3), q(1)], Relation::Le, q(6));
        match lp.solve() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, qf(14, 5));
                assert_eq!(point, vec![qf(8, 5), qf(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let lp = LinearProgram::new(vec![false])
            .constraint(vec![q(1)], Relation::Ge, q(2))
            .constraint(vec![q(1)], Relation::Le, q(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
        let lp = LinearProgram::new(vec![true]).maximize(vec![q(1)]).constraint(vec![q(1)], Relation::Ge, q(-3));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables_and_equalities() {
        // min x (= max -x) s.t. x = y - 3, y >= 0 free x -> x = -3 at y = 0.
        let lp = LinearProgram::new(vec![true, false])
            .maximize(vec![q(-1), q(0)])
            .constraint(vec![q(1), q(-1)], Relation::Eq, q(-3));
        match lp.solve() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, q(3));
                assert_eq!(point[0], q(-3));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let lp = LinearProgram::new(vec![false, false])
            .maximize(vec![q(1), q(0)])
            .constraint(vec![q(1), q(1)], Relation::Eq, q(2))
            .constraint(vec![q(2), q(2)], Relation::Eq, q(4));
        assert!(matches!(lp.solve(), LpOutcome::Optimal { value, .. } if value == q(2)));
    }
}
