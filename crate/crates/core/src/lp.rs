//! Exact dense two-phase simplex over the rationals with Bland's rule.
//!
//! Sizes are tiny (tens of variables), so a dense tableau is fine and the
//! anti-cycling rule guarantees termination.

use num_traits::{One, Signed, Zero};

use crate::rational::{Q, QVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// `coeffs · x (rel) rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: QVec,
    pub rel: Relation,
    pub rhs: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Q, x: QVec },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<QVec>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Q::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pr = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pr) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `obj · x` over the current basis using columns `< allowed`.
    /// Returns false if unbounded.
    fn optimize(&mut self, obj: &[Q], allowed: usize) -> bool {
        loop {
            // reduced cost of column j: obj_j - sum_i obj_{basis_i} a_ij
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut rc = obj[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !obj[b].is_zero() && !row[j].is_zero() {
                        rc -= &obj[b] * &row[j];
                    }
                }
                rc.is_positive()
            });
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[self.ncols] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, c);
        }
    }

    fn value(&self, obj: &[Q]) -> Q {
        self.rows.iter().zip(&self.basis).fold(Q::zero(), |acc, (row, &b)| acc + &obj[b] * &row[self.ncols])
    }
}

/// Maximizes `c · x` subject to the constraints and `x >= 0`.
pub fn maximize(c: &[Q], constraints: &[Constraint]) -> LpOutcome {
    let n = c.len();
    let m = constraints.len();
    let n_slack = constraints.iter().filter(|k| k.rel != Relation::Eq).count();
    let n_art = m;
    let ncols = n + n_slack + n_art;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut slack = n;
    for (i, k) in constraints.iter().enumerate() {
        let mut row = vec![Q::zero(); ncols + 1];
        for (j, a) in k.coeffs.iter().enumerate() {
            row[j] = a.clone();
        }
        match k.rel {
            Relation::Le => {
                row[slack] = Q::one();
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -Q::one();
                slack += 1;
            }
            Relation::Eq => {}
        }
        row[ncols] = k.rhs.clone();
        if row[ncols].is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        let art = n + n_slack + i;
        row[art] = Q::one();
        rows.push(row);
        basis.push(art);
    }
    let mut t = Tableau { rows, basis, ncols };

    // phase 1: maximize -(sum of artificials)
    let mut obj1 = vec![Q::zero(); ncols];
    for x in obj1.iter_mut().skip(n + n_slack) {
        *x = -Q::one();
    }
    t.optimize(&obj1, ncols);
    if !t.value(&obj1).is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive artificials out of the basis; rows that cannot be are redundant
    let real = n + n_slack;
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= real {
            if let Some(c) = (0..real).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, c);
                i += 1;
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }

    let mut obj2 = vec![Q::zero(); ncols];
    for (j, cj) in c.iter().enumerate() {
        obj2[j] = cj.clone();
    }
    if !t.optimize(&obj2, real) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if b < n {
            x[b] = row[ncols].clone();
        }
    }
    LpOutcome::Optimal { value: t.value(&obj2), x }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac, to_qvec};

    fn k(c: &[i64], rel: Relation, rhs: i64) -> Constraint {
        Constraint { coeffs: to_qvec(c), rel, rhs: q(rhs) }
    }

    #[test]
    fn textbook_optimum() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
        let out = maximize(
            &to_qvec(&[3, 2]),
            &[k(&[1, 1], Relation::Le, 4), k(&[1, 3], Relation::Le, 6), k(&[1, 0], Relation::Le, 3)],
        );
        assert_eq!(out, LpOutcome::Optimal { value: q(11), x: vec![q(3), q(1)] });
    }

    #[test]
    fn fractional_and_equalities() {
        // max x, 2x + 3y = 1, y >= 0
        let out = maximize(&to_qvec(&[1, 0]), &[k(&[2, 3], Relation::Eq, 1)]);
        assert_eq!(out, LpOutcome::Optimal { value: q_frac(1, 2), x: vec![q_frac(1, 2), q(0)] });
    }

    #[test]
    fn infeasible_and_unbounded() {
        assert_eq!(maximize(&to_qvec(&[1]), &[k(&[1], Relation::Le, -1)]), LpOutcome::Infeasible);
        assert_eq!(maximize(&to_qvec(&[1]), &[k(&[1], Relation::Ge, 1)]), LpOutcome::Unbounded);
        assert_eq!(
            maximize(&to_qvec(&[1, 1]), &[k(&[1, 1], Relation::Eq, 2), k(&[2, 2], Relation::Eq, 4)]),
            LpOutcome::Optimal { value: q(2), x: vec![q(2), q(0)] }
        );
    }
}
