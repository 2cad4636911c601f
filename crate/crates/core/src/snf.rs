//! Smith and Hermite normal forms of small integer matrices.
//!
//! Entries are carried as `i128` during elimination; inputs and outputs are
//! `i64`. The matrices here are ray-vector tables with a handful of rows, so
//! no coefficient growth control beyond the classical pivoting is needed.

use crate::error::{Error, Result};
use crate::linalg::IMat;

type W = i128;

/// `left * a * right = diag(invariant_factors, 0, ...)` with `left`, `right`
/// unimodular and each invariant factor dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<i64>,
    pub rank: usize,
    pub left: IMat,
    pub right: IMat,
}

impl SmithForm {
    /// Nontrivial invariant factors (entries > 1), i.e. the torsion orders.
    pub fn torsion(&self) -> Vec<i64> {
        self.diagonal.iter().copied().filter(|&d| d > 1).collect()
    }
}

fn ident(n: usize) -> Vec<Vec<W>> {
    (0..n).map(|i| (0..n).map(|j| W::from(i == j)).collect()).collect()
}

fn narrow(m: &[Vec<W>]) -> Result<IMat> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow(format!("{x}"))))
                .collect()
        })
        .collect()
}

fn row_op(m: &mut [Vec<W>], i: usize, j: usize, s: W, t: W, u: W, v: W) {
    // (row_i, row_j) <- (s row_i + t row_j, u row_i + v row_j)
    for c in 0..m[i].len() {
        let (a, b) = (m[i][c], m[j][c]);
        m[i][c] = s * a + t * b;
        m[j][c] = u * a + v * b;
    }
}

fn col_op(m: &mut [Vec<W>], i: usize, j: usize, s: W, t: W, u: W, v: W) {
    for row in m.iter_mut() {
        let (a, b) = (row[i], row[j]);
        row[i] = s * a + t * b;
        row[j] = u * a + v * b;
    }
}

/// Bezout coefficients; when `a` divides `b` the coefficients are `(1, 0)`
/// so that elimination never swaps rows back and forth.
fn ext_gcd(a: W, b: W) -> (W, W, W) {
    if a != 0 && b % a == 0 {
        return if a < 0 { (-a, -1, 0) } else { (a, 1, 0) };
    }
    ext_gcd_raw(a, b)
}

fn ext_gcd_raw(a: W, b: W) -> (W, W, W) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd_raw(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

pub fn smith_normal_form(a: &IMat, ncols: usize) -> Result<SmithForm> {
    let m = a.len();
    let n = ncols;
    let mut d: Vec<Vec<W>> = a.iter().map(|r| r.iter().map(|&x| W::from(x)).collect()).collect();
    let mut left = ident(m);
    let mut right = ident(n);
    let mut rank = 0;
    for k in 0..m.min(n) {
        // smallest nonzero pivot in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in k..m {
            for j in k..n {
                if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(k, pi);
        left.swap(k, pi);
        if pj != k {
            col_op(&mut d, k, pj, 0, 1, 1, 0);
            col_op(&mut right, k, pj, 0, 1, 1, 0);
        }
        loop {
            let mut dirty = false;
            for i in k + 1..m {
                if d[i][k] != 0 {
                    let (g, s, t) = ext_gcd(d[k][k], d[i][k]);
                    let (p, q) = (d[k][k] / g, d[i][k] / g);
                    row_op(&mut d, k, i, s, t, -q, p);
                    row_op(&mut left, k, i, s, t, -q, p);
                    dirty = true;
                }
            }
            for j in k + 1..n {
                if d[k][j] != 0 {
                    let (g, s, t) = ext_gcd(d[k][k], d[k][j]);
                    let (p, q) = (d[k][k] / g, d[k][j] / g);
                    col_op(&mut d, k, j, s, t, -q, p);
                    col_op(&mut right, k, j, s, t, -q, p);
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility: pivot must divide the whole trailing block
                let offender = (k + 1..m)
                    .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| d[i][j] % d[k][k] != 0);
                match offender {
                    Some((i, _)) => {
                        row_op(&mut d, k, i, 1, 1, 0, 1);
                        row_op(&mut left, k, i, 1, 1, 0, 1);
                    }
                    None => break,
                }
            }
        }
        if d[k][k] < 0 {
            for x in d[k].iter_mut() {
                *x = -*x;
            }
            for x in left[k].iter_mut() {
                *x = -*x;
            }
        }
        rank += 1;
    }
    let diagonal = (0..rank)
        .map(|i| i64::try_from(d[i][i]).map_err(|_| Error::Overflow(format!("{}", d[i][i]))))
        .collect::<Result<Vec<_>>>()?;
    Ok(SmithForm { diagonal, rank, left: narrow(&left)?, right: narrow(&right)? })
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: echelon,
/// positive pivots, entries above each pivot reduced into `[0, pivot)`, zero
/// rows dropped. Two generating sets span the same lattice iff their Hermite
/// forms agree.
pub fn hermite_rows(rows: &IMat, ncols: usize) -> Result<IMat> {
    let mut h: Vec<Vec<W>> = rows.iter().map(|r| r.iter().map(|&x| W::from(x)).collect()).collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == h.len() {
            break;
        }
        for i in r + 1..h.len() {
            if h[i][c] != 0 {
                let (g, s, t) = ext_gcd(h[r][c], h[i][c]);
                let (p, q) = (h[r][c] / g, h[i][c] / g);
                row_op(&mut h, r, i, s, t, -q, p);
            }
        }
        if h[r][c] == 0 {
            if let Some(i) = (r + 1..h.len()).find(|&i| h[i][c] != 0) {
                h.swap(r, i);
            } else {
                continue;
            }
        }
        if h[r][c] < 0 {
            for x in h[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let f = h[i][c].div_euclid(h[r][c]);
            if f != 0 {
                for j in 0..ncols {
                    h[i][j] -= f * h[r][j];
                }
            }
        }
        r += 1;
    }
    h.truncate(r);
    narrow(&h)
}
