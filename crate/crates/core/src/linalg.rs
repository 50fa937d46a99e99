//! Exact sparse linear algebra over the rationals.
//!
//! Rows are scaled to primitive integer vectors and reduced fraction-free:
//! eliminating column `c` of row `r` with pivot row `p` replaces `r` by
//! `(p[c]/g)·r − (r[c]/g)·p` with `g = gcd(p[c], r[c])`, followed by division
//! by the row content. No rational arithmetic happens inside the loop.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{common_denominator, Q};

/// Sparse integer row, sorted by column, no zero entries.
pub type IntRow = Vec<(usize, BigInt)>;

/// Sparse rational row as produced by the operator builders.
pub type QRow = Vec<(usize, Q)>;

/// Reduced row echelon form kept in integer (primitive) rows.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub ncols: usize,
    /// `(pivot column, row)`, sorted by pivot column. Every pivot column is
    /// zero in all other rows.
    pub rows: Vec<(usize, IntRow)>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    /// Basis of the null space, one vector per free column, with a 1 in that
    /// column. Vectors are dense and ordered by free column.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let mut is_pivot = vec![false; self.ncols];
        for (c, _) in &self.rows {
            is_pivot[*c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|c| !is_pivot[*c]) {
            let mut v = vec![Q::zero(); self.ncols];
            v[free] = Q::one();
            for (pc, row) in &self.rows {
                if let Some(entry) = lookup(row, free) {
                    let pivot = lookup(row, *pc).expect("pivot entry");
                    v[*pc] = -Q::new(entry.clone(), pivot.clone());
                }
            }
            basis.push(v);
        }
        basis
    }
}

fn lookup(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|i| &row[i].1)
}

/// Scales a rational row to a primitive integer row with positive leading
/// entry. Zero entries are dropped.
pub fn to_primitive(row: &QRow) -> IntRow {
    let den = common_denominator(row.iter().map(|(_, q)| q));
    let mut out: IntRow = row
        .iter()
        .filter(|(_, q)| !q.is_zero())
        .map(|(c, q)| (*c, (q * Q::from_integer(den.clone())).to_integer()))
        .collect();
    out.sort_by_key(|(c, _)| *c);
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut IntRow) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if g.is_zero() {
        return;
    }
    let g = if row[0].1.is_negative() { -g } else { g };
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `a·x − b·y` on sparse rows.
fn combine(x: &IntRow, a: &BigInt, y: &IntRow, b: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Eliminates `col` from `target` using `pivot_row` (whose entry at `col` is
/// nonzero). Returns the reduced, primitive row.
fn eliminate(target: &IntRow, pivot_row: &IntRow, col: usize) -> IntRow {
    let Some(t) = lookup(target, col) else {
        return target.clone();
    };
    let p = lookup(pivot_row, col).expect("pivot entry");
    let g = p.gcd(t);
    let a = p / &g;
    let b = t / &g;
    let mut out = combine(target, &a, pivot_row, &b);
    make_primitive(&mut out);
    out
}

/// Incremental fraction-free Gauss–Jordan elimination.
///
/// Rows are absorbed in input order; the pivot of each surviving row is its
/// first structurally nonzero column, so the result is deterministic.
pub fn echelon(rows: impl IntoIterator<Item = IntRow>, ncols: usize) -> Echelon {
    let mut basis: Vec<(usize, IntRow)> = Vec::new();
    for row in rows {
        let mut r = row;
        for (pc, prow) in &basis {
            if r.is_empty() {
                break;
            }
            r = eliminate(&r, prow, *pc);
        }
        if r.is_empty() {
            continue;
        }
        let pc = r[0].0;
        for (_, prow) in basis.iter_mut() {
            *prow = eliminate(prow, &r, pc);
        }
        let at = basis.partition_point(|(c, _)| *c < pc);
        basis.insert(at, (pc, r));
    }
    Echelon { ncols, rows: basis }
}

pub fn echelon_q(rows: &[QRow], ncols: usize) -> Echelon {
    echelon(rows.iter().map(to_primitive), ncols)
}

pub fn rank_q(rows: &[QRow], ncols: usize) -> usize {
    echelon_q(rows, ncols).rank()
}

pub fn kernel_q(rows: &[QRow], ncols: usize) -> Vec<Vec<Q>> {
    echelon_q(rows, ncols).kernel()
}

/// Particular solution of `A x = b` with all free variables set to zero, or
/// `None` when the system is inconsistent.
pub fn solve_q(rows: &[QRow], rhs: &[Q], ncols: usize) -> Option<Vec<Q>> {
    let augmented: Vec<QRow> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            if !b.is_zero() {
                r.push((ncols, b.clone()));
            }
            r
        })
        .collect();
    let ech = echelon_q(&augmented, ncols + 1);
    let mut x = vec![Q::zero(); ncols];
    for (pc, row) in &ech.rows {
        if *pc == ncols {
            return None;
        }
        if let Some(b) = lookup(row, ncols) {
            let p = lookup(row, *pc).expect("pivot entry");
            x[*pc] = Q::new(b.clone(), p.clone());
        }
    }
    Some(x)
}

/// Converts a dense matrix given by rows to sparse rational rows.
pub fn sparse_rows(dense: &[Vec<Q>]) -> Vec<QRow> {
    dense
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect()
        })
        .collect()
}
