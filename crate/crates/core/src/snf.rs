//! Smith normal form over the integers.
//!
//! Dense elimination with full transforms for general use, and a sparse
//! unit-pivot elimination for the boundary matrices of nerves, which are
//! large, very sparse and mostly unimodular. Everything is exact.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntMatrix { rows: r, cols: c, data: rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * factor;
            if !v.is_zero() {
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * factor;
            if !v.is_zero() {
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[r * self.cols + j];
            *v = -std::mem::take(v);
        }
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ...`, all `d_i > 0`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
    pub divisors: Vec<BigInt>,
}

struct Transforms {
    u: IntMatrix,
    v: IntMatrix,
}

/// Smith normal form with transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut d = m.clone();
    let mut t = Transforms { u: IntMatrix::identity(m.rows), v: IntMatrix::identity(m.cols) };
    let divisors = diagonalize(&mut d, Some(&mut t));
    SmithForm { rank: divisors.len(), divisors, d, u: t.u, v: t.v }
}

/// Rank and nonzero invariant factors, without transforms.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut d = m.clone();
    diagonalize(&mut d, None)
}

fn diagonalize(a: &mut IntMatrix, mut t: Option<&mut Transforms>) -> Vec<BigInt> {
    let (rows, cols) = (a.rows, a.cols);
    let mut divisors = Vec::new();
    for p in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let Some((pi, pj)) = min_entry(a, (p..rows).flat_map(|i| (p..cols).map(move |j| (i, j)))) else {
            break;
        };
        move_pivot(a, &mut t, p, pi, pj);
        loop {
            let mut clean = true;
            for i in p + 1..rows {
                if !a.get(i, p).is_zero() {
                    let q = -(a.get(i, p).div_floor(a.get(p, p)));
                    a.add_row(i, p, &q);
                    if let Some(t) = t.as_deref_mut() {
                        t.u.add_row(i, p, &q);
                    }
                    clean &= a.get(i, p).is_zero();
                }
            }
            for j in p + 1..cols {
                if !a.get(p, j).is_zero() {
                    let q = -(a.get(p, j).div_floor(a.get(p, p)));
                    a.add_col(j, p, &q);
                    if let Some(t) = t.as_deref_mut() {
                        t.v.add_col(j, p, &q);
                    }
                    clean &= a.get(p, j).is_zero();
                }
            }
            if !clean {
                let line = (p + 1..rows).map(|i| (i, p)).chain((p + 1..cols).map(|j| (p, j)));
                let (pi, pj) = min_entry(a, line).expect("a remainder is nonzero");
                move_pivot(a, &mut t, p, pi, pj);
                continue;
            }
            // divisibility of the trailing block
            let piv = a.get(p, p).clone();
            let bad = (p + 1..rows).find(|&i| (p + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(p, i, &one);
                    if let Some(t) = t.as_deref_mut() {
                        t.u.add_row(p, i, &one);
                    }
                }
                None => break,
            }
        }
        if a.get(p, p).is_negative() {
            a.negate_row(p);
            if let Some(t) = t.as_deref_mut() {
                t.u.negate_row(p);
            }
        }
        divisors.push(a.get(p, p).clone());
    }
    divisors
}

fn min_entry(a: &IntMatrix, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (i, j) in cells {
        let v = a.get(i, j);
        if v.is_zero() {
            continue;
        }
        let abs = v.abs();
        if best.as_ref().is_none_or(|(_, b)| abs < *b) {
            let unit = abs.is_one();
            best = Some(((i, j), abs));
            if unit {
                break;
            }
        }
    }
    best.map(|(pos, _)| pos)
}

fn move_pivot(a: &mut IntMatrix, t: &mut Option<&mut Transforms>, p: usize, i: usize, j: usize) {
    a.swap_rows(p, i);
    a.swap_cols(p, j);
    if let Some(t) = t.as_deref_mut() {
        t.u.swap_rows(p, i);
        t.v.swap_cols(p, j);
    }
}

/// Sparse integer matrix given by its nonzero entries.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn push(&mut self, row: usize, col: usize, value: i64) {
        if value != 0 {
            self.entries.push((row, col, value));
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for &(i, j, v) in &self.entries {
            let cur = m.get(i, j) + v;
            m.set(i, j, cur);
        }
        m
    }
}

/// Nonzero invariant factors of a sparse matrix: unit pivots are
/// eliminated sparsely, the (usually tiny) remainder goes through the
/// dense routine.
pub fn sparse_invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for &(i, j, v) in &m.entries {
        let e = rows[i].entry(j).or_insert_with(BigInt::zero);
        *e += v;
        if e.is_zero() {
            rows[i].remove(&j);
            col_rows[j].remove(&i);
        } else {
            col_rows[j].insert(i);
        }
    }
    let mut units = 0usize;
    loop {
        // Markowitz choice among unit entries
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            for (&j, v) in row {
                if v.abs().is_one() {
                    let cost = (row.len() - 1) * (col_rows[j].len() - 1);
                    if best.is_none_or(|b| cost < b.2) {
                        best = Some((i, j, cost));
                    }
                }
            }
            if best.is_some_and(|b| b.2 == 0) {
                break;
            }
        }
        let Some((pi, pj, _)) = best else { break };
        let pivot_row = std::mem::take(&mut rows[pi]);
        let sign = pivot_row[&pj].clone();
        for &j in pivot_row.keys() {
            col_rows[j].remove(&pi);
        }
        let others: Vec<usize> = col_rows[pj].iter().copied().collect();
        for r in others {
            // row r -= (a_r / pivot) * pivot_row, pivot = ±1
            let factor = &rows[r][&pj] * &sign;
            for (&j, v) in &pivot_row {
                let e = rows[r].entry(j).or_insert_with(BigInt::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    rows[r].remove(&j);
                    col_rows[j].remove(&r);
                } else {
                    col_rows[j].insert(r);
                }
            }
        }
        debug_assert!(col_rows[pj].is_empty());
        units += 1;
    }
    let live_rows: Vec<usize> = (0..m.rows).filter(|&i| !rows[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&j| !col_rows[j].is_empty()).collect();
    let mut rest = vec![BigInt::one(); units];
    if !live_rows.is_empty() {
        let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(p, &j)| (j, p)).collect();
        let mut dense = IntMatrix::zeros(live_rows.len(), live_cols.len());
        for (p, &i) in live_rows.iter().enumerate() {
            for (j, v) in &rows[i] {
                dense.set(p, col_pos[j], v.clone());
            }
        }
        let mut tail = invariant_factors(&dense);
        tail.sort();
        rest.extend(tail);
    }
    rest
}
