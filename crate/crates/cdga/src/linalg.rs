//! Dense exact linear algebra over Q and Q(√3), plus integer matrices with
//! Smith normal form.
//!
//! Pivoting is deterministic everywhere: leftmost column first, first nonzero
//! row from the top. All downstream basis choices inherit this determinism.

use crate::scalar::ExactScalar;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

#[derive(Clone, Debug)]
pub struct RrefResult {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub reduced: ExactMatrix,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ExactScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> ExactScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactScalar) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<ExactScalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = ExactScalar::zero();
            for k in 0..self.cols {
                if !self.get(i, k).is_zero() && !other.get(k, j).is_zero() {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = ExactScalar::zero();
                for k in 0..self.cols {
                    if !self.get(i, k).is_zero() && !v[k].is_zero() {
                        acc = &acc + &(self.get(i, k) * &v[k]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form with leftmost-pivot, top-down elimination.
    pub fn rref(&self) -> RrefResult {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let pivot_row = (r..m.rows).find(|&i| !m.get(i, c).is_zero());
            let Some(p) = pivot_row else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).checked_inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let factor = m.get(i, c).clone();
                    for j in c..m.cols {
                        let v = m.get(i, j) - &(&factor * m.get(r, j));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        RrefResult {
            rank: pivots.len(),
            pivots,
            reduced: m,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Kernel basis by the free-variable construction: one vector per free
    /// column, in ascending column order.
    pub fn kernel_basis(&self) -> Vec<Vec<ExactScalar>> {
        let RrefResult {
            pivots, reduced, ..
        } = self.rref();
        let pivot_set: Vec<usize> = pivots.clone();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![ExactScalar::zero(); self.cols];
            v[free] = ExactScalar::one();
            for (i, &p) in pivot_set.iter().enumerate() {
                v[p] = -reduced.get(i, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Particular solution of `self · x = b` with free variables set to zero,
    /// or `None` when `b` is not in the column space.
    pub fn solve(&self, b: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = ExactMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let RrefResult {
            pivots, reduced, ..
        } = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![ExactScalar::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(i, self.cols).clone();
        }
        Some(x)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A solver for repeated systems `A·x = b` against a fixed `A`: the row
/// transform is computed once, each solve is a matrix-vector product plus
/// back-reading of the pivots.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    cols: usize,
    pivots: Vec<usize>,
    /// RREF of A.
    reduced: ExactMatrix,
    /// Transform T with T·A = reduced (RREF of [A | I] keeps T in the right
    /// block).
    transform: ExactMatrix,
}

impl LinearSolver {
    pub fn new(a: &ExactMatrix) -> Self {
        let rows = a.rows();
        let cols = a.cols();
        let mut aug = ExactMatrix::zeros(rows, cols + rows);
        for i in 0..rows {
            for j in 0..cols {
                aug.set(i, j, a.get(i, j).clone());
            }
            aug.set(i, cols + i, ExactScalar::one());
        }
        // eliminate only over the A-block columns so the right block records
        // the row transform
        let mut m = aug;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).checked_inv().expect("nonzero pivot");
            for j in 0..cols + rows {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..rows {
                if i != r && !m.get(i, c).is_zero() {
                    let factor = m.get(i, c).clone();
                    for j in 0..cols + rows {
                        let v = m.get(i, j) - &(&factor * m.get(r, j));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let reduced = ExactMatrix::from_fn(rows, cols, |i, j| m.get(i, j).clone());
        let transform = ExactMatrix::from_fn(rows, rows, |i, j| m.get(i, cols + j).clone());
        LinearSolver {
            cols,
            pivots,
            reduced,
            transform,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Particular solution with free variables zero, or `None` when `b` is
    /// not in the column space.
    pub fn solve(&self, b: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
        let tb = self.transform.mul_vec(b);
        // rows below the rank must vanish for consistency
        for (i, v) in tb.iter().enumerate() {
            if i >= self.pivots.len() && !v.is_zero() {
                return None;
            }
        }
        // pivot rows must not demand anything from non-pivot structure:
        // with free variables zero, row i reads x[pivot_i] = tb[i]; the
        // residual check m·x = b is exact by construction of the RREF.
        let mut x = vec![ExactScalar::zero(); self.cols];
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = tb[i].clone();
        }
        // consistency also requires that the reduced rows do not reference
        // free columns with nonzero tb — but free columns are set to zero,
        // so the only obstruction is the zero-row check above. Verify in
        // debug builds.
        debug_assert!({
            let mut ok = true;
            for (i, &p) in self.pivots.iter().enumerate() {
                let _ = p;
                let mut acc = ExactScalar::zero();
                for j in 0..self.cols {
                    if !self.reduced.get(i, j).is_zero() && !x[j].is_zero() {
                        acc = &acc + &(self.reduced.get(i, j) * &x[j]);
                    }
                }
                if acc != tb[i] {
                    ok = false;
                }
            }
            ok
        });
        Some(x)
    }
}

/// Incrementally maintained row space (kept in echelon form) for membership
/// and span-completion queries.
#[derive(Clone, Debug)]
pub struct RowSpace {
    cols: usize,
    rows: Vec<Vec<ExactScalar>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for j in 0..self.cols {
                    v[j] = &v[j] - &(&factor * &row[j]);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[ExactScalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Insert `v`; returns true if it enlarged the span.
    pub fn push(&mut self, v: &[ExactScalar]) -> bool {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].checked_inv().expect("nonzero lead");
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        // keep earlier rows reduced against the new one
        for (row, &rp) in self.rows.iter_mut().zip(&self.pivots) {
            let _ = rp;
            if !row[p].is_zero() {
                let factor = row[p].clone();
                for j in 0..self.cols {
                    row[j] = &row[j] - &(&factor * &r[j]);
                }
            }
        }
        let pos = self.pivots.iter().position(|&q| q > p).unwrap_or(self.pivots.len());
        self.rows.insert(pos, r);
        self.pivots.insert(pos, p);
        true
    }
}

// ---------------------------------------------------------------------------
// Integer matrices and Smith normal form
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i64 = 0;
                for k in 0..self.cols {
                    acc = acc
                        .checked_add(
                            self.get(i, k)
                                .checked_mul(other.get(k, j))
                                .expect("integer overflow"),
                        )
                        .expect("integer overflow");
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn to_exact(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| {
            ExactScalar::from_int(self.get(i, j))
        })
    }

    pub fn rank(&self) -> usize {
        self.to_exact().rank()
    }

    /// Exact determinant (Bareiss fraction-free elimination).
    pub fn det(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                    return 0;
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug)]
pub struct SmithResult {
    pub left: IntMatrix,
    pub diag: Vec<i64>,
    pub right: IntMatrix,
}

/// Smith normal form: left·m·right is diagonal with d₁ | d₂ | …, all dᵢ ≥ 0,
/// and left, right unimodular.
pub fn smith_normal_form(m: &IntMatrix) -> SmithResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut b = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    let swap_rows = |b: &mut IntMatrix, l: &mut IntMatrix, i: usize, j: usize| {
        for c in 0..b.cols() {
            let (x, y) = (b.get(i, c), b.get(j, c));
            b.set(i, c, y);
            b.set(j, c, x);
        }
        for c in 0..l.cols() {
            let (x, y) = (l.get(i, c), l.get(j, c));
            l.set(i, c, y);
            l.set(j, c, x);
        }
    };
    let swap_cols = |b: &mut IntMatrix, r: &mut IntMatrix, i: usize, j: usize| {
        for c in 0..b.rows() {
            let (x, y) = (b.get(c, i), b.get(c, j));
            b.set(c, i, y);
            b.set(c, j, x);
        }
        for c in 0..r.rows() {
            let (x, y) = (r.get(c, i), r.get(c, j));
            r.set(c, i, y);
            r.set(c, j, x);
        }
    };
    // row_i -= q * row_j
    let add_row = |b: &mut IntMatrix, l: &mut IntMatrix, i: usize, j: usize, q: i64| {
        for c in 0..b.cols() {
            b.set(i, c, b.get(i, c) - q * b.get(j, c));
        }
        for c in 0..l.cols() {
            l.set(i, c, l.get(i, c) - q * l.get(j, c));
        }
    };
    let add_col = |b: &mut IntMatrix, r: &mut IntMatrix, i: usize, j: usize, q: i64| {
        for c in 0..b.rows() {
            b.set(c, i, b.get(c, i) - q * b.get(c, j));
        }
        for c in 0..r.rows() {
            r.set(c, i, r.get(c, i) - q * r.get(c, j));
        }
    };
    let negate_row = |b: &mut IntMatrix, l: &mut IntMatrix, i: usize| {
        for c in 0..b.cols() {
            b.set(i, c, -b.get(i, c));
        }
        for c in 0..l.cols() {
            l.set(i, c, -l.get(i, c));
        }
    };

    let n = rows.min(cols);
    for k in 0..n {
        loop {
            // smallest |entry| != 0 in the trailing block, row-major tie-break
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let v = b.get(i, j);
                    if v != 0
                        && pivot.is_none_or(|(pi, pj)| v.abs() < b.get(pi, pj).abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // trailing block is zero
                break;
            };
            if pi != k {
                swap_rows(&mut b, &mut left, k, pi);
            }
            if pj != k {
                swap_cols(&mut b, &mut right, k, pj);
            }
            if b.get(k, k) < 0 {
                negate_row(&mut b, &mut left, k);
            }
            let p = b.get(k, k);
            let mut dirty = false;
            for i in k + 1..rows {
                let q = b.get(i, k).div_euclid(p);
                if q != 0 {
                    add_row(&mut b, &mut left, i, k, q);
                }
                if b.get(i, k) != 0 {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                let q = b.get(k, j).div_euclid(p);
                if q != 0 {
                    add_col(&mut b, &mut right, j, k, q);
                }
                if b.get(k, j) != 0 {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility fix-up: p must divide the trailing block
            let mut bad: Option<usize> = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if b.get(i, j) % p != 0 {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            if let Some(i) = bad {
                add_row(&mut b, &mut left, k, i, -1); // row_k += row_i
                continue;
            }
            break;
        }
    }

    let diag: Vec<i64> = (0..n).map(|k| b.get(k, k)).collect();
    SmithResult {
        left,
        diag,
        right,
    }
}

/// Canonical basis of the row lattice: integer row reduction by unimodular
/// operations (Hermite-style); returns the nonzero rows.
pub fn row_lattice_basis(m: &IntMatrix) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let cols = m.cols();
    let mut top = 0;
    for c in 0..cols {
        loop {
            let mut pivot: Option<usize> = None;
            for i in top..rows.len() {
                if rows[i][c] != 0
                    && pivot.is_none_or(|p| rows[i][c].abs() < rows[p][c].abs())
                {
                    pivot = Some(i);
                }
            }
            let Some(p) = pivot else { break };
            rows.swap(top, p);
            if rows[top][c] < 0 {
                for x in rows[top].iter_mut() {
                    *x = -*x;
                }
            }
            let lead = rows[top][c];
            let mut done = true;
            for i in top + 1..rows.len() {
                let q = rows[i][c].div_euclid(lead);
                if q != 0 {
                    for j in 0..cols {
                        rows[i][j] -= q * rows[top][j];
                    }
                }
                if rows[i][c] != 0 {
                    done = false;
                }
            }
            if done {
                top += 1;
                break;
            }
        }
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn rref_identity() {
        let r = ExactMatrix::identity(3).rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.reduced, ExactMatrix::identity(3));
    }

    #[test]
    fn rref_zero_matrix() {
        let r = ExactMatrix::zeros(2, 5).rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn solve_identity_and_unsolvable() {
        let id = ExactMatrix::identity(3);
        let b = vec![s(3), s(-1), s(7)];
        assert_eq!(id.solve(&b), Some(b.clone()));
        let z = ExactMatrix::zeros(2, 3);
        assert_eq!(z.solve(&[s(1), s(0)]), None);
    }

    #[test]
    fn solve_is_exact() {
        let m = ExactMatrix::from_rows(vec![
            vec![s(2), s(4), s(1)],
            vec![s(0), s(3), s(-1)],
        ]);
        let b = vec![s(7), s(5)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn kernel_free_variable_construction() {
        // x + 2y + 3z = 0 -> kernel dim 2
        let m = ExactMatrix::from_rows(vec![vec![s(1), s(2), s(3)]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(m.rank() + k.len(), m.cols());
    }

    #[test]
    fn smith_identity() {
        let r = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(r.diag, vec![1, 1, 1]);
    }

    #[test]
    fn smith_of_order_three_rotation_minus_identity() {
        let m = IntMatrix::from_rows(vec![vec![-2, -1], vec![1, -1]]);
        let r = smith_normal_form(&m);
        assert_eq!(r.diag, vec![1, 3]);
        let lmr = r.left.mul(&m).mul(&r.right);
        assert_eq!(lmr.get(0, 0), 1);
        assert_eq!(lmr.get(1, 1), 3);
        assert_eq!(lmr.get(0, 1), 0);
        assert_eq!(lmr.get(1, 0), 0);
        assert_eq!(r.left.det().abs(), 1);
        assert_eq!(r.right.det().abs(), 1);
    }

    #[test]
    fn smith_of_curvature_matrix() {
        let f = IntMatrix::from_rows(vec![
            vec![0, 1, 0, 0, -1, 0],
            vec![0, 0, 1, 1, -1, 0],
        ]);
        let r = smith_normal_form(&f);
        assert_eq!(r.diag, vec![1, 1]);
    }

    #[test]
    fn rowspace_membership() {
        let mut sp = RowSpace::new(3);
        assert!(sp.push(&[s(1), s(2), s(0)]));
        assert!(sp.push(&[s(0), s(1), s(1)]));
        assert!(!sp.push(&[s(1), s(3), s(1)]));
        assert!(sp.contains(&[s(2), s(5), s(1)]));
        assert!(!sp.contains(&[s(0), s(0), s(1)]));
    }

    fn arb_matrix(r: usize, c: usize) -> impl Strategy<Value = ExactMatrix> {
        proptest::collection::vec(-6i64..6, r * c).prop_map(move |v| {
            ExactMatrix::from_fn(r, c, |i, j| ExactScalar::from_int(v[i * c + j]))
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent(m in arb_matrix(4, 5)) {
            let r1 = m.rref();
            let r2 = r1.reduced.rref();
            prop_assert_eq!(r1.reduced, r2.reduced);
        }

        #[test]
        fn rank_nullity(m in arb_matrix(4, 6)) {
            prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
        }

        #[test]
        fn solve_known_solution(m in arb_matrix(4, 4), x in proptest::collection::vec(-5i64..5, 4)) {
            let xv: Vec<ExactScalar> = x.iter().map(|&v| ExactScalar::from_int(v)).collect();
            let b = m.mul_vec(&xv);
            let sol = m.solve(&b).expect("b is in the column space by construction");
            prop_assert_eq!(m.mul_vec(&sol), b);
        }

        #[test]
        fn smith_invariants(v in proptest::collection::vec(-9i64..9, 9)) {
            let m = IntMatrix::from_rows(vec![v[0..3].to_vec(), v[3..6].to_vec(), v[6..9].to_vec()]);
            let r = smith_normal_form(&m);
            let lmr = r.left.mul(&m).mul(&r.right);
            for i in 0..3 {
                for j in 0..3 {
                    if i == j {
                        prop_assert_eq!(lmr.get(i, j), r.diag[i]);
                        prop_assert!(r.diag[i] >= 0);
                    } else {
                        prop_assert_eq!(lmr.get(i, j), 0);
                    }
                }
            }
            for w in r.diag.windows(2) {
                if w[0] != 0 {
                    prop_assert_eq!(w[1] % w[0], 0);
                } else {
                    prop_assert_eq!(w[1], 0);
                }
            }
            prop_assert_eq!(r.left.det().abs(), 1);
            prop_assert_eq!(r.right.det().abs(), 1);
            let prod: i128 = r.diag.iter().map(|&d| d as i128).product();
            prop_assert_eq!(prod.abs(), m.det().abs());
        }
    }
}
