//! Hermite and Smith normal forms.
//!
//! Lattices are column spans. The Hermite form produced here is the
//! lower-triangular column form: the pivot of column `k` sits in row
//! `pivot_rows[k]`, pivot rows strictly increase, pivots are positive, every
//! entry above a pivot is zero and every entry left of a pivot in its row is
//! reduced into `[0, pivot)`. Zero columns are moved to the right.

use super::{ext_gcd, Int, Matrix};

/// Column Hermite decomposition `H = M·T` with `T` unimodular.
#[derive(Clone, Debug)]
pub struct Hermite<T> {
    pub h: Matrix<T>,
    pub transform: Matrix<T>,
    /// Row index of the pivot of each nonzero column, in column order.
    pub pivot_rows: Vec<usize>,
}

impl<T: Int> Hermite<T> {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// The nonzero columns of `H`.
    pub fn basis(&self) -> Matrix<T> {
        self.h.truncate_cols(self.rank())
    }

    /// Columns of the transform that `M` sends to zero.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        (self.rank()..self.transform.cols())
            .map(|j| self.transform.column(j))
            .collect()
    }

    /// Solves `H·y = b` by forward substitution along the pivot rows and
    /// returns `x = T·y`, so that `M·x = b`.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        let rows = self.h.rows();
        assert_eq!(b.len(), rows, "right-hand side length mismatch");
        let mut residual = b.to_vec();
        let mut y = vec![T::zero(); self.h.cols()];
        let mut next = 0;
        for i in 0..rows {
            if next < self.pivot_rows.len() && self.pivot_rows[next] == i {
                let pivot = &self.h[(i, next)];
                let (q, r) = residual[i].div_rem(pivot);
                if !r.is_zero() {
                    return None;
                }
                if !q.is_zero() {
                    for (k, res) in residual.iter_mut().enumerate().skip(i) {
                        let e = &self.h[(k, next)];
                        if !e.is_zero() {
                            *res = res.clone() - q.clone() * e.clone();
                        }
                    }
                }
                y[next] = q;
                next += 1;
            } else if !residual[i].is_zero() {
                return None;
            }
        }
        Some(self.transform.mul_vec(&y))
    }
}

/// Column Hermite normal form of `m`.
pub fn hnf<T: Int>(m: &Matrix<T>) -> Hermite<T> {
    let mut h = m.clone();
    let mut t = Matrix::identity(m.cols());
    let mut pivot_rows = Vec::new();
    let mut p = 0;
    for row in 0..m.rows() {
        if p == m.cols() {
            break;
        }
        // Fold every entry of this row right of the current pivot column into it.
        for j in p + 1..m.cols() {
            if h[(row, j)].is_zero() {
                continue;
            }
            let a = h[(row, p)].clone();
            let b = h[(row, j)].clone();
            let (g, x, y) = ext_gcd(&a, &b);
            let u = -(b / g.clone());
            let v = a / g;
            h.combine_cols(p, j, &x, &y, &u, &v);
            t.combine_cols(p, j, &x, &y, &u, &v);
        }
        if h[(row, p)].is_zero() {
            continue;
        }
        if h[(row, p)].is_negative() {
            h.negate_col(p);
            t.negate_col(p);
        }
        let pivot = h[(row, p)].clone();
        for k in 0..p {
            let q = h[(row, k)].div_floor(&pivot);
            if !q.is_zero() {
                h.add_col_multiple(k, p, &-q.clone());
                t.add_col_multiple(k, p, &-q);
            }
        }
        pivot_rows.push(row);
        p += 1;
    }
    Hermite {
        h,
        transform: t,
        pivot_rows,
    }
}

/// `U·M·V = S` with `U`, `V` unimodular and `S` diagonal with
/// `d₁ | d₂ | … ≥ 0`. `u_inv` is kept in step with `U`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition<T> {
    pub s: Matrix<T>,
    pub u: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: Int> SmithDecomposition<T> {
    /// All `min(rows, cols)` diagonal entries, zeros included.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form by elementary reduction, pivoting on the entry of
/// least absolute value.
pub fn snf<T: Int>(m: &Matrix<T>) -> SmithDecomposition<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = Matrix::identity(rows);
    let mut u_inv = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);

    let swap_rows = |s: &mut Matrix<T>, u: &mut Matrix<T>, u_inv: &mut Matrix<T>, a: usize, b: usize| {
        s.swap_rows(a, b);
        u.swap_rows(a, b);
        u_inv.swap_cols(a, b);
    };
    // row[target] += f * row[source]
    let add_row = |s: &mut Matrix<T>, u: &mut Matrix<T>, u_inv: &mut Matrix<T>, target: usize, source: usize, f: &T| {
        s.add_row_multiple(target, source, f);
        u.add_row_multiple(target, source, f);
        u_inv.add_col_multiple(source, target, &-f.clone());
    };

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&s, t..rows, t..cols) else {
            break;
        };
        swap_rows(&mut s, &mut u, &mut u_inv, t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let pivot = s[(t, t)].clone();
            for i in t + 1..rows {
                let q = s[(i, t)].clone() / pivot.clone();
                if !q.is_zero() {
                    add_row(&mut s, &mut u, &mut u_inv, i, t, &-q);
                }
            }
            for j in t + 1..cols {
                let q = s[(t, j)].clone() / pivot.clone();
                if !q.is_zero() {
                    s.add_col_multiple(j, t, &-q.clone());
                    v.add_col_multiple(j, t, &-q);
                }
            }
            let col_rest = (t + 1..rows).find(|&i| !s[(i, t)].is_zero());
            let row_rest = (t + 1..cols).find(|&j| !s[(t, j)].is_zero());
            if col_rest.is_some() || row_rest.is_some() {
                // a remainder smaller than the pivot is left; move the smallest to (t, t)
                let best_col = min_abs_entry(&s, t..rows, t..t + 1);
                let best_row = min_abs_entry(&s, t..t + 1, t..cols);
                let (bi, bj) = match (best_col, best_row) {
                    (Some(c), Some(r)) => {
                        if s[c].abs() <= s[r].abs() {
                            c
                        } else {
                            r
                        }
                    }
                    (Some(c), None) => c,
                    (None, Some(r)) => r,
                    (None, None) => unreachable!(),
                };
                swap_rows(&mut s, &mut u, &mut u_inv, t, bi);
                s.swap_cols(t, bj);
                v.swap_cols(t, bj);
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(s[(i, j)].clone() % pivot.clone()).is_zero()));
            match bad {
                Some(i) => add_row(&mut s, &mut u, &mut u_inv, t, i, &T::one()),
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    SmithDecomposition { s, u, u_inv, v }
}

fn min_abs_entry<T: Int>(
    s: &Matrix<T>,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), T)> = None;
    for i in rows {
        for j in cols.clone() {
            let a = s[(i, j)].abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Integer solution of `M·x = b`, if one exists.
pub fn solve_in_span<T: Int>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    hnf(m).solve(b)
}

/// A basis of the integer kernel `{x : M·x = 0}`.
pub fn kernel<T: Int>(m: &Matrix<T>) -> Vec<Vec<T>> {
    hnf(m).kernel()
}
