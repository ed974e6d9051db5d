//! Dense integer matrices and Smith normal form with transform tracking.
//!
//! The decomposition `u * m * v = d` is kept together with the inverses of
//! `u` and `v`, which makes quotient projections and linear solves over the
//! integers one matrix application each.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major matrix over `Z` with unbounded entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
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
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.cols {
            let add = c * self.get(j, k);
            let cur = self.get(i, k) + add;
            self.set(i, k, cur);
        }
    }

    /// col_j += c * col_i
    fn add_col(&mut self, j: usize, i: usize, c: &BigInt) {
        for k in 0..self.rows {
            let add = c * self.get(k, i);
            let cur = self.get(k, j) + add;
            self.set(k, j, cur);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -self.get(i, k).clone();
            self.set(i, k, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for k in 0..self.rows {
            let v = -self.get(k, j).clone();
            self.set(k, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Smith decomposition `u * m * v = d` with `u`, `v` unimodular and `d`
/// diagonal with non-negative entries in a divisibility chain.
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries, one per `min(rows, cols)` position.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Number of non-zero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Basis of the integer kernel of `m` (as column vectors).
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let diag = self.diagonal();
        let mut basis = Vec::new();
        for j in 0..self.d.cols() {
            let zero_col = j >= diag.len() || diag[j].is_zero();
            if zero_col {
                basis.push((0..self.v.rows()).map(|i| self.v.get(i, j).clone()).collect());
            }
        }
        basis
    }

    /// One integer solution of `m * x = b`, if any.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.u.mul_vec(b);
        let diag = self.diagonal();
        let mut z = vec![BigInt::zero(); self.d.cols()];
        for (i, yi) in y.iter().enumerate() {
            if i < diag.len() && !diag[i].is_zero() {
                let (q, r) = yi.div_rem(&diag[i]);
                if !r.is_zero() {
                    return None;
                }
                z[i] = q;
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&z))
    }
}

/// Computes the Smith normal form by integer row and column reduction,
/// choosing the smallest non-zero entry as pivot to keep coefficients tame.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // Elementary operations applied to d, mirrored on the transforms so that
    // u * m * v = d stays an invariant.
    macro_rules! row_swap {
        ($a:expr, $b:expr) => {{
            d.swap_rows($a, $b);
            u.swap_rows($a, $b);
            u_inv.swap_cols($a, $b);
        }};
    }
    macro_rules! col_swap {
        ($a:expr, $b:expr) => {{
            d.swap_cols($a, $b);
            v.swap_cols($a, $b);
            v_inv.swap_rows($a, $b);
        }};
    }
    macro_rules! row_add {
        ($i:expr, $j:expr, $c:expr) => {{
            let c: BigInt = $c;
            d.add_row($i, $j, &c);
            u.add_row($i, $j, &c);
            u_inv.add_col($j, $i, &(-c));
        }};
    }
    macro_rules! col_add {
        ($j:expr, $i:expr, $c:expr) => {{
            let c: BigInt = $c;
            d.add_col($j, $i, &c);
            v.add_col($j, $i, &c);
            v_inv.add_row($i, $j, &(-c));
        }};
    }

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // Locate the smallest non-zero entry in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d.get(i, j).is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => d.get(i, j).abs() < d.get(pi, pj).abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break; // trailing block is zero
        };
        row_swap!(t, pi);
        col_swap!(t, pj);

        // Clear row and column t; remainders can revive entries, so loop.
        let mut clean = true;
        for i in (t + 1)..rows {
            if !d.get(i, t).is_zero() {
                let q = div_round(d.get(i, t), d.get(t, t));
                row_add!(i, t, -q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
        }
        for j in (t + 1)..cols {
            if !d.get(t, j).is_zero() {
                let q = div_round(d.get(t, j), d.get(t, t));
                col_add!(j, t, -q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue; // re-pick pivot at the same t
        }

        // Divisibility chain: pivot must divide the whole trailing block.
        let mut fixed = true;
        'outer: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if !d.get(i, j).mod_floor(d.get(t, t)).is_zero() {
                    row_add!(t, i, BigInt::one());
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }

        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }

    SmithForm { d, u, u_inv, v, v_inv }
}

/// Quotient rounded to nearest (ties toward even floor), which keeps Euclid
/// steps shrinking by at least half.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if (r.clone() * 2u8).abs() > b.abs() {
        q + BigInt::one()
    } else {
        q
    }
}
