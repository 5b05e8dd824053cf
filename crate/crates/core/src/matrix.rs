//! Dense integer matrices with exact Smith and Hermite normal forms.
//!
//! Pivoting is deterministic everywhere: the pivot is the nonzero entry of
//! smallest absolute value, ties broken by the lowest (row-major) index.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += vi * &self[(i, j)];
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn push_row(&mut self, row: Vec<BigInt>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        if negate {
            -prev
        } else {
            prev
        }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
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

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * q;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Result of [`smith_normal_form`]: `u * a * v == s`.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Snf {
    /// The nonzero diagonal entries s_1 | s_2 | ... (units included).
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

fn min_abs_pivot(m: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in r0..m.rows {
        for j in c0..m.cols {
            let x = &m[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if m[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_pivot(&s, t, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                // V <- V E, E = I + q e_t e_j^T, so V^-1 <- E^-1 V^-1.
                v_inv.add_row_multiple(t, j, &(-&q));
                if !s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // Divisibility: fold any offending row into the pivot row.
                let piv = s[(t, t)].clone();
                let offender = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&piv))
                });
                match offender {
                    None => break,
                    Some(i) => {
                        s.add_row_multiple(t, i, &BigInt::one());
                        u.add_row_multiple(t, i, &BigInt::one());
                    }
                }
            }
            // Re-pivot within row t / column t on the smallest remainder.
            let mut best = (t, t);
            for i in t..m {
                let x = &s[(i, t)];
                if !x.is_zero() && x.abs() < s[best].abs() {
                    best = (i, t);
                }
            }
            for j in t..n {
                let x = &s[(t, j)];
                if !x.is_zero() && x.abs() < s[best].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                s.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
            } else if best.1 != t {
                s.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                v_inv.swap_rows(t, best.1);
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Snf {
        u,
        s,
        v,
        v_inv,
        rank: t,
    }
}

/// Row-style Hermite normal form: `transform * a == full`, where the first
/// `rank` rows of `full` are the echelon basis (positive pivots, entries
/// above each pivot reduced into `[0, pivot)`) and the rest are zero.
#[derive(Debug, Clone)]
pub struct Hnf {
    pub full: IntMatrix,
    pub transform: IntMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Hnf {
    /// The nonzero rows, i.e. the canonical basis of the row lattice.
    pub fn basis(&self) -> IntMatrix {
        IntMatrix::from_rows(
            self.full.cols,
            (0..self.rank).map(|i| self.full.row(i).to_vec()).collect(),
        )
    }
}

pub fn hermite_normal_form(a: &IntMatrix) -> Hnf {
    let (m, n) = (a.rows, a.cols);
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let mut piv: Option<usize> = None;
            for i in r..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                match piv {
                    Some(p) if h[(p, c)].abs() <= h[(i, c)].abs() => {}
                    _ => piv = Some(i),
                }
            }
            let Some(p) = piv else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                if h[(r, c)].is_negative() {
                    h.negate_row(r);
                    u.negate_row(r);
                }
                for i in 0..r {
                    let q = -h[(i, c)].div_floor(&h[(r, c)]);
                    h.add_row_multiple(i, r, &q);
                    u.add_row_multiple(i, r, &q);
                }
                pivots.push(c);
                r += 1;
                break;
            }
        }
    }
    Hnf {
        full: h,
        transform: u,
        pivots,
        rank: r,
    }
}

/// Basis (as rows) of `{ x : x * a == 0 }`.
pub fn left_kernel(a: &IntMatrix) -> IntMatrix {
    let hnf = hermite_normal_form(a);
    let rows = (hnf.rank..a.rows)
        .map(|i| hnf.transform.row(i).to_vec())
        .collect();
    IntMatrix::from_rows(a.rows, rows)
}

/// Basis (as rows) of `{ x : a * x == 0 }`.
pub fn right_kernel(a: &IntMatrix) -> IntMatrix {
    left_kernel(&a.transpose())
}

/// Coefficients expressing `v` in an HNF basis, or `None` if `v` is not in
/// the row lattice.
pub fn hnf_coordinates(basis: &IntMatrix, pivots: &[usize], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coeffs = Vec::with_capacity(basis.rows);
    for (i, &c) in pivots.iter().enumerate() {
        let p = &basis[(i, c)];
        let (q, r) = rest[c].div_rem(p);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (j, x) in rest.iter_mut().enumerate() {
                *x -= &q * &basis[(i, j)];
            }
        }
        coeffs.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coeffs)
}

/// Some integer row vector `x` with `x * a == v`, if one exists.
pub fn solve_left(a: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(v.len(), a.cols);
    let hnf = hermite_normal_form(a);
    let basis = hnf.basis();
    let mu = hnf_coordinates(&basis, &hnf.pivots, v)?;
    let mut x = vec![BigInt::zero(); a.rows];
    for (i, mi) in mu.iter().enumerate() {
        for (j, xj) in x.iter_mut().enumerate() {
            *xj += mi * &hnf.transform[(i, j)];
        }
    }
    Some(x)
}

/// Index `[sup : sub]` of lattices given by row bases (`sub ⊆ sup` assumed),
/// `None` when infinite.
pub fn lattice_index(sub: &IntMatrix, sup: &IntMatrix) -> Option<BigInt> {
    let sup_hnf = hermite_normal_form(sup);
    let sup_basis = sup_hnf.basis();
    let sub_hnf = hermite_normal_form(sub);
    if sub_hnf.rank != sup_hnf.rank {
        return None;
    }
    let coords: Vec<Vec<BigInt>> = (0..sub_hnf.rank)
        .map(|i| {
            hnf_coordinates(&sup_basis, &sup_hnf.pivots, sub_hnf.full.row(i))
                .expect("sub lattice not contained in sup lattice")
        })
        .collect();
    let t = IntMatrix::from_rows(sup_hnf.rank, coords);
    let snf = smith_normal_form(&t);
    Some(snf.invariants().iter().product())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_unimodular(m: &IntMatrix) -> bool {
        m.determinant().abs().is_one()
    }

    #[test]
    fn snf_two_by_two() {
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.s, IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s);
        assert_eq!(snf.v.mul(&snf.v_inv), IntMatrix::identity(2));
    }

    #[test]
    fn snf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).s, id);
        let z = IntMatrix::zeros(2, 3);
        let snf = smith_normal_form(&z);
        assert!(snf.s.is_zero());
        assert_eq!(snf.u, IntMatrix::identity(2));
        assert_eq!(snf.v, IntMatrix::identity(3));
    }

    #[test]
    fn hnf_is_canonical_for_same_lattice() {
        let a = IntMatrix::from_i64(&[&[2, 4, 0], &[0, 6, 3]]);
        let b = IntMatrix::from_i64(&[&[2, 10, 3], &[2, 4, 0], &[4, 14, 3]]);
        assert_eq!(
            hermite_normal_form(&a).basis(),
            hermite_normal_form(&b).basis()
        );
    }

    #[test]
    fn kernels() {
        let a = IntMatrix::from_i64(&[&[1, -2]]);
        let k = right_kernel(&a);
        assert_eq!(k.rows(), 1);
        let w = k.row(0);
        assert!((&w[0] - BigInt::from(2) * &w[1]).is_zero());
        assert!(is_unimodular(&hermite_normal_form(&a.transpose()).transform));
    }

    #[test]
    fn solve_and_index() {
        let a = IntMatrix::from_i64(&[&[4, 0], &[0, 6]]);
        assert!(solve_left(&a, &[BigInt::from(8), BigInt::from(6)]).is_some());
        assert!(solve_left(&a, &[BigInt::from(2), BigInt::from(0)]).is_none());
        let sup = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(lattice_index(&a, &sup), Some(BigInt::from(4)));
        let line = IntMatrix::from_i64(&[&[4, 0]]);
        assert_eq!(lattice_index(&line, &sup), None);
    }

    #[test]
    fn determinant_signs() {
        assert_eq!(
            IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).determinant(),
            BigInt::from(-1)
        );
        assert_eq!(
            IntMatrix::from_i64(&[&[2, 1], &[1, 3]]).determinant(),
            BigInt::from(5)
        );
    }
}
