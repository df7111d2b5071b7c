//! Dense matrices over `R / π^k R`.

use std::fmt;

use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::ring::{Coeffs, Ring, RingElem, RingSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixR {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Coeffs>,
}

impl MatrixR {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        MatrixR { ring: ring.clone(), rows, cols, data: vec![ring.zero_raw(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        let one = ring.int_raw(1);
        for i in 0..n {
            m.data[i * n + i] = one.clone();
        }
        m
    }

    /// Matrix with integer entries given row-major.
    pub fn from_ints(ring: &Ring, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        MatrixR {
            ring: ring.clone(),
            rows,
            cols,
            data: entries.iter().map(|&n| ring.int_raw(n)).collect(),
        }
    }

    pub fn from_rows(ring: &Ring, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::from_ints(ring, r, c, &flat)
    }

    pub fn from_elems(ring: &Ring, rows: usize, cols: usize, entries: &[RingElem]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|x| x.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(MatrixR {
            ring: ring.clone(),
            rows,
            cols,
            data: entries.iter().map(|x| x.raw().clone()).collect(),
        })
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                assert!(x.ring() == ring, "ring mismatch");
                data.push(x.raw().clone());
            }
        }
        MatrixR { ring: ring.clone(), rows, cols, data }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> RingElem {
        self.ring.wrap(self.data[i * self.cols + j].clone())
    }

    pub(crate) fn raw(&self, i: usize, j: usize) -> &Coeffs {
        &self.data[i * self.cols + j]
    }

    pub(crate) fn raw_mut(&mut self, i: usize, j: usize) -> &mut Coeffs {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: &RingElem) {
        assert!(x.ring() == &self.ring, "ring mismatch");
        self.data[i * self.cols + j] = x.raw().clone();
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| RingSpec::is_zero_raw(c))
    }

    pub fn mul(&self, other: &MatrixR) -> MatrixR {
        assert!(self.ring == other.ring, "ring mismatch");
        assert_eq!(self.cols, other.rows, "matrix product dimensions");
        let r = &self.ring;
        let mut out = Self::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = &self.data[i * self.cols + t];
                if RingSpec::is_zero_raw(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[t * other.cols + j];
                    if RingSpec::is_zero_raw(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = r.add_raw(&out.data[idx], &r.mul_raw(a, b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &MatrixR) -> MatrixR {
        assert!(self.ring == other.ring && self.rows == other.rows && self.cols == other.cols);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = self.ring.add_raw(a, b);
        }
        out
    }

    pub fn sub(&self, other: &MatrixR) -> MatrixR {
        assert!(self.ring == other.ring && self.rows == other.rows && self.cols == other.cols);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = self.ring.sub_raw(a, b);
        }
        out
    }

    pub fn scale(&self, x: &RingElem) -> MatrixR {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = self.ring.mul_raw(a, x.raw());
        }
        out
    }

    pub fn neg(&self) -> MatrixR {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = self.ring.neg_raw(a);
        }
        out
    }

    pub fn pow(&self, mut exp: u64) -> MatrixR {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(&self.ring, self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn transpose(&self) -> MatrixR {
        let mut out = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> MatrixR {
        let mut out = Self::zeros(&self.ring, rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.data[oi * out.cols + oj] = self.data[i * self.cols + j].clone();
            }
        }
        out
    }

    pub fn columns(&self, cols: std::ops::Range<usize>) -> MatrixR {
        self.submatrix(0..self.rows, cols)
    }

    pub fn select_columns(&self, idx: &[usize]) -> MatrixR {
        let mut out = Self::zeros(&self.ring, self.rows, idx.len());
        for i in 0..self.rows {
            for (oj, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + oj] = self.data[i * self.cols + j].clone();
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<RingElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn column_vector(&self, j: usize) -> MatrixR {
        self.columns(j..j + 1)
    }

    pub fn hstack(&self, other: &MatrixR) -> MatrixR {
        assert!(self.ring == other.ring);
        assert_eq!(self.rows, other.rows, "hstack row counts");
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(&self.ring, self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * cols + j] = self.data[i * self.cols + j].clone();
            }
            for j in 0..other.cols {
                out.data[i * cols + self.cols + j] = other.data[i * other.cols + j].clone();
            }
        }
        out
    }

    pub fn hstack_all(ring: &Ring, rows: usize, parts: &[MatrixR]) -> MatrixR {
        parts.iter().fold(Self::zeros(ring, rows, 0), |acc, m| acc.hstack(m))
    }

    pub fn vstack(&self, other: &MatrixR) -> MatrixR {
        self.transpose().hstack(&other.transpose()).transpose()
    }

    pub fn block_diag(&self, other: &MatrixR) -> MatrixR {
        assert!(self.ring == other.ring);
        let mut out = Self::zeros(&self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.raw_mut(i, j) = self.raw(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                *out.raw_mut(self.rows + i, self.cols + j) = other.raw(i, j).clone();
            }
        }
        out
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += f · row[src]`
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, f: &Coeffs) {
        let r = self.ring.clone();
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if RingSpec::is_zero_raw(s) {
                continue;
            }
            let t = r.mul_raw(f, s);
            let d = &mut self.data[dst * self.cols + j];
            *d = r.add_raw(d, &t);
        }
    }

    /// `col[dst] += f · col[src]`
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, f: &Coeffs) {
        let r = self.ring.clone();
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if RingSpec::is_zero_raw(s) {
                continue;
            }
            let t = r.mul_raw(s, f);
            let d = &mut self.data[i * self.cols + dst];
            *d = r.add_raw(d, &t);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, f: &Coeffs) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = self.ring.mul_raw(&self.data[idx], f);
        }
    }

    /// Entrywise residue in `F_p`.
    pub fn reduce(&self) -> FpMatrix {
        let p = self.ring.p();
        FpMatrix::from_fn(p, self.rows, self.cols, |i, j| self.data[i * self.cols + j][0] % p as i64)
    }

    /// Integer lift of an `F_p` matrix.
    pub fn lift_fp(ring: &Ring, m: &FpMatrix) -> MatrixR {
        let mut out = Self::zeros(ring, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.data[i * m.cols() + j] = ring.int_raw(m.get(i, j) as i64);
            }
        }
        out
    }

    /// Whether the matrix is invertible over `R` (square with unit determinant).
    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.reduce().rank() == self.rows
    }

    /// The same matrix re-encoded in `ring` (a different precision of the same
    /// ring), using symmetric representatives of the coefficients.
    pub fn change_precision(&self, ring: &Ring) -> Result<MatrixR> {
        if ring.p() != self.ring.p() || ring.e() != self.ring.e() || ring.eisenstein() != self.ring.eisenstein() {
            return Err(Error::RingMismatch);
        }
        let mut out = Self::zeros(ring, self.rows, self.cols);
        for (dst, src) in out.data.iter_mut().zip(&self.data) {
            let b = self.ring.balanced_raw(src);
            *dst = ring.from_coeffs(&b)?.raw().clone();
        }
        Ok(out)
    }

    /// Inverse of a unimodular matrix by Gauss-Jordan elimination with unit pivots.
    pub fn inverse(&self) -> Result<MatrixR> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let r = self.ring.clone();
        let mut a = self.clone();
        let mut inv = Self::identity(&r, n);
        for col in 0..n {
            let piv = (col..n).find(|&i| r.valuation_raw(a.raw(i, col)) == Some(0)).ok_or(
                Error::NotAUnit { valuation: None },
            )?;
            a.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            let u = r.inverse_raw(a.raw(col, col)).expect("unit pivot");
            a.scale_row(col, &u);
            inv.scale_row(col, &u);
            for i in 0..n {
                if i == col || RingSpec::is_zero_raw(a.raw(i, col)) {
                    continue;
                }
                let f = r.neg_raw(a.raw(i, col));
                a.add_row_multiple(i, col, &f);
                inv.add_row_multiple(i, col, &f);
            }
        }
        Ok(inv)
    }

    /// Row-major entries as balanced coefficient lists.
    pub fn to_coeff_rows(&self) -> Vec<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.ring.balanced_raw(self.raw(i, j))).collect())
            .collect()
    }

    pub fn from_coeff_rows(ring: &Ring, rows: &[Vec<Vec<i64>>]) -> Result<MatrixR> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut out = Self::zeros(ring, r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Parse(format!("row {i} has {} entries, expected {c}", row.len())));
            }
            for (j, coeffs) in row.iter().enumerate() {
                *out.raw_mut(i, j) = ring.from_coeffs(coeffs)?.raw().clone();
            }
        }
        Ok(out)
    }

    /// Minimal valuation over all entries (`None` if the matrix is zero).
    pub fn min_valuation(&self) -> Option<u32> {
        self.data.iter().filter_map(|c| self.ring.valuation_raw(c)).min()
    }

    /// Exact entrywise division by `π^d`; every entry must have valuation ≥ d.
    pub fn div_pi_pow(&self, d: u32) -> MatrixR {
        let mut out = self.clone();
        for c in out.data.iter_mut() {
            *c = self.ring.div_pi_pow_raw(c, d);
        }
        out
    }

    /// Column-major vectorisation.
    pub fn vectorize(&self) -> MatrixR {
        let mut out = Self::zeros(&self.ring, self.rows * self.cols, 1);
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.data[j * self.rows + i] = self.raw(i, j).clone();
            }
        }
        out
    }

    /// Kronecker product; `vec(A X B) = (Bᵀ ⊗ A) vec(X)`.
    pub fn kron(&self, other: &MatrixR) -> MatrixR {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Self::zeros(&self.ring, self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.raw(i, j);
                if RingSpec::is_zero_raw(a) {
                    continue;
                }
                for s in 0..r2 {
                    for t in 0..c2 {
                        *out.raw_mut(i * r2 + s, j * c2 + t) = self.ring.mul_raw(a, other.raw(s, t));
                    }
                }
            }
        }
        out
    }

    pub fn unvectorize(v: &MatrixR, rows: usize, cols: usize) -> MatrixR {
        assert_eq!(v.rows * v.cols, rows * cols);
        let mut out = Self::zeros(&v.ring, rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                *out.raw_mut(i, j) = v.data[j * rows + i].clone();
            }
        }
        out
    }
}

impl fmt::Debug for MatrixR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixR({}x{}, p={}, e={}, k={})", self.rows, self.cols, self.ring.p(), self.ring.e(), self.ring.k())?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;

    #[test]
    fn inverse_of_unimodular() {
        let r = make_ring(3, 1, &[], 6).unwrap();
        let m = MatrixR::from_rows(&r, &[vec![2, 1, 0], vec![3, 1, 4], vec![0, 3, 1]]);
        assert!(m.is_unimodular());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), MatrixR::identity(&r, 3));
        let sing = MatrixR::from_rows(&r, &[vec![3, 0], vec![0, 1]]);
        assert!(sing.inverse().is_err());
    }

    #[test]
    fn vectorize_roundtrip() {
        let r = make_ring(2, 1, &[], 4).unwrap();
        let m = MatrixR::from_rows(&r, &[vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(MatrixR::unvectorize(&m.vectorize(), 2, 3), m);
    }
}
