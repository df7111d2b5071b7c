//! Dense linear algebra over the prime field `F_p`.

use std::fmt;

use crate::ring::mod_inverse;

#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j).rem_euclid(p as i64) as u64;
            }
        }
        m
    }

    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_fn(p, r, c, |i, j| rows[i][j])
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "F_p matrix product dimensions");
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(t, j)) % p;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a + b) % self.p;
        }
        out
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a + self.p - b) % self.p;
        }
        out
    }

    pub fn pow(&self, mut exp: u64) -> FpMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.p, self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn from_columns(p: u64, rows: usize, cols: &[Vec<u64>]) -> FpMatrix {
        let mut out = Self::zeros(p, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                out.data[i * cols.len() + j] = c[i] % p;
            }
        }
        out
    }

    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.p, self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * cols + j] = self.get(i, j);
            }
            for j in 0..other.cols {
                out.data[i * cols + self.cols + j] = other.get(i, j);
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> FpMatrix {
        Self::from_fn(self.p, self.rows, idx.len(), |i, j| self.get(i, idx[j]) as i64)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&i| m.get(i, col) != 0) else {
                continue;
            };
            m.swap_rows(piv, row);
            let inv = mod_inverse(m.get(row, col) as i64, p as i64) as u64;
            for j in 0..m.cols {
                let v = m.get(row, j) * inv % p;
                m.data[row * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i != row {
                    let f = m.get(i, col);
                    if f != 0 {
                        for j in 0..m.cols {
                            let v = (m.get(i, j) + p * p - f * m.get(row, j)) % p;
                            m.data[i * m.cols + j] = v;
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
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
        self.rref().1.len()
    }

    /// Basis of the right null space, as columns.
    pub fn kernel(&self) -> FpMatrix {
        let p = self.p;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(p, self.cols, free.len());
        for (t, &f) in free.iter().enumerate() {
            out.set(f, t, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                let v = (p - r.get(row, f)) % p;
                out.set(pc, t, v);
            }
        }
        out
    }

    /// A basis of the column space, chosen among the columns themselves.
    pub fn column_basis(&self) -> FpMatrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Some `x` with `self · x = b`, if any.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let aug = self.hstack(&FpMatrix::from_columns(p, self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(self.p, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(self.p, n, n, |i, j| r.get(i, n + j) as i64))
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum::<u64>() % self.p)
            .collect()
    }

    /// Whether the column spaces of `self` and `other` coincide.
    pub fn same_column_space(&self, other: &FpMatrix) -> bool {
        let r = self.rank();
        r == other.rank() && self.hstack(other).rank() == r
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let m = FpMatrix::from_rows(3, &[vec![1, 2, 0], vec![2, 1, 0]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = FpMatrix::from_rows(2, &[vec![1, 1], vec![0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FpMatrix::identity(2, 2));
        assert!(FpMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = FpMatrix::from_rows(5, &[vec![1, 2], vec![2, 4]]);
        let x = m.solve(&[3, 1]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![3, 1]);
        assert!(m.solve(&[1, 1]).is_none());
    }
}
