//! Smith normal form over `R / π^k R` and the services built on it: saturated
//! kernels, cokernel elementary divisors and linear solving.
//!
//! Over a discrete valuation ring an entry of minimal valuation divides every
//! other entry, so elimination never needs Bézout steps. Every valuation
//! decision is checked against the precision: a nonzero pivot with valuation
//! within [`GUARD`] digits of `k` raises [`Error::PrecisionExhausted`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::MatrixR;
use crate::ring::{Ring, RingSpec};

/// Guard digits kept below the working precision.
pub const GUARD: u32 = 2;

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Invertible; `left · A · right` is diagonal.
    pub left: MatrixR,
    /// Invertible.
    pub right: MatrixR,
    /// Valuations `d_1 ≤ … ≤ d_r` of the nonzero diagonal entries `π^{d_i}`.
    pub divisors: Vec<u32>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// Number of columns that are zero at precision (kernel dimension).
    pub fn zero_cols(&self) -> usize {
        self.cols - self.rank()
    }

    /// Number of rows that are zero at precision (free rank of the cokernel).
    pub fn zero_rows(&self) -> usize {
        self.rows - self.rank()
    }

    /// The diagonal matrix `left · A · right` claims to equal.
    pub fn diagonal(&self) -> MatrixR {
        let ring = self.left.ring();
        let mut d = MatrixR::zeros(ring, self.rows, self.cols);
        for (i, &v) in self.divisors.iter().enumerate() {
            d.set(i, i, &ring.pi_pow(v));
        }
        d
    }

    pub fn max_divisor(&self) -> u32 {
        self.divisors.last().copied().unwrap_or(0)
    }
}

pub fn smith_normal_form(a: &MatrixR) -> Result<SmithForm> {
    smith_normal_form_with_guard(a, GUARD)
}

pub fn smith_normal_form_with_guard(a: &MatrixR, guard: u32) -> Result<SmithForm> {
    let (left, right, divisors) = snf_impl(a, guard, true, true)?;
    Ok(SmithForm {
        left: left.unwrap(),
        right: right.unwrap(),
        divisors,
        rows: a.rows(),
        cols: a.cols(),
    })
}

type SnfParts = (Option<MatrixR>, Option<MatrixR>, Vec<u32>);

fn snf_impl(a: &MatrixR, guard: u32, want_left: bool, want_right: bool) -> Result<SnfParts> {
    let ring = a.ring().clone();
    let k = ring.k();
    let (m, n) = (a.rows(), a.cols());
    let mut work = a.clone();
    let mut left = want_left.then(|| MatrixR::identity(&ring, m));
    let mut right = want_right.then(|| MatrixR::identity(&ring, n));
    let mut divisors = Vec::new();

    for t in 0..m.min(n) {
        // Minimal valuation; ties go to the lowest row, then the lowest column.
        let mut best: Option<(u32, usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if let Some(v) = ring.valuation_raw(work.raw(i, j)) {
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break;
                        }
                    }
                }
            }
            if best.map_or(false, |(bv, _, _)| bv == 0) {
                break;
            }
        }
        let Some((v, pi, pj)) = best else { break };
        if v + guard >= k {
            return Err(Error::PrecisionExhausted { valuation: v, precision: k, guard });
        }
        work.swap_rows(t, pi);
        if let Some(l) = left.as_mut() {
            l.swap_rows(t, pi);
        }
        work.swap_cols(t, pj);
        if let Some(r) = right.as_mut() {
            r.swap_cols(t, pj);
        }
        // Normalise the pivot to exactly π^v.
        let unit = ring.div_pi_pow_raw(work.raw(t, t), v);
        let unit_inv = ring.inverse_raw(&unit).expect("pivot quotient is a unit");
        work.scale_row(t, &unit_inv);
        if let Some(l) = left.as_mut() {
            l.scale_row(t, &unit_inv);
        }
        *work.raw_mut(t, t) = ring.pi_pow_raw(v);

        for i in t + 1..m {
            if RingSpec::is_zero_raw(work.raw(i, t)) {
                continue;
            }
            let q = ring.neg_raw(&ring.div_pi_pow_raw(work.raw(i, t), v));
            work.add_row_multiple(i, t, &q);
            if let Some(l) = left.as_mut() {
                l.add_row_multiple(i, t, &q);
            }
            *work.raw_mut(i, t) = ring.zero_raw();
        }
        for j in t + 1..n {
            if RingSpec::is_zero_raw(work.raw(t, j)) {
                continue;
            }
            let q = ring.neg_raw(&ring.div_pi_pow_raw(work.raw(t, j), v));
            work.add_col_multiple(j, t, &q);
            if let Some(r) = right.as_mut() {
                r.add_col_multiple(j, t, &q);
            }
            *work.raw_mut(t, j) = ring.zero_raw();
        }
        divisors.push(v);
    }
    Ok((left, right, divisors))
}

/// Elementary divisors only (no transforms).
pub fn elementary_divisors(a: &MatrixR) -> Result<Vec<u32>> {
    Ok(snf_impl(a, GUARD, false, false)?.2)
}

/// Rank over the fraction field (entries zero at precision count as zero).
pub fn rank(a: &MatrixR) -> Result<usize> {
    Ok(elementary_divisors(a)?.len())
}

/// A saturated sublattice given by a basis together with coordinate rows.
///
/// `coords · basis = I`, and `coords` annihilates a complementary summand, so for
/// any vector `v` lying in the sublattice `coords · v` are its coordinates.
#[derive(Clone, Debug)]
pub struct Summand {
    pub basis: MatrixR,
    pub coords: MatrixR,
    /// Digits of precision that data derived through this summand may have lost
    /// (the largest elementary divisor of the defining map).
    pub loss: u32,
}

impl Summand {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

/// Basis (as columns) of the saturated kernel `{v : A v = 0}`.
pub fn kernel_saturated(a: &MatrixR) -> Result<MatrixR> {
    Ok(kernel_summand(a)?.basis)
}

pub fn kernel_summand(a: &MatrixR) -> Result<Summand> {
    let (_, right, divisors) = snf_impl(a, GUARD, false, true)?;
    let right = right.unwrap();
    let r = divisors.len();
    let n = a.cols();
    let inv = right.inverse()?;
    Ok(Summand {
        basis: right.columns(r..n),
        coords: inv.submatrix(r..n, 0..n),
        loss: divisors.last().copied().unwrap_or(0),
    })
}

/// Saturation of the column span of `a`.
pub fn image_summand(a: &MatrixR) -> Result<Summand> {
    let (left, _, divisors) = snf_impl(a, GUARD, true, false)?;
    let left = left.unwrap();
    let r = divisors.len();
    let m = a.rows();
    let inv = left.inverse()?;
    Ok(Summand {
        basis: inv.columns(0..r),
        coords: left.submatrix(0..r, 0..m),
        loss: divisors.last().copied().unwrap_or(0),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelDivisors {
    /// Valuations of the torsion invariants `R/π^d`, nondecreasing, all positive.
    pub torsion: Vec<u32>,
    pub free_rank: usize,
}

pub fn cokernel_divisors(a: &MatrixR) -> Result<CokernelDivisors> {
    let d = elementary_divisors(a)?;
    Ok(CokernelDivisors {
        free_rank: a.rows() - d.len(),
        torsion: d.into_iter().filter(|&v| v > 0).collect(),
    })
}

/// Solves `A x = b` for each column of `b`.
pub fn solve(a: &MatrixR, b: &MatrixR) -> Result<MatrixR> {
    solve_with_guard(a, b, GUARD)
}

pub fn solve_with_guard(a: &MatrixR, b: &MatrixR, guard: u32) -> Result<MatrixR> {
    if a.rows() != b.rows() {
        return Err(Error::Dimension("solve: right-hand side has wrong length".into()));
    }
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    let snf = smith_normal_form_with_guard(a, guard)?;
    let ring = a.ring();
    let y = snf.left.mul(b);
    let mut xp = MatrixR::zeros(ring, a.cols(), b.cols());
    for c in 0..b.cols() {
        for i in 0..a.rows() {
            let yi = y.raw(i, c);
            if i < snf.rank() {
                let d = snf.divisors[i];
                match ring.valuation_raw(yi) {
                    None => {}
                    Some(v) if v >= d => *xp.raw_mut(i, c) = ring.div_pi_pow_raw(yi, d),
                    Some(_) => return Err(Error::NoSolution { index: i }),
                }
            } else if !RingSpec::is_zero_raw(yi) {
                return Err(Error::NoSolution { index: i });
            }
        }
    }
    Ok(snf.right.mul(&xp))
}

/// Deterministic random matrix with unit determinant: `P · L · U` with `L` unit
/// lower triangular, `U` upper triangular with unit diagonal entries and `P` a
/// permutation.
pub fn random_unimodular(ring: &Ring, dim: usize, seed: u64) -> MatrixR {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lower = MatrixR::identity(ring, dim);
    let mut upper = MatrixR::zeros(ring, dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            if j < i {
                lower.set(i, j, &ring.random(&mut rng));
            } else if j == i {
                upper.set(i, j, &ring.random_unit(&mut rng));
            } else {
                upper.set(i, j, &ring.random(&mut rng));
            }
        }
    }
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.shuffle(&mut rng);
    let mut p = MatrixR::zeros(ring, dim, dim);
    for (i, &j) in perm.iter().enumerate() {
        p.set(i, j, &ring.one());
    }
    p.mul(&lower).mul(&upper)
}
