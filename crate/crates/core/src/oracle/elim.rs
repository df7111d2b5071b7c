//! A deliberately plain diagonalisation over `R/π^m`, kept separate from the
//! main Smith form so the oracles share no elimination code with it.

use crate::ring::{Ring, RingElem};

pub(crate) struct Diagonal {
    /// Valuations of the nonzero pivots, nondecreasing.
    pub pivots: Vec<u32>,
    /// Column transform `Q` (as columns) with `A·Q` zero beyond the pivots.
    /// Quotients by a pivot `π^v` are ambiguous in their top `v` digits, so
    /// `Q` is only exact modulo `π^{k - max pivot}`.
    pub q: Option<Vec<Vec<RingElem>>>,
}

impl Diagonal {
    pub fn max_pivot(&self) -> u32 {
        self.pivots.iter().copied().max().unwrap_or(0)
    }
}

/// Re-encodes elements at a lower precision.
pub(crate) fn truncate_all(ring: &Ring, xs: &[Vec<RingElem>]) -> Vec<Vec<RingElem>> {
    xs.iter()
        .map(|v| v.iter().map(|x| ring.from_coeffs(&x.balanced_coeffs()).expect("coefficient count matches")).collect())
        .collect()
}

fn div_pi(ring: &Ring, x: &RingElem, v: u32) -> RingElem {
    ring.wrap(ring.div_pi_pow_raw(x.coeffs(), v))
}

/// Diagonalises `a` (given as rows) by row and column operations.
pub(crate) fn diagonalize(ring: &Ring, mut a: Vec<Vec<RingElem>>, cols: usize, track: bool) -> Diagonal {
    let rows = a.len();
    let mut q: Option<Vec<Vec<RingElem>>> = track.then(|| {
        (0..cols).map(|j| (0..cols).map(|i| if i == j { ring.one() } else { ring.zero() }).collect()).collect()
    });
    let mut pivots = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if let Some(v) = x.valuation() {
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        if let Some(q) = q.as_mut() {
            q.swap(t, bj);
        }
        let unit_inv = div_pi(ring, &a[t][t], v).unit_inverse().expect("pivot has minimal valuation");
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let f = &div_pi(ring, &a[i][t], v) * &unit_inv;
            for j in t..cols {
                let d = &f * &a[t][j];
                a[i][j] = &a[i][j] - &d;
            }
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let f = &div_pi(ring, &a[t][j], v) * &unit_inv;
            a[t][j] = ring.zero();
            if let Some(q) = q.as_mut() {
                let (head, tail) = q.split_at_mut(j);
                for (x, y) in tail[0].iter_mut().zip(&head[t]) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(v);
    }
    Diagonal { pivots, q }
}

/// `log_p` of the size of the submodule of `(R/π^m)^N` spanned by `gens`.
pub(crate) fn span_length(ring: &Ring, gens: &[Vec<RingElem>], n: usize) -> u32 {
    if gens.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<RingElem>> = (0..n).map(|i| gens.iter().map(|g| g[i].clone()).collect()).collect();
    let d = diagonalize(ring, rows, gens.len(), false);
    d.pivots.iter().map(|&v| ring.k() - v).sum()
}
