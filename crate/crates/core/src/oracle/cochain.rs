//! `H¹` from the full cochain complex indexed by every group element.

use crate::error::{Error, Result};
use crate::lattice::{CyclicGroup, Lattice};
use crate::matrix::MatrixR;
use crate::ring::RingElem;

use super::elim::{diagonalize, span_length, truncate_all};

pub const MAX_GROUP_ORDER: u64 = 9;
pub const MAX_COCHAIN_DIM: usize = 64;

/// `U/π^m U` with its action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    group: CyclicGroup,
    action: MatrixR,
}

impl FiniteModule {
    pub fn new(group: CyclicGroup, action: MatrixR) -> Result<Self> {
        if !action.is_square() {
            return Err(Error::Dimension(format!("action is {}x{}", action.rows(), action.cols())));
        }
        if !action.is_unimodular() {
            return Err(Error::InvalidLattice("action is not invertible".into()));
        }
        let r = action.rows();
        if action.pow(group.order()) != MatrixR::identity(action.ring(), r) {
            return Err(Error::InvalidLattice("action^|G| is not the identity".into()));
        }
        Ok(FiniteModule { group, action })
    }

    pub fn truncation(u: &Lattice, m: u32) -> Result<Self> {
        let l = u.truncate(m)?;
        Ok(FiniteModule { group: *l.group(), action: l.action().clone() })
    }

    pub fn modulus(&self) -> u32 {
        self.action.ring().k()
    }

    pub fn rank(&self) -> usize {
        self.action.rows()
    }

    pub fn group(&self) -> &CyclicGroup {
        &self.group
    }

    pub fn action(&self) -> &MatrixR {
        &self.action
    }
}

/// Invariant factors (as powers of `π`, ascending) of the image of `H¹(G, U)`
/// in `H¹(G, U/π^m)`, i.e. classes of cocycles that lift to `U`.
///
/// Cocycles are all `f: G → M` with `f(gh) = f(g) + g·f(h)` for every pair of
/// elements; those lifting to `U` form the saturated kernel of that system.
/// When `π^m` kills `H¹(G, U)` with room to spare this is `H¹(G, U)` itself.
/// The answer is read modulo `π^{m - d}`, `d` the largest elementary divisor
/// of the cocycle system, where the eliminated cocycle basis is exact.
pub fn cochain_h1(m: &FiniteModule) -> Result<Vec<u32>> {
    let order = m.group.order();
    let r = m.rank();
    if order > MAX_GROUP_ORDER || r * order as usize > MAX_COCHAIN_DIM {
        return Err(Error::SizeLimit(format!(
            "cochain oracle limited to |G| <= {MAX_GROUP_ORDER} and rank·|G| <= {MAX_COCHAIN_DIM}"
        )));
    }
    let ring = m.action.ring().clone();
    let g = order as usize;
    let n = r * g;
    let powers: Vec<MatrixR> =
        std::iter::successors(Some(MatrixR::identity(&ring, r)), |x| Some(x.mul(&m.action))).take(g).collect();

    // f(g^{s+t}) - f(g^s) - g^s f(g^t) = 0, unknowns f(g^t) stacked by t
    let mut d1: Vec<Vec<RingElem>> = Vec::with_capacity(r * g * g);
    for s in 0..g {
        for t in 0..g {
            for row in 0..r {
                let mut eq = vec![ring.zero(); n];
                let st = (s + t) % g;
                eq[st * r + row] = &eq[st * r + row] + &ring.one();
                eq[s * r + row] = &eq[s * r + row] - &ring.one();
                for c in 0..r {
                    eq[t * r + c] = &eq[t * r + c] - &powers[s].get(row, c);
                }
                d1.push(eq);
            }
        }
    }
    let diag = diagonalize(&ring, d1, n, true);
    let exact = ring.k() - diag.max_pivot();
    if exact == 0 {
        return Err(Error::PrecisionExhausted { valuation: diag.max_pivot(), precision: ring.k(), guard: 0 });
    }
    let ring = ring.with_precision(exact)?;
    let powers: Vec<MatrixR> = powers.iter().map(|x| x.change_precision(&ring)).collect::<Result<_>>()?;
    let cocycles = truncate_all(&ring, &diag.q.expect("tracked")[diag.pivots.len()..]);

    // principal derivations x ↦ (g^t x - x)_t
    let coboundaries: Vec<Vec<RingElem>> = (0..r)
        .map(|l| {
            (0..g)
                .flat_map(|t| (0..r).map(move |i| (t, i)))
                .map(|(t, i)| {
                    let x = powers[t].get(i, l);
                    if i == l {
                        &x - &ring.one()
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();

    let base = span_length(&ring, &coboundaries, n);
    // lengths of π^j H for j = 0..=m
    let lengths: Vec<u32> = (0..=ring.k())
        .map(|j| {
            let pj = ring.pi_pow(j);
            let mut gens: Vec<Vec<RingElem>> =
                cocycles.iter().map(|c| c.iter().map(|x| &pj * x).collect()).collect();
            gens.extend(coboundaries.iter().cloned());
            span_length(&ring, &gens, n) - base
        })
        .collect();
    // at least[j] = number of cyclic factors of length > j
    let at_least: Vec<u32> = lengths.windows(2).map(|w| w[0] - w[1]).collect();
    let mut factors = Vec::new();
    for j in 0..at_least.len() {
        let next = at_least.get(j + 1).copied().unwrap_or(0);
        for _ in 0..at_least[j] - next {
            factors.push(j as u32 + 1);
        }
    }
    Ok(factors)
}

/// `log_p` of the order of `⊕ R/π^{d}` (the residue field is `F_p`).
pub fn log_p_order(divisors: &[u32]) -> u32 {
    divisors.iter().sum()
}
