//! Multiplicities by enumeration, with fixed ranks read off characters.

use crate::error::{Error, Result};
use crate::lattice::{CyclicGroup, Lattice, MultVector};
use crate::matrix::MatrixR;

pub const MAX_BRUTE_RANK: usize = 12;
pub const MAX_BRUTE_ORDER: u64 = 8;

/// `rank U^{H_j}` as `(1/|H_j|) Σ_{h ∈ H_j} tr(h)`.
pub fn character_fixed_rank(u: &Lattice, j: usize) -> Result<usize> {
    u.group().check_subgroup(j)?;
    let ring = u.ring();
    let h = u.subgroup_generator(j)?;
    let order = u.group().subgroup_order(j) as usize;
    let mut power = MatrixR::identity(ring, u.rank());
    let mut sum = ring.zero();
    for _ in 0..order {
        for i in 0..u.rank() {
            sum = &sum + &power.get(i, i);
        }
        power = power.mul(&h);
    }
    // the sum is a rational integer in [0, |H_j|·rank]
    let bound = (order * u.rank()) as i64;
    let hits: Vec<i64> = (0..=bound).filter(|&t| ring.int(t) == sum).collect();
    match hits.as_slice() {
        [t] if t % order as i64 == 0 => Ok((t / order as i64) as usize),
        _ => Err(Error::Internal(format!("character sum {sum} is not a recoverable multiple of {order}"))),
    }
}

/// All `a` with `Σ a_i p^{n-i} = rank`.
pub fn orbit_vectors(group: &CyclicGroup, rank: usize) -> Vec<MultVector> {
    fn rec(group: &CyclicGroup, i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<MultVector>) {
        let n = group.n as usize;
        if i == n {
            cur.push(left);
            out.push(MultVector(cur.clone()));
            cur.pop();
            return;
        }
        let size = group.index(i) as usize;
        for a in 0..=left / size {
            cur.push(a);
            rec(group, i + 1, left - a * size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(group, 0, rank, &mut Vec::new(), &mut out);
    out
}

/// The unique orbit-count vector whose fixed-rank profile matches `U`, if any.
pub fn brute_multiplicities(u: &Lattice) -> Result<Option<MultVector>> {
    let g = u.group();
    if u.rank() > MAX_BRUTE_RANK || g.order() > MAX_BRUTE_ORDER {
        return Err(Error::SizeLimit(format!(
            "brute multiplicities limited to rank <= {MAX_BRUTE_RANK} and |G| <= {MAX_BRUTE_ORDER}"
        )));
    }
    let profile: Vec<usize> = (0..=g.n as usize).map(|j| character_fixed_rank(u, j)).collect::<Result<_>>()?;
    let matches: Vec<MultVector> = orbit_vectors(g, u.rank())
        .into_iter()
        .filter(|a| (0..=g.n as usize).all(|j| a.fixed_rank(g, j) == profile[j]))
        .collect();
    Ok(match matches.len() {
        1 => matches.into_iter().next(),
        _ => None,
    })
}
