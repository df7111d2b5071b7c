//! Orbit multiplicities from the ranks of fixed-point lattices.
//!
//! For `P = ⊕ R[G/H_i]^{a_i}` one has `rank P^{H_j} = Σ_i a_i p^{n - max(i,j)}`.
//! Writing `S_j = a_0 + … + a_j`, consecutive differences give
//! `r_j - r_{j+1} = p^{n-j-1}(p-1) S_j` and `r_n = S_n`.

use std::fmt;

use crate::error::Result;
use crate::lattice::{Lattice, MultVector};

/// The unique rational solution of the orbit-count system when it is not a
/// nonnegative integer vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultWitness {
    pub ranks: Vec<usize>,
    /// `a_i = numerators[i] / denominator`.
    pub numerators: Vec<i64>,
    pub denominator: i64,
}

impl MultWitness {
    pub fn solution(&self) -> Vec<(i64, i64)> {
        self.numerators
            .iter()
            .map(|&num| {
                let g = gcd(num.unsigned_abs(), self.denominator.unsigned_abs()).max(1) as i64;
                (num / g, self.denominator / g)
            })
            .collect()
    }
}

impl fmt::Display for MultWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .solution()
            .iter()
            .map(|&(n, d)| if d == 1 { n.to_string() } else { format!("{n}/{d}") })
            .collect();
        let ranks: Vec<String> = self.ranks.iter().map(usize::to_string).collect();
        write!(f, "fixed ranks ({}) force a = ({})", ranks.join(","), parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultOutcome {
    Mults(MultVector),
    Negative(MultWitness),
}

/// `rank U^{H_j}` for `j = 0..=n`.
pub fn fixed_ranks(u: &Lattice) -> Result<Vec<usize>> {
    (0..=u.group().n as usize).map(|j| u.fixed_rank(j)).collect()
}

pub fn multiplicities_from_ranks(u: &Lattice) -> Result<MultOutcome> {
    let ranks = fixed_ranks(u)?;
    Ok(solve_orbit_counts(u.group().p, &ranks))
}

/// Solves the orbit-count system for `ranks = (r_0, …, r_n)`.
pub fn solve_orbit_counts(p: u64, ranks: &[usize]) -> MultOutcome {
    let n = ranks.len() - 1;
    let p = p as i64;
    // every S_j is an integer multiple of 1/denominator
    let denominator = if n == 0 { 1 } else { p.pow(n as u32 - 1) * (p - 1) };
    let mut s = vec![0i64; n + 1];
    for j in 0..n {
        let step = p.pow((n - j - 1) as u32) * (p - 1);
        s[j] = (ranks[j] as i64 - ranks[j + 1] as i64) * (denominator / step);
    }
    s[n] = ranks[n] as i64 * denominator;
    let numerators: Vec<i64> = (0..=n).map(|j| if j == 0 { s[0] } else { s[j] - s[j - 1] }).collect();
    if numerators.iter().all(|&x| x >= 0 && x % denominator == 0) {
        MultOutcome::Mults(MultVector(numerators.iter().map(|&x| (x / denominator) as usize).collect()))
    } else {
        MultOutcome::Negative(MultWitness { ranks: ranks.to_vec(), numerators, denominator })
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
