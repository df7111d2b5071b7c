//! Seeded random lattices: scrambled permutation modules and extensions of
//! small indecomposables, for property batteries and examples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::lattice::{CyclicGroup, Lattice, MultVector};
use crate::oracle::sample_extension;
use crate::ring::Ring;

/// A random orbit-count vector of rank between 1 and `max_rank`.
pub fn random_mults<G: Rng + ?Sized>(group: &CyclicGroup, max_rank: usize, rng: &mut G) -> MultVector {
    let n = group.n as usize;
    loop {
        let mut m = vec![0; n + 1];
        let mut left = rng.gen_range(1..=max_rank);
        while left > 0 {
            let i = rng.gen_range(0..=n);
            let size = group.index(i) as usize;
            if size <= left {
                m[i] += 1;
                left -= size;
            } else if rng.gen_bool(0.3) {
                break;
            }
        }
        if m.iter().any(|&a| a > 0) {
            return MultVector(m);
        }
    }
}

/// A scrambled permutation lattice with its multiplicities.
pub fn random_permutation(ring: &Ring, group: CyclicGroup, max_rank: usize, seed: u64) -> Result<(Lattice, MultVector)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_mults(&group, max_rank, &mut rng);
    Ok((Lattice::permutation(group, ring, &m)?.scramble(rng.gen()), m))
}

/// One of `R[G/H_i]`, the augmentation ideal of `G/H_i` or its dual, inflated to `G`.
fn block<G: Rng + ?Sized>(ring: &Ring, group: CyclicGroup, max_rank: usize, rng: &mut G) -> Result<Option<Lattice>> {
    let n = group.n as usize;
    let i = rng.gen_range(0..=n);
    let s = group.index(i) as usize;
    let quotient = group.quotient(i);
    let lat = match rng.gen_range(0..4) {
        0 if s <= max_rank => Lattice::new(group, Lattice::regular(quotient, ring).action().clone())?,
        1 if s > 1 && s - 1 <= max_rank => {
            Lattice::new(group, Lattice::augmentation_ideal(quotient, ring).action().clone())?
        }
        2 if s > 1 && s - 1 <= max_rank => {
            Lattice::new(group, Lattice::augmentation_ideal(quotient, ring).action().transpose())?
        }
        _ if max_rank >= 2 && rng.gen_bool(0.5) => match cyclotomic_order(ring, group) {
            Some(o) => o,
            None => Lattice::trivial(group, ring, 1),
        },
        _ if max_rank >= 1 => Lattice::trivial(group, ring, 1),
        _ => return Ok(None),
    };
    Ok(Some(lat))
}

/// For `R = Z_3[π]/(π² - 3u)`: the integers of `K(ζ_3) = K(w)`, `w² = -1/u`,
/// on the basis `1, w` with the generator acting by `ζ_3 = (-1 + πw)/2`
/// (inflated to `G`). When `-1/u` is not a square this is an unramified
/// quadratic order strictly containing `R[ζ_3]`.
pub fn cyclotomic_order(ring: &Ring, group: CyclicGroup) -> Option<Lattice> {
    let eis = ring.eisenstein();
    if ring.p() != 3 || ring.e() != 2 || group.n == 0 || eis[1] != 0 || eis[0] % 3 != 0 {
        return None;
    }
    let u = ring.int(-eis[0] / 3);
    let u_inv = u.unit_inverse().ok()?;
    let half = ring.int(2).unit_inverse().ok()?;
    let a = -&half;
    let b = &ring.pi() * &half;
    let c = -&(&b * &u_inv);
    let m = crate::matrix::MatrixR::from_elems(ring, 2, 2, &[a.clone(), c, b, a]).ok()?;
    Lattice::new(group, m).ok()
}

/// Extensions of `R^2` by [`cyclotomic_order`]: coflasque whenever the
/// off-diagonal block is invertible mod `π`, yet with residue Jordan type
/// `[2, 2]` instead of the `[3, 1]` of `RC_3 ⊕ R`.
pub fn ramified_coflasque_candidate(ring: &Ring, group: CyclicGroup, seed: u64) -> Option<Lattice> {
    let q = cyclotomic_order(ring, group)?;
    let p = Lattice::trivial(group, ring, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let u = sample_extension(&q, &p, rng.gen()).ok()?;
        if crate::recognition::coflasque_check(&u).ok()?.coflasque {
            return Some(u.scramble(rng.gen()));
        }
    }
    None
}

/// Direct sums of random extensions of random blocks, scrambled; rank at most `max_rank`.
pub fn random_lattice(ring: &Ring, group: CyclicGroup, max_rank: usize, seed: u64) -> Result<Lattice> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts: Vec<Lattice> = Vec::new();
    let mut left = max_rank.max(1);
    while left > 0 && (parts.is_empty() || rng.gen_bool(0.6)) {
        let Some(q) = block(ring, group, left, &mut rng)? else { break };
        left -= q.rank();
        let part = if left > 0 && rng.gen_bool(0.6) {
            match block(ring, group, left, &mut rng)? {
                Some(p) => {
                    left -= p.rank();
                    sample_extension(&q, &p, rng.gen())?
                }
                None => q,
            }
        } else {
            q
        };
        parts.push(part);
    }
    let mut u = parts[0].clone();
    for p in &parts[1..] {
        u = u.direct_sum(p)?;
    }
    Ok(u.scramble(rng.gen()))
}
