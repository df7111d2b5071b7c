//! Permutation bases by exhaustive search over orbit generators.
//!
//! A generator of an orbit with stabiliser `H_i` is a vector of `U^{H_i}`;
//! candidates are `K·c` for `K` a basis of `U^{H_i}` and `c` running over the
//! residue classes of coefficients modulo `π²`. Whether the resulting orbits
//! form a basis depends only on residues modulo `π`, so the search is
//! complete: any permutation basis has generators in these classes.

use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::lattice::{Lattice, MultVector};
use crate::matrix::MatrixR;
use crate::recognition::PermCertificate;
use crate::ring::RingElem;

use super::brute::orbit_vectors;
use super::elim::{diagonalize, truncate_all};

pub const MAX_SEARCH_RANK: usize = 3;
pub const MAX_SEARCH_ORDER: u64 = 4;
pub const SEARCH_DEPTH: u32 = 2;

/// Basis of `U^{H_i}` from the oracle's own elimination, computed on a lift
/// of `U` deep enough that the transform is exact at the original precision.
fn fixed_basis(u: &Lattice, i: usize) -> Result<MatrixR> {
    let r = u.rank();
    let diag = |w: &Lattice| -> Result<_> {
        let h = w.subgroup_generator(i)?.sub(&MatrixR::identity(w.ring(), r));
        let rows: Vec<Vec<RingElem>> = (0..r).map(|a| (0..r).map(|b| h.get(a, b)).collect()).collect();
        Ok(diagonalize(w.ring(), rows, r, true))
    };
    let slack = diag(u)?.max_pivot();
    let deep = u.lift_precision(u.precision() + slack)?;
    let d = diag(&deep)?;
    let cols = truncate_all(u.ring(), &d.q.expect("tracked")[d.pivots.len()..]);
    Ok(MatrixR::from_fn(u.ring(), r, cols.len(), |a, b| cols[b][a].clone()))
}

fn residue_classes(u: &Lattice) -> Vec<RingElem> {
    let ring = u.ring();
    let p = ring.p() as i64;
    let mut out = vec![ring.zero()];
    for d in 0..SEARCH_DEPTH {
        let pd = ring.pi_pow(d);
        out = out.iter().flat_map(|x| (0..p).map(move |c| (x.clone(), c))).map(|(x, c)| &x + &(&ring.int(c) * &pd)).collect();
    }
    out
}

struct Search<'a> {
    u: &'a Lattice,
    classes: Vec<RingElem>,
    bases: Vec<MatrixR>,
}

impl Search<'_> {
    fn orbit(&self, i: usize, coeffs: &[usize]) -> MatrixR {
        let k = &self.bases[i];
        let ring = self.u.ring();
        let c = MatrixR::from_fn(ring, k.cols(), 1, |a, _| self.classes[coeffs[a]].clone());
        let mut v = k.mul(&c);
        let size = self.u.group().index(i) as usize;
        let mut cols = Vec::with_capacity(size);
        for _ in 0..size {
            cols.push(v.clone());
            v = self.u.action().mul(&v);
        }
        MatrixR::hstack_all(ring, self.u.rank(), &cols)
    }

    /// Depth-first choice of one generator per orbit, keeping residues independent.
    fn extend(&self, subgroups: &[usize], chosen: &mut Vec<MatrixR>) -> bool {
        let Some(&i) = subgroups.get(chosen.len()) else { return true };
        let dim = self.bases[i].cols();
        let total = self.classes.len().pow(dim as u32);
        let mut coeffs = vec![0usize; dim];
        for idx in 0..total {
            let mut t = idx;
            for c in coeffs.iter_mut() {
                *c = t % self.classes.len();
                t /= self.classes.len();
            }
            let orbit = self.orbit(i, &coeffs);
            let mut stacked = chosen.clone();
            stacked.push(orbit);
            let m = MatrixR::hstack_all(self.u.ring(), self.u.rank(), &stacked);
            let red: FpMatrix = m.reduce();
            if red.rank() < m.cols() {
                continue;
            }
            chosen.push(stacked.pop().expect("pushed"));
            if self.extend(subgroups, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

pub fn exhaustive_basis_search(u: &Lattice) -> Result<Option<PermCertificate>> {
    let g = *u.group();
    if u.rank() > MAX_SEARCH_RANK || g.order() > MAX_SEARCH_ORDER {
        return Err(Error::SizeLimit(format!(
            "basis search limited to rank <= {MAX_SEARCH_RANK} and |G| <= {MAX_SEARCH_ORDER}"
        )));
    }
    let n = g.n as usize;
    let search = Search {
        u,
        classes: residue_classes(u),
        bases: (0..=n).map(|i| fixed_basis(u, i)).collect::<Result<_>>()?,
    };
    for mults in orbit_vectors(&g, u.rank()) {
        let subgroups: Vec<usize> =
            mults.0.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat(i).take(a)).collect();
        let mut chosen = Vec::new();
        if search.extend(&subgroups, &mut chosen) {
            let cert = PermCertificate {
                mults: MultVector(mults.0.clone()),
                basis: MatrixR::hstack_all(u.ring(), u.rank(), &chosen),
                orbit_labels: PermCertificate::labels_for(u, &subgroups),
            };
            cert.verify(u).map_err(|e| Error::Internal(format!("search produced a bad certificate: {e}")))?;
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CyclicGroup;
    use crate::ring::make_ring;

    #[test]
    fn examples() {
        let r = make_ring(2, 1, &[], 8).unwrap();
        let c2 = CyclicGroup::new(2, 1);
        let u = Lattice::regular(c2, &r).scramble(6);
        let c = exhaustive_basis_search(&u).unwrap().unwrap();
        assert_eq!(c.mults, MultVector(vec![1, 0]));
        assert!(exhaustive_basis_search(&Lattice::sign(c2, &r).unwrap()).unwrap().is_none());
        let t = exhaustive_basis_search(&Lattice::trivial(c2, &r, 1)).unwrap().unwrap();
        assert_eq!(t.mults, MultVector(vec![0, 1]));
    }

    #[test]
    fn ramified_and_mixed() {
        let r = make_ring(2, 2, &[-2, 0], 8).unwrap();
        let c2 = CyclicGroup::new(2, 1);
        let u = Lattice::permutation(c2, &r, &MultVector(vec![1, 1])).unwrap().scramble(2);
        assert_eq!(exhaustive_basis_search(&u).unwrap().unwrap().mults, MultVector(vec![1, 1]));
        let r3 = make_ring(3, 1, &[], 6).unwrap();
        let aug = Lattice::augmentation_ideal(CyclicGroup::new(3, 1), &r3);
        assert!(exhaustive_basis_search(&aug).unwrap().is_none());
    }
}
