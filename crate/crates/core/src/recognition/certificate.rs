//! Explicit permutation bases and their independent verification.

use crate::lattice::{Lattice, MultVector};
use crate::matrix::MatrixR;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrbitLabel {
    /// Index `i` of the stabiliser `H_i`; the orbit has `p^{n-i}` elements.
    pub subgroup: usize,
    /// Position `j` of the basis vector `g^j v` within its orbit.
    pub position: usize,
}

/// A basis permuted by `G`. Each orbit occupies consecutive columns in the
/// order `v, gv, g²v, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermCertificate {
    pub mults: MultVector,
    pub basis: MatrixR,
    pub orbit_labels: Vec<OrbitLabel>,
}

impl PermCertificate {
    pub fn empty(u: &Lattice) -> Self {
        PermCertificate {
            mults: MultVector(vec![0; u.group().n as usize + 1]),
            basis: MatrixR::zeros(u.ring(), 0, 0),
            orbit_labels: Vec::new(),
        }
    }

    /// Labels for orbits of the given subgroup indices, listed in order.
    pub fn labels_for(u: &Lattice, orbit_subgroups: &[usize]) -> Vec<OrbitLabel> {
        let mut labels = Vec::new();
        for &i in orbit_subgroups {
            for position in 0..u.group().index(i) as usize {
                labels.push(OrbitLabel { subgroup: i, position });
            }
        }
        labels
    }

    /// `σ(j)`: the column that `g` sends column `j` to.
    pub fn sigma(&self, u: &Lattice) -> Option<Vec<usize>> {
        let orbits = orbits(u, &self.orbit_labels).ok()?;
        let mut sigma = vec![0; self.orbit_labels.len()];
        for (start, size) in orbits {
            for j in 0..size {
                sigma[start + j] = start + (j + 1) % size;
            }
        }
        Some(sigma)
    }

    /// Re-checks everything from scratch; `Err` names the first failing condition.
    pub fn verify(&self, u: &Lattice) -> Result<(), String> {
        let r = u.rank();
        let n = u.group().n as usize;
        if self.basis.ring() != u.ring() && r > 0 {
            return Err("certificate basis is over a different ring".into());
        }
        if self.basis.rows() != r || self.basis.cols() != r || self.orbit_labels.len() != r {
            return Err(format!(
                "basis is {}x{} with {} labels for a lattice of rank {r}",
                self.basis.rows(),
                self.basis.cols(),
                self.orbit_labels.len()
            ));
        }
        if self.mults.0.len() != n + 1 {
            return Err("multiplicity vector has the wrong length".into());
        }
        if !self.basis.is_unimodular() {
            return Err("basis is not unimodular".into());
        }
        let orbits = orbits(u, &self.orbit_labels)?;
        let mut counts = vec![0usize; n + 1];
        for &(start, _) in &orbits {
            counts[self.orbit_labels[start].subgroup] += 1;
        }
        if counts != self.mults.0 {
            return Err(format!("orbit counts {counts:?} differ from multiplicities {}", self.mults));
        }
        let sigma = self.sigma(u).ok_or("orbit labels are inconsistent")?;
        let moved = u.action().mul(&self.basis);
        for (j, &t) in sigma.iter().enumerate() {
            if moved.column_vector(j) != self.basis.column_vector(t) {
                return Err(format!("g maps basis vector {j} to something other than basis vector {t}"));
            }
        }
        Ok(())
    }
}

/// `(start, size)` of each orbit, after checking that labels are contiguous runs.
fn orbits(u: &Lattice, labels: &[OrbitLabel]) -> Result<Vec<(usize, usize)>, String> {
    let n = u.group().n as usize;
    let mut out = Vec::new();
    let mut j = 0;
    while j < labels.len() {
        let i = labels[j].subgroup;
        if i > n {
            return Err(format!("label {j} names subgroup {i} of a group with n = {n}"));
        }
        let size = u.group().index(i) as usize;
        if j + size > labels.len() {
            return Err(format!("orbit starting at {j} is truncated"));
        }
        for t in 0..size {
            let l = labels[j + t];
            if l.subgroup != i || l.position != t {
                return Err(format!("label {} is {:?}, expected position {t} of subgroup {i}", j + t, l));
            }
        }
        out.push((j, size));
        j += size;
    }
    Ok(out)
}

pub fn verify_certificate(u: &Lattice, cert: &PermCertificate) -> bool {
    cert.verify(u).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CyclicGroup;
    use crate::ring::make_ring;

    fn standard(u: &Lattice, mults: &MultVector) -> PermCertificate {
        let subs: Vec<usize> = mults.0.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat(i).take(a)).collect();
        PermCertificate {
            mults: mults.clone(),
            basis: MatrixR::identity(u.ring(), u.rank()),
            orbit_labels: PermCertificate::labels_for(u, &subs),
        }
    }

    #[test]
    fn valid_and_tampered() {
        let r = make_ring(2, 1, &[], 8).unwrap();
        let g = CyclicGroup::new(2, 2);
        let m = MultVector(vec![1, 1, 1]);
        let u = Lattice::permutation(g, &r, &m).unwrap();
        let c = standard(&u, &m);
        assert_eq!(c.verify(&u), Ok(()));

        let mut doubled = c.clone();
        doubled.basis.set(0, 0, &r.int(2));
        assert!(!verify_certificate(&u, &doubled));

        // relabel the 2-orbit as two fixed points
        let mut mislabeled = c.clone();
        mislabeled.orbit_labels[4] = OrbitLabel { subgroup: 2, position: 0 };
        mislabeled.orbit_labels[5] = OrbitLabel { subgroup: 2, position: 0 };
        mislabeled.mults = MultVector(vec![1, 0, 3]);
        assert!(mislabeled.verify(&u).unwrap_err().contains("g maps"));

        let mut wrong_mults = c;
        wrong_mults.mults = MultVector(vec![1, 0, 2]);
        assert!(!verify_certificate(&u, &wrong_mults));
    }

    #[test]
    fn scrambled_basis_transports() {
        let r = make_ring(3, 1, &[], 6).unwrap();
        let g = CyclicGroup::new(3, 1);
        let m = MultVector(vec![1, 2]);
        let p = Lattice::permutation(g, &r, &m).unwrap();
        let s = crate::snf::random_unimodular(&r, 5, 8);
        let u = p.conjugate(&s).unwrap();
        let mut c = standard(&p, &m);
        c.basis = s.inverse().unwrap();
        assert_eq!(c.verify(&u), Ok(()));
    }
}
