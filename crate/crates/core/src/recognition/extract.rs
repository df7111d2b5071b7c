//! Construction of an explicit permutation basis.
//!
//! The reduction of `R[G/H_i]` is a single Jordan block of size `p^{n-i}`, so
//! the Jordan type of `Ū` must match the multiplicities. Repeatedly project
//! onto the largest remaining Jordan chain, lift that projection to an
//! equivariant idempotent and split the summand off. A summand `X` whose
//! reduction is one block of size `s` is generated by any `v ∈ X^{H_i}` with
//! `(ḡ - 1)^{s-1} v̄ ≠ 0`, and then `v, gv, …, g^{s-1}v` is a basis of `X`.

use crate::error::{Error, Result};
use crate::lattice::{Lattice, MultVector};
use crate::matrix::MatrixR;
use crate::snf;

use super::certificate::PermCertificate;
use super::idempotent::lift_idempotent;
use super::residue::jordan_basis;
use super::split::split_summand;

pub fn extract_permutation_basis(u: &Lattice, mults: &MultVector) -> Result<PermCertificate> {
    let group = *u.group();
    let n = group.n as usize;
    if mults.0.len() != n + 1 || mults.rank(&group) != u.rank() {
        return Err(Error::ExtractionFailed(format!("multiplicities {mults} do not fit rank {}", u.rank())));
    }
    let expected: Vec<usize> = mults
        .0
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| std::iter::repeat(group.index(i) as usize).take(a))
        .collect();
    let sizes = jordan_basis(&u.residue_reduction())?.sizes;
    if sizes != expected {
        return Err(Error::ExtractionFailed(format!(
            "residue Jordan blocks {sizes:?} differ from the orbit sizes {expected:?}"
        )));
    }

    let mut cur = u.clone();
    let mut embed = MatrixR::identity(u.ring(), u.rank());
    let mut orbits: Vec<MatrixR> = Vec::new();
    let mut subgroups: Vec<usize> = Vec::new();
    while cur.rank() > 0 {
        let jb = jordan_basis(&cur.residue_reduction())?;
        let s = jb.sizes[0];
        let i = subgroup_for_orbit_size(&group, s)?;
        let (x, x_embed, rest) = if jb.sizes.len() == 1 {
            (cur.clone(), MatrixR::identity(u.ring(), cur.rank()), None)
        } else {
            let e = lift_idempotent(&jb.projection(&[0]), &cur).map_err(as_extraction)?;
            let split = split_summand(&cur, &e).map_err(as_extraction)?;
            if split.x.rank() != s {
                return Err(Error::ExtractionFailed(format!(
                    "split-off summand has rank {}, expected {s}",
                    split.x.rank()
                )));
            }
            (split.x, split.x_embed, Some((split.y, split.y_embed)))
        };
        orbits.push(embed.mul(&x_embed).mul(&orbit_basis(&x, s)?));
        subgroups.push(i);
        match rest {
            Some((y, y_embed)) => {
                embed = embed.mul(&y_embed);
                cur = y;
            }
            None => break,
        }
    }

    let cert = PermCertificate {
        mults: mults.clone(),
        basis: MatrixR::hstack_all(u.ring(), u.rank(), &orbits),
        orbit_labels: PermCertificate::labels_for(u, &subgroups),
    };
    cert.verify(u).map_err(Error::ExtractionFailed)?;
    Ok(cert)
}

fn as_extraction(e: Error) -> Error {
    match e {
        Error::PrecisionExhausted { .. } => e,
        other => Error::ExtractionFailed(other.to_string()),
    }
}

fn subgroup_for_orbit_size(group: &crate::lattice::CyclicGroup, s: usize) -> Result<usize> {
    (0..=group.n as usize)
        .find(|&i| group.index(i) as usize == s)
        .ok_or_else(|| Error::ExtractionFailed(format!("Jordan block of size {s} is not an orbit size")))
}

/// Columns `v, gv, …, g^{s-1}v` for a generator `v` of the indecomposable `x`.
fn orbit_basis(x: &Lattice, s: usize) -> Result<MatrixR> {
    let a = x.action();
    let ring = x.ring();
    let id = MatrixR::identity(ring, x.rank());
    let fixed = snf::kernel_saturated(&a.pow(s as u64).sub(&id))?;
    let y = a.sub(&id).reduce().pow(s as u64 - 1);
    let top = y.mul(&fixed.reduce());
    let j = (0..top.cols())
        .find(|&j| top.column(j).iter().any(|&c| c != 0))
        .ok_or_else(|| Error::ExtractionFailed("no fixed vector generates the summand".into()))?;
    let mut cols = Vec::with_capacity(s);
    let mut v = fixed.column_vector(j);
    for _ in 0..s {
        cols.push(v.clone());
        v = a.mul(&v);
    }
    let orbit = MatrixR::hstack_all(ring, x.rank(), &cols);
    if !orbit.is_unimodular() {
        return Err(Error::ExtractionFailed("orbit of the chosen generator is not a basis".into()));
    }
    Ok(orbit)
}
