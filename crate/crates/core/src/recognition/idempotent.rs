//! Lifting residue idempotents to idempotents of `End_{RG}(U)`.
//!
//! An `F_p G`-idempotent `E` is first lifted to some `x_0` in the commutant of
//! the action (solving the commutation constraint at the residue level), then
//! refined by `x ↦ 3x² − 2x³`, which squares the defect `x² − x` each step.
//! Polynomials in `x_0` commute with the action, so every iterate stays in the
//! commutant.

use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::lattice::Lattice;
use crate::matrix::MatrixR;
use crate::snf;

#[derive(Clone, Debug)]
pub struct IdempotentLift {
    pub residue_idempotent: FpMatrix,
    pub lifted: MatrixR,
    pub iterations: usize,
}

/// Basis of `{X : AX = XA}` as column-major vectorised matrices (`r² × d`).
pub fn commutant_basis(action: &MatrixR) -> Result<MatrixR> {
    let r = action.rows();
    let id = MatrixR::identity(action.ring(), r);
    // vec(AX - XA) = (I ⊗ A − Aᵀ ⊗ I) vec(X)
    let op = id.kron(action).sub(&action.transpose().kron(&id));
    snf::kernel_saturated(&op)
}

/// `ceil(log2 k) + 2`.
pub fn max_iterations(k: u32) -> usize {
    (32 - (k.max(1) - 1).leading_zeros()) as usize + 2
}

pub fn lift_idempotent(e: &FpMatrix, u: &Lattice) -> Result<IdempotentLift> {
    let ubar = u.residue_reduction();
    if e.rows() != u.rank() || e.cols() != u.rank() {
        return Err(Error::Dimension("idempotent size differs from the lattice rank".into()));
    }
    if e.mul(e) != *e {
        return Err(Error::NoEquivariantLift("residue matrix is not idempotent".into()));
    }
    if e.mul(&ubar) != ubar.mul(e) {
        return Err(Error::NoEquivariantLift("residue idempotent does not commute with the action".into()));
    }
    let ring = u.ring();
    let a = u.action();
    let direct = MatrixR::lift_fp(ring, e);
    if direct.mul(&direct) == direct && a.mul(&direct) == direct.mul(a) {
        return Ok(IdempotentLift { residue_idempotent: e.clone(), lifted: direct, iterations: 0 });
    }
    let k = commutant_basis(a)?;
    let target: Vec<u64> = (0..u.rank()).flat_map(|j| e.column(j)).collect();
    let z = k
        .reduce()
        .solve(&target)
        .ok_or_else(|| Error::NoEquivariantLift("not in the reduction of the endomorphism ring".into()))?;
    let z = MatrixR::lift_fp(ring, &FpMatrix::from_columns(e.p(), z.len(), &[z]));
    let start = MatrixR::unvectorize(&k.mul(&z), u.rank(), u.rank());
    let mut out = lift_idempotent_from(&start)?;
    out.residue_idempotent = e.clone();
    Ok(out)
}

/// Newton refinement from an explicit start with `start² ≡ start mod π`.
pub fn lift_idempotent_from(start: &MatrixR) -> Result<IdempotentLift> {
    let residue = start.reduce();
    if residue.mul(&residue) != residue {
        return Err(Error::NoEquivariantLift("start is not idempotent modulo π".into()));
    }
    let ring = start.ring();
    let limit = max_iterations(ring.k());
    let three = ring.int(3);
    let two = ring.int(2);
    let mut x = start.clone();
    for iterations in 0..=limit {
        let x2 = x.mul(&x);
        if x2 == x {
            return Ok(IdempotentLift { residue_idempotent: residue, lifted: x, iterations });
        }
        if iterations == limit {
            break;
        }
        let x3 = x2.mul(&x);
        x = x2.scale(&three).sub(&x3.scale(&two));
    }
    Err(Error::NonConvergence { iterations: limit })
}
