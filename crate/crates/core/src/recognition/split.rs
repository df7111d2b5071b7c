use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::MatrixR;
use crate::snf;

use super::idempotent::IdempotentLift;

/// `U = X ⊕ Y` with the bases of `X` and `Y` given in coordinates of `U`.
#[derive(Clone, Debug)]
pub struct Split {
    pub x: Lattice,
    pub y: Lattice,
    pub x_embed: MatrixR,
    pub y_embed: MatrixR,
}

/// Splits `U` along an equivariant idempotent: `X = eU`, `Y = (1 - e)U`.
pub fn split_summand(u: &Lattice, e: &IdempotentLift) -> Result<Split> {
    let r = u.rank();
    let id = MatrixR::identity(u.ring(), r);
    let x_embed = snf::image_summand(&e.lifted)?.basis;
    let y_embed = snf::image_summand(&id.sub(&e.lifted))?.basis;
    let q = x_embed.hstack(&y_embed);
    if q.cols() != r || !q.is_unimodular() {
        return Err(Error::Internal("images of e and 1 - e do not span the lattice".into()));
    }
    let b = q.inverse()?.mul(u.action()).mul(&q);
    let rx = x_embed.cols();
    if !b.submatrix(0..rx, rx..r).is_zero() || !b.submatrix(rx..r, 0..rx).is_zero() {
        return Err(Error::Internal("idempotent is not equivariant".into()));
    }
    Ok(Split {
        x: Lattice::new_unchecked(*u.group(), b.submatrix(0..rx, 0..rx)),
        y: Lattice::new_unchecked(*u.group(), b.submatrix(rx..r, rx..r)),
        x_embed,
        y_embed,
    })
}
