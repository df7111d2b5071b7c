//! Extensions `0 → Q → U → P → 0` with action `[[B, C], [0, D]]`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::MatrixR;
use crate::snf;

fn check_pair(q: &Lattice, p: &Lattice) -> Result<()> {
    if q.group() != p.group() {
        return Err(Error::InvalidLattice("extension of lattices for different groups".into()));
    }
    if q.ring() != p.ring() {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// The linear map `C ↦ Σ_j B^j C D^{|G|-1-j}` on column-major `vec(C)`.
fn order_condition(q: &Lattice, p: &Lattice) -> MatrixR {
    let m = q.group().order() as usize;
    let ring = q.ring();
    let bp: Vec<MatrixR> =
        std::iter::successors(Some(MatrixR::identity(ring, q.rank())), |x| Some(x.mul(q.action()))).take(m).collect();
    let dp: Vec<MatrixR> =
        std::iter::successors(Some(MatrixR::identity(ring, p.rank())), |x| Some(x.mul(p.action()))).take(m).collect();
    let size = q.rank() * p.rank();
    let mut l = MatrixR::zeros(ring, size, size);
    for j in 0..m {
        l = l.add(&dp[m - 1 - j].transpose().kron(&bp[j]));
    }
    l
}

/// The extension with a given off-diagonal block, validated.
pub fn extension_with(q: &Lattice, p: &Lattice, c: &MatrixR) -> Result<Lattice> {
    check_pair(q, p)?;
    if c.rows() != q.rank() || c.cols() != p.rank() {
        return Err(Error::Dimension(format!(
            "off-diagonal block is {}x{}, expected {}x{}",
            c.rows(),
            c.cols(),
            q.rank(),
            p.rank()
        )));
    }
    let top = q.action().hstack(c);
    let bottom = MatrixR::zeros(q.ring(), p.rank(), q.rank()).hstack(p.action());
    Lattice::new(*q.group(), top.vstack(&bottom))
}

/// An extension with `C` uniform on the solution space of the order condition.
pub fn sample_extension(q: &Lattice, p: &Lattice, seed: u64) -> Result<Lattice> {
    check_pair(q, p)?;
    let ring = q.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // a kernel basis from elimination is exact only up to the largest divisor,
    // so compute it on lifts that much deeper and truncate back
    let loss = snf::smith_normal_form_with_guard(&order_condition(q, p), 0)?.max_divisor();
    let deep = q.precision() + loss;
    let (qd, pd) = (q.lift_precision(deep)?, p.lift_precision(deep)?);
    let kernel = snf::kernel_saturated(&order_condition(&qd, &pd))?.change_precision(ring)?;
    let coeffs = MatrixR::from_fn(ring, kernel.cols(), 1, |_, _| ring.random(&mut rng));
    let c = MatrixR::unvectorize(&kernel.mul(&coeffs), q.rank(), p.rank());
    extension_with(q, p, &c)
}
