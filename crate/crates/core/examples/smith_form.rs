//! Smith normal form, kernels and linear solving over `R/π^k`.

use permlattice::snf::{cokernel_divisors, kernel_saturated, smith_normal_form, solve};
use permlattice::{make_ring, MatrixR};

fn main() -> permlattice::Result<()> {
    let r = make_ring(3, 1, &[], 6)?;
    let a = MatrixR::from_rows(&r, &[vec![3, 6, 9], vec![1, 2, 3], vec![9, 0, 18]]);
    let sf = smith_normal_form(&a)?;
    println!("divisors (powers of 3): {:?}, rank {}", sf.divisors, sf.rank());
    println!("left·A·right = {:?}", sf.left.mul(&a).mul(&sf.right));

    let k = kernel_saturated(&a)?;
    println!("saturated kernel {:?}, A·K = {:?}", k, a.mul(&k));

    let c = cokernel_divisors(&a)?;
    println!("cokernel: free rank {}, torsion {:?}", c.free_rank, c.torsion);

    let b = MatrixR::from_rows(&r, &[vec![3], vec![1], vec![9]]);
    let x = solve(&a, &b)?;
    println!("A·x = b with x = {x:?}");
    Ok(())
}
