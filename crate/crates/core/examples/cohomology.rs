//! `H¹(H_i, U)`, coinvariants and fixed points, checked against the cochain oracle.

use permlattice::oracle::{cochain_h1, FiniteModule};
use permlattice::{make_ring, CyclicGroup, Lattice, MultVector};

fn main() -> permlattice::Result<()> {
    let z2 = make_ring(2, 1, &[], 8)?;
    let c2 = CyclicGroup::new(2, 1);
    let c4 = CyclicGroup::new(2, 2);

    let sign = Lattice::sign(c2, &z2)?;
    println!("sign over Z_2: H^1 = {:?}", sign.h1(1)?.torsion_divisors);
    let ram = make_ring(2, 2, &[-2, 0], 8)?;
    println!("sign over Z_2[π]: H^1 = {:?}", Lattice::sign(c2, &ram)?.h1(1)?.torsion_divisors);

    let u = Lattice::permutation(c4, &z2, &MultVector(vec![1, 1, 0]))?.scramble(3);
    for i in 0..=2 {
        let co = u.coinvariants(i)?;
        println!("H_{i}: fixed rank {}, coinvariant torsion {:?}", u.fixed_rank(i)?, co.torsion);
    }
    println!("H^1(C_4, RC_4 ⊕ RC_2) = {:?}", u.h1(2)?.torsion_divisors);

    let z3 = make_ring(3, 1, &[], 6)?;
    let aug = Lattice::augmentation_ideal(CyclicGroup::new(3, 1), &z3);
    let m = FiniteModule::truncation(&aug, 6)?;
    println!("augmentation ideal of Z_3C_3: formula {:?}, cochains {:?}", aug.h1(1)?.torsion_divisors, cochain_h1(&m)?);
    Ok(())
}
