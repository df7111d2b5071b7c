//! The independent oracles: cochains, character sums and exhaustive basis search.

use permlattice::oracle::{brute_multiplicities, cochain_h1, exhaustive_basis_search, sample_extension, FiniteModule};
use permlattice::recognition::recognize;
use permlattice::{make_ring, CyclicGroup, Lattice, MultVector};

fn main() -> permlattice::Result<()> {
    let r = make_ring(2, 2, &[-2, 0], 8)?;
    let c2 = CyclicGroup::new(2, 1);
    let u = Lattice::permutation(c2, &r, &MultVector(vec![1, 1]))?.scramble(2);
    println!("character sums: {:?}", brute_multiplicities(&u)?);
    let found = exhaustive_basis_search(&u)?.expect("a permutation basis exists");
    println!("search: multiplicities {}, basis {:?}", found.mults, found.basis);

    let sign = Lattice::sign(c2, &r)?;
    println!("sign: search finds {:?}, cochains give {:?}", exhaustive_basis_search(&sign)?.map(|c| c.mults), cochain_h1(&FiniteModule::truncation(&sign, 8)?)?);

    // a random extension of the trivial module by the sign module
    let z2 = make_ring(2, 1, &[], 8)?;
    let e = sample_extension(&Lattice::sign(c2, &z2)?, &Lattice::trivial(c2, &z2, 1), 5)?;
    println!("extension {:?}: {:?}", e.action(), recognize(&e)?.verdict.kind());
    Ok(())
}
