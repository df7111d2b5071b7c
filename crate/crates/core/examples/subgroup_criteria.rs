//! Hypotheses through a subgroup `N`, the maximal trivial summand and the `C_{p²}` decomposition.

use permlattice::recognition::{decompose_p2, split_max_trivial, weiss_hypotheses, WeissMode};
use permlattice::{make_ring, CyclicGroup, Lattice, MatrixR, MultVector};

fn main() -> permlattice::Result<()> {
    let z2 = make_ring(2, 1, &[], 8)?;
    let c4 = CyclicGroup::new(2, 2);

    let u = Lattice::permutation(c4, &z2, &MultVector(vec![1, 1, 1]))?.scramble(4);
    for mode in [WeissMode::Free, WeissMode::Permutation] {
        let r = weiss_hypotheses(&u, 1, mode)?;
        println!("{mode:?}: restriction {} ({}), fixed points {}", r.restriction, r.restriction_detail, r.fixed_points);
    }

    let rot = Lattice::new(c4, MatrixR::from_rows(&z2, &[vec![0, -1], vec![1, 0]]))?;
    let r = weiss_hypotheses(&rot, 1, WeissMode::Permutation)?;
    println!("quarter turn: restriction {} ({})", r.restriction, r.restriction_detail);

    let t = split_max_trivial(&u.restrict(1)?)?;
    println!("U restricted to C_2 = F ⊕ T with ranks {} and {}", t.f.rank(), t.t.rank());

    let d = decompose_p2(&u)?;
    println!("U = F ⊕ Z ⊕ X with ranks {}, {}, {}", d.f.cols(), d.z.cols(), d.x.cols());
    Ok(())
}
