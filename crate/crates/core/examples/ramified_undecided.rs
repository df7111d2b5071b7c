//! Over `Z_3[π]/(π² - 3)` coflasque lattices need not be permutation modules
//! as far as this tool can decide; such lattices get a third verdict.

use permlattice::recognition::{coflasque_check, recognize, Verdict};
use permlattice::samples::{cyclotomic_order, ramified_coflasque_candidate};
use permlattice::{make_ring, CyclicGroup};

fn main() -> permlattice::Result<()> {
    let r = make_ring(3, 2, &[-3, 0], 8)?;
    let c3 = CyclicGroup::new(3, 1);
    let o = cyclotomic_order(&r, c3).expect("π² = 3 admits the order");
    println!("ζ_3 on the integers of K(ζ_3): {:?}", o.action());
    println!("H^1 of that order: {:?}", o.h1(1)?.torsion_divisors);

    let u = ramified_coflasque_candidate(&r, c3, 1).expect("a coflasque extension exists");
    println!("extension is coflasque: {}", coflasque_check(&u)?.coflasque);
    match recognize(&u)?.verdict {
        Verdict::CoflasqueUndecided { mults, reason } => println!("undecided, multiplicities {mults}: {reason}"),
        v => println!("decided: {v:?}"),
    }
    Ok(())
}
