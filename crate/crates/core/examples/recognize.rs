//! Recognising permutation lattices, with certificates, witnesses and report files.

use permlattice::io::ReportFile;
use permlattice::recognition::{recognize, verify_certificate, Verdict};
use permlattice::{make_ring, CyclicGroup, Lattice, MultVector};

fn main() -> permlattice::Result<()> {
    let z2 = make_ring(2, 1, &[], 8)?;
    let c4 = CyclicGroup::new(2, 2);
    let u = Lattice::permutation(c4, &z2, &MultVector(vec![1, 0, 1]))?.scramble(7);
    let rec = recognize(&u)?;
    match &rec.verdict {
        Verdict::Permutation(c) => {
            println!("permutation with multiplicities {}", c.mults);
            println!("basis {:?}", c.basis);
            println!("certificate verifies: {}", verify_certificate(&u, c));
        }
        other => println!("unexpected: {other:?}"),
    }
    println!("stable at precision {:?}", rec.stability_precision);

    let sign = Lattice::sign(CyclicGroup::new(2, 1), &z2)?;
    let rec = recognize(&sign)?;
    if let Verdict::NotPermutation(w) = &rec.verdict {
        println!("sign module: {w}");
    }
    print!("{}", ReportFile::of(&sign, &rec, false).to_json());

    let z3 = make_ring(3, 1, &[], 7)?;
    let aug = Lattice::augmentation_ideal(CyclicGroup::new(3, 1), &z3).scramble(1);
    println!("augmentation ideal of Z_3C_3: {:?}", recognize(&aug)?.verdict);
    Ok(())
}
