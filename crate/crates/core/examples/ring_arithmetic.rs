//! Arithmetic in `Z_p` and in Eisenstein extensions at fixed precision.

use permlattice::make_ring;

fn main() -> permlattice::Result<()> {
    let z2 = make_ring(2, 1, &[], 8)?;
    let three = z2.int(3);
    println!("Z_2 mod 2^8: 3^-1 = {}", three.unit_inverse()?);
    println!("valuation of 12: {:?}", z2.int(12).valuation());
    println!("2 is a unit: {}", z2.int(2).is_unit());

    // π² = 2
    let r = make_ring(2, 2, &[-2, 0], 8)?;
    let pi = r.pi();
    println!("in Z_2[π]/(π²-2): π² = {}, π³ = {}", &pi * &pi, pi.pow(3));
    let x = r.from_coeffs(&[1, 1])?;
    println!("(1+π)^-1 = {}, check {}", x.unit_inverse()?, &x * &x.unit_inverse()?);
    println!("residue of 1+π: {:?}", x.reduce_residue());

    // π² = -3: contains a primitive cube root of unity (-1+π)/2
    let s = make_ring(3, 2, &[3, 0], 6)?;
    let zeta = &(&s.int(-1) + &s.pi()) * &s.int(2).unit_inverse()?;
    println!("in Z_3[π]/(π²+3): ζ = {zeta}, ζ³ = {}", zeta.pow(3));
    Ok(())
}
