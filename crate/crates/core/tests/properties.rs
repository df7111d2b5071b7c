use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use permlattice::io::LatticeFile;
use permlattice::recognition::{coflasque_check, coinv_lattice_check, recognize, VerdictKind};
use permlattice::samples::{random_lattice, random_permutation};
use permlattice::{make_ring, CyclicGroup, Ring};

fn ring_for(choice: u8) -> (Ring, CyclicGroup) {
    match choice % 4 {
        0 => (make_ring(2, 1, &[], 8).unwrap(), CyclicGroup::new(2, 2)),
        1 => (make_ring(3, 1, &[], 7).unwrap(), CyclicGroup::new(3, 1)),
        2 => (make_ring(2, 2, &[-2, 0], 8).unwrap(), CyclicGroup::new(2, 1)),
        _ => (make_ring(3, 2, &[-3, 0], 8).unwrap(), CyclicGroup::new(3, 1)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(choice in 0u8..4, seed in any::<u64>()) {
        let (r, _) = ring_for(choice);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (r.random(&mut rng), r.random(&mut rng), r.random(&mut rng));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        let u = r.random_unit(&mut rng);
        prop_assert_eq!(&u * &u.unit_inverse().unwrap(), r.one());
        let canonical = r.from_coeffs(&a.balanced_coeffs()).unwrap();
        prop_assert_eq!(canonical, a);
    }

    #[test]
    fn lattice_files_round_trip(choice in 0u8..4, seed in any::<u64>()) {
        let (r, g) = ring_for(choice);
        let u = random_lattice(&r, g, 5, seed).unwrap();
        let file = LatticeFile::from_lattice(&u);
        let json = file.to_json();
        let back = LatticeFile::from_json(&json).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.to_json(), json);
        prop_assert_eq!(back.to_lattice().unwrap(), u);
    }

    #[test]
    fn invariants_survive_scrambling(choice in 0u8..4, seed in any::<u64>(), s in any::<u64>()) {
        let (r, g) = ring_for(choice);
        let u = random_lattice(&r, g, 5, seed).unwrap();
        let v = u.scramble(s);
        for i in 0..=g.n as usize {
            prop_assert_eq!(u.fixed_rank(i).unwrap(), v.fixed_rank(i).unwrap());
            prop_assert_eq!(u.coinvariants(i).unwrap().torsion, v.coinvariants(i).unwrap().torsion);
        }
        for i in 1..=g.n as usize {
            prop_assert_eq!(u.h1(i).unwrap(), v.h1(i).unwrap());
        }
    }

    #[test]
    fn h1_vanishes_iff_coinvariants_are_lattices(choice in 0u8..4, seed in any::<u64>()) {
        let (r, g) = ring_for(choice);
        let u = random_lattice(&r, g, 6, seed).unwrap();
        let cof = coflasque_check(&u).unwrap();
        let coinv = coinv_lattice_check(&u).unwrap();
        for (h, t) in cof.reports.iter().zip(&coinv.torsion) {
            prop_assert_eq!(h.is_zero, t.is_empty());
        }
    }

    #[test]
    fn h1_is_additive(choice in 0u8..4, a in any::<u64>(), b in any::<u64>()) {
        let (r, g) = ring_for(choice);
        let u = random_lattice(&r, g, 3, a).unwrap();
        let v = random_lattice(&r, g, 3, b).unwrap();
        let w = u.direct_sum(&v).unwrap().scramble(a ^ b);
        for i in 1..=g.n as usize {
            let mut both = u.h1(i).unwrap().torsion_divisors;
            both.extend(v.h1(i).unwrap().torsion_divisors);
            both.sort_unstable();
            prop_assert_eq!(w.h1(i).unwrap().torsion_divisors, both);
        }
    }

    #[test]
    fn permutation_modules_are_recovered(choice in 0u8..4, seed in any::<u64>()) {
        let (r, g) = ring_for(choice);
        let (u, m) = random_permutation(&r, g, 6, seed).unwrap();
        let rec = recognize(&u).unwrap();
        prop_assert_eq!(rec.verdict.kind(), VerdictKind::Permutation);
        prop_assert_eq!(rec.verdict.mults(), Some(&m));
        prop_assert!(rec.verdict.certificate().unwrap().verify(&u).is_ok());
        prop_assert!(rec.h1.iter().all(|h| h.is_zero));
    }

    #[test]
    fn definite_verdicts_carry_evidence(choice in 0u8..4, seed in any::<u64>()) {
        let (r, g) = ring_for(choice);
        let u = random_lattice(&r, g, 6, seed).unwrap();
        let rec = recognize(&u).unwrap();
        match rec.verdict.kind() {
            VerdictKind::Permutation => prop_assert!(rec.verdict.certificate().unwrap().verify(&u).is_ok()),
            VerdictKind::NotPermutation => {
                let report = permlattice::io::ReportFile::of(&u, &rec, false);
                prop_assert!(report.verify_against(&u).is_ok());
            }
            VerdictKind::CoflasqueUndecided => prop_assert_eq!(choice % 4, 3),
        }
    }
}
