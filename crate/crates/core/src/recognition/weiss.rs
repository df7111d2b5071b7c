//! Hypothesis checks for the criteria that reduce recognition to a normal
//! subgroup `N = H_i`, and the explicit decompositions used alongside them.

use std::fmt;

use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::lattice::Lattice;
use crate::matrix::MatrixR;
use crate::snf;

use super::residue::residue_free_check;
use super::{recognize, Recognition, Verdict, VerdictKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeissMode {
    /// `U↓N` free and `U^N` a permutation `G/N`-module.
    Free,
    /// `U↓N` and `U^N` permutation modules.
    Permutation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HypothesisStatus {
    Holds,
    Fails,
    Undecided,
}

impl HypothesisStatus {
    fn from_kind(kind: VerdictKind) -> Self {
        match kind {
            VerdictKind::Permutation => HypothesisStatus::Holds,
            VerdictKind::NotPermutation => HypothesisStatus::Fails,
            VerdictKind::CoflasqueUndecided => HypothesisStatus::Undecided,
        }
    }

    fn from_bool(b: bool) -> Self {
        if b {
            HypothesisStatus::Holds
        } else {
            HypothesisStatus::Fails
        }
    }
}

impl fmt::Display for HypothesisStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HypothesisStatus::Holds => "holds",
            HypothesisStatus::Fails => "fails",
            HypothesisStatus::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Debug)]
pub struct WeissReport {
    pub mode: WeissMode,
    pub subgroup: usize,
    pub restriction: HypothesisStatus,
    pub restriction_detail: String,
    pub fixed_points: HypothesisStatus,
    pub fixed_points_detail: String,
}

impl WeissReport {
    pub fn both_hold(&self) -> bool {
        self.restriction == HypothesisStatus::Holds && self.fixed_points == HypothesisStatus::Holds
    }
}

pub fn weiss_hypotheses(u: &Lattice, i: usize, mode: WeissMode) -> Result<WeissReport> {
    u.group().check_subgroup(i)?;
    let v = u.restrict(i)?;
    let (restriction, restriction_detail) = match mode {
        WeissMode::Free => {
            let residue_free = residue_free_check(&v.residue_reduction(), v.group())?;
            let divisible = u.rank() as u64 % v.group().order() == 0;
            let h1_zero = i == 0 || v.h1(i)?.is_zero;
            (
                HypothesisStatus::from_bool(residue_free && divisible && h1_zero),
                format!("residue free: {residue_free}, rank divisible by |N|: {divisible}, H^1(N, U) = 0: {h1_zero}"),
            )
        }
        WeissMode::Permutation => {
            let rec = recognize(&v)?;
            (HypothesisStatus::from_kind(rec.verdict.kind()), describe(&rec))
        }
    };
    let (fixed, _) = u.fixed_points(i)?;
    let rec = recognize(&fixed)?;
    Ok(WeissReport {
        mode,
        subgroup: i,
        restriction,
        restriction_detail,
        fixed_points: HypothesisStatus::from_kind(rec.verdict.kind()),
        fixed_points_detail: describe(&rec),
    })
}

fn describe(rec: &Recognition) -> String {
    match &rec.verdict {
        Verdict::Permutation(c) => format!("permutation with multiplicities {}", c.mults),
        Verdict::NotPermutation(w) => format!("not a permutation module: {w}"),
        Verdict::CoflasqueUndecided { mults, .. } => format!("coflasque with multiplicities {mults}, undecided"),
    }
}

/// `V = F ⊕ T` for a permutation lattice `V`, with `T` the trivial orbits.
#[derive(Clone, Debug)]
pub struct TrivialSplit {
    pub f_basis: MatrixR,
    pub t_basis: MatrixR,
    pub f: Lattice,
    pub t: Lattice,
}

/// Splits a permutation lattice (typically a restriction `U↓N`) into its
/// maximal trivial summand and the rest, using a certified permutation basis.
pub fn split_max_trivial(v: &Lattice) -> Result<TrivialSplit> {
    let rec = recognize(v)?;
    let cert = match rec.verdict {
        Verdict::Permutation(c) => c,
        other => {
            return Err(Error::NotPermutationRestriction(match other {
                Verdict::NotPermutation(w) => w.to_string(),
                _ => "coflasque but undecided".into(),
            }))
        }
    };
    let top = v.group().n as usize;
    let (t_cols, f_cols): (Vec<usize>, Vec<usize>) =
        (0..v.rank()).partition(|&j| cert.orbit_labels[j].subgroup == top);
    let f_basis = cert.basis.select_columns(&f_cols);
    let t_basis = cert.basis.select_columns(&t_cols);
    let q = f_basis.hstack(&t_basis);
    let b = q.inverse()?.mul(v.action()).mul(&q);
    let rf = f_cols.len();
    let r = v.rank();
    Ok(TrivialSplit {
        f: Lattice::new_unchecked(*v.group(), b.submatrix(0..rf, 0..rf)),
        t: Lattice::new_unchecked(*v.group(), b.submatrix(rf..r, rf..r)),
        f_basis,
        t_basis,
    })
}

/// `U↓N = F ⊕ Z ⊕ X` for `|G| = p²`, `N` of order `p`.
#[derive(Clone, Debug)]
pub struct P2Decomposition {
    /// Summand of `U↓N` without trivial summands.
    pub f: MatrixR,
    pub z: MatrixR,
    /// `G`-trivial part of `U^N`.
    pub x: MatrixR,
}

pub fn decompose_p2(u: &Lattice) -> Result<P2Decomposition> {
    if u.group().n != 2 {
        return Err(Error::HypothesisFailed(format!("group has order p^{}, not p^2", u.group().n)));
    }
    let split = split_max_trivial(&u.restrict(1)?).map_err(|e| match e {
        Error::NotPermutationRestriction(why) => {
            Error::HypothesisFailed(format!("U restricted to N is not a permutation module ({why})"))
        }
        other => other,
    })?;
    for i in [1, 2] {
        let c = u.coinvariants(i)?;
        if !c.torsion.is_empty() {
            let name = if i == 1 { "U_N" } else { "U_G" };
            return Err(Error::HypothesisFailed(format!("{name} has torsion {:?}", c.torsion)));
        }
    }
    let (fixed, inclusion) = u.fixed_points(1)?;
    let cert = match recognize(&fixed)?.verdict {
        Verdict::Permutation(c) => c,
        _ => {
            return Err(Error::HypothesisFailed(
                "U^N is not a G/N-permutation module, so it has no G-stable maximal trivial summand".into(),
            ))
        }
    };
    let x_cols: Vec<usize> = (0..fixed.rank()).filter(|&j| cert.orbit_labels[j].subgroup == 1).collect();
    let x_approx = inclusion.mul(&cert.basis.select_columns(&x_cols).change_precision(u.ring())?);
    // the certificate lives at reduced precision; move X back onto exact G-fixed vectors
    let fixed_g = snf::kernel_summand(&u.aug_action(2)?)?;
    let x = fixed_g.basis.mul(&fixed_g.coords.mul(&x_approx));

    let r = u.rank();
    let rf = split.f_basis.cols();
    let rt = split.t_basis.cols();
    let q_inv = split.f_basis.hstack(&split.t_basis).inverse()?;
    let sigma = q_inv.submatrix(rf..r, 0..r).mul(&x);
    let sf = snf::smith_normal_form(&sigma)?;
    if sf.rank() != x.cols() || sf.max_divisor() != 0 {
        return Err(Error::HypothesisFailed(format!(
            "projection of X to T is not a saturated embedding (divisors {:?})",
            sf.divisors
        )));
    }
    let complement = sf.left.inverse()?.columns(x.cols()..rt);
    let z = split.t_basis.mul(&complement);
    let all = split.f_basis.hstack(&z).hstack(&x);
    if !all.is_unimodular() {
        return Err(Error::Internal("F, Z and X do not span U".into()));
    }
    Ok(P2Decomposition { f: split.f_basis, z, x })
}

/// Image of `U^{H_i}` in the reduction of `U_{H_i}` (columns spanning it).
pub fn fixed_point_image(u: &Lattice, i: usize) -> Result<FpMatrix> {
    let c = u.coinvariants(i)?;
    let (_, inclusion) = u.fixed_points(i)?;
    Ok(c.projection.mul(&inclusion).reduce().column_basis())
}

/// Image of a maximal trivial summand of `U↓H_i` in the reduction of `U_{H_i}`.
pub fn trivial_summand_image(u: &Lattice, i: usize) -> Result<FpMatrix> {
    let c = u.coinvariants(i)?;
    let split = split_max_trivial(&u.restrict(i)?)?;
    Ok(c.projection.mul(&split.t_basis).reduce().column_basis())
}

/// The `G/H_i`-action on `W̄ = U^N / (N̂U + πU^N)` for `N = H_i`.
pub fn fixed_quotient_residue(u: &Lattice, i: usize) -> Result<FpMatrix> {
    let fixed = snf::kernel_summand(&u.aug_action(i)?)?;
    let action = fixed.coords.mul(u.action()).mul(&fixed.basis).reduce();
    let d = fixed.dim();
    let p = u.ring().p();
    let image = fixed.coords.mul(&u.norm_action(i)?).reduce().column_basis();
    // extend the image basis to a basis of F_p^d by standard vectors
    let mut full = image.clone();
    for j in 0..d {
        let mut e = vec![0; d];
        e[j] = 1;
        let trial = full.hstack(&FpMatrix::from_columns(p, d, &[e]));
        if trial.rank() > full.rank() {
            full = trial;
        }
    }
    let c = image.cols();
    let inv = full.inverse().ok_or_else(|| Error::Internal("basis extension failed".into()))?;
    let moved = inv.mul(&action).mul(&full);
    Ok(FpMatrix::from_fn(p, d - c, d - c, |a, b| moved.get(c + a, c + b) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{CyclicGroup, MultVector};
    use crate::ring::make_ring;

    fn z2() -> crate::ring::Ring {
        make_ring(2, 1, &[], 10).unwrap()
    }

    #[test]
    fn weiss_examples() {
        let r = z2();
        let c4 = CyclicGroup::new(2, 2);
        let u = Lattice::regular(c4, &r).scramble(3);
        assert!(weiss_hypotheses(&u, 1, WeissMode::Free).unwrap().both_hold());
        // g acts as a quarter turn, so N acts by the sign on both coordinates
        let rot = Lattice::new(c4, MatrixR::from_rows(&r, &[vec![0, -1], vec![1, 0]])).unwrap();
        for mode in [WeissMode::Free, WeissMode::Permutation] {
            assert_eq!(weiss_hypotheses(&rot, 1, mode).unwrap().restriction, HypothesisStatus::Fails);
        }
        // the sign of C_4/C_2: N acts trivially but U^N = U is not a permutation module
        let s = Lattice::new(c4, MatrixR::from_rows(&r, &[vec![-1]])).unwrap();
        let rep = weiss_hypotheses(&s, 1, WeissMode::Permutation).unwrap();
        assert_eq!(rep.restriction, HypothesisStatus::Holds);
        assert_eq!(rep.fixed_points, HypothesisStatus::Fails);
        let v = Lattice::permutation(c4, &r, &MultVector(vec![0, 1, 1])).unwrap().scramble(5);
        let rep = weiss_hypotheses(&v, 1, WeissMode::Permutation).unwrap();
        assert!(rep.both_hold());
        assert_eq!(weiss_hypotheses(&v, 1, WeissMode::Free).unwrap().restriction, HypothesisStatus::Fails);
    }

    #[test]
    fn max_trivial_examples() {
        let r = z2();
        let c2 = CyclicGroup::new(2, 1);
        let c4 = CyclicGroup::new(2, 2);
        let s = split_max_trivial(&Lattice::permutation(c2, &r, &MultVector(vec![1, 1])).unwrap()).unwrap();
        assert_eq!((s.f.rank(), s.t.rank()), (2, 1));
        let s = split_max_trivial(&Lattice::regular(c4, &r).restrict(1).unwrap()).unwrap();
        assert_eq!((s.f.rank(), s.t.rank()), (4, 0));
        let s = split_max_trivial(
            &Lattice::permutation(c4, &r, &MultVector(vec![0, 1, 0])).unwrap().restrict(1).unwrap(),
        )
        .unwrap();
        assert_eq!((s.f.rank(), s.t.rank()), (0, 2));
        let sign = Lattice::sign(c2, &r).unwrap();
        assert!(matches!(split_max_trivial(&sign), Err(Error::NotPermutationRestriction(_))));
    }

    #[test]
    fn p2_examples() {
        let r = z2();
        let c4 = CyclicGroup::new(2, 2);
        for (m, ranks) in [
            (vec![0, 1, 1], (0, 2, 1)),
            (vec![1, 0, 0], (4, 0, 0)),
            (vec![1, 1, 1], (4, 2, 1)),
        ] {
            let u = Lattice::permutation(c4, &r, &MultVector(m)).unwrap().scramble(11);
            let d = decompose_p2(&u).unwrap();
            assert_eq!((d.f.cols(), d.z.cols(), d.x.cols()), ranks);
            assert_eq!(u.action().mul(&d.x), d.x);
            let h = u.subgroup_generator(1).unwrap();
            assert_eq!(h.mul(&d.z), d.z);
        }
        let s = Lattice::new(c4, MatrixR::from_rows(&r, &[vec![-1]])).unwrap();
        assert!(matches!(decompose_p2(&s), Err(Error::HypothesisFailed(_))));
    }

    #[test]
    fn fixed_point_image_is_trivial_part() {
        let r = make_ring(3, 1, &[], 8).unwrap();
        let g = CyclicGroup::new(3, 2);
        let u = Lattice::permutation(g, &r, &MultVector(vec![1, 1, 2])).unwrap().scramble(2);
        let a = fixed_point_image(&u, 1).unwrap();
        let b = trivial_summand_image(&u, 1).unwrap();
        assert_eq!(a.cols(), 3 + 2);
        assert!(a.same_column_space(&b));
    }

    #[test]
    fn fixed_quotient_is_free() {
        let r = z2();
        let c4 = CyclicGroup::new(2, 2);
        let u = Lattice::regular(c4, &r).scramble(8);
        let w = fixed_quotient_residue(&u, 1).unwrap();
        assert!(residue_free_check(&w, &c4.quotient(1)).unwrap());
    }
}
