//! Deciding whether a lattice is a permutation module.
//!
//! Pipeline: orbit multiplicities from fixed-point ranks, then `H¹` and
//! coinvariant torsion for every subgroup, then an explicit basis. A
//! coflasque lattice is certainly a permutation module when `R` is unramified
//! or `p = 2`; for ramified `p > 2` the answer is definite only when a basis is
//! actually found.

pub mod certificate;
pub mod extract;
pub mod idempotent;
pub mod multiplicity;
pub mod residue;
pub mod split;
pub mod weiss;

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{H1Report, Lattice, MultVector};

pub use certificate::{verify_certificate, OrbitLabel, PermCertificate};
pub use extract::extract_permutation_basis;
pub use idempotent::{commutant_basis, lift_idempotent, lift_idempotent_from, IdempotentLift};
pub use multiplicity::{fixed_ranks, multiplicities_from_ranks, MultOutcome, MultWitness};
pub use residue::{jordan_basis, residue_decompose, residue_free_check, JordanBasis};
pub use split::{split_summand, Split};
pub use weiss::{
    decompose_p2, fixed_point_image, fixed_quotient_residue, split_max_trivial, trivial_summand_image,
    weiss_hypotheses, HypothesisStatus, P2Decomposition, TrivialSplit, WeissMode, WeissReport,
};

/// Default working precision `n·e + 6` for a group of order `p^n`.
pub fn default_precision(n: u32, e: usize) -> u32 {
    n * e as u32 + 6
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The orbit-count system has no nonnegative integer solution.
    Multiplicity(MultWitness),
    /// `H¹(H_i, U) ≠ 0`.
    H1(H1Report),
}

impl Witness {
    /// Re-runs the check the witness cites.
    pub fn verify(&self, u: &Lattice) -> bool {
        match self {
            Witness::Multiplicity(w) => {
                matches!(multiplicities_from_ranks(u), Ok(MultOutcome::Negative(ref again)) if again == w)
            }
            Witness::H1(report) => u.h1(report.subgroup).map_or(false, |r| &r == report && !r.is_zero),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Multiplicity(w) => write!(f, "no orbit decomposition: {w}"),
            Witness::H1(r) => write!(f, "H^1(H_{}, U) has torsion divisors {:?}", r.subgroup, r.torsion_divisors),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Permutation(PermCertificate),
    NotPermutation(Witness),
    /// Coflasque with consistent multiplicities, over a ring where that does
    /// not settle the question, and no basis was found.
    CoflasqueUndecided { mults: MultVector, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    Permutation,
    NotPermutation,
    CoflasqueUndecided,
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Permutation(_) => VerdictKind::Permutation,
            Verdict::NotPermutation(_) => VerdictKind::NotPermutation,
            Verdict::CoflasqueUndecided { .. } => VerdictKind::CoflasqueUndecided,
        }
    }

    pub fn mults(&self) -> Option<&MultVector> {
        match self {
            Verdict::Permutation(c) => Some(&c.mults),
            Verdict::CoflasqueUndecided { mults, .. } => Some(mults),
            Verdict::NotPermutation(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&PermCertificate> {
        match self {
            Verdict::Permutation(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Permutation => "permutation",
            VerdictKind::NotPermutation => "not-permutation",
            VerdictKind::CoflasqueUndecided => "coflasque-undecided",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoflasqueReport {
    /// `H¹(H_i, U)` for `i = 1..=n`.
    pub reports: Vec<H1Report>,
    pub coflasque: bool,
}

pub fn coflasque_check(u: &Lattice) -> Result<CoflasqueReport> {
    let reports: Vec<H1Report> = (1..=u.group().n as usize).map(|i| u.h1(i)).collect::<Result<_>>()?;
    let coflasque = reports.iter().all(|r| r.is_zero);
    Ok(CoflasqueReport { reports, coflasque })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinvariantReport {
    /// Torsion divisors of `U_{H_i}` for `i = 1..=n`.
    pub torsion: Vec<Vec<u32>>,
    pub torsion_free: bool,
}

pub fn coinv_lattice_check(u: &Lattice) -> Result<CoinvariantReport> {
    let torsion: Vec<Vec<u32>> =
        (1..=u.group().n as usize).map(|i| u.coinvariants(i).map(|c| c.torsion)).collect::<Result<_>>()?;
    let torsion_free = torsion.iter().all(Vec::is_empty);
    Ok(CoinvariantReport { torsion, torsion_free })
}

/// Everything `recognize` computed, for reporting.
#[derive(Clone, Debug)]
pub struct Recognition {
    pub verdict: Verdict,
    pub fixed_ranks: Vec<usize>,
    pub h1: Vec<H1Report>,
    pub coinvariant_torsion: Vec<Vec<u32>>,
    pub precision: u32,
    /// Precision at which the result was reproduced, if it was.
    pub stability_precision: Option<u32>,
}

impl Recognition {
    /// The data that must not change when precision grows.
    fn signature(&self) -> impl PartialEq + fmt::Debug + '_ {
        let witness = match &self.verdict {
            Verdict::NotPermutation(Witness::Multiplicity(w)) => Some((0usize, w.numerators.clone(), w.denominator)),
            Verdict::NotPermutation(Witness::H1(r)) => Some((r.subgroup, r.torsion_divisors.iter().map(|&d| d as i64).collect(), 0)),
            _ => None,
        };
        (self.verdict.kind(), self.verdict.mults(), witness, &self.fixed_ranks, &self.h1, &self.coinvariant_torsion)
    }
}

/// Recognises `U` at its own precision `k` and reproduces the result at `k + 2`.
pub fn recognize(u: &Lattice) -> Result<Recognition> {
    let low = recognize_unchecked(u)?;
    let high_k = u.precision() + 2;
    let high = recognize_unchecked(&u.lift_precision(high_k)?)?;
    if low.signature() != high.signature() {
        return Err(Error::Unstable {
            low: u.precision(),
            high: high_k,
            what: format!("{:?} vs {:?}", low.signature(), high.signature()),
        });
    }
    Ok(Recognition { stability_precision: Some(high_k), ..low })
}

/// Recognition at the lattice's own precision, without the stability recomputation.
pub fn recognize_unchecked(u: &Lattice) -> Result<Recognition> {
    let ranks = fixed_ranks(u)?;
    let outcome = multiplicity::solve_orbit_counts(u.group().p, &ranks);
    let cof = coflasque_check(u)?;
    let coinv = coinv_lattice_check(u)?;
    if cof.coflasque != coinv.torsion_free {
        return Err(Error::Internal(format!(
            "H^1 reports {:?} disagree with coinvariant torsion {:?}",
            cof.reports, coinv.torsion
        )));
    }
    let verdict = match outcome {
        MultOutcome::Negative(w) => Verdict::NotPermutation(Witness::Multiplicity(w)),
        MultOutcome::Mults(_) if !cof.coflasque => {
            let first = cof.reports.iter().find(|r| !r.is_zero).cloned().expect("some H^1 is nonzero");
            Verdict::NotPermutation(Witness::H1(first))
        }
        MultOutcome::Mults(m) => decide_coflasque(u, m)?,
    };
    Ok(Recognition {
        verdict,
        fixed_ranks: ranks,
        h1: cof.reports,
        coinvariant_torsion: coinv.torsion,
        precision: u.precision(),
        stability_precision: None,
    })
}

/// Whether coflasque lattices over this ring are known to be permutation modules.
pub fn coflasque_is_decisive(u: &Lattice) -> bool {
    u.ring().e() == 1 || u.ring().p() == 2
}

fn decide_coflasque(u: &Lattice, mults: MultVector) -> Result<Verdict> {
    if u.rank() == 0 {
        return Ok(Verdict::Permutation(PermCertificate::empty(u)));
    }
    match extract_permutation_basis(u, &mults) {
        Ok(cert) => Ok(Verdict::Permutation(cert)),
        Err(e @ Error::PrecisionExhausted { .. }) => Err(e),
        Err(e) if coflasque_is_decisive(u) => Err(Error::Internal(format!(
            "coflasque lattice with multiplicities {mults} over a ring where coflasque implies permutation, \
             but basis extraction failed: {e}"
        ))),
        Err(e) => Ok(Verdict::CoflasqueUndecided { mults, reason: e.to_string() }),
    }
}
