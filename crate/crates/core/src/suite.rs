//! Property battery over seeded samples, with oracle comparisons.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{CyclicGroup, Lattice, MultVector};
use crate::oracle::{self, cochain::MAX_COCHAIN_DIM, cochain::MAX_GROUP_ORDER, FiniteModule};
use crate::recognition::{
    coflasque_check, coflasque_is_decisive, coinv_lattice_check, decompose_p2, fixed_point_image, fixed_quotient_residue,
    multiplicities_from_ranks, recognize, residue_free_check, split_max_trivial, trivial_summand_image, weiss_hypotheses, MultOutcome, Recognition, Verdict,
    VerdictKind, WeissMode,
};
use crate::ring::{make_ring, Ring};
use crate::samples::{ramified_coflasque_candidate, random_lattice, random_permutation};

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub p: u64,
    pub n: u32,
    pub e: usize,
    pub eisenstein: Vec<i64>,
    pub k: u32,
    pub samples: usize,
    pub seed: u64,
    pub max_rank: usize,
    /// Corrupt every certificate before checking it, to prove the harness can fail.
    pub inject_tamper: bool,
}

impl SuiteConfig {
    pub fn ring(&self) -> Result<Ring> {
        make_ring(self.p, self.e, &self.eisenstein, self.k)
    }

    pub fn group(&self) -> CyclicGroup {
        CyclicGroup::new(self.p, self.n)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckCount {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug)]
pub struct SampleReport {
    pub index: usize,
    pub lattice: Lattice,
    pub verdict: Option<VerdictKind>,
    pub checks: Vec<(&'static str, bool)>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteSummary {
    pub samples: usize,
    pub verdicts: BTreeMap<String, usize>,
    pub checks: BTreeMap<&'static str, CheckCount>,
    pub failures: Vec<SampleReport>,
}

impl SuiteSummary {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Checker {
    checks: Vec<(&'static str, bool)>,
    violations: Vec<String>,
}

impl Checker {
    fn record(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks.push((name, ok));
        if !ok {
            self.violations.push(format!("{name}: {}", detail()));
        }
    }

    fn result<T>(&mut self, name: &'static str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.record(name, false, || e.to_string());
                None
            }
        }
    }
}

/// Runs every applicable property on one lattice.
pub fn check_sample(u: &Lattice, known: Option<&MultVector>, inject_tamper: bool) -> (Option<VerdictKind>, Vec<(&'static str, bool)>, Vec<String>) {
    let mut c = Checker { checks: Vec::new(), violations: Vec::new() };
    let Some(rec) = c.result("recognize", recognize(u)) else {
        return (None, c.checks, c.violations);
    };
    let kind = rec.verdict.kind();
    c.record("stability", rec.stability_precision == Some(u.precision() + 2), || "not reproduced".into());
    verdict_evidence(&mut c, u, &rec, inject_tamper);
    if let Some(m) = known {
        c.record("recovery", rec.verdict.mults() == Some(m) && kind == VerdictKind::Permutation, || {
            format!("generated from {m}, got {kind} {:?}", rec.verdict.mults())
        });
    }
    equivalence(&mut c, u, &rec);
    h1_oracle(&mut c, u);
    multiplicity_oracle(&mut c, u);
    search_oracle(&mut c, u, kind);
    if let Some(again) = c.result("scramble-invariance", recognize(&u.scramble(0x5eed))) {
        let same = again.verdict.kind() == kind && again.verdict.mults() == rec.verdict.mults() && again.h1 == rec.h1;
        c.record("scramble-invariance", same, || format!("{kind} became {}", again.verdict.kind()));
    }
    weiss_conclusions(&mut c, u, kind);
    if u.group().n == 2 && kind == VerdictKind::Permutation {
        if let Some(d) = c.result("p2-decomposition", decompose_p2(u)) {
            let total = d.f.cols() + d.z.cols() + d.x.cols();
            c.record("p2-decomposition", total == u.rank(), || format!("ranks add to {total}"));
        }
    }
    if kind == VerdictKind::Permutation {
        trivial_images(&mut c, u);
    }
    fixed_quotient_freeness(&mut c, u);
    (Some(kind), c.checks, c.violations)
}

fn verdict_evidence(c: &mut Checker, u: &Lattice, rec: &Recognition, inject_tamper: bool) {
    match &rec.verdict {
        Verdict::Permutation(cert) => {
            let mut cert = cert.clone();
            if inject_tamper && cert.basis.rows() > 0 {
                let x = cert.basis.get(0, 0);
                cert.basis.set(0, 0, &(&x + &u.ring().pi()));
            }
            let v = cert.verify(u);
            c.record("certificate", v.is_ok(), || v.unwrap_err());
        }
        Verdict::NotPermutation(w) => c.record("witness", w.verify(u), || format!("{w} does not re-verify")),
        Verdict::CoflasqueUndecided { .. } => {
            c.record("undecided-scope", !coflasque_is_decisive(u), || "undecided over a decisive ring".into())
        }
    }
}

fn equivalence(c: &mut Checker, u: &Lattice, rec: &Recognition) {
    let (Some(cof), Some(coinv)) = (c.result("equivalence", coflasque_check(u)), c.result("equivalence", coinv_lattice_check(u)))
    else {
        return;
    };
    let kind = rec.verdict.kind();
    let has_cert = kind == VerdictKind::Permutation;
    let ok = cof.coflasque == coinv.torsion_free
        && (!has_cert || cof.coflasque)
        && (!coflasque_is_decisive(u) || cof.coflasque == has_cert);
    c.record("equivalence", ok, || {
        format!("coflasque {} / coinvariants torsion-free {} / certificate {has_cert}", cof.coflasque, coinv.torsion_free)
    });
}

fn h1_oracle(c: &mut Checker, u: &Lattice) {
    for i in 1..=u.group().n as usize {
        let order = u.group().subgroup_order(i);
        if order > MAX_GROUP_ORDER || u.rank() * order as usize > MAX_COCHAIN_DIM {
            continue;
        }
        let Some(v) = c.result("h1-oracle", u.restrict(i)) else { return };
        let Some(m) = c.result("h1-oracle", FiniteModule::truncation(&v, u.precision())) else { return };
        let (Some(brute), Some(h)) = (c.result("h1-oracle", oracle::cochain_h1(&m)), c.result("h1-oracle", u.h1(i))) else {
            return;
        };
        c.record("h1-oracle", brute == h.torsion_divisors, || {
            format!("H_{i}: cochains give {brute:?}, formula gives {:?}", h.torsion_divisors)
        });
    }
}

fn multiplicity_oracle(c: &mut Checker, u: &Lattice) {
    if u.rank() > oracle::brute::MAX_BRUTE_RANK || u.group().order() > oracle::brute::MAX_BRUTE_ORDER {
        return;
    }
    let (Some(brute), Some(main)) =
        (c.result("multiplicity-oracle", oracle::brute_multiplicities(u)), c.result("multiplicity-oracle", multiplicities_from_ranks(u)))
    else {
        return;
    };
    let main = match main {
        MultOutcome::Mults(m) => Some(m),
        MultOutcome::Negative(_) => None,
    };
    c.record("multiplicity-oracle", brute == main, || format!("enumeration {brute:?}, solve {main:?}"));
}

fn search_oracle(c: &mut Checker, u: &Lattice, kind: VerdictKind) {
    if u.rank() > oracle::search::MAX_SEARCH_RANK
        || u.group().order() > oracle::search::MAX_SEARCH_ORDER
        || !coflasque_is_decisive(u)
    {
        return;
    }
    if let Some(found) = c.result("search-oracle", oracle::exhaustive_basis_search(u)) {
        let agree = found.is_some() == (kind == VerdictKind::Permutation);
        c.record("search-oracle", agree, || format!("search found basis: {}, pipeline: {kind}", found.is_some()));
    }
}

fn weiss_conclusions(c: &mut Checker, u: &Lattice, kind: VerdictKind) {
    for i in 1..=u.group().n as usize {
        for mode in [WeissMode::Free, WeissMode::Permutation] {
            if let Some(rep) = c.result("weiss-conclusion", weiss_hypotheses(u, i, mode)) {
                if rep.both_hold() {
                    c.record("weiss-conclusion", kind != VerdictKind::NotPermutation, || {
                        format!("hypotheses hold for N = H_{i} ({mode:?}) but verdict is {kind}")
                    });
                }
            }
        }
    }
}

/// For a permutation lattice, `U^N` and a maximal trivial summand of `U↓N`
/// have the same image in the reduction of `U_N`, of dimension the summand's rank.
fn trivial_images(c: &mut Checker, u: &Lattice) {
    for i in 1..=u.group().n as usize {
        let (Some(a), Some(b), Some(split)) = (
            c.result("trivial-image", fixed_point_image(u, i)),
            c.result("trivial-image", trivial_summand_image(u, i)),
            c.result("trivial-image", u.restrict(i).and_then(|v| split_max_trivial(&v))),
        ) else {
            return;
        };
        let ok = a.same_column_space(&b) && a.cols() == split.t.rank();
        c.record("trivial-image", ok, || format!("H_{i}: images of dimension {} and {}, summand rank {}", a.cols(), b.cols(), split.t.rank()));
    }
}

/// If `U^N` is `G/N`-free and `U_N`, `(U^N)_G` are lattices, `U^N/N̂U` is free mod `π`.
fn fixed_quotient_freeness(c: &mut Checker, u: &Lattice) {
    let n = u.group().n as usize;
    for i in 1..n {
        let Some((fixed, _)) = c.result("fixed-quotient", u.fixed_points(i)) else { return };
        let Some(rec) = c.result("fixed-quotient", recognize(&fixed)) else { return };
        let free = rec.verdict.kind() == VerdictKind::Permutation
            && rec.verdict.mults().map_or(false, |m| m.0[1..].iter().all(|&a| a == 0));
        let torsion_free = |r: Result<crate::lattice::Coinvariants>| r.map(|c| c.torsion.is_empty());
        let (Some(a), Some(b)) = (
            c.result("fixed-quotient", torsion_free(u.coinvariants(i))),
            c.result("fixed-quotient", torsion_free(fixed.coinvariants(fixed.group().n as usize))),
        ) else {
            return;
        };
        if free && a && b && fixed.group().n > 0 {
            let Some(w) = c.result("fixed-quotient", fixed_quotient_residue(u, i)) else { return };
            let ok = residue_free_check(&w, &u.group().quotient(i));
            c.record("fixed-quotient", matches!(ok, Ok(true)), || format!("W̄ for H_{i} is not free: {ok:?}"));
        }
    }
}

/// Sample `j` is a scrambled permutation module for even `j`, a random lattice
/// otherwise; over rings admitting one, every third sample is instead a
/// coflasque extension of `R²` by the integers of `K(ζ_3)`.
pub fn sample(cfg: &SuiteConfig, ring: &Ring, j: usize) -> Result<(Lattice, Option<MultVector>)> {
    let seed = cfg.seed.wrapping_mul(1_000_003).wrapping_add(j as u64);
    if j % 3 == 2 && cfg.max_rank >= 4 {
        if let Some(u) = ramified_coflasque_candidate(ring, cfg.group(), seed) {
            return Ok((u, None));
        }
    }
    if j % 2 == 0 {
        let (u, m) = random_permutation(ring, cfg.group(), cfg.max_rank, seed)?;
        Ok((u, Some(m)))
    } else {
        Ok((random_lattice(ring, cfg.group(), cfg.max_rank, seed)?, None))
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteSummary> {
    let ring = cfg.ring()?;
    if cfg.max_rank == 0 {
        return Err(Error::Dimension("maximum rank must be positive".into()));
    }
    let reports: Vec<SampleReport> = (0..cfg.samples)
        .into_par_iter()
        .map(|j| {
            let (u, known) = sample(cfg, &ring, j)?;
            let (verdict, checks, violations) = check_sample(&u, known.as_ref(), cfg.inject_tamper);
            Ok(SampleReport { index: j, lattice: u, verdict, checks, violations })
        })
        .collect::<Result<_>>()?;
    let mut summary = SuiteSummary { samples: cfg.samples, ..Default::default() };
    for r in reports {
        let v = r.verdict.map_or("error".to_string(), |k| k.to_string());
        *summary.verdicts.entry(v).or_default() += 1;
        for &(name, ok) in &r.checks {
            let e = summary.checks.entry(name).or_default();
            if ok {
                e.passed += 1;
            } else {
                e.failed += 1;
            }
        }
        if !r.violations.is_empty() {
            summary.failures.push(r);
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: u64, n: u32, e: usize, eis: Vec<i64>, samples: usize) -> SuiteConfig {
        SuiteConfig { p, n, e, eisenstein: eis, k: n * e as u32 + 6, samples, seed: 1, max_rank: 5, inject_tamper: false }
    }

    #[test]
    fn small_suites_pass() {
        for c in [cfg(2, 1, 1, vec![], 12), cfg(3, 1, 1, vec![], 8), cfg(2, 1, 2, vec![-2, 0], 8)] {
            let s = run_suite(&c).unwrap();
            assert!(s.all_passed(), "{:#?}", s.failures.iter().map(|f| &f.violations).collect::<Vec<_>>());
        }
    }

    #[test]
    fn tamper_is_caught() {
        let mut c = cfg(2, 1, 1, vec![], 4);
        c.inject_tamper = true;
        let s = run_suite(&c).unwrap();
        assert!(!s.all_passed());
        assert!(s.checks["certificate"].failed > 0);
    }
}
