//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::time::{Duration, Instant};

use permlattice::commands::{run, EXIT_NEGATIVE};
use permlattice::io::{write_lattice, ReportFile};
use permlattice::oracle::{brute_multiplicities, cochain_h1, exhaustive_basis_search, log_p_order, orbit_vectors, FiniteModule};
use permlattice::recognition::{
    coflasque_check, coinv_lattice_check, default_precision, multiplicities_from_ranks, recognize, recognize_unchecked,
    verify_certificate, weiss_hypotheses, MultOutcome, Recognition, VerdictKind, WeissMode,
};
use permlattice::samples::{ramified_coflasque_candidate, random_lattice, random_permutation};
use permlattice::suite::{sample, SuiteConfig};
use permlattice::{make_ring, CyclicGroup, Lattice, MultVector, Ring};

const H1_SAMPLES_PER_CONFIG: usize = 20;
const H1_TIME_LIMIT: Duration = Duration::from_secs(60);
const EQUIVALENCE_SAMPLES_PER_CONFIG: usize = 100;
const WEISS_TARGET: usize = 200;
const RECOVERY_PER_GROUP: usize = 50;
const ORACLE_SAMPLES_PER_CONFIG: usize = 80;
const RAMIFIED_SAMPLES_PER_CONFIG: usize = 120;

struct Outcome {
    pass: bool,
    detail: String,
}

fn config(p: u64, n: u32, e: usize, eisenstein: &[i64], samples: usize, seed: u64, max_rank: usize) -> SuiteConfig {
    SuiteConfig {
        p,
        n,
        e,
        eisenstein: eisenstein.to_vec(),
        k: default_precision(n, e),
        samples,
        seed,
        max_rank,
        inject_tamper: false,
    }
}

fn samples(cfg: &SuiteConfig) -> Vec<(Lattice, Option<MultVector>)> {
    let ring = cfg.ring().expect("valid ring");
    (0..cfg.samples).map(|j| sample(cfg, &ring, j).expect("sampling succeeds")).collect()
}

fn h1_cross_validation() -> Outcome {
    let start = Instant::now();
    let configs = [
        config(2, 1, 1, &[], H1_SAMPLES_PER_CONFIG, 11, 6),
        config(2, 2, 1, &[], H1_SAMPLES_PER_CONFIG, 12, 6),
        config(3, 1, 1, &[], H1_SAMPLES_PER_CONFIG, 13, 6),
        config(3, 2, 1, &[], H1_SAMPLES_PER_CONFIG, 14, 6),
        config(2, 1, 2, &[-2, 0], H1_SAMPLES_PER_CONFIG, 15, 6),
        config(2, 2, 2, &[-2, 0], H1_SAMPLES_PER_CONFIG, 16, 6),
        config(3, 1, 2, &[-3, 0], H1_SAMPLES_PER_CONFIG, 17, 6),
    ];
    let (mut lattices, mut comparisons, mut nonzero, mut bad) = (0, 0, 0, Vec::new());
    for cfg in &configs {
        let ring = cfg.ring().unwrap();
        for j in 0..cfg.samples {
            let u = random_lattice(&ring, cfg.group(), cfg.max_rank, cfg.seed * 1000 + j as u64).unwrap();
            lattices += 1;
            for i in 1..=cfg.n as usize {
                let got = u.h1(i).map(|h| h.torsion_divisors);
                let want = u
                    .restrict(i)
                    .and_then(|v| FiniteModule::truncation(&v, u.precision()))
                    .and_then(|m| cochain_h1(&m));
                comparisons += 1;
                match (got, want) {
                    (Ok(a), Ok(b)) if a == b => nonzero += usize::from(!a.is_empty()),
                    (a, b) => bad.push(format!("p={} n={} e={} sample {j} H_{i}: formula {a:?}, cochains {b:?}", cfg.p, cfg.n, cfg.e)),
                }
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: bad.is_empty() && lattices >= 100 && elapsed < H1_TIME_LIMIT,
        detail: format!(
            "{lattices} lattices, {comparisons} subgroup comparisons ({nonzero} nonzero), {} mismatches, {:.1}s{}",
            bad.len(),
            elapsed.as_secs_f64(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    }
}

fn permutation_h1_vanishing() -> Outcome {
    let ring = make_ring(2, 1, &[], default_precision(3, 1)).unwrap();
    let g = CyclicGroup::new(2, 3);
    let (mut modules, mut checks, mut bad) = (0, 0, Vec::new());
    for rank in 1..=8 {
        for m in orbit_vectors(&g, rank) {
            let u = Lattice::permutation(g, &ring, &m).unwrap();
            modules += 1;
            for i in 1..=3 {
                checks += 1;
                match u.h1(i) {
                    Ok(h) if h.is_zero => {}
                    other => bad.push(format!("{m} H_{i}: {other:?}")),
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{modules} permutation modules over C_8, {checks} subgroup checks, {} failures", bad.len()),
    }
}

fn equivalence() -> Outcome {
    let configs = [
        config(2, 1, 1, &[], EQUIVALENCE_SAMPLES_PER_CONFIG, 21, 6),
        config(2, 2, 1, &[], EQUIVALENCE_SAMPLES_PER_CONFIG, 22, 6),
        config(3, 1, 1, &[], EQUIVALENCE_SAMPLES_PER_CONFIG, 23, 6),
        config(3, 2, 1, &[], EQUIVALENCE_SAMPLES_PER_CONFIG, 24, 6),
        config(2, 1, 2, &[-2, 0], EQUIVALENCE_SAMPLES_PER_CONFIG, 25, 6),
        config(2, 2, 2, &[-2, 0], EQUIVALENCE_SAMPLES_PER_CONFIG, 26, 6),
    ];
    let (mut total, mut with_cert, mut bad) = (0, 0, Vec::new());
    for cfg in &configs {
        for (j, (u, _)) in samples(cfg).into_iter().enumerate() {
            total += 1;
            let res = (|| Ok::<_, permlattice::Error>((coflasque_check(&u)?, coinv_lattice_check(&u)?, recognize(&u)?)))();
            match res {
                Ok((cof, coinv, rec)) => {
                    let cert = rec.verdict.certificate().map_or(false, |c| verify_certificate(&u, c));
                    with_cert += usize::from(cert);
                    if !(cof.coflasque == coinv.torsion_free && coinv.torsion_free == cert) {
                        bad.push(format!(
                            "p={} n={} e={} sample {j}: coflasque {}, coinvariants {}, certificate {cert}",
                            cfg.p, cfg.n, cfg.e, cof.coflasque, coinv.torsion_free
                        ));
                    }
                }
                Err(e) => bad.push(format!("p={} n={} e={} sample {j}: {e}", cfg.p, cfg.n, cfg.e)),
            }
        }
    }
    Outcome {
        pass: bad.is_empty() && total >= 500,
        detail: format!(
            "{total} samples over Z_2, Z_3, Z_2[pi]/(pi^2-2); {with_cert} certified; {} disagreements{}",
            bad.len(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    }
}

fn weiss_conclusions() -> Outcome {
    let configs = [
        config(2, 2, 1, &[], 0, 31, 8),
        config(2, 3, 1, &[], 0, 32, 8),
        config(3, 2, 1, &[], 0, 33, 9),
        config(2, 2, 2, &[-2, 0], 0, 34, 8),
        config(3, 2, 2, &[-3, 0], 0, 35, 9),
    ];
    let (mut hits, mut scanned, mut bad) = (0, 0, Vec::new());
    'outer: for round in 0..200 {
        for cfg in &configs {
            let ring = cfg.ring().unwrap();
            let (u, _) = sample(cfg, &ring, round).unwrap();
            scanned += 1;
            let mut holds = Vec::new();
            for i in 1..cfg.n as usize {
                for mode in [WeissMode::Free, WeissMode::Permutation] {
                    match weiss_hypotheses(&u, i, mode) {
                        Ok(r) if r.both_hold() => holds.push((i, mode)),
                        Ok(_) => {}
                        Err(e) => bad.push(format!("p={} n={} sample {round}: {e}", cfg.p, cfg.n)),
                    }
                }
            }
            if holds.is_empty() {
                continue;
            }
            hits += 1;
            match recognize(&u) {
                Ok(rec) if rec.verdict.kind() != VerdictKind::NotPermutation => {}
                other => bad.push(format!(
                    "p={} n={} sample {round}: hypotheses {holds:?} hold but {:?}",
                    cfg.p,
                    cfg.n,
                    other.map(|r| r.verdict.kind())
                )),
            }
            if hits >= WEISS_TARGET * 2 {
                break 'outer;
            }
        }
    }
    Outcome {
        pass: bad.is_empty() && hits >= WEISS_TARGET,
        detail: format!("{hits} of {scanned} samples satisfy both hypotheses for some proper N; {} NotPermutation verdicts", bad.len()),
    }
}

fn recovery() -> Outcome {
    let (mut ok, mut total, mut bad) = (0, 0, Vec::new());
    for n in [2u32, 3] {
        let ring = make_ring(2, 1, &[], n + 6).unwrap();
        let g = CyclicGroup::new(2, n);
        for j in 0..RECOVERY_PER_GROUP {
            total += 1;
            let (u, m) = random_permutation(&ring, g, 2 * g.order() as usize, 500 + j as u64).unwrap();
            match recognize(&u) {
                Ok(rec) if rec.verdict.mults() == Some(&m)
                    && rec.verdict.certificate().map_or(false, |c| verify_certificate(&u, c)) =>
                {
                    ok += 1
                }
                other => bad.push(format!("C_{} {m}: {:?}", g.order(), other.map(|r| r.verdict.kind()))),
            }
        }
    }
    Outcome { pass: ok == total, detail: format!("{ok}/{total} recovered over C_4 and C_8{}", first(&bad)) }
}

fn first(bad: &[String]) -> String {
    bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
}

fn negative_controls() -> Outcome {
    let dir = tempfile::TempDir::new().unwrap();
    let z2 = make_ring(2, 1, &[], 8).unwrap();
    let z3 = make_ring(3, 1, &[], 7).unwrap();
    let cases = [
        ("sign over C_2", Lattice::sign(CyclicGroup::new(2, 1), &z2).unwrap(), 2u64),
        ("augmentation ideal of RC_3", Lattice::augmentation_ideal(CyclicGroup::new(3, 1), &z3).scramble(9), 3),
    ];
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, u, p) in cases {
        let h = u.h1(1).unwrap();
        let order = p.pow(log_p_order(&h.torsion_divisors));
        let path = dir.path().join("u.json");
        write_lattice(&u, &path).unwrap();
        let code = run(["permlattice", "recognize", path.to_str().unwrap()], &mut Vec::new(), &mut Vec::new());
        pass &= order == p && code == EXIT_NEGATIVE;
        parts.push(format!("{name}: |H^1| = {order}, exit {code}"));
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn oracle_agreement() -> Outcome {
    let configs = [
        config(2, 1, 1, &[], ORACLE_SAMPLES_PER_CONFIG, 41, 3),
        config(2, 2, 1, &[], ORACLE_SAMPLES_PER_CONFIG, 42, 3),
        config(3, 1, 1, &[], ORACLE_SAMPLES_PER_CONFIG, 43, 3),
        config(2, 1, 2, &[-2, 0], ORACLE_SAMPLES_PER_CONFIG, 44, 3),
        config(2, 2, 2, &[-2, 0], ORACLE_SAMPLES_PER_CONFIG, 45, 3),
        config(3, 1, 2, &[-3, 0], ORACLE_SAMPLES_PER_CONFIG, 46, 3),
    ];
    let (mut instances, mut undecided, mut bad) = (0, 0, Vec::new());
    for cfg in &configs {
        for (j, (u, _)) in samples(cfg).into_iter().enumerate() {
            instances += 1;
            let tag = format!("p={} n={} e={} sample {j}", cfg.p, cfg.n, cfg.e);
            let (Ok(rec), Ok(brute), Ok(solved), Ok(search)) =
                (recognize(&u), brute_multiplicities(&u), multiplicities_from_ranks(&u), exhaustive_basis_search(&u))
            else {
                bad.push(format!("{tag}: an oracle or the pipeline errored"));
                continue;
            };
            let solved = match solved {
                MultOutcome::Mults(m) => Some(m),
                MultOutcome::Negative(_) => None,
            };
            if brute != solved {
                bad.push(format!("{tag}: enumeration {brute:?}, solve {solved:?}"));
            }
            match rec.verdict.kind() {
                VerdictKind::CoflasqueUndecided => undecided += 1,
                kind => {
                    if search.is_some() != (kind == VerdictKind::Permutation) {
                        bad.push(format!("{tag}: search found basis {}, pipeline {kind}", search.is_some()));
                    }
                    if let (Some(s), Some(m)) = (&search, rec.verdict.mults()) {
                        if &s.mults != m {
                            bad.push(format!("{tag}: search {} vs pipeline {m}", s.mults));
                        }
                    }
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{instances} instances (rank <= 3, |G| <= 4), {undecided} undecided, {} disagreements{}", bad.len(), first(&bad)),
    }
}

fn signature(rec: &Recognition) -> (VerdictKind, Option<MultVector>, Vec<Vec<u32>>, Vec<Vec<u32>>) {
    (
        rec.verdict.kind(),
        rec.verdict.mults().cloned(),
        rec.h1.iter().map(|h| h.torsion_divisors.clone()).collect(),
        rec.coinvariant_torsion.clone(),
    )
}

fn stability() -> Outcome {
    let configs = [
        config(2, 1, 1, &[], 60, 51, 6),
        config(2, 2, 1, &[], 60, 52, 6),
        config(2, 3, 1, &[], 30, 53, 8),
        config(3, 1, 1, &[], 60, 54, 6),
        config(3, 2, 1, &[], 30, 55, 6),
        config(2, 1, 2, &[-2, 0], 60, 56, 6),
        config(2, 2, 2, &[-2, 0], 30, 57, 6),
        config(3, 1, 2, &[-3, 0], 60, 58, 6),
    ];
    let (mut total, mut bad) = (0, Vec::new());
    for cfg in &configs {
        for (j, (u, _)) in samples(cfg).into_iter().enumerate() {
            total += 1;
            let low = recognize_unchecked(&u);
            let high = u.lift_precision(u.precision() + 2).and_then(|v| recognize_unchecked(&v));
            match (low, high) {
                (Ok(a), Ok(b)) if signature(&a) == signature(&b) => {}
                (a, b) => bad.push(format!(
                    "p={} n={} e={} sample {j}: {:?} vs {:?}",
                    cfg.p,
                    cfg.n,
                    cfg.e,
                    a.map(|r| signature(&r)),
                    b.map(|r| signature(&r))
                )),
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{total} samples re-run at k + 2, {} changed{}", bad.len(), first(&bad)) }
}

fn ramified_honesty() -> Outcome {
    let dir = tempfile::TempDir::new().unwrap();
    let ring: Ring = make_ring(3, 2, &[-3, 0], default_precision(1, 2)).unwrap();
    let mut lattices: Vec<Lattice> = Vec::new();
    for cfg in [config(3, 1, 2, &[-3, 0], RAMIFIED_SAMPLES_PER_CONFIG, 61, 6), config(3, 2, 2, &[-3, 0], 40, 62, 6)] {
        lattices.extend(samples(&cfg).into_iter().map(|(u, _)| u));
    }
    for seed in 0..10 {
        lattices.extend(ramified_coflasque_candidate(&ring, CyclicGroup::new(3, 1), seed));
    }
    let (mut definite, mut undecided, mut reasons, mut bad) = (0, 0, std::collections::BTreeMap::new(), Vec::new());
    for (j, u) in lattices.iter().enumerate() {
        let lat = dir.path().join(format!("u{j}.json"));
        let rep = dir.path().join(format!("r{j}.json"));
        write_lattice(u, &lat).unwrap();
        let code = run(
            ["permlattice", "recognize", lat.to_str().unwrap(), "--certify", "--out", rep.to_str().unwrap()],
            &mut Vec::new(),
            &mut Vec::new(),
        );
        let Ok(report) = std::fs::read_to_string(&rep).map_err(|e| e.to_string()).and_then(|s| ReportFile::from_json(&s).map_err(|e| e.to_string())) else {
            bad.push(format!("lattice {j}: exit {code}, no report"));
            continue;
        };
        match code {
            0 | 1 => {
                definite += 1;
                let evidence = report.certificate.is_some() || report.witness.is_some();
                if !evidence || report.verify_against(u).is_err() {
                    bad.push(format!("lattice {j}: {} does not re-verify", report.verdict));
                }
            }
            2 => {
                undecided += 1;
                *reasons.entry(report.undecided_reason.unwrap_or_default()).or_insert(0) += 1;
            }
            c => bad.push(format!("lattice {j}: exit {c}")),
        }
    }
    for (reason, count) in &reasons {
        println!("      undecided x{count}: {reason}");
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{} lattices over Z_3[pi]/(pi^2-3): {definite} definite and re-verified, {undecided} undecided, {} unverifiable{}",
            lattices.len(),
            bad.len(),
            first(&bad)
        ),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("h1 formula vs cochain oracle", h1_cross_validation),
        ("permutation modules have zero H^1 (C_8, rank <= 8)", permutation_h1_vanishing),
        ("coflasque / coinvariants / certificate equivalence", equivalence),
        ("subgroup criteria never meet NotPermutation", weiss_conclusions),
        ("recovery of scrambled permutation modules", recovery),
        ("negative controls", negative_controls),
        ("oracle agreement", oracle_agreement),
        ("stability at k and k + 2", stability),
        ("ramified p = 3 verdicts re-verify", ramified_honesty),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        failed += usize::from(!o.pass);
        println!(
            "{} {}. {name}: {} [{:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            n + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
