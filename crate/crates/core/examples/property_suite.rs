//! The seeded property battery, including a run with deliberately corrupted certificates.

use permlattice::suite::{run_suite, SuiteConfig};

fn main() -> permlattice::Result<()> {
    let mut cfg = SuiteConfig {
        p: 2,
        n: 2,
        e: 1,
        eisenstein: vec![],
        k: 8,
        samples: 60,
        seed: 1,
        max_rank: 6,
        inject_tamper: false,
    };
    let s = run_suite(&cfg)?;
    println!("verdicts {:?}", s.verdicts);
    for (name, c) in &s.checks {
        println!("{name:>22}: {} passed, {} failed", c.passed, c.failed);
    }
    println!("all passed: {}", s.all_passed());

    cfg.inject_tamper = true;
    cfg.samples = 6;
    let s = run_suite(&cfg)?;
    println!("with tampering: {} failing samples", s.failures.len());
    Ok(())
}
