//! The `permlattice` command line: file generation, `H¹`, recognition, the
//! subgroup criteria, the property suite and report verification.
//!
//! Exit codes are stable: `0` success (permutation, zero `H¹`, hypotheses and
//! conclusion consistent), `1` a negative answer or a suite violation, `2`
//! coflasque but undecided, `3` usage, parse or i/o errors, `4` precision
//! exhausted, `5` internal errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::io::{read_lattice, LatticeFile, ReportFile};
use crate::lattice::{CyclicGroup, Lattice, MultVector};
use crate::recognition::{default_precision, recognize, weiss_hypotheses, VerdictKind, WeissMode};
use crate::ring::{make_ring, Ring};
use crate::suite::{run_suite, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_PRECISION: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

/// Overrides the default working precision `n·e + 6` of `gen` and `suite`.
pub const PRECISION_ENV: &str = "PERMLATTICE_PRECISION";

#[derive(Parser, Debug)]
#[command(name = "permlattice", version, about = "Permutation lattices for cyclic p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct RingArgs {
    #[arg(long)]
    p: u64,
    /// Ramification index.
    #[arg(long, default_value_t = 1)]
    e: usize,
    /// Coefficients c_0,…,c_{e-1} of π^e + … + c_0; defaults to π^e = p.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    eisenstein: Vec<i64>,
    /// Working precision; defaults to n·e + 6.
    #[arg(long)]
    k: Option<u32>,
}

impl RingArgs {
    fn ring(&self, n: u32) -> Result<Ring> {
        let eis = if self.e > 1 && self.eisenstein.is_empty() { vec![-(self.p as i64)] } else { self.eisenstein.clone() };
        let k = match self.k {
            Some(k) => k,
            None => precision_override()?.unwrap_or_else(|| default_precision(n, self.e)),
        };
        make_ring(self.p, self.e, &eis, k)
    }
}

fn precision_override() -> Result<Option<u32>> {
    match std::env::var(PRECISION_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| Error::Parse(format!("{PRECISION_ENV}={v:?} is not a precision"))),
        Err(_) => Ok(None),
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Free,
    Perm,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a (scrambled) permutation lattice.
    Gen {
        #[command(flatten)]
        ring: RingArgs,
        /// |G| = p^n.
        #[arg(long)]
        n: u32,
        /// Orbit counts a_0,…,a_n for the subgroups H_0,…,H_n.
        #[arg(long, value_delimiter = ',', required = true)]
        mults: Vec<usize>,
        #[arg(long)]
        scramble: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print H¹(H_i, U).
    H1 {
        file: PathBuf,
        #[arg(long)]
        subgroup: usize,
    },
    /// Decide whether the lattice is a permutation module.
    Recognize {
        file: PathBuf,
        /// Embed the permutation basis in the report.
        #[arg(long)]
        certify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the hypotheses of the criteria through the subgroup H_i.
    Weiss {
        file: PathBuf,
        #[arg(long)]
        subgroup: usize,
        #[arg(long, value_enum, default_value = "perm")]
        mode: ModeArg,
    },
    /// Run the property battery on seeded samples.
    Suite {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_rank: usize,
        /// Directory for failing instances.
        #[arg(long, default_value = "suite-failures")]
        out_dir: PathBuf,
        /// Corrupt every certificate, to check that the harness can fail.
        #[arg(long)]
        inject_tamper: bool,
    },
    /// Re-check a report's certificate or witness against a lattice file.
    Verify { lattice: PathBuf, report: PathBuf },
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted { .. } | Error::NoLift { .. } | Error::Unstable { .. } => EXIT_PRECISION,
        Error::Parse(_)
        | Error::Io(_)
        | Error::InvalidRing(_)
        | Error::InvalidLattice(_)
        | Error::InvalidSubgroup { .. }
        | Error::Dimension(_)
        | Error::SizeLimit(_) => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Gen { ring, n, mults, scramble, seed, out: path } => cmd_gen(&ring, n, &mults, scramble, seed, path.as_deref(), out),
        Command::H1 { file, subgroup } => cmd_h1(&file, subgroup, out),
        Command::Recognize { file, certify, out: path } => cmd_recognize(&file, certify, path.as_deref(), out),
        Command::Weiss { file, subgroup, mode } => cmd_weiss(&file, subgroup, mode, out),
        Command::Suite { ring, n, samples, seed, max_rank, out_dir, inject_tamper } => {
            let r = ring.ring(n)?;
            let cfg = SuiteConfig {
                p: r.p(),
                n,
                e: r.e(),
                eisenstein: r.eisenstein().to_vec(),
                k: r.k(),
                samples,
                seed,
                max_rank,
                inject_tamper,
            };
            cmd_suite(&cfg, &out_dir, out)
        }
        Command::Verify { lattice, report } => cmd_verify(&lattice, &report, out),
    }
}

fn emit(out: &mut dyn Write, s: &str) -> Result<()> {
    out.write_all(s.as_bytes())?;
    Ok(())
}

fn cmd_gen(args: &RingArgs, n: u32, mults: &[usize], scramble: bool, seed: u64, path: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    if mults.len() != n as usize + 1 {
        return Err(Error::Parse(format!("--mults needs n + 1 = {} entries, got {}", n + 1, mults.len())));
    }
    let ring = args.ring(n)?;
    let group = CyclicGroup::new(ring.p(), n);
    let mut u = Lattice::permutation(group, &ring, &MultVector(mults.to_vec()))?;
    if scramble {
        u = u.scramble(seed);
    }
    let mut file = LatticeFile::from_lattice(&u);
    file.seed = scramble.then_some(seed);
    match path {
        Some(p) => {
            file.write(p)?;
            writeln!(out, "wrote rank-{} lattice to {}", u.rank(), p.display())?;
        }
        None => emit(out, &file.to_json())?,
    }
    Ok(EXIT_OK)
}

fn cmd_h1(file: &Path, i: usize, out: &mut dyn Write) -> Result<i32> {
    let u = read_lattice(file)?;
    if i == 0 {
        return Err(Error::InvalidSubgroup { index: 0, n: u.group().n });
    }
    let h = u.h1(i)?;
    if h.is_zero {
        writeln!(out, "zero")?;
        Ok(EXIT_OK)
    } else {
        let parts: Vec<String> = h.torsion_divisors.iter().map(|d| format!("pi^{d}")).collect();
        writeln!(out, "torsion: {}", parts.join(", "))?;
        Ok(EXIT_NEGATIVE)
    }
}

fn cmd_recognize(file: &Path, certify: bool, path: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let u = read_lattice(file)?;
    let rec = recognize(&u)?;
    let report = ReportFile::of(&u, &rec, certify);
    report.verify_against(&u).map_err(|e| Error::Internal(format!("own report does not verify: {e}")))?;
    match path {
        Some(p) => {
            fs::write(p, report.to_json())?;
            write!(out, "{}", rec.verdict.kind())?;
            if let Some(m) = rec.verdict.mults() {
                write!(out, " {m}")?;
            }
            writeln!(out)?;
        }
        None => emit(out, &report.to_json())?,
    }
    Ok(match rec.verdict.kind() {
        VerdictKind::Permutation => EXIT_OK,
        VerdictKind::NotPermutation => EXIT_NEGATIVE,
        VerdictKind::CoflasqueUndecided => EXIT_UNDECIDED,
    })
}

fn cmd_weiss(file: &Path, i: usize, mode: ModeArg, out: &mut dyn Write) -> Result<i32> {
    let u = read_lattice(file)?;
    if i == 0 {
        return Err(Error::InvalidSubgroup { index: 0, n: u.group().n });
    }
    let mode = match mode {
        ModeArg::Free => WeissMode::Free,
        ModeArg::Perm => WeissMode::Permutation,
    };
    let rep = weiss_hypotheses(&u, i, mode)?;
    let name = match mode {
        WeissMode::Free => "free",
        WeissMode::Permutation => "permutation",
    };
    writeln!(out, "N = H_{i}, restriction must be {name}")?;
    writeln!(out, "restriction to N: {} ({})", rep.restriction, rep.restriction_detail)?;
    writeln!(out, "N-fixed points over G/N: {} ({})", rep.fixed_points, rep.fixed_points_detail)?;
    if !rep.both_hold() {
        writeln!(out, "conclusion: not applicable")?;
        return Ok(EXIT_NEGATIVE);
    }
    let kind = recognize(&u)?.verdict.kind();
    if kind == VerdictKind::NotPermutation {
        writeln!(out, "conclusion: CONTRADICTED, recognize says {kind}")?;
        return Ok(EXIT_INTERNAL);
    }
    writeln!(out, "conclusion: permutation module; recognize says {kind}")?;
    Ok(EXIT_OK)
}

fn cmd_suite(cfg: &SuiteConfig, out_dir: &Path, out: &mut dyn Write) -> Result<i32> {
    let s = run_suite(cfg)?;
    writeln!(
        out,
        "suite p={} n={} e={} eisenstein={:?} k={} seed={} samples={} max-rank={}",
        cfg.p, cfg.n, cfg.e, cfg.eisenstein, cfg.k, cfg.seed, cfg.samples, cfg.max_rank
    )?;
    for (v, count) in &s.verdicts {
        writeln!(out, "verdict {v}: {count}")?;
    }
    for (name, c) in &s.checks {
        writeln!(out, "check {name}: {} passed, {} failed", c.passed, c.failed)?;
    }
    if s.all_passed() {
        writeln!(out, "all properties hold")?;
        return Ok(EXIT_OK);
    }
    fs::create_dir_all(out_dir)?;
    for f in &s.failures {
        let path = out_dir.join(format!("sample-{}.json", f.index));
        let mut file = LatticeFile::from_lattice(&f.lattice);
        file.seed = Some(cfg.seed);
        file.write(&path)?;
        writeln!(out, "FAIL sample {} -> {}", f.index, path.display())?;
        for v in &f.violations {
            writeln!(out, "  {v}")?;
        }
    }
    Ok(EXIT_NEGATIVE)
}

fn cmd_verify(lattice: &Path, report: &Path, out: &mut dyn Write) -> Result<i32> {
    let u = read_lattice(lattice)?;
    let r = ReportFile::from_json(&fs::read_to_string(report)?)?;
    match r.verify_against(&u) {
        Ok(()) => {
            writeln!(out, "report verifies ({})", r.verdict)?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            writeln!(out, "report rejected: {e}")?;
            Ok(EXIT_NEGATIVE)
        }
    }
}
