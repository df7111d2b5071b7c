use std::path::{Path, PathBuf};
use std::process::Command;

use permlattice::commands::{run, EXIT_NEGATIVE, EXIT_OK, EXIT_PRECISION, EXIT_UNDECIDED, EXIT_USAGE};
use permlattice::io::{read_lattice, write_lattice, LatticeFile, ReportFile};
use permlattice::matrix::MatrixR;
use permlattice::samples::ramified_coflasque_candidate;
use permlattice::{make_ring, CyclicGroup, Lattice, MultVector};
use tempfile::TempDir;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("permlattice").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn save(dir: &TempDir, name: &str, u: &Lattice) -> PathBuf {
    let p = dir.path().join(name);
    write_lattice(u, &p).unwrap();
    p
}

fn z2() -> permlattice::Ring {
    make_ring(2, 1, &[], 8).unwrap()
}

#[test]
fn gen_examples() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let flags = ["gen", "--p", "2", "--n", "2", "--mults", "1,0,1", "--scramble", "--seed", "7"];
    for p in [&a, &b] {
        let mut args = flags.to_vec();
        args.extend(["--out", path_str(p)]);
        assert_eq!(cli(&args).0, EXIT_OK);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let file = LatticeFile::read(&a).unwrap();
    assert_eq!(file.rank, 5);
    assert_eq!(file.seed, Some(7));
    assert_eq!(file.ring.k, 8);

    let (code, json, _) = cli(&["gen", "--p", "3", "--n", "1", "--mults", "0,1"]);
    assert_eq!(code, EXIT_OK);
    let t = LatticeFile::from_json(&json).unwrap().to_lattice().unwrap();
    assert_eq!(t, Lattice::trivial(CyclicGroup::new(3, 1), &make_ring(3, 1, &[], 7).unwrap(), 1));
}

#[test]
fn gen_rejects_bad_flags() {
    assert_eq!(cli(&["gen", "--p", "2", "--n", "2", "--mults", "1,0"]).0, EXIT_USAGE);
    assert_eq!(cli(&["gen", "--p", "4", "--n", "1", "--mults", "1,0"]).0, EXIT_USAGE);
    assert_eq!(cli(&["gen", "--p", "2", "--n", "1", "--e", "2", "--eisenstein", "-4,0", "--mults", "1,0"]).0, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(cli(&["--version"]).0, EXIT_OK);
}

#[test]
fn gen_ramified_defaults() {
    let (code, json, _) = cli(&["gen", "--p", "2", "--n", "1", "--e", "2", "--mults", "1,1", "--k", "9"]);
    assert_eq!(code, EXIT_OK);
    let f = LatticeFile::from_json(&json).unwrap();
    assert_eq!((f.ring.e, f.ring.eisenstein.clone(), f.ring.k), (2, vec![-2, 0], 9));
    assert_eq!(f.to_lattice().unwrap().rank(), 3);
}

#[test]
fn h1_examples() {
    let dir = TempDir::new().unwrap();
    let c2 = CyclicGroup::new(2, 1);
    let sign = save(&dir, "sign.json", &Lattice::sign(c2, &z2()).unwrap());
    let (code, out, _) = cli(&["h1", path_str(&sign), "--subgroup", "1"]);
    assert_eq!((code, out.trim()), (EXIT_NEGATIVE, "torsion: pi^1"));

    let ram = make_ring(2, 2, &[-2, 0], 8).unwrap();
    let rsign = save(&dir, "rsign.json", &Lattice::sign(c2, &ram).unwrap());
    let (code, out, _) = cli(&["h1", path_str(&rsign), "--subgroup", "1"]);
    assert_eq!((code, out.trim()), (EXIT_NEGATIVE, "torsion: pi^2"));

    let reg = save(&dir, "reg.json", &Lattice::regular(c2, &z2()).scramble(4));
    let (code, out, _) = cli(&["h1", path_str(&reg), "--subgroup", "1"]);
    assert_eq!((code, out.trim()), (EXIT_OK, "zero"));

    assert_eq!(cli(&["h1", path_str(&reg), "--subgroup", "0"]).0, EXIT_USAGE);
    assert_eq!(cli(&["h1", path_str(&reg), "--subgroup", "2"]).0, EXIT_USAGE);
    assert_eq!(cli(&["h1", path_str(&dir.path().join("missing.json")), "--subgroup", "1"]).0, EXIT_USAGE);
}

#[test]
fn precision_exhaustion_has_its_own_code() {
    let dir = TempDir::new().unwrap();
    let r = make_ring(2, 1, &[], 1).unwrap();
    let sign = save(&dir, "sign.json", &Lattice::new(CyclicGroup::new(2, 1), MatrixR::from_rows(&r, &[vec![-1]])).unwrap());
    assert_eq!(cli(&["h1", path_str(&sign), "--subgroup", "1"]).0, EXIT_PRECISION);
    assert_eq!(cli(&["recognize", path_str(&sign)]).0, EXIT_PRECISION);
}

#[test]
fn recognize_examples() {
    let dir = TempDir::new().unwrap();
    let c4 = CyclicGroup::new(2, 2);
    let u = Lattice::permutation(c4, &z2(), &MultVector(vec![1, 0, 1])).unwrap().scramble(11);
    let file = save(&dir, "u.json", &u);
    let report = dir.path().join("u.report.json");
    let (code, out, _) = cli(&["recognize", path_str(&file), "--certify", "--out", path_str(&report)]);
    assert_eq!((code, out.trim()), (EXIT_OK, "permutation (1,0,1)"));
    let r = ReportFile::from_json(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r.multiplicities, Some(vec![1, 0, 1]));
    assert_eq!((r.precision, r.stability_precision), (8, Some(10)));
    assert!(r.certificate.is_some());
    r.verify_against(&u).unwrap();

    let sign = save(&dir, "sign.json", &Lattice::sign(CyclicGroup::new(2, 1), &z2()).unwrap());
    let (code, json, _) = cli(&["recognize", path_str(&sign)]);
    assert_eq!(code, EXIT_NEGATIVE);
    let r = ReportFile::from_json(&json).unwrap();
    assert_eq!(r.verdict, "not-permutation");
    assert!(json.contains("\"kind\": \"multiplicity\""), "{json}");

    let ram3 = make_ring(3, 2, &[-3, 0], 8).unwrap();
    let cand = ramified_coflasque_candidate(&ram3, CyclicGroup::new(3, 1), 2).unwrap();
    let cfile = save(&dir, "cand.json", &cand);
    let (code, json, _) = cli(&["recognize", path_str(&cfile)]);
    assert_eq!(code, EXIT_UNDECIDED);
    let r = ReportFile::from_json(&json).unwrap();
    assert_eq!(r.multiplicities, Some(vec![1, 1]));
    assert!(r.undecided_reason.is_some());
}

#[test]
fn verify_detects_tampering() {
    let dir = TempDir::new().unwrap();
    let u = Lattice::permutation(CyclicGroup::new(2, 1), &z2(), &MultVector(vec![1, 1])).unwrap().scramble(2);
    let file = save(&dir, "u.json", &u);
    let report = dir.path().join("r.json");
    assert_eq!(cli(&["recognize", path_str(&file), "--certify", "--out", path_str(&report)]).0, EXIT_OK);
    assert_eq!(cli(&["verify", path_str(&file), path_str(&report)]).0, EXIT_OK);

    let mut r = ReportFile::from_json(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let cert = r.certificate.as_mut().unwrap();
    cert.basis[0][0] += 2;
    std::fs::write(&report, r.to_json()).unwrap();
    assert_eq!(cli(&["verify", path_str(&file), path_str(&report)]).0, EXIT_NEGATIVE);

    // the same report checked against a different lattice
    let other = save(&dir, "other.json", &Lattice::trivial(CyclicGroup::new(2, 1), &z2(), 3));
    let good = dir.path().join("good.json");
    cli(&["recognize", path_str(&file), "--certify", "--out", path_str(&good)]);
    assert_ne!(cli(&["verify", path_str(&other), path_str(&good)]).0, EXIT_OK);
}

#[test]
fn weiss_examples() {
    let dir = TempDir::new().unwrap();
    let r = z2();
    let c4 = CyclicGroup::new(2, 2);
    let reg = save(&dir, "reg.json", &Lattice::regular(c4, &r).scramble(3));
    let (code, out, _) = cli(&["weiss", path_str(&reg), "--subgroup", "1", "--mode", "free"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("recognize says permutation"));

    let rot = save(&dir, "rot.json", &Lattice::new(c4, MatrixR::from_rows(&r, &[vec![0, -1], vec![1, 0]])).unwrap());
    let (code, out, _) = cli(&["weiss", path_str(&rot), "--subgroup", "1", "--mode", "perm"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert!(out.contains("restriction to N: fails"), "{out}");

    let s = save(&dir, "s.json", &Lattice::new(c4, MatrixR::from_rows(&r, &[vec![-1]])).unwrap());
    let (code, out, _) = cli(&["weiss", path_str(&s), "--subgroup", "1"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert!(out.contains("restriction to N: holds") && out.contains("fixed points over G/N: fails"), "{out}");

    assert_eq!(cli(&["weiss", path_str(&s), "--subgroup", "0"]).0, EXIT_USAGE);
    assert_eq!(cli(&["weiss", path_str(&s), "--subgroup", "1", "--mode", "other"]).0, EXIT_USAGE);
}

#[test]
fn suite_examples() {
    let (code, out, _) = cli(&["suite", "--p", "2", "--n", "2", "--samples", "200"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("all properties hold"));
    let (code, out, _) = cli(&["suite", "--p", "2", "--n", "1", "--e", "2", "--samples", "200"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn suite_tamper_writes_replayable_failures() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("fail");
    let (code, out, _) =
        cli(&["suite", "--p", "2", "--n", "1", "--samples", "6", "--inject-tamper", "--out-dir", path_str(&out_dir)]);
    assert_eq!(code, EXIT_NEGATIVE);
    let line = out.lines().find(|l| l.starts_with("FAIL")).unwrap();
    let path = PathBuf::from(line.split(" -> ").nth(1).unwrap());
    let u = read_lattice(&path).unwrap();
    assert_eq!(cli(&["recognize", path_str(&path)]).0, EXIT_OK, "untampered replay recognises {u:?}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_permlattice");
    let dir = TempDir::new().unwrap();
    let sign = save(&dir, "sign.json", &Lattice::sign(CyclicGroup::new(2, 1), &z2()).unwrap());
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = status(&["recognize", path_str(&sign)]);
    assert_eq!(o.status.code(), Some(EXIT_NEGATIVE));
    let o = status(&["h1", path_str(&sign), "--subgroup", "0"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(!o.stderr.is_empty());
    let o = Command::new(bin).args(["gen", "--p", "3", "--n", "1", "--mults", "0,1"]).env("PERMLATTICE_PRECISION", "5").output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert_eq!(LatticeFile::from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap().ring.k, 5);
    let o = Command::new(bin).args(["gen", "--p", "3", "--n", "1", "--mults", "0,1"]).env("PERMLATTICE_PRECISION", "x").output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}
