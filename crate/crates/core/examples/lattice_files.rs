//! Writing, reading and replaying lattice and report files through the command layer.

use permlattice::commands::run;
use permlattice::io::{read_lattice, LatticeFile};

fn main() -> permlattice::Result<()> {
    let dir = std::env::temp_dir().join("permlattice-example");
    std::fs::create_dir_all(&dir)?;
    let lat = dir.join("u.json");
    let rep = dir.join("u.report.json");
    let path = |p: &std::path::Path| p.to_str().expect("utf-8 path").to_string();
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();

    let gen = ["permlattice", "gen", "--p", "3", "--n", "1", "--mults", "1,1", "--scramble", "--seed", "7", "--out", &path(&lat)];
    println!("gen exit {}", run(gen, &mut out, &mut err));
    let file = LatticeFile::read(&lat)?;
    println!("rank {}, ring {:?}, seed {:?}", file.rank, file.ring, file.seed);
    println!("round trip: {}", LatticeFile::from_lattice(&read_lattice(&lat)?).action == file.action);

    println!("h1 exit {}", run(["permlattice", "h1", &path(&lat), "--subgroup", "1"], &mut out, &mut err));
    let recognize = ["permlattice", "recognize", &path(&lat), "--certify", "--out", &path(&rep)];
    println!("recognize exit {}", run(recognize, &mut out, &mut err));
    println!("verify exit {}", run(["permlattice", "verify", &path(&lat), &path(&rep)], &mut out, &mut err));
    Ok(())
}
