//! JSON file formats for lattices and recognition reports.
//!
//! Ring elements are written as lists of `e` integers, the balanced
//! `π`-adic coefficients, so files do not depend on the internal encoding.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{CyclicGroup, H1Report, Lattice, MultVector};
use crate::matrix::MatrixR;
use crate::recognition::{OrbitLabel, PermCertificate, Recognition, Verdict, Witness};
use crate::ring::{make_ring, Ring};

pub const LATTICE_FORMAT: &str = "permlattice-lattice/1";
pub const REPORT_FORMAT: &str = "permlattice-report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDesc {
    pub p: u64,
    pub e: usize,
    pub eisenstein: Vec<i64>,
    pub k: u32,
}

impl RingDesc {
    pub fn of(ring: &Ring) -> Self {
        RingDesc { p: ring.p(), e: ring.e(), eisenstein: ring.eisenstein().to_vec(), k: ring.k() }
    }

    pub fn build(&self) -> Result<Ring> {
        make_ring(self.p, self.e, &self.eisenstein, self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDesc {
    pub n: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub format: String,
    pub ring: RingDesc,
    pub group: GroupDesc,
    pub rank: usize,
    /// Row-major entries of the generator's matrix.
    pub action: Vec<Vec<i64>>,
    /// Seed of the generator that produced the file, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn encode_matrix(m: &MatrixR) -> Vec<Vec<i64>> {
    (0..m.rows()).flat_map(|i| (0..m.cols()).map(move |j| (i, j))).map(|(i, j)| m.get(i, j).balanced_coeffs()).collect()
}

fn decode_matrix(ring: &Ring, rows: usize, cols: usize, entries: &[Vec<i64>]) -> Result<MatrixR> {
    if entries.len() != rows * cols {
        return Err(Error::Parse(format!("expected {} matrix entries, found {}", rows * cols, entries.len())));
    }
    let elems = entries
        .iter()
        .map(|c| {
            if c.len() != ring.e() {
                return Err(Error::Parse(format!("entry {c:?} should have {} coefficients", ring.e())));
            }
            ring.from_coeffs(c)
        })
        .collect::<Result<Vec<_>>>()?;
    MatrixR::from_elems(ring, rows, cols, &elems)
}

impl LatticeFile {
    pub fn from_lattice(u: &Lattice) -> Self {
        LatticeFile {
            format: LATTICE_FORMAT.into(),
            ring: RingDesc::of(u.ring()),
            group: GroupDesc { n: u.group().n },
            rank: u.rank(),
            action: encode_matrix(u.action()),
            seed: None,
        }
    }

    /// Rebuilds the lattice, re-validating invertibility and finite order.
    pub fn to_lattice(&self) -> Result<Lattice> {
        if self.format != LATTICE_FORMAT {
            return Err(Error::Parse(format!("unknown lattice format {:?}", self.format)));
        }
        let ring = self.ring.build()?;
        let action = decode_matrix(&ring, self.rank, self.rank, &self.action)?;
        Lattice::new(CyclicGroup::new(self.ring.p, self.group.n), action)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lattice files serialize") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        Ok(fs::write(path, self.to_json())?)
    }
}

pub fn read_lattice(path: &Path) -> Result<Lattice> {
    LatticeFile::read(path)?.to_lattice()
}

pub fn write_lattice(u: &Lattice, path: &Path) -> Result<()> {
    LatticeFile::from_lattice(u).write(path)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Entry {
    pub subgroup: usize,
    pub divisors: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessFile {
    /// Orbit counts `numerators[i] / denominator` solving the fixed-rank system.
    Multiplicity { fixed_ranks: Vec<usize>, numerators: Vec<i64>, denominator: i64 },
    H1 { subgroup: usize, divisors: Vec<u32> },
}

impl WitnessFile {
    pub fn of(w: &Witness) -> Self {
        match w {
            Witness::Multiplicity(m) => WitnessFile::Multiplicity {
                fixed_ranks: m.ranks.clone(),
                numerators: m.numerators.clone(),
                denominator: m.denominator,
            },
            Witness::H1(h) => WitnessFile::H1 { subgroup: h.subgroup, divisors: h.torsion_divisors.clone() },
        }
    }

    pub fn to_witness(&self) -> Witness {
        match self {
            WitnessFile::Multiplicity { fixed_ranks, numerators, denominator } => {
                Witness::Multiplicity(crate::recognition::MultWitness {
                    ranks: fixed_ranks.clone(),
                    numerators: numerators.clone(),
                    denominator: *denominator,
                })
            }
            WitnessFile::H1 { subgroup, divisors } => Witness::H1(H1Report {
                subgroup: *subgroup,
                torsion_divisors: divisors.clone(),
                is_zero: divisors.is_empty(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    /// Row-major entries; column `j` is the `j`-th permuted basis vector.
    pub basis: Vec<Vec<i64>>,
    /// `(subgroup index, position in orbit)` per basis vector.
    pub orbit_labels: Vec<(usize, usize)>,
    /// `g` sends basis vector `j` to basis vector `sigma[j]`.
    pub sigma: Vec<usize>,
}

impl CertificateFile {
    pub fn of(u: &Lattice, c: &PermCertificate) -> Self {
        CertificateFile {
            basis: encode_matrix(&c.basis),
            orbit_labels: c.orbit_labels.iter().map(|l| (l.subgroup, l.position)).collect(),
            sigma: c.sigma(u).unwrap_or_default(),
        }
    }

    pub fn to_certificate(&self, u: &Lattice, mults: &MultVector) -> Result<PermCertificate> {
        let r = u.rank();
        let cert = PermCertificate {
            mults: mults.clone(),
            basis: decode_matrix(u.ring(), r, r, &self.basis)?,
            orbit_labels: self.orbit_labels.iter().map(|&(subgroup, position)| OrbitLabel { subgroup, position }).collect(),
        };
        if cert.sigma(u).as_deref() != Some(self.sigma.as_slice()) {
            return Err(Error::Parse("recorded permutation does not match the orbit labels".into()));
        }
        Ok(cert)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub format: String,
    pub tool_version: String,
    pub verdict: String,
    pub precision: u32,
    pub stability_precision: Option<u32>,
    pub fixed_ranks: Vec<usize>,
    pub h1: Vec<H1Entry>,
    pub coinvariant_torsion: Vec<Vec<u32>>,
    pub multiplicities: Option<Vec<usize>>,
    pub witness: Option<WitnessFile>,
    pub undecided_reason: Option<String>,
    pub certificate: Option<CertificateFile>,
}

impl ReportFile {
    pub fn of(u: &Lattice, rec: &Recognition, with_certificate: bool) -> Self {
        let (witness, reason, certificate) = match &rec.verdict {
            Verdict::Permutation(c) => (None, None, with_certificate.then(|| CertificateFile::of(u, c))),
            Verdict::NotPermutation(w) => (Some(WitnessFile::of(w)), None, None),
            Verdict::CoflasqueUndecided { reason, .. } => (None, Some(reason.clone()), None),
        };
        ReportFile {
            format: REPORT_FORMAT.into(),
            tool_version: TOOL_VERSION.into(),
            verdict: rec.verdict.kind().to_string(),
            precision: rec.precision,
            stability_precision: rec.stability_precision,
            fixed_ranks: rec.fixed_ranks.clone(),
            h1: rec.h1.iter().map(|h| H1Entry { subgroup: h.subgroup, divisors: h.torsion_divisors.clone() }).collect(),
            coinvariant_torsion: rec.coinvariant_torsion.clone(),
            multiplicities: rec.verdict.mults().map(|m| m.0.clone()),
            witness,
            undecided_reason: reason,
            certificate,
        }
    }

    /// Re-checks the embedded certificate or witness against the lattice.
    pub fn verify_against(&self, u: &Lattice) -> Result<()> {
        if let Some(c) = &self.certificate {
            let mults = MultVector(self.multiplicities.clone().ok_or_else(|| {
                Error::Parse("certificate present without multiplicities".into())
            })?);
            let cert = c.to_certificate(u, &mults)?;
            cert.verify(u).map_err(|e| Error::HypothesisFailed(format!("certificate rejected: {e}")))?;
        }
        if let Some(w) = &self.witness {
            if !w.to_witness().verify(u) {
                return Err(Error::HypothesisFailed("witness does not re-verify".into()));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: ReportFile = serde_json::from_str(s)?;
        if r.format != REPORT_FORMAT {
            return Err(Error::Parse(format!("unknown report format {:?}", r.format)));
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognition::recognize;

    #[test]
    fn lattice_round_trip() {
        let r = make_ring(2, 2, &[-2, 0], 8).unwrap();
        let u = Lattice::permutation(CyclicGroup::new(2, 1), &r, &MultVector(vec![1, 1])).unwrap().scramble(3);
        let f = LatticeFile::from_lattice(&u);
        let text = f.to_json();
        let back = LatticeFile::from_json(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_json(), text);
        assert_eq!(back.to_lattice().unwrap(), u);
    }

    #[test]
    fn rejects_bad_files() {
        let r = make_ring(2, 1, &[], 6).unwrap();
        let mut f = LatticeFile::from_lattice(&Lattice::regular(CyclicGroup::new(2, 1), &r));
        f.action[0] = vec![3];
        assert!(f.to_lattice().is_err());
        let mut g = LatticeFile::from_lattice(&Lattice::regular(CyclicGroup::new(2, 1), &r));
        g.format = "other".into();
        assert!(matches!(g.to_lattice(), Err(Error::Parse(_))));
        assert!(LatticeFile::from_json("{").is_err());
    }

    #[test]
    fn report_round_trip_and_reverify() {
        let r = make_ring(2, 1, &[], 8).unwrap();
        let u = Lattice::permutation(CyclicGroup::new(2, 2), &r, &MultVector(vec![1, 0, 1])).unwrap().scramble(7);
        let rep = ReportFile::of(&u, &recognize(&u).unwrap(), true);
        let back = ReportFile::from_json(&rep.to_json()).unwrap();
        assert_eq!(back, rep);
        back.verify_against(&u).unwrap();
        assert_eq!(back.multiplicities, Some(vec![1, 0, 1]));

        let s = Lattice::sign(CyclicGroup::new(2, 1), &r).unwrap();
        let rep = ReportFile::of(&s, &recognize(&s).unwrap(), true);
        assert_eq!(rep.verdict, "not-permutation");
        rep.verify_against(&s).unwrap();

        let mut tampered = ReportFile::of(&u, &recognize(&u).unwrap(), true);
        tampered.certificate.as_mut().unwrap().basis[0] = vec![2];
        assert!(tampered.verify_against(&u).is_err());
    }
}
