//! Lattices over `R` with an action of a cyclic `p`-group `G`, stored as the
//! matrix of a fixed generator `g`.
//!
//! `H_i` denotes the subgroup of order `p^i`, generated by `g^{p^{n-i}}`.
//!
//! Data derived through a Smith form (fixed points, coinvariants) is only
//! determined modulo `π^{k-d}`, where `d` is the largest elementary divisor of
//! the defining map. Derived lattices are therefore returned over the same ring
//! at that reduced precision.

use std::fmt;

use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::matrix::MatrixR;
use crate::ring::Ring;
use crate::snf::{self, Summand};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicGroup {
    pub p: u64,
    pub n: u32,
}

impl CyclicGroup {
    pub fn new(p: u64, n: u32) -> Self {
        CyclicGroup { p, n }
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.n)
    }

    /// `|H_i| = p^i`.
    pub fn subgroup_order(&self, i: usize) -> u64 {
        self.p.pow(i as u32)
    }

    /// `[G : H_i] = p^{n-i}`; `g^{index}` generates `H_i`.
    pub fn index(&self, i: usize) -> u64 {
        self.p.pow(self.n - i as u32)
    }

    pub fn check_subgroup(&self, i: usize) -> Result<()> {
        if i > self.n as usize {
            return Err(Error::InvalidSubgroup { index: i, n: self.n });
        }
        Ok(())
    }

    /// The group `H_i` as a cyclic group in its own right.
    pub fn subgroup(&self, i: usize) -> CyclicGroup {
        CyclicGroup { p: self.p, n: i as u32 }
    }

    /// `G / H_i`.
    pub fn quotient(&self, i: usize) -> CyclicGroup {
        CyclicGroup { p: self.p, n: self.n - i as u32 }
    }
}

/// Multiplicity `a_i` of `R[G/H_i]` for `i = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultVector(pub Vec<usize>);

impl MultVector {
    pub fn rank(&self, group: &CyclicGroup) -> usize {
        self.0.iter().enumerate().map(|(i, &a)| a * group.index(i) as usize).sum()
    }

    /// Rank of the `H_j`-fixed points of the permutation module with these multiplicities.
    pub fn fixed_rank(&self, group: &CyclicGroup, j: usize) -> usize {
        self.0.iter().enumerate().map(|(i, &a)| a * group.index(i.max(j)) as usize).sum()
    }
}

impl fmt::Display for MultVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Report {
    pub subgroup: usize,
    /// Valuations `d` of the cyclic factors `R/π^d`.
    pub torsion_divisors: Vec<u32>,
    pub is_zero: bool,
}

impl H1Report {
    fn new(subgroup: usize, torsion_divisors: Vec<u32>) -> Self {
        let is_zero = torsion_divisors.is_empty();
        H1Report { subgroup, torsion_divisors, is_zero }
    }
}

/// Coinvariants `U / I_H U`: a free part with its induced action plus torsion.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    pub free: Lattice,
    pub torsion: Vec<u32>,
    /// Rows map `U` onto the free part.
    pub projection: MatrixR,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ring: Ring,
    group: CyclicGroup,
    action: MatrixR,
}

impl Lattice {
    /// Validates that `action` is invertible and `action^{|G|} = 1`.
    pub fn new(group: CyclicGroup, action: MatrixR) -> Result<Lattice> {
        if !action.is_square() {
            return Err(Error::InvalidLattice("action matrix is not square".into()));
        }
        if action.ring().p() != group.p {
            return Err(Error::InvalidLattice(format!(
                "group is a {}-group but the ring has residue characteristic {}",
                group.p,
                action.ring().p()
            )));
        }
        if !action.is_unimodular() {
            return Err(Error::InvalidLattice("action matrix is not invertible".into()));
        }
        let r = action.rows();
        if action.pow(group.order()) != MatrixR::identity(action.ring(), r) {
            return Err(Error::InvalidLattice(format!(
                "action does not have order dividing {}",
                group.order()
            )));
        }
        Ok(Lattice { ring: action.ring().clone(), group, action })
    }

    pub(crate) fn new_unchecked(group: CyclicGroup, action: MatrixR) -> Lattice {
        Lattice { ring: action.ring().clone(), group, action }
    }

    /// `⊕_i R[G/H_i]^{a_i}`; blocks by ascending `i`, each orbit listed as `g^0 v, g^1 v, …`.
    pub fn permutation(group: CyclicGroup, ring: &Ring, mults: &MultVector) -> Result<Lattice> {
        if mults.0.len() != group.n as usize + 1 {
            return Err(Error::Dimension(format!(
                "multiplicity vector has length {}, expected {}",
                mults.0.len(),
                group.n + 1
            )));
        }
        let mut action = MatrixR::zeros(ring, 0, 0);
        for (i, &a) in mults.0.iter().enumerate() {
            let cycle = cycle_matrix(ring, group.index(i) as usize);
            for _ in 0..a {
                action = action.block_diag(&cycle);
            }
        }
        Ok(Lattice::new_unchecked(group, action))
    }

    pub fn regular(group: CyclicGroup, ring: &Ring) -> Lattice {
        let mut m = vec![0; group.n as usize + 1];
        m[0] = 1;
        Lattice::permutation(group, ring, &MultVector(m)).unwrap()
    }

    pub fn trivial(group: CyclicGroup, ring: &Ring, rank: usize) -> Lattice {
        Lattice::new_unchecked(group, MatrixR::identity(ring, rank))
    }

    /// `g ↦ -1`; a lattice only when `p = 2` and `n ≥ 1`.
    pub fn sign(group: CyclicGroup, ring: &Ring) -> Result<Lattice> {
        Lattice::new(group, MatrixR::identity(ring, 1).neg())
    }

    /// Kernel of `RG → R`, i.e. `R[x]/(1 + x + … + x^{|G|-1})` with `g` acting by `x`.
    pub fn augmentation_ideal(group: CyclicGroup, ring: &Ring) -> Lattice {
        let m = group.order() as usize;
        let d = m - 1;
        let mut a = MatrixR::zeros(ring, d, d);
        for j in 0..d {
            if j + 1 < d {
                a.set(j + 1, j, &ring.one());
            }
            a.set(j, d - 1, &ring.int(-1));
        }
        Lattice::new_unchecked(group, a)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn group(&self) -> &CyclicGroup {
        &self.group
    }

    pub fn action(&self) -> &MatrixR {
        &self.action
    }

    pub fn rank(&self) -> usize {
        self.action.rows()
    }

    pub fn precision(&self) -> u32 {
        self.ring.k()
    }

    /// Matrix of the generator `g^{p^{n-i}}` of `H_i`.
    pub fn subgroup_generator(&self, i: usize) -> Result<MatrixR> {
        self.group.check_subgroup(i)?;
        Ok(self.action.pow(self.group.index(i)))
    }

    pub fn restrict(&self, i: usize) -> Result<Lattice> {
        Ok(Lattice::new_unchecked(self.group.subgroup(i), self.subgroup_generator(i)?))
    }

    /// Matrix of `Σ_{h ∈ H_i} h`.
    pub fn norm_action(&self, i: usize) -> Result<MatrixR> {
        let h = self.subgroup_generator(i)?;
        let mut acc = MatrixR::zeros(&self.ring, self.rank(), self.rank());
        let mut pw = MatrixR::identity(&self.ring, self.rank());
        for _ in 0..self.group.subgroup_order(i) {
            acc = acc.add(&pw);
            pw = pw.mul(&h);
        }
        Ok(acc)
    }

    /// Matrix of `h - 1` for the generator `h` of `H_i`.
    pub fn aug_action(&self, i: usize) -> Result<MatrixR> {
        Ok(self.subgroup_generator(i)?.sub(&MatrixR::identity(&self.ring, self.rank())))
    }

    /// The saturated summand `U^{H_i}`, as a `G/H_i`-lattice, with its inclusion into `U`.
    pub fn fixed_points(&self, i: usize) -> Result<(Lattice, MatrixR)> {
        let s = snf::kernel_summand(&self.aug_action(i)?)?;
        let action = s.coords.mul(&self.action).mul(&s.basis);
        let sub = self.derived(self.group.quotient(i), action, s.loss)?;
        Ok((sub, s.basis))
    }

    /// Rank of `U^{H_i}` without building the induced action.
    pub fn fixed_rank(&self, i: usize) -> Result<usize> {
        let a = self.aug_action(i)?;
        Ok(self.rank() - snf::rank(&a)?)
    }

    pub fn coinvariants(&self, i: usize) -> Result<Coinvariants> {
        let aug = self.aug_action(i)?;
        let sf = snf::smith_normal_form(&aug)?;
        let r = self.rank();
        let rk = sf.rank();
        let left_inv = sf.left.inverse()?;
        let projection = sf.left.submatrix(rk..r, 0..r);
        let lift = left_inv.columns(rk..r);
        let action = projection.mul(&self.action).mul(&lift);
        let free = self.derived(self.group.quotient(i), action, sf.max_divisor())?;
        let torsion = sf.divisors.iter().copied().filter(|&d| d > 0).collect();
        Ok(Coinvariants { free, torsion, projection })
    }

    /// `H¹(H_i, U) = ker(N̂) / (h - 1)U`.
    pub fn h1(&self, i: usize) -> Result<H1Report> {
        if i == 0 || i > self.group.n as usize {
            return Err(Error::InvalidSubgroup { index: i, n: self.group.n });
        }
        let kernel: Summand = snf::kernel_summand(&self.norm_action(i)?)?;
        let image = kernel.coords.mul(&self.aug_action(i)?);
        let c = snf::cokernel_divisors(&image)?;
        // H¹ is torsion, so an apparent free part is a divisor of valuation >= k
        if c.free_rank != 0 {
            return Err(Error::PrecisionExhausted { valuation: self.precision(), precision: self.precision(), guard: 0 });
        }
        Ok(H1Report::new(i, c.torsion))
    }

    pub fn direct_sum(&self, other: &Lattice) -> Result<Lattice> {
        if self.group != other.group {
            return Err(Error::InvalidLattice("direct sum of lattices for different groups".into()));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(Lattice::new_unchecked(self.group, self.action.block_diag(&other.action)))
    }

    /// `S^{-1} A S` for `S = random_unimodular(rank, seed)`.
    pub fn scramble(&self, seed: u64) -> Lattice {
        let s = snf::random_unimodular(&self.ring, self.rank(), seed);
        self.conjugate(&s).expect("random_unimodular output is invertible")
    }

    /// The same module in the basis given by the columns of `s`.
    pub fn conjugate(&self, s: &MatrixR) -> Result<Lattice> {
        let inv = s.inverse()?;
        Ok(Lattice::new_unchecked(self.group, inv.mul(&self.action).mul(s)))
    }

    pub fn residue_reduction(&self) -> FpMatrix {
        self.action.reduce()
    }

    /// Re-encodes the action at a lower precision.
    pub fn truncate(&self, k: u32) -> Result<Lattice> {
        if k > self.precision() {
            return Err(Error::Internal(format!(
                "cannot truncate precision {} up to {k}",
                self.precision()
            )));
        }
        let ring = self.ring.with_precision(k)?;
        Ok(Lattice::new_unchecked(self.group, self.action.change_precision(&ring)?))
    }

    /// A lattice at precision `target` ≥ `k`, congruent to this one modulo `π^k`
    /// whenever this one is the truncation of an honest lattice.
    ///
    /// Each step raises precision by two. With `A'` the symmetric lift and
    /// `A'^{|G|} - 1 = π^{k-c} E`, the correction `A' + π^{k-c} Y` with
    /// `Σ_j A^j Y A^{|G|-1-j} ≡ -E mod π^{c+2}` has order dividing `|G|` modulo
    /// `π^{k+2}`. The shift `c = 0` always succeeds for truncations of honest
    /// lattices; larger `c` absorbs the obstruction for arbitrary input.
    pub fn lift_precision(&self, target: u32) -> Result<Lattice> {
        let mut cur = self.clone();
        while cur.precision() < target {
            cur = cur.lift_step()?;
        }
        if cur.precision() > target {
            cur = cur.truncate(target)?;
        }
        Ok(cur)
    }

    fn lift_step(&self) -> Result<Lattice> {
        let k = self.precision();
        let mut last = String::from("precision below 2");
        for c in 0..k.saturating_sub(1) {
            if 2 * (k - c) < k + 2 {
                break;
            }
            match self.lift_step_shift(c) {
                Ok(l) => return Ok(l),
                Err(Error::NoSolution { index }) => last = format!("obstruction at Smith index {index} (shift {c})"),
                Err(e) => return Err(e),
            }
        }
        Err(Error::NoLift { precision: k + 2, reason: last })
    }

    fn lift_step_shift(&self, c: u32) -> Result<Lattice> {
        let k = self.precision();
        // unshifted: solving modulo π^k leaves only conjugation directions free
        let solve_k = if c == 0 { k } else { c + 2 };
        let hi = self.ring.with_precision(k + 2)?;
        let wide = self.ring.with_precision(k - c + solve_k)?;
        let lo = self.ring.with_precision(solve_k)?;
        let r = self.rank();
        let m = self.group.order() as usize;
        let a = self.action.change_precision(&hi)?;
        let a_wide = self.action.change_precision(&wide)?;
        let defect = a_wide.pow(m as u64).sub(&MatrixR::identity(&wide, r));
        if defect.min_valuation().map_or(false, |v| v < k) {
            return Err(Error::InvalidLattice("action does not have finite order at its precision".into()));
        }
        let rhs = defect.div_pi_pow(k - c).change_precision(&lo)?.neg().vectorize();
        let a_lo = self.action.change_precision(&lo)?;
        let powers: Vec<MatrixR> =
            std::iter::successors(Some(MatrixR::identity(&lo, r)), |x| Some(x.mul(&a_lo))).take(m).collect();
        let mut phi = MatrixR::zeros(&lo, r * r, r * r);
        for j in 0..m {
            phi = phi.add(&powers[m - 1 - j].transpose().kron(&powers[j]));
        }
        let y = snf::solve_with_guard(&phi, &rhs, 0)?;
        let y = MatrixR::unvectorize(&y, r, r).change_precision(&hi)?;
        let lifted = a.add(&y.scale(&hi.pi_pow(k - c)));
        Lattice::new(self.group, lifted)
            .map_err(|e| Error::NoLift { precision: k + 2, reason: e.to_string() })
    }

    /// Wraps an induced action computed modulo `π^k` that is only meaningful
    /// modulo `π^{k-loss}`.
    fn derived(&self, group: CyclicGroup, action: MatrixR, loss: u32) -> Result<Lattice> {
        let k = self.precision() - loss;
        let action = action.change_precision(&self.ring.with_precision(k)?)?;
        Lattice::new(group, action).map_err(|e| Error::Internal(format!("induced action: {e}")))
    }
}

/// `e_j ↦ e_{j+1 mod s}`.
pub fn cycle_matrix(ring: &Ring, s: usize) -> MatrixR {
    let mut m = MatrixR::zeros(ring, s, s);
    for j in 0..s {
        m.set((j + 1) % s, j, &ring.one());
    }
    m
}
