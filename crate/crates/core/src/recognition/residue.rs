//! Structure of the residue module `Ū = U/πU` as an `F_p G`-module.
//!
//! Indecomposable `F_p G`-modules are the Jordan blocks of the nilpotent
//! operator `y = ḡ - 1`; the block of size `p^n` is the free module.

use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::lattice::CyclicGroup;

fn nilpotent_part(ubar: &FpMatrix) -> Result<FpMatrix> {
    if ubar.rows() != ubar.cols() {
        return Err(Error::Dimension("residue action is not square".into()));
    }
    let y = ubar.sub(&FpMatrix::identity(ubar.p(), ubar.rows()));
    if !y.pow(ubar.rows() as u64).is_zero() {
        return Err(Error::NotUnipotent);
    }
    Ok(y)
}

/// Jordan block sizes of `ḡ - 1`, largest first.
pub fn residue_decompose(ubar: &FpMatrix) -> Result<Vec<usize>> {
    let y = nilpotent_part(ubar)?;
    let d = y.rows();
    // ranks[t] = rank y^t
    let mut ranks = vec![d];
    let mut pw = FpMatrix::identity(y.p(), d);
    while *ranks.last().unwrap() > 0 {
        pw = pw.mul(&y);
        ranks.push(pw.rank());
    }
    let mut sizes = Vec::new();
    for s in (1..ranks.len()).rev() {
        // blocks of size ≥ s minus blocks of size ≥ s+1
        let at_least = |t: usize| ranks[t - 1] - ranks[t];
        let next = if s + 1 < ranks.len() { at_least(s + 1) } else { 0 };
        sizes.extend(std::iter::repeat(s).take(at_least(s) - next));
    }
    Ok(sizes)
}

/// A Jordan basis of `ḡ - 1`: for each chain a top vector `v` of size `s`, with
/// `v, yv, …, y^{s-1}v` the chain. Chains are listed largest first.
#[derive(Clone, Debug)]
pub struct JordanBasis {
    pub sizes: Vec<usize>,
    /// Columns: chain 0 (`v, yv, …`), then chain 1, and so on.
    pub basis: FpMatrix,
}

impl JordanBasis {
    /// Column range of chain `t` inside `basis`.
    pub fn chain_range(&self, t: usize) -> std::ops::Range<usize> {
        let start: usize = self.sizes[..t].iter().sum();
        start..start + self.sizes[t]
    }

    /// Projection onto the chains in `chains` along all the others.
    pub fn projection(&self, chains: &[usize]) -> FpMatrix {
        let p = self.basis.p();
        let d = self.basis.rows();
        let mut diag = FpMatrix::zeros(p, d, d);
        for &t in chains {
            for c in self.chain_range(t) {
                diag.set(c, c, 1);
            }
        }
        let inv = self.basis.inverse().expect("Jordan basis is invertible");
        self.basis.mul(&diag).mul(&inv)
    }
}

pub fn jordan_basis(ubar: &FpMatrix) -> Result<JordanBasis> {
    let y = nilpotent_part(ubar)?;
    let p = y.p();
    let d = y.rows();
    let sizes = residue_decompose(ubar)?;
    let max = sizes.first().copied().unwrap_or(0);
    // kernels[s] = ker y^s as column basis
    let mut kernels = vec![FpMatrix::zeros(p, d, 0)];
    let mut pw = FpMatrix::identity(p, d);
    for _ in 0..max {
        pw = pw.mul(&y);
        kernels.push(pw.kernel());
    }
    let mut tops: Vec<(usize, Vec<u64>)> = Vec::new();
    for s in (1..=max).rev() {
        let wanted = sizes.iter().filter(|&&x| x == s).count();
        if wanted == 0 {
            continue;
        }
        // span of ker y^{s-1} and of the level-s parts of longer chains
        let mut span = kernels[s - 1].clone();
        for (t, v) in &tops {
            let mut w = v.clone();
            for _ in 0..(t - s) {
                w = y.mul_vec(&w);
            }
            span = span.hstack(&FpMatrix::from_columns(p, d, &[w]));
        }
        let mut rank = span.rank();
        let mut found = 0;
        for j in 0..kernels[s].cols() {
            if found == wanted {
                break;
            }
            let v = kernels[s].column(j);
            let trial = span.hstack(&FpMatrix::from_columns(p, d, &[v.clone()]));
            let r = trial.rank();
            if r > rank {
                span = trial;
                rank = r;
                tops.push((s, v));
                found += 1;
            }
        }
        if found != wanted {
            return Err(Error::Internal("Jordan basis construction fell short".into()));
        }
    }
    let mut cols = Vec::with_capacity(d);
    for (s, v) in &tops {
        let mut w = v.clone();
        for _ in 0..*s {
            cols.push(w.clone());
            w = y.mul_vec(&w);
        }
    }
    Ok(JordanBasis { sizes, basis: FpMatrix::from_columns(p, d, &cols) })
}

/// Whether `Ū` is a free `F_p G`-module, decided by `Ū^G = Ĝ Ū`.
pub fn residue_free_check(ubar: &FpMatrix, group: &CyclicGroup) -> Result<bool> {
    let y = nilpotent_part(ubar)?;
    let d = y.rows();
    let fixed = y.kernel();
    let mut norm = FpMatrix::zeros(y.p(), d, d);
    let mut pw = FpMatrix::identity(y.p(), d);
    for _ in 0..group.order() {
        norm = norm.add(&pw);
        pw = pw.mul(ubar);
    }
    Ok(fixed.same_column_space(&norm))
}
