//! Arithmetic in `R = Z_p[x]/(E(x))` modulo `π^k`, where `E` is Eisenstein of
//! degree `e` and `π` is the class of `x` (or `π = p` when `e = 1`).
//!
//! An element is stored as `a_0 + a_1 π + … + a_{e-1} π^{e-1}` with integer
//! coefficients. Because the terms `a_i π^i` have pairwise distinct valuations
//! modulo `e`, the ideal `π^k R` is exactly the set of such sums with
//! `a_i ≡ 0 mod p^{ceil((k-i)/e)}`. Reducing every coefficient to its canonical
//! residue for that modulus makes equality a plain comparison of coefficient
//! vectors.

use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Coefficient vector of a ring element (length `e`).
pub type Coeffs = SmallVec<[i64; 4]>;

/// Largest common reduction modulus we accept; keeps every product inside `i128`.
const MAX_MODULUS: u64 = 1 << 62;

#[derive(Debug)]
pub struct RingSpec {
    p: u64,
    e: usize,
    eisenstein: Vec<i64>,
    k: u32,
    /// `p^{ceil((k-i)/e)}` for coefficient `i`.
    moduli: Vec<u64>,
    /// `p^{ceil(k/e)}`; every coefficient may be reduced by it during arithmetic.
    modulus: u64,
    /// `x^e = Σ reduction[j] x^j`, entries reduced modulo `modulus`.
    reduction: Vec<i64>,
    /// `p / π` as an element, used for exact division by `π`.
    p_over_pi: Coeffs,
}

/// Shared handle to a validated [`RingSpec`].
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingSpec>);

impl Deref for Ring {
    type Target = RingSpec;
    fn deref(&self) -> &RingSpec {
        &self.0
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.p == other.p
                && self.e == other.e
                && self.k == other.k
                && self.eisenstein == other.eisenstein)
    }
}
impl Eq for Ring {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_pow(p: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(p)?;
        if acc > MAX_MODULUS {
            return None;
        }
    }
    Some(acc)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    if a <= 0 {
        0
    } else {
        (a + b - 1) / b
    }
}

#[inline]
fn reduce_mod(x: i128, m: u64) -> i64 {
    let m = m as i128;
    let r = x % m;
    (if r < 0 { r + m } else { r }) as i64
}

/// Validates an Eisenstein ring description and builds the ring at precision `k`.
///
/// For `e = 1` the polynomial list must be empty and `π = p`. For `e > 1` the
/// list is `c_0, …, c_{e-1}`; omitted trailing coefficients are zero.
pub fn make_ring(p: u64, e: usize, eisenstein: &[i64], k: u32) -> Result<Ring> {
    let mut padded = eisenstein.to_vec();
    if e > 1 && !padded.is_empty() && padded.len() < e {
        padded.resize(e, 0);
    }
    let eisenstein = &padded[..];
    if !is_prime(p) {
        return Err(Error::InvalidRing(format!("{p} is not prime")));
    }
    if e == 0 {
        return Err(Error::InvalidRing("ramification index must be at least 1".into()));
    }
    if k < 1 {
        return Err(Error::InvalidRing("precision k must be at least 1".into()));
    }
    if e == 1 {
        if !eisenstein.is_empty() {
            return Err(Error::InvalidRing(
                "an unramified ring takes an empty Eisenstein list".into(),
            ));
        }
    } else {
        if eisenstein.is_empty() || eisenstein.len() > e {
            return Err(Error::InvalidRing(format!(
                "expected 1 to {e} Eisenstein coefficients, got {}",
                eisenstein.len()
            )));
        }
        let pi = p as i64;
        if eisenstein.iter().any(|c| c % pi != 0) {
            return Err(Error::InvalidRing(
                "not Eisenstein: some coefficient is not divisible by p".into(),
            ));
        }
        if eisenstein[0] % (pi * pi) == 0 {
            return Err(Error::InvalidRing(
                "not Eisenstein: constant term divisible by p^2".into(),
            ));
        }
    }
    let top = ceil_div(k as i64, e as i64) as u32;
    let modulus = checked_pow(p, top).ok_or_else(|| {
        Error::InvalidRing(format!("precision {k} too large for p = {p}, e = {e}"))
    })?;
    let moduli = (0..e)
        .map(|i| checked_pow(p, ceil_div(k as i64 - i as i64, e as i64) as u32).unwrap())
        .collect();
    let reduction = eisenstein
        .iter()
        .map(|&c| reduce_mod(-(c as i128), modulus))
        .collect();
    let mut spec = RingSpec {
        p,
        e,
        eisenstein: eisenstein.to_vec(),
        k,
        moduli,
        modulus,
        reduction,
        p_over_pi: SmallVec::new(),
    };
    spec.p_over_pi = spec.compute_p_over_pi();
    Ok(Ring(Arc::new(spec)))
}

impl RingSpec {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn e(&self) -> usize {
        self.e
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn eisenstein(&self) -> &[i64] {
        &self.eisenstein
    }
    pub fn is_unramified(&self) -> bool {
        self.e == 1
    }

    pub(crate) fn canon(&self, raw: &mut Coeffs) {
        for (c, &m) in raw.iter_mut().zip(&self.moduli) {
            *c = reduce_mod(*c as i128, m);
        }
    }

    pub(crate) fn zero_raw(&self) -> Coeffs {
        SmallVec::from_elem(0, self.e)
    }

    pub(crate) fn int_raw(&self, n: i64) -> Coeffs {
        let mut c = self.zero_raw();
        c[0] = n;
        self.canon(&mut c);
        c
    }

    pub(crate) fn pi_raw(&self) -> Coeffs {
        if self.e == 1 {
            self.int_raw(self.p as i64)
        } else {
            let mut c = self.zero_raw();
            c[1] = 1;
            self.canon(&mut c);
            c
        }
    }

    pub(crate) fn is_zero_raw(a: &[i64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub(crate) fn add_raw(&self, a: &[i64], b: &[i64]) -> Coeffs {
        let mut out: Coeffs = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.canon(&mut out);
        out
    }

    pub(crate) fn sub_raw(&self, a: &[i64], b: &[i64]) -> Coeffs {
        let mut out: Coeffs = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.canon(&mut out);
        out
    }

    pub(crate) fn neg_raw(&self, a: &[i64]) -> Coeffs {
        let mut out: Coeffs = a.iter().map(|x| -x).collect();
        self.canon(&mut out);
        out
    }

    pub(crate) fn mul_raw(&self, a: &[i64], b: &[i64]) -> Coeffs {
        let m = self.modulus;
        if self.e == 1 {
            let mut out = Coeffs::new();
            out.push(reduce_mod(a[0] as i128 * b[0] as i128, self.moduli[0]));
            return out;
        }
        let e = self.e;
        let mut prod = [0i64; 8];
        let mut big: Vec<i64>;
        let prod: &mut [i64] = if 2 * e - 1 <= 8 {
            &mut prod[..2 * e - 1]
        } else {
            big = vec![0; 2 * e - 1];
            &mut big
        };
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = reduce_mod(prod[i + j] as i128 + x as i128 * y as i128, m);
            }
        }
        for d in (e..2 * e - 1).rev() {
            let t = prod[d];
            if t == 0 {
                continue;
            }
            prod[d] = 0;
            for (j, &r) in self.reduction.iter().enumerate() {
                let idx = d - e + j;
                prod[idx] = reduce_mod(prod[idx] as i128 + t as i128 * r as i128, m);
            }
        }
        let mut out: Coeffs = prod[..e].iter().copied().collect();
        self.canon(&mut out);
        out
    }

    /// Valuation of a canonical coefficient vector, `None` for zero at precision.
    pub(crate) fn valuation_raw(&self, a: &[i64]) -> Option<u32> {
        let p = self.p as i64;
        a.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let mut c = c;
                let mut v = 0u32;
                while c % p == 0 {
                    c /= p;
                    v += 1;
                }
                v * self.e as u32 + i as u32
            })
            .min()
    }

    fn compute_p_over_pi(&self) -> Coeffs {
        if self.e == 1 {
            return self.int_raw(1);
        }
        // p·w = -π^e with w = Σ (c_j / p) π^j a unit, so p/π = -π^{e-1} w^{-1}.
        let p = self.p as i64;
        let mut w = self.zero_raw();
        for (j, &c) in self.eisenstein.iter().enumerate() {
            w[j] = c / p;
        }
        self.canon(&mut w);
        let w_inv = self
            .inverse_raw(&w)
            .expect("Eisenstein constant term makes w a unit");
        let mut pi_pow = self.int_raw(1);
        for _ in 0..self.e - 1 {
            pi_pow = self.mul_raw(&pi_pow, &self.pi_raw());
        }
        self.neg_raw(&self.mul_raw(&pi_pow, &w_inv))
    }

    /// Inverse of a unit by Newton iteration `y ← y(2 - xy)`.
    pub(crate) fn inverse_raw(&self, x: &[i64]) -> Option<Coeffs> {
        let p = self.p as i64;
        let x0 = x[0].rem_euclid(p);
        if x0 == 0 {
            return None;
        }
        let mut y = self.int_raw(mod_inverse(x0, p));
        let one = self.int_raw(1);
        let two = self.int_raw(2);
        for _ in 0..64 {
            let xy = self.mul_raw(x, &y);
            if xy == one {
                return Some(y);
            }
            y = self.mul_raw(&y, &self.sub_raw(&two, &xy));
        }
        None
    }

    /// Exact division by `π`; the input must have positive valuation (or be zero).
    /// The result is determined modulo `π^{k-1}`; its top digit is chosen canonically.
    pub(crate) fn div_pi_raw(&self, a: &[i64]) -> Coeffs {
        let p = self.p as i64;
        debug_assert!(a[0] % p == 0, "div_pi on a unit");
        if self.e == 1 {
            let mut out = self.zero_raw();
            out[0] = a[0] / p;
            self.canon(&mut out);
            return out;
        }
        let mut shifted = self.zero_raw();
        for i in 1..self.e {
            shifted[i - 1] = a[i];
        }
        self.canon(&mut shifted);
        let low = self.mul_raw(&self.int_raw(a[0] / p), &self.p_over_pi);
        self.add_raw(&shifted, &low)
    }

    pub(crate) fn div_pi_pow_raw(&self, a: &[i64], d: u32) -> Coeffs {
        let mut out: Coeffs = a.iter().copied().collect();
        for _ in 0..d {
            out = self.div_pi_raw(&out);
        }
        out
    }

    pub(crate) fn pi_pow_raw(&self, d: u32) -> Coeffs {
        let mut out = self.int_raw(1);
        let pi = self.pi_raw();
        for _ in 0..d {
            out = self.mul_raw(&out, &pi);
        }
        out
    }

    /// Uniformly random element of `R / π^k R`.
    pub(crate) fn random_raw<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> Coeffs {
        self.moduli.iter().map(|&m| rng.gen_range(0..m) as i64).collect()
    }

    /// Uniformly random unit.
    pub(crate) fn random_unit_raw<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> Coeffs {
        let p = self.p as i64;
        let mut c = self.random_raw(rng);
        c[0] = (c[0] / p) * p + rng.gen_range(1..p);
        self.canon(&mut c);
        c
    }

    /// Symmetric representatives of the canonical coefficients.
    pub(crate) fn balanced_raw(&self, a: &[i64]) -> Vec<i64> {
        a.iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| {
                let m = m as i64;
                if c > m / 2 {
                    c - m
                } else {
                    c
                }
            })
            .collect()
    }
}

impl Ring {
    /// The same ring at another working precision.
    pub fn with_precision(&self, k: u32) -> Result<Ring> {
        if k == self.k {
            return Ok(self.clone());
        }
        make_ring(self.p, self.e, &self.eisenstein, k)
    }

    pub fn zero(&self) -> RingElem {
        RingElem { ring: self.clone(), c: self.zero_raw() }
    }

    pub fn one(&self) -> RingElem {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> RingElem {
        RingElem { ring: self.clone(), c: self.int_raw(n) }
    }

    /// The uniformizer.
    pub fn pi(&self) -> RingElem {
        RingElem { ring: self.clone(), c: self.pi_raw() }
    }

    pub fn pi_pow(&self, d: u32) -> RingElem {
        RingElem { ring: self.clone(), c: self.pi_pow_raw(d) }
    }

    /// Element `Σ coeffs[i] π^i`; missing coefficients are zero.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<RingElem> {
        if coeffs.len() > self.e {
            return Err(Error::Parse(format!(
                "ring element has {} coefficients, ring has e = {}",
                coeffs.len(),
                self.e
            )));
        }
        let mut c = self.zero_raw();
        for (dst, &src) in c.iter_mut().zip(coeffs) {
            *dst = src;
        }
        self.canon(&mut c);
        Ok(RingElem { ring: self.clone(), c })
    }

    pub(crate) fn wrap(&self, c: Coeffs) -> RingElem {
        RingElem { ring: self.clone(), c }
    }

    pub fn random<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> RingElem {
        self.wrap(self.random_raw(rng))
    }

    pub fn random_unit<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> RingElem {
        self.wrap(self.random_unit_raw(rng))
    }

    /// Section of the residue map: the integer representative of `t`.
    pub fn lift_residue(&self, t: ResidueElem) -> RingElem {
        self.int(t.value as i64)
    }
}

/// Element of `R / π^k R`, always in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElem {
    ring: Ring,
    c: Coeffs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl RingElem {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Canonical coefficients.
    pub fn coeffs(&self) -> &[i64] {
        &self.c
    }

    pub(crate) fn raw(&self) -> &Coeffs {
        &self.c
    }

    /// Coefficients with symmetric representatives (`-1` rather than `p^m - 1`).
    pub fn balanced_coeffs(&self) -> Vec<i64> {
        self.ring.balanced_raw(&self.c)
    }

    pub fn is_zero(&self) -> bool {
        RingSpec::is_zero_raw(&self.c)
    }

    /// Largest `v < k` with `self ∈ π^v R`, or `None` when zero at precision.
    pub fn valuation(&self) -> Option<u32> {
        self.ring.valuation_raw(&self.c)
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    pub fn arith(&self, other: &RingElem, op: ArithOp) -> Result<RingElem> {
        if op != ArithOp::Neg && self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let r = &self.ring;
        let c = match op {
            ArithOp::Add => r.add_raw(&self.c, &other.c),
            ArithOp::Sub => r.sub_raw(&self.c, &other.c),
            ArithOp::Mul => r.mul_raw(&self.c, &other.c),
            ArithOp::Neg => r.neg_raw(&self.c),
        };
        Ok(r.wrap(c))
    }

    pub fn unit_inverse(&self) -> Result<RingElem> {
        match self.valuation() {
            Some(0) => {}
            v => return Err(Error::NotAUnit { valuation: v }),
        }
        let inv = self.ring.inverse_raw(&self.c).ok_or(Error::NotAUnit { valuation: Some(0) })?;
        Ok(self.ring.wrap(inv))
    }

    /// Image in the residue field `R/πR = F_p`.
    pub fn reduce_residue(&self) -> ResidueElem {
        let p = self.ring.p;
        ResidueElem { value: (self.c[0] as u64) % p, p }
    }

    pub fn pow(&self, mut exp: u64) -> RingElem {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.balanced_coeffs();
        if b.len() == 1 {
            return write!(f, "{}", b[0]);
        }
        let terms: Vec<String> = b
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}π"),
                _ => format!("{c}π^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

// Operator sugar. Mixing rings is a programming error here; use `arith` for the
// checked form.
macro_rules! binop {
    ($tr:ident, $m:ident, $raw:ident) => {
        impl $tr<&RingElem> for &RingElem {
            type Output = RingElem;
            fn $m(self, rhs: &RingElem) -> RingElem {
                assert!(self.ring == rhs.ring, "ring mismatch");
                self.ring.wrap(self.ring.$raw(&self.c, &rhs.c))
            }
        }
        impl $tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $m(self, rhs: RingElem) -> RingElem {
                (&self).$m(&rhs)
            }
        }
    };
}
binop!(Add, add, add_raw);
binop!(Sub, sub, sub_raw);
binop!(Mul, mul, mul_raw);

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.ring.wrap(self.ring.neg_raw(&self.c))
    }
}
impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

/// Element of the residue field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueElem {
    pub value: u64,
    pub p: u64,
}

impl ResidueElem {
    pub fn new(value: i64, p: u64) -> Self {
        ResidueElem { value: value.rem_euclid(p as i64) as u64, p }
    }
}

pub(crate) fn mod_inverse(a: i64, m: i64) -> i64 {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m)
}
