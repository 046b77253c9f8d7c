//! Finite-precision arithmetic in `Z_p` and `Q_p` for odd `p`: Teichmüller
//! decomposition, p-adic log/exp, discrete log in `1 + pZ_p`, Hensel lifting
//! of the unit root of `X^2 - a_p X + p`, and p-adic binomial coefficients.
//!
//! # Precision model
//!
//! A value is either an exact zero, or carries a valuation lower bound `val`
//! together with `rel` known unit digits, so its absolute precision is
//! `val + rel`: the value is known modulo `p^(val + rel)`. A value with
//! `rel = 0` is an "approximate zero": all that is known is divisibility by
//! `p^val`. Arithmetic propagates worst-case precision loss.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactla::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PadicError {
    #[error("argument is not a p-adic unit")]
    NotAUnit,
    #[error("argument outside the domain of the map")]
    OutOfDomain,
    #[error("a_p is divisible by p (not ordinary)")]
    NotOrdinary,
    #[error("division by a value not certified nonzero")]
    UncertifiedDivisor,
    #[error("mixed primes in arithmetic: {0} vs {1}")]
    MixedPrimes(u64, u64),
}

pub(crate) fn p_pow(p: u64, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

fn vp_biguint(p: u64, x: &BigUint) -> u32 {
    assert!(!x.is_zero());
    let p = BigUint::from(p);
    let mut v = 0u32;
    let mut x = x.clone();
    loop {
        let (q, r) = x.div_rem(&p);
        if r.is_zero() {
            v += 1;
            x = q;
        } else {
            return v;
        }
    }
}

pub(crate) fn vp_bigint(p: u64, x: &BigInt) -> u32 {
    vp_biguint(p, x.magnitude())
}

/// Inverse of `a` modulo `m` (gcd(a, m) = 1).
pub(crate) fn inv_mod(a: &BigUint, m: &BigUint) -> BigUint {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(m.clone());
    let e = a.extended_gcd(&m);
    assert!(e.gcd.is_one(), "inv_mod of non-unit");
    let x = e.x.mod_floor(&m);
    x.to_biguint().unwrap()
}

/// An element of `Q_p` at finite precision.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicNumber {
    p: u64,
    exact_zero: bool,
    val: i64,
    unit: BigUint,
    rel: u32,
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact_zero {
            return write!(f, "0 (exact, p={})", self.p);
        }
        if self.rel == 0 {
            return write!(f, "O({}^{})", self.p, self.val);
        }
        let ds = self.unit_digits();
        let terms: Vec<String> = ds
            .iter()
            .enumerate()
            .filter(|(_, d)| **d != 0)
            .map(|(i, d)| match i as i64 + self.val {
                0 => format!("{d}"),
                1 => format!("{d}*{}", self.p),
                e => format!("{d}*{}^{e}", self.p),
            })
            .collect();
        write!(f, "{} + O({}^{})", terms.join(" + "), self.p, self.abs_prec_i64())
    }
}

impl PadicNumber {
    pub fn exact_zero(p: u64) -> Self {
        PadicNumber { p, exact_zero: true, val: 0, unit: BigUint::zero(), rel: 0 }
    }

    /// A value about which nothing is known except divisibility by `p^val`.
    pub fn approx_zero(p: u64, val: i64) -> Self {
        PadicNumber { p, exact_zero: false, val, unit: BigUint::zero(), rel: 0 }
    }

    /// Inject an exact integer, retaining `abs_prec` digits of absolute
    /// precision.
    pub fn from_integer(p: u64, n: &BigInt, abs_prec: i64) -> Self {
        if n.is_zero() {
            return Self::exact_zero(p);
        }
        let v = vp_bigint(p, n) as i64;
        if v >= abs_prec {
            return Self::approx_zero(p, abs_prec);
        }
        let rel = (abs_prec - v) as u32;
        let pv = p_pow(p, v as u32);
        let unit_all = n.magnitude() / &pv;
        let mut unit = unit_all % p_pow(p, rel);
        if n.is_negative() {
            unit = p_pow(p, rel) - unit;
        }
        PadicNumber { p, exact_zero: false, val: v, unit, rel }
    }

    /// Inject an exact rational, retaining `abs_prec` digits.
    pub fn from_rational(p: u64, q: &BigRational, abs_prec: i64) -> Self {
        if q.is_zero() {
            return Self::exact_zero(p);
        }
        let vn = vp_bigint(p, q.numer()) as i64;
        let vd = vp_bigint(p, q.denom()) as i64;
        let v = vn - vd;
        if v >= abs_prec {
            return Self::approx_zero(p, abs_prec);
        }
        let rel = (abs_prec - v) as u32;
        let m = p_pow(p, rel);
        let nu = (q.numer().magnitude() / p_pow(p, vn as u32)) % &m;
        let du = (q.denom().magnitude() / p_pow(p, vd as u32)) % &m;
        let mut unit = (nu * inv_mod(&du, &m)) % &m;
        if q.is_negative() {
            unit = &m - unit;
        }
        PadicNumber { p, exact_zero: false, val: v, unit, rel }
    }

    /// Build a unit from its residue with `rel` known digits.
    pub fn from_unit_residue(p: u64, residue: BigUint, rel: u32) -> Self {
        assert!(rel > 0);
        let m = p_pow(p, rel);
        let r = residue % &m;
        assert!(!(&r % p).is_zero(), "residue not a unit");
        PadicNumber { p, exact_zero: false, val: 0, unit: r, rel }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact_zero
    }

    /// Known nonzero at the stored precision.
    pub fn is_certified_nonzero(&self) -> bool {
        !self.exact_zero && self.rel > 0
    }

    /// Exact valuation, available only when certified nonzero.
    pub fn valuation(&self) -> Option<i64> {
        self.is_certified_nonzero().then_some(self.val)
    }

    /// Lower bound on the valuation; `None` means infinite (exact zero).
    pub fn val_lower_bound(&self) -> Option<i64> {
        (!self.exact_zero).then_some(self.val)
    }

    /// Absolute precision; `None` means exact (infinite precision).
    pub fn abs_prec(&self) -> Option<i64> {
        (!self.exact_zero).then_some(self.val + self.rel as i64)
    }

    fn abs_prec_i64(&self) -> i64 {
        self.val + self.rel as i64
    }

    /// Unit residue digits, lowest first, `rel` of them.
    pub fn unit_digits(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.rel as usize);
        let mut u = self.unit.clone();
        let p = BigUint::from(self.p);
        for _ in 0..self.rel {
            let (q, r) = u.div_rem(&p);
            out.push(r.to_u64().unwrap());
            u = q;
        }
        out
    }

    pub fn unit_residue(&self) -> &BigUint {
        &self.unit
    }

    pub fn rel_prec(&self) -> u32 {
        self.rel
    }

    /// The residue of the value modulo `p^k` for `k <= abs_prec`, as an
    /// integer in `[0, p^k)`; requires `val >= 0`.
    pub fn residue_mod(&self, k: u32) -> BigUint {
        if self.exact_zero {
            return BigUint::zero();
        }
        assert!(self.val >= 0, "negative valuation has no integer residue");
        assert!(k as i64 <= self.abs_prec_i64(), "requested residue beyond precision");
        (p_pow(self.p, self.val as u32) * &self.unit) % p_pow(self.p, k)
    }

    fn check_prime(&self, o: &Self) -> Result<(), PadicError> {
        if self.p != o.p {
            return Err(PadicError::MixedPrimes(self.p, o.p));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_prime(o).unwrap();
        if self.exact_zero {
            return o.clone();
        }
        if o.exact_zero {
            return self.clone();
        }
        let a = self.abs_prec_i64().min(o.abs_prec_i64());
        let v0 = self.val.min(o.val);
        let window = a - v0;
        if window <= 0 {
            return Self::approx_zero(self.p, a);
        }
        let m = p_pow(self.p, window as u32);
        let ra = (&self.unit * p_pow(self.p, (self.val - v0) as u32)) % &m;
        let rb = (&o.unit * p_pow(self.p, (o.val - v0) as u32)) % &m;
        let s = (ra + rb) % &m;
        Self::from_window(self.p, v0, s, window as u32)
    }

    fn from_window(p: u64, v0: i64, s: BigUint, window: u32) -> Self {
        if s.is_zero() {
            return Self::approx_zero(p, v0 + window as i64);
        }
        let t = vp_biguint(p, &s);
        debug_assert!(t < window);
        let unit = s / p_pow(p, t);
        PadicNumber { p, exact_zero: false, val: v0 + t as i64, unit, rel: window - t }
    }

    pub fn neg(&self) -> Self {
        if self.exact_zero || self.rel == 0 {
            return self.clone();
        }
        let m = p_pow(self.p, self.rel);
        PadicNumber { unit: &m - &self.unit, ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_prime(o).unwrap();
        if self.exact_zero || o.exact_zero {
            return Self::exact_zero(self.p);
        }
        let val = self.val + o.val;
        if self.rel == 0 || o.rel == 0 {
            return Self::approx_zero(self.p, val);
        }
        let rel = self.rel.min(o.rel);
        let m = p_pow(self.p, rel);
        let unit = (&self.unit * &o.unit) % &m;
        PadicNumber { p: self.p, exact_zero: false, val, unit, rel }
    }

    pub fn inv(&self) -> Result<Self, PadicError> {
        if !self.is_certified_nonzero() {
            return Err(PadicError::UncertifiedDivisor);
        }
        let m = p_pow(self.p, self.rel);
        Ok(PadicNumber {
            p: self.p,
            exact_zero: false,
            val: -self.val,
            unit: inv_mod(&self.unit, &m),
            rel: self.rel,
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self, PadicError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow_i64(&self, k: i64) -> Result<Self, PadicError> {
        if k == 0 {
            // Convention: x^0 = 1 at the value's relative precision.
            let rel = if self.rel > 0 { self.rel } else { 1 };
            return Ok(Self::from_unit_residue(self.p, BigUint::one(), rel));
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc: Option<Self> = None;
        for _ in 0..k.unsigned_abs() {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => a.mul(&base),
            });
        }
        Ok(acc.unwrap())
    }

    /// Reduce the claimed absolute precision to at most `a`.
    pub fn truncate_abs_prec(&self, a: i64) -> Self {
        if self.exact_zero {
            // An exact zero truncated to finite precision becomes a
            // certified zero at that precision.
            return Self::approx_zero(self.p, a);
        }
        if self.abs_prec_i64() <= a {
            return self.clone();
        }
        if self.val >= a {
            return Self::approx_zero(self.p, a);
        }
        let rel = (a - self.val) as u32;
        let unit = &self.unit % p_pow(self.p, rel);
        if unit.is_zero() {
            // Valuation information beyond the stored digits; re-canonicalize.
            return Self::from_window(self.p, self.val, unit, rel);
        }
        Self::from_window(self.p, self.val, unit, rel)
    }

    /// Valuation of the difference: the precision to which the two values
    /// agree. Returns `(prec, certified_distinct)`.
    pub fn agreement(&self, o: &Self) -> (i64, bool) {
        let d = self.sub(o);
        if d.is_certified_nonzero() {
            (d.val, true)
        } else {
            (d.abs_prec().unwrap_or(i64::MAX / 4), false)
        }
    }
}

/// Modular exponentiation `b^e mod m`.
pub(crate) fn pow_mod(b: &BigUint, e: &BigUint, m: &BigUint) -> BigUint {
    b.modpow(e, m)
}

/// Teichmüller representative: the unique `(p-1)`-st root of unity congruent
/// to `a` mod `p`, to `prec` digits.
pub fn teichmuller(p: u64, a: &BigInt, prec: u32) -> Result<PadicNumber, PadicError> {
    assert!(prec > 0);
    let m = p_pow(p, prec);
    let mut r = a.mod_floor(&BigInt::from(m.clone())).to_biguint().unwrap();
    if (&r % p).is_zero() {
        return Err(PadicError::NotAUnit);
    }
    // a^(p^k) stabilizes modulo p^(k+1); `prec` squaring rounds suffice.
    let pe = BigUint::from(p);
    for _ in 0..prec {
        r = pow_mod(&r, &pe, &m);
    }
    Ok(PadicNumber::from_unit_residue(p, r, prec))
}

/// One-unit part `<x> = x / omega(x)`.
pub fn angle_part(x: &PadicNumber) -> Result<PadicNumber, PadicError> {
    if x.valuation() != Some(0) {
        return Err(PadicError::NotAUnit);
    }
    let w = teichmuller(x.p, &BigInt::from(x.unit.clone()), x.rel)?;
    x.div(&w)
}

/// Residue-level p-adic logarithm: `x` must satisfy `x = 1 mod p`; returns
/// `log(x) mod p^a` as an integer in `[0, p^a)`.
pub(crate) fn log_residue(p: u64, x: &BigUint, a: u32) -> BigUint {
    let guard = 16u32;
    let work = p_pow(p, a + guard);
    let ma = p_pow(p, a);
    assert!(x % p == BigUint::one(), "log argument must be 1 mod p");
    let u = x - BigUint::one();
    let mut acc = BigInt::zero();
    let mut upow = BigUint::one();
    let kmax = a as u64 + 12;
    for k in 1..=kmax {
        upow = (upow * &u) % &work;
        if upow.is_zero() {
            break;
        }
        let e = {
            let mut e = 0u32;
            let mut kk = k;
            while kk % p == 0 {
                e += 1;
                kk /= p;
            }
            e
        };
        let kunit = {
            let mut kk = k;
            while kk % p == 0 {
                kk /= p;
            }
            BigUint::from(kk)
        };
        // term = u^k / k, valid modulo p^(a + guard - e).
        let t = (&upow / p_pow(p, e)) * inv_mod(&(&kunit % &ma), &ma) % &ma;
        if k % 2 == 1 {
            acc += BigInt::from(t);
        } else {
            acc -= BigInt::from(t);
        }
    }
    acc.mod_floor(&BigInt::from(ma)).to_biguint().unwrap()
}

/// Residue-level p-adic exponential: `x` must satisfy `x = 0 mod p`; returns
/// `exp(x) mod p^a`.
pub(crate) fn exp_residue(p: u64, x: &BigUint, a: u32) -> BigUint {
    // v(x^k / k!) >= k - (k-1)/(p-1) >= k/2 for odd p.
    let kmax = 2 * a as u64 + 8;
    let guard = (kmax / (p - 1) + 4) as u32;
    let work = p_pow(p, a + guard);
    let ma = p_pow(p, a);
    let x = x.mod_floor(&work);
    let mut acc = BigUint::one();
    let mut xpow = BigUint::one();
    let mut fact_v = 0u32; // v_p(k!)
    let mut fact_unit = BigUint::one(); // unit part of k! mod work
    for k in 1..=kmax {
        xpow = (xpow * &x) % &work;
        let mut kk = k;
        while kk % p == 0 {
            fact_v += 1;
            kk /= p;
        }
        fact_unit = (fact_unit * kk) % &work;
        if xpow.is_zero() && k as u32 > a {
            break;
        }
        let t = (&xpow / p_pow(p, fact_v)) * inv_mod(&(&fact_unit % &ma), &ma) % &ma;
        acc += t;
    }
    acc % &ma
}

/// p-adic logarithm on `1 + pZ_p`.
pub fn plog(x: &PadicNumber) -> Result<PadicNumber, PadicError> {
    if x.p == 2 {
        return Err(PadicError::OutOfDomain);
    }
    if !x.is_certified_nonzero() || x.val != 0 {
        return Err(PadicError::OutOfDomain);
    }
    if (&x.unit % x.p) != BigUint::one() {
        return Err(PadicError::OutOfDomain);
    }
    let a = x.rel;
    let r = log_residue(x.p, &x.unit, a);
    Ok(PadicNumber::from_integer(x.p, &BigInt::from(r), a as i64))
}

/// p-adic exponential on `pZ_p`.
pub fn pexp(x: &PadicNumber) -> Result<PadicNumber, PadicError> {
    if x.p == 2 {
        return Err(PadicError::OutOfDomain);
    }
    if x.exact_zero {
        // exp(0) = 1 exactly; report with one digit to keep the unit form.
        return Ok(PadicNumber::from_unit_residue(x.p, BigUint::one(), 1));
    }
    if x.val < 1 {
        return Err(PadicError::OutOfDomain);
    }
    let a = x.abs_prec_i64();
    debug_assert!(a >= 1);
    let residue = if x.rel == 0 {
        BigUint::zero()
    } else {
        (&x.unit * p_pow(x.p, x.val as u32)) % p_pow(x.p, a as u32)
    };
    let r = exp_residue(x.p, &residue, a as u32);
    Ok(PadicNumber::from_integer(x.p, &BigInt::from(r), a))
}

/// The fixed topological generator data: `kappa(gamma) = 1 + p` and its
/// p-adic logarithm. Every T-series in this crate is relative to this choice.
#[derive(Clone, Debug)]
pub struct CyclotomicGenerator {
    p: u64,
    kappa_gamma: PadicNumber,
    log_kappa_gamma: PadicNumber,
}

impl CyclotomicGenerator {
    pub fn new(p: u64, prec: u32) -> Self {
        assert!(p % 2 == 1 && p > 2, "p must be odd");
        let kg = PadicNumber::from_integer(p, &BigInt::from(p + 1), prec as i64);
        let lg = plog(&kg).expect("1+p is in the domain of log");
        debug_assert_eq!(lg.valuation(), Some(1));
        CyclotomicGenerator { p, kappa_gamma: kg, log_kappa_gamma: lg }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn kappa_gamma(&self) -> &PadicNumber {
        &self.kappa_gamma
    }

    pub fn log_kappa_gamma(&self) -> &PadicNumber {
        &self.log_kappa_gamma
    }
}

/// Exponent `c` with `(1+p)^c = <a> mod p^n`, `c` in `[0, p^(n-1))`.
pub fn one_unit_dlog(p: u64, a: &BigInt, n: u32) -> Result<u64, PadicError> {
    assert!(n >= 1);
    let m = p_pow(p, n);
    let r = a.mod_floor(&BigInt::from(m.clone())).to_biguint().unwrap();
    if (&r % p).is_zero() {
        return Err(PadicError::NotAUnit);
    }
    if n == 1 {
        return Ok(0);
    }
    // <a> mod p^n
    let w = {
        let mut t = r.clone();
        let pe = BigUint::from(p);
        for _ in 0..n {
            t = pow_mod(&t, &pe, &m);
        }
        t
    };
    let angle = (r * inv_mod(&w, &m)) % &m;
    let la = log_residue(p, &angle, n);
    let lg = log_residue(p, &BigUint::from(p + 1), n);
    debug_assert_eq!(vp_biguint(p, &lg), 1);
    let mq = p_pow(p, n - 1);
    let c = if la.is_zero() {
        BigUint::zero()
    } else {
        ((la / p) * inv_mod(&((&lg / p) % &mq), &mq)) % &mq
    };
    Ok(c.to_u64().expect("exponent fits in u64"))
}

/// Hensel lift of the unit root of `X^2 - a_p X + p` (ordinary case).
pub fn hensel_unit_root(p: u64, a_p: i64, prec: u32) -> Result<PadicNumber, PadicError> {
    if a_p.rem_euclid(p as i64) == 0 {
        return Err(PadicError::NotOrdinary);
    }
    let target = p_pow(p, prec);
    let ap = BigInt::from(a_p);
    let mut x = ap.mod_floor(&BigInt::from(p));
    let mut k = 1u32;
    while k < prec {
        k = (2 * k).min(prec);
        let m = BigInt::from(p_pow(p, k));
        // Newton: x <- x - f(x)/f'(x), f(X) = X^2 - a_p X + p.
        let fx = (&x * &x - &ap * &x + BigInt::from(p)).mod_floor(&m);
        let dfx = (BigInt::from(2) * &x - &ap).mod_floor(&m);
        let dfx_u = dfx.to_biguint().unwrap();
        let inv = BigInt::from(inv_mod(&dfx_u, &m.to_biguint().unwrap()));
        x = (&x - fx * inv).mod_floor(&m);
    }
    let xr = x.mod_floor(&BigInt::from(target)).to_biguint().unwrap();
    Ok(PadicNumber::from_unit_residue(p, xr, prec))
}

/// p-adic binomial coefficient `C(e, k) = e (e-1) ... (e-k+1) / k!`.
pub fn padic_binomial(e: &PadicNumber, k: u64) -> PadicNumber {
    let p = e.p;
    if k == 0 {
        let rel = e.rel.max(1);
        return PadicNumber::from_unit_residue(p, BigUint::one(), rel);
    }
    let mut kfact = BigInt::one();
    for i in 1..=k {
        kfact *= BigInt::from(i);
    }
    let extra = vp_bigint(p, &kfact) as i64;
    let big = e.abs_prec().unwrap_or(64) + extra + 8;
    let mut num = PadicNumber::from_integer(p, &BigInt::one(), big);
    for i in 0..k {
        let f = e.sub(&PadicNumber::from_integer(p, &BigInt::from(i), big));
        num = num.mul(&f);
    }
    let den = PadicNumber::from_integer(p, &kfact, big);
    num.div(&den).expect("k! is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(p: u64, n: i64, prec: i64) -> PadicNumber {
        PadicNumber::from_integer(p, &BigInt::from(n), prec)
    }

    #[test]
    fn teichmuller_examples() {
        // omega(1) = 1
        let w = teichmuller(5, &BigInt::from(1), 3).unwrap();
        assert_eq!(w.residue_mod(3), BigUint::from(1u32));
        // omega(2) mod 25 = 7: brute-force oracle over x in [0,25).
        let mut oracle = None;
        for x in 0u64..25 {
            if x % 5 == 2 && x.pow(4) % 25 == 1 {
                oracle = Some(x);
            }
        }
        assert_eq!(oracle, Some(7));
        let w = teichmuller(5, &BigInt::from(2), 2).unwrap();
        assert_eq!(w.residue_mod(2), BigUint::from(7u32));
        // omega(7) mod 125 = 57 and 57^4 = 1 mod 125.
        let w = teichmuller(5, &BigInt::from(7), 3).unwrap();
        assert_eq!(w.residue_mod(3), BigUint::from(57u32));
        assert_eq!(57u64.pow(4) % 125, 1);
        // Not a unit.
        assert_eq!(teichmuller(5, &BigInt::from(10), 3), Err(PadicError::NotAUnit));
    }

    #[test]
    fn teichmuller_power_identity() {
        for a in [2i64, 3, 4, 6, 11, 13] {
            let w = teichmuller(7, &BigInt::from(a), 6).unwrap();
            let mut acc = w.clone();
            for _ in 1..6 {
                acc = acc.mul(&w);
            }
            // w^(p-1) = 1 to full precision
            assert_eq!(acc.residue_mod(6), BigUint::from(1u32), "a={a}");
        }
    }

    #[test]
    fn angle_part_examples() {
        // <6> at p=5: omega(6)=1, so <6>=6.
        let x = int(5, 6, 3);
        let a = angle_part(&x).unwrap();
        assert_eq!(a.residue_mod(3), BigUint::from(6u32));
        // <7> mod 25 = 1: 7 * inv(omega(7)=7) mod 25.
        let x = int(5, 7, 2);
        let a = angle_part(&x).unwrap();
        assert_eq!(a.residue_mod(2), BigUint::from(1u32));
        // <7> mod 125 = 101, and omega * angle = 7.
        let x = int(5, 7, 3);
        let a = angle_part(&x).unwrap();
        assert_eq!(a.residue_mod(3), BigUint::from(101u32));
        assert_eq!((57u64 * 101) % 125, 7);
    }

    #[test]
    fn omega_times_angle_is_identity() {
        for a in [2i64, 3, 7, 12, 19, 23] {
            let x = int(5, a, 6);
            let w = teichmuller(5, &BigInt::from(a), 6).unwrap();
            let ang = angle_part(&x).unwrap();
            let prod = w.mul(&ang);
            let (agree, distinct) = prod.agreement(&x);
            assert!(!distinct && agree >= 6, "a={a}");
        }
    }

    #[test]
    fn plog_examples() {
        // plog(1) = 0
        let r = plog(&int(5, 1, 3)).unwrap();
        assert!(!r.is_certified_nonzero());
        // plog(6) mod 125 = 55
        let r = plog(&int(5, 6, 3)).unwrap();
        assert_eq!(r.residue_mod(3), BigUint::from(55u32));
        // plog(36) = 2*plog(6) = 110 mod 125
        let r = plog(&int(5, 36, 3)).unwrap();
        assert_eq!(r.residue_mod(3), BigUint::from(110u32));
        // domain errors
        assert_eq!(plog(&int(5, 7, 3)), Err(PadicError::OutOfDomain));
    }

    #[test]
    fn pexp_examples() {
        // pexp(0) = 1
        let r = pexp(&PadicNumber::exact_zero(5)).unwrap();
        assert_eq!(r.residue_mod(1), BigUint::from(1u32));
        // pexp(plog(6)) = 6 mod 125
        let l = plog(&int(5, 6, 3)).unwrap();
        let r = pexp(&l).unwrap();
        assert_eq!(r.residue_mod(3), BigUint::from(6u32));
        // pexp(5) mod 125 = 81
        let r = pexp(&int(5, 5, 3)).unwrap();
        assert_eq!(r.residue_mod(3), BigUint::from(81u32));
        // domain error: valuation 0
        assert_eq!(pexp(&int(5, 2, 3)), Err(PadicError::OutOfDomain));
    }

    #[test]
    fn plog_pexp_round_trip() {
        for a in [6i64, 11, 21, 31, 116] {
            let x = int(5, a, 5);
            let y = pexp(&plog(&x).unwrap()).unwrap();
            let (agree, distinct) = y.agreement(&x);
            assert!(!distinct && agree >= 5, "a={a}");
        }
    }

    #[test]
    fn dlog_examples() {
        // kappa(gamma) = 6 at p=5: c(6) = 1 at level 3.
        assert_eq!(one_unit_dlog(5, &BigInt::from(6), 3).unwrap(), 1);
        // <7> = 1 mod 25: c = 0 at level 2.
        assert_eq!(one_unit_dlog(5, &BigInt::from(7), 2).unwrap(), 0);
        // c(1) = 0 at any level.
        assert_eq!(one_unit_dlog(5, &BigInt::from(1), 4).unwrap(), 0);
        assert_eq!(one_unit_dlog(5, &BigInt::from(10), 3), Err(PadicError::NotAUnit));
    }

    #[test]
    fn dlog_brute_force_oracle() {
        // (1+p)^c = <a> mod p^n, checked by explicit powering.
        let p = 5u64;
        let n = 4u32;
        let m = p_pow(p, n);
        for a in [2i64, 3, 7, 13, 77, 124] {
            let c = one_unit_dlog(p, &BigInt::from(a), n).unwrap();
            let kg = BigUint::from(p + 1);
            let lhs = pow_mod(&kg, &BigUint::from(c), &m);
            let x = int(p, a, n as i64);
            let ang = angle_part(&x).unwrap();
            assert_eq!(lhs, ang.residue_mod(n), "a={a}");
        }
    }

    #[test]
    fn dlog_is_homomorphism() {
        let p = 5u64;
        let n = 4u32;
        let md = 5u64.pow(n - 1);
        for (a, b) in [(2i64, 3i64), (7, 13), (77, 124), (6, 6)] {
            let ca = one_unit_dlog(p, &BigInt::from(a), n).unwrap();
            let cb = one_unit_dlog(p, &BigInt::from(b), n).unwrap();
            let cab = one_unit_dlog(p, &BigInt::from(a * b), n).unwrap();
            assert_eq!((ca + cb) % md, cab % md, "a={a} b={b}");
        }
    }

    #[test]
    fn hensel_examples() {
        // a_p = 1, p = 5: root = 21 mod 25.
        let r = hensel_unit_root(5, 1, 2).unwrap();
        assert_eq!(r.residue_mod(2), BigUint::from(21u32));
        let r1 = hensel_unit_root(5, 1, 1).unwrap();
        assert_eq!(r1.residue_mod(1), BigUint::from(1u32));
        assert_eq!(hensel_unit_root(5, 5, 3), Err(PadicError::NotOrdinary));
        // Root property at higher precision: x^2 - x + 5 = 0 mod 5^8.
        let r = hensel_unit_root(5, 1, 8).unwrap();
        let x = BigInt::from(r.residue_mod(8));
        let m = BigInt::from(p_pow(5, 8));
        assert!(((&x * &x - &x + BigInt::from(5)) % m).is_zero());
    }

    #[test]
    fn binomial_examples() {
        let e = int(5, -1, 6);
        let c0 = padic_binomial(&e, 0);
        assert_eq!(c0.residue_mod(1), BigUint::from(1u32));
        // C(-1, 2) = 1
        let c2 = padic_binomial(&e, 2);
        assert_eq!(c2.residue_mod(4), BigUint::from(1u32));
        // C(5, 2) = 10, valuation 1 at p=5.
        let c = padic_binomial(&int(5, 5, 6), 2);
        assert_eq!(c.valuation(), Some(1));
        assert_eq!(c.residue_mod(3), BigUint::from(10u32));
    }

    #[test]
    fn binomial_integrality() {
        // C(e, k) lies in Z_p for e in Z_p.
        for a in [3i64, 7, 26, 124, -9] {
            let e = int(5, a, 8);
            for k in 0..8u64 {
                let c = padic_binomial(&e, k);
                assert!(c.val_lower_bound().unwrap_or(0) >= 0, "a={a} k={k}");
            }
        }
    }

    #[test]
    fn arithmetic_precision_propagation() {
        let p = 7u64;
        let x = int(p, 7 * 7 * 3, 8); // val 2
        let y = int(p, -7 * 7 * 3, 8);
        let s = x.add(&y);
        assert!(!s.is_certified_nonzero());
        assert_eq!(s.abs_prec(), Some(8));
        let z = x.mul(&int(p, 2, 4));
        assert_eq!(z.valuation(), Some(2));
        // division by p^k costs k digits of absolute precision
        let q = x.div(&int(p, 7, 10)).unwrap();
        assert_eq!(q.valuation(), Some(1));
        let r = x.sub(&x);
        assert!(!r.is_certified_nonzero());
    }

    #[test]
    fn rational_injection() {
        let x = PadicNumber::from_rational(5, &BigRational::new(1.into(), 5.into()), 4);
        assert_eq!(x.valuation(), Some(-1));
        let y = x.mul(&int(5, 5, 10));
        assert_eq!(y.residue_mod(3), BigUint::from(1u32));
        let z = PadicNumber::from_rational(5, &BigRational::new((-2).into(), 3.into()), 3);
        // -2/3 = -2 * inv(3) mod 125: inv(3) = 42, -84 mod 125 = 41.
        assert_eq!(z.residue_mod(3), BigUint::from(41u32));
    }
}
