//! Arbitrary-precision real arithmetic.
//!
//! Thin wrapper around [`astro_float`] used by the period/L-value numerics.
//! Every value produced here is an exact dyadic rational internally, so a
//! [`Real`] can be converted losslessly to a [`BigRational`] at module
//! boundaries; error bounds are tracked explicitly by the callers, not here.

use std::cell::RefCell;
use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as NumSign};
use num_traits::{Signed, Zero};

use crate::exactla::BigRational;

const RM: RoundingMode = RoundingMode::ToEven;

/// A real number at a fixed working precision.
#[derive(Clone, Debug)]
pub struct Real(BigFloat);

/// Shared context: working precision in bits plus the constants cache.
pub struct RealCtx {
    bits: usize,
    cc: RefCell<Consts>,
}

impl RealCtx {
    /// Context with roughly `digits` decimal digits of working precision.
    pub fn with_decimal_digits(digits: u32) -> Self {
        // 1 decimal digit ~ 3.33 bits; add guard bits for rounding noise.
        let bits = (digits as usize) * 10 / 3 + 64;
        RealCtx {
            bits,
            cc: RefCell::new(Consts::new().expect("constants cache")),
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn zero(&self) -> Real {
        Real(BigFloat::from_i64(0, self.bits))
    }

    pub fn from_i64(&self, v: i64) -> Real {
        Real(BigFloat::from_i64(v, self.bits))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Real {
        let (sign, mag) = v.clone().into_parts();
        let digits = mag.to_u64_digits();
        if digits.is_empty() {
            return self.zero();
        }
        // astro-float mantissa words encode a fraction in [0, 1); the value
        // is fraction * 2^e, so an integer needs e = 64 * word count.
        let e = (64 * digits.len()) as astro_float::Exponent;
        let s = if sign == NumSign::Minus { Sign::Neg } else { Sign::Pos };
        Real(BigFloat::from_words(&digits, s, e))
    }

    pub fn from_rational(&self, v: &BigRational) -> Real {
        let num = self.from_bigint(v.numer());
        let den = self.from_bigint(v.denom());
        self.div(&num, &den)
    }

    pub fn pi(&self) -> Real {
        Real(self.cc.borrow_mut().pi(self.bits, RM))
    }

    pub fn add(&self, a: &Real, b: &Real) -> Real {
        Real(a.0.add(&b.0, self.bits, RM))
    }

    pub fn sub(&self, a: &Real, b: &Real) -> Real {
        Real(a.0.sub(&b.0, self.bits, RM))
    }

    pub fn mul(&self, a: &Real, b: &Real) -> Real {
        Real(a.0.mul(&b.0, self.bits, RM))
    }

    pub fn div(&self, a: &Real, b: &Real) -> Real {
        Real(a.0.div(&b.0, self.bits, RM))
    }

    pub fn neg(&self, a: &Real) -> Real {
        Real(a.0.neg())
    }

    pub fn abs(&self, a: &Real) -> Real {
        Real(a.0.abs())
    }

    /// Square root; `a` must be nonnegative.
    pub fn sqrt(&self, a: &Real) -> Real {
        assert!(!a.is_negative(), "sqrt of negative real");
        Real(a.0.sqrt(self.bits, RM))
    }

    pub fn exp(&self, a: &Real) -> Real {
        Real(a.0.exp(self.bits, RM, &mut self.cc.borrow_mut()))
    }

    pub fn ln(&self, a: &Real) -> Real {
        Real(a.0.ln(self.bits, RM, &mut self.cc.borrow_mut()))
    }

    pub fn cmp(&self, a: &Real, b: &Real) -> Ordering {
        match a.0.cmp(&b.0) {
            Some(v) if v < 0 => Ordering::Less,
            Some(v) if v > 0 => Ordering::Greater,
            Some(_) => Ordering::Equal,
            None => panic!("NaN in real comparison"),
        }
    }

    /// Arithmetic-geometric mean of two positive reals.
    pub fn agm(&self, a: &Real, b: &Real) -> Real {
        assert!(a.is_positive() && b.is_positive(), "agm needs positive arguments");
        let mut x = a.clone();
        let mut y = b.clone();
        let half = self.from_rational(&BigRational::new(1.into(), 2.into()));
        // Quadratic convergence: the iterate count is generous for any
        // plausible working precision.
        for _ in 0..(64 + self.bits.ilog2() as usize * 8) {
            let next_x = self.mul(&self.add(&x, &y), &half);
            let next_y = self.sqrt(&self.mul(&x, &y));
            let diff = self.abs(&self.sub(&next_x, &next_y));
            x = next_x;
            y = next_y;
            if diff.is_zero() || self.well_below(&diff, &x) {
                break;
            }
        }
        x
    }

    /// True when |d| < |x| * 2^(4 - bits), i.e. d is rounding noise.
    fn well_below(&self, d: &Real, x: &Real) -> bool {
        match (d.0.exponent(), x.0.exponent()) {
            (Some(ed), Some(ex)) => (ed as i64) < (ex as i64) + 4 - self.bits as i64,
            _ => d.is_zero(),
        }
    }

    /// Power of two, `2^k` for possibly negative `k`.
    pub fn pow2(&self, k: i64) -> Real {
        let one = BigRational::from_integer(1.into());
        let two = BigRational::from_integer(2.into());
        let mut r = one;
        for _ in 0..k.unsigned_abs() {
            r *= &two;
        }
        if k < 0 {
            r = r.recip();
        }
        self.from_rational(&r)
    }

    pub fn to_decimal_string(&self, a: &Real) -> String {
        a.0.format(Radix::Dec, RM, &mut self.cc.borrow_mut())
            .unwrap_or_else(|_| "<fmt error>".to_string())
    }
}

impl Real {
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative() && !self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive() && !self.0.is_zero()
    }

    /// Exact value as a rational; every `Real` is a dyadic rational.
    pub fn to_rational(&self) -> BigRational {
        if self.0.is_zero() {
            return BigRational::zero();
        }
        let words = self.0.mantissa_digits().expect("finite real");
        let nbits = self.0.mantissa_max_bit_len().expect("finite real") as i64;
        let e = self.0.exponent().expect("finite real") as i64;
        let mut mag = BigUint::zero();
        for (i, w) in words.iter().enumerate() {
            mag += BigUint::from(*w) << (64 * i);
        }
        let mut num = BigInt::from(mag);
        if self.0.is_negative() {
            num = -num;
        }
        // value = num * 2^(e - nbits)
        let shift = e - nbits;
        if shift >= 0 {
            BigRational::from_integer(num << shift as u64)
        } else {
            BigRational::new(num, BigInt::from(1) << (-shift) as u64)
        }
    }

    /// Crude f64 view for diagnostics only.
    pub fn approx_f64(&self) -> f64 {
        let r = self.to_rational();
        let num = r.numer();
        let den = r.denom();
        // Scale down to stay in f64 range.
        let nb = num.bits() as i64;
        let db = den.bits() as i64;
        let drop = (nb.max(db) - 500).max(0) as u64;
        let n2 = num >> drop;
        let d2 = den >> drop;
        let nf: f64 = n2.to_string().parse().unwrap_or(f64::NAN);
        let df: f64 = d2.to_string().parse().unwrap_or(f64::NAN);
        nf / df
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn rational_round_trip() {
        let ctx = RealCtx::with_decimal_digits(30);
        let q = BigRational::new(BigInt::from(-355), BigInt::from(113));
        let r = ctx.from_rational(&q);
        let back = r.to_rational();
        // 355/113 is not dyadic; round trip must agree to working precision.
        let diff = (&back - &q).abs();
        let tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(25));
        assert!(diff < tol, "diff {diff}");
    }

    #[test]
    fn exact_integer_round_trip() {
        let ctx = RealCtx::with_decimal_digits(30);
        let v = BigInt::from(123456789012345678i64);
        let r = ctx.from_bigint(&v);
        assert_eq!(r.to_rational(), BigRational::from_integer(v));
    }

    #[test]
    fn pi_digits() {
        let ctx = RealCtx::with_decimal_digits(40);
        let pi = ctx.pi();
        let s = ctx.to_decimal_string(&pi);
        assert!(s.starts_with("3.14159265358979323846"), "{s}");
    }

    #[test]
    fn agm_known_value() {
        // agm(1, sqrt(2)) = pi / (2 * Gauss constant integral); check against
        // the lemniscate relation agm(1, sqrt2) ~ 1.19814023473559220744.
        let ctx = RealCtx::with_decimal_digits(40);
        let one = ctx.from_i64(1);
        let s2 = ctx.sqrt(&ctx.from_i64(2));
        let m = ctx.agm(&one, &s2);
        let s = ctx.to_decimal_string(&m);
        assert!(s.starts_with("1.1981402347355922074"), "{s}");
    }

    #[test]
    fn exp_ln_round_trip() {
        let ctx = RealCtx::with_decimal_digits(40);
        let x = ctx.from_rational(&BigRational::new(7.into(), 3.into()));
        let y = ctx.ln(&ctx.exp(&x));
        let diff = (y.to_rational() - x.to_rational()).abs();
        let tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(35));
        assert!(diff < tol);
    }
}
