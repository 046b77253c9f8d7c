//! The quadratic extension `Q_p(alpha)` with `alpha^2 = a_p alpha - p`,
//! needed when `E` is supersingular at `p` (there `v_p(a_p) >= 1`, the
//! extension is ramified, and valuations live in half-integers). Valuations
//! and precisions are therefore reported in doubled units throughout:
//! `val2 = 2 * v_p`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::exactla::BigRational;
use crate::padic::{PadicError, PadicNumber};

/// `c + d * alpha` over `Q_p`, with `alpha^2 = a_p * alpha - p`.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicQuadExt {
    p: u64,
    a_p: i64,
    c: PadicNumber,
    d: PadicNumber,
}

impl fmt::Debug for PadicQuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*alpha", self.c, self.d)
    }
}

impl PadicQuadExt {
    pub fn new(p: u64, a_p: i64, c: PadicNumber, d: PadicNumber) -> Self {
        assert_eq!(c.prime(), p);
        assert_eq!(d.prime(), p);
        assert_eq!(a_p.rem_euclid(p as i64), 0, "quadratic extension is only used when p | a_p");
        PadicQuadExt { p, a_p, c, d }
    }

    pub fn from_base(p: u64, a_p: i64, c: PadicNumber) -> Self {
        let z = PadicNumber::exact_zero(p);
        Self::new(p, a_p, c, z)
    }

    /// The root `alpha` itself, with `prec` digits on the coefficient.
    pub fn alpha(p: u64, a_p: i64, prec: u32) -> Self {
        Self::new(
            p,
            a_p,
            PadicNumber::exact_zero(p),
            PadicNumber::from_integer(p, &BigInt::one(), prec as i64),
        )
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn a_p(&self) -> i64 {
        self.a_p
    }

    pub fn base_component(&self) -> &PadicNumber {
        &self.c
    }

    pub fn alpha_component(&self) -> &PadicNumber {
        &self.d
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.p, o.p, "mixed primes");
        assert_eq!(self.a_p, o.a_p, "mixed quadratic extensions");
    }

    /// Exact small-integer scalar at a relative precision that never limits
    /// arithmetic with the listed components.
    fn scalar_for(p: u64, n: i64, parts: &[&PadicNumber]) -> PadicNumber {
        let rel = parts.iter().map(|x| x.rel_prec()).max().unwrap_or(8).max(8) as i64;
        PadicNumber::from_integer(p, &BigInt::from(n), rel + 8)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        Self { p: self.p, a_p: self.a_p, c: self.c.add(&o.c), d: self.d.add(&o.d) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        Self { p: self.p, a_p: self.a_p, c: self.c.sub(&o.c), d: self.d.sub(&o.d) }
    }

    pub fn neg(&self) -> Self {
        Self { p: self.p, a_p: self.a_p, c: self.c.neg(), d: self.d.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let parts = [&self.c, &self.d, &o.c, &o.d];
        let p_el = Self::scalar_for(self.p, self.p as i64, &parts);
        let ap_el = Self::scalar_for(self.p, self.a_p, &parts);
        // (c1 + d1 a)(c2 + d2 a) = (c1 c2 - p d1 d2) + (c1 d2 + c2 d1 + a_p d1 d2) a
        let dd = self.d.mul(&o.d);
        let c = self.c.mul(&o.c).sub(&p_el.mul(&dd));
        let d = self.c.mul(&o.d).add(&o.c.mul(&self.d)).add(&ap_el.mul(&dd));
        Self { p: self.p, a_p: self.a_p, c, d }
    }

    pub fn mul_base(&self, s: &PadicNumber) -> Self {
        Self { p: self.p, a_p: self.a_p, c: self.c.mul(s), d: self.d.mul(s) }
    }

    /// Galois conjugate: `alpha -> a_p - alpha`.
    pub fn conj(&self) -> Self {
        let ap_el = Self::scalar_for(self.p, self.a_p, &[&self.c, &self.d]);
        Self {
            p: self.p,
            a_p: self.a_p,
            c: self.c.add(&self.d.mul(&ap_el)),
            d: self.d.neg(),
        }
    }

    /// Norm to `Q_p`: `c^2 + a_p c d + p d^2`.
    pub fn norm(&self) -> PadicNumber {
        let parts = [&self.c, &self.d];
        let p_el = Self::scalar_for(self.p, self.p as i64, &parts);
        let ap_el = Self::scalar_for(self.p, self.a_p, &parts);
        self.c
            .mul(&self.c)
            .add(&ap_el.mul(&self.c).mul(&self.d))
            .add(&p_el.mul(&self.d).mul(&self.d))
    }

    pub fn inv(&self) -> Result<Self, PadicError> {
        let n = self.norm();
        if !n.is_certified_nonzero() {
            return Err(PadicError::UncertifiedDivisor);
        }
        let ninv = n.inv()?;
        Ok(self.conj().mul_base(&ninv))
    }

    pub fn div(&self, o: &Self) -> Result<Self, PadicError> {
        Ok(self.mul(&o.inv()?))
    }

    /// Doubled valuation when certified nonzero: `min(2 v(c), 2 v(d) + 1)`.
    /// The two gradings are distinct mod 2, so no cancellation can occur.
    pub fn val2(&self) -> Option<i64> {
        let cert_c = self.c.valuation().map(|v| 2 * v);
        let cert_d = self.d.valuation().map(|v| 2 * v + 1);
        let unc_c = if self.c.is_certified_nonzero() {
            None
        } else {
            self.c.val_lower_bound().map(|v| 2 * v)
        };
        let unc_d = if self.d.is_certified_nonzero() {
            None
        } else {
            self.d.val_lower_bound().map(|v| 2 * v + 1)
        };
        let min_cert = match (cert_c, cert_d) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (None, None) => None,
        }?;
        // Uncertified components are only known above their lower bound; the
        // certified minimum stands when no bound could undercut it.
        for u in [unc_c, unc_d].into_iter().flatten() {
            if u < min_cert {
                return None;
            }
        }
        Some(min_cert)
    }

    /// Doubled lower bound on the valuation; `None` means exact zero.
    pub fn val2_lower(&self) -> Option<i64> {
        let bc = self.c.val_lower_bound().map(|v| 2 * v);
        let bd = self.d.val_lower_bound().map(|v| 2 * v + 1);
        match (bc, bd) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (None, None) => None,
        }
    }

    /// Doubled absolute precision; `None` means exact.
    pub fn prec2(&self) -> Option<i64> {
        let pc = self.c.abs_prec().map(|a| 2 * a);
        let pd = self.d.abs_prec().map(|a| 2 * a + 1);
        match (pc, pd) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (None, None) => None,
        }
    }

    pub fn is_certified_nonzero(&self) -> bool {
        self.val2().is_some()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.c.is_exact_zero() && self.d.is_exact_zero()
    }

    /// Cap the doubled absolute precision at `a2`.
    pub fn truncate_prec2(&self, a2: i64) -> Self {
        // Component c carries even places, d odd places.
        let ac = a2.div_euclid(2) + if a2.rem_euclid(2) == 1 { 1 } else { 0 }; // ceil(a2/2)
        let ad = (a2 - 1).div_euclid(2) + if (a2 - 1).rem_euclid(2) == 1 { 1 } else { 0 };
        Self {
            p: self.p,
            a_p: self.a_p,
            c: self.c.truncate_abs_prec(ac),
            d: self.d.truncate_abs_prec(ad),
        }
    }

    /// Agreement (doubled valuation of the difference) and whether the two
    /// values are certified distinct.
    pub fn agreement2(&self, o: &Self) -> (i64, bool) {
        let d = self.sub(o);
        match d.val2() {
            Some(v) => (v, true),
            None => (d.prec2().unwrap_or(i64::MAX / 4), false),
        }
    }

    pub fn from_rational_pair(
        p: u64,
        a_p: i64,
        x: &BigRational,
        y: &BigRational,
        abs_prec: i64,
    ) -> Self {
        Self::new(
            p,
            a_p,
            PadicNumber::from_rational(p, x, abs_prec),
            PadicNumber::from_rational(p, y, abs_prec),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha19(prec: u32) -> PadicQuadExt {
        PadicQuadExt::alpha(19, 0, prec)
    }

    #[test]
    fn alpha_satisfies_its_equation() {
        // alpha^2 = -19 when a_19 = 0.
        let a = alpha19(6);
        let sq = a.mul(&a);
        let minus_p = PadicQuadExt::from_base(
            19,
            0,
            PadicNumber::from_integer(19, &BigInt::from(-19), 7),
        );
        let (agree, distinct) = sq.agreement2(&minus_p);
        assert!(!distinct && agree >= 10, "agree={agree}");
    }

    #[test]
    fn trace_and_norm() {
        let a = alpha19(6);
        let abar = a.conj();
        // alpha + conj(alpha) = a_p = 0
        let tr = a.add(&abar);
        assert!(!tr.is_certified_nonzero());
        // alpha * conj(alpha) = p
        let nm = a.mul(&abar);
        let p_el = PadicQuadExt::from_base(19, 0, PadicNumber::from_integer(19, &BigInt::from(19), 7));
        let (_, distinct) = nm.agreement2(&p_el);
        assert!(!distinct);
        assert_eq!(a.norm().valuation(), Some(1));
    }

    #[test]
    fn half_integer_valuations() {
        let a = alpha19(6);
        assert_eq!(a.val2(), Some(1)); // v(alpha) = 1/2
        let inv = a.inv().unwrap();
        assert_eq!(inv.val2(), Some(-1));
        let prod = a.mul(&inv);
        let one = PadicQuadExt::from_base(19, 0, PadicNumber::from_integer(19, &BigInt::one(), 6));
        let (_, distinct) = prod.agreement2(&one);
        assert!(!distinct);
    }

    #[test]
    fn ramified_p3_case() {
        // p = 3 with a_3 = 3: alpha^2 = 3 alpha - 3, still v(alpha) = 1/2.
        let a = PadicQuadExt::alpha(3, 3, 8);
        assert_eq!(a.val2(), Some(1));
        let abar = a.conj();
        let sum = a.add(&abar);
        let three = PadicQuadExt::from_base(3, 3, PadicNumber::from_integer(3, &BigInt::from(3), 9));
        let (_, distinct) = sum.agreement2(&three);
        assert!(!distinct);
        let prod = a.mul(&abar);
        let (_, distinct) = prod.agreement2(&three);
        assert!(!distinct);
    }

    #[test]
    fn inverse_powers_track_valuation() {
        let a = alpha19(8);
        let mut x = PadicQuadExt::from_base(19, 0, PadicNumber::from_integer(19, &BigInt::one(), 8));
        let ainv = a.inv().unwrap();
        for k in 1..=5i64 {
            x = x.mul(&ainv);
            assert_eq!(x.val2(), Some(-k));
        }
    }
}
