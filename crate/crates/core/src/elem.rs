//! A p-adic value that is either in `Q_p` or in the quadratic extension
//! `Q_p(alpha)`. Series coefficients, measure values and checker arithmetic
//! all flow through this type so that the ordinary/multiplicative and
//! supersingular pipelines share one code path. Mixed arithmetic promotes
//! the base side into the extension.
//!
//! Valuations and precisions are in doubled ("half-digit") units so that
//! ramified half-integer valuations stay integral: `val2 = 2 * v_p`.

use serde_json::{json, Value as Json};

use crate::exactla::BigRational;
use crate::padic::{PadicError, PadicNumber};
use crate::quadext::PadicQuadExt;

#[derive(Clone, Debug, PartialEq)]
pub enum PadicElem {
    Base(PadicNumber),
    Ext(PadicQuadExt),
}

impl From<PadicNumber> for PadicElem {
    fn from(x: PadicNumber) -> Self {
        PadicElem::Base(x)
    }
}

impl From<PadicQuadExt> for PadicElem {
    fn from(x: PadicQuadExt) -> Self {
        PadicElem::Ext(x)
    }
}

impl PadicElem {
    pub fn prime(&self) -> u64 {
        match self {
            PadicElem::Base(x) => x.prime(),
            PadicElem::Ext(x) => x.prime(),
        }
    }

    pub fn exact_zero(p: u64) -> Self {
        PadicElem::Base(PadicNumber::exact_zero(p))
    }

    pub fn from_rational(p: u64, q: &BigRational, abs_prec: i64) -> Self {
        PadicElem::Base(PadicNumber::from_rational(p, q, abs_prec))
    }

    fn promote(&self, like: &PadicQuadExt) -> PadicQuadExt {
        match self {
            PadicElem::Base(x) => PadicQuadExt::from_base(like.prime(), like.a_p(), x.clone()),
            PadicElem::Ext(x) => x.clone(),
        }
    }

    fn binop(
        &self,
        o: &Self,
        fb: impl Fn(&PadicNumber, &PadicNumber) -> PadicNumber,
        fe: impl Fn(&PadicQuadExt, &PadicQuadExt) -> PadicQuadExt,
    ) -> Self {
        match (self, o) {
            (PadicElem::Base(a), PadicElem::Base(b)) => PadicElem::Base(fb(a, b)),
            (PadicElem::Ext(a), _) => PadicElem::Ext(fe(a, &o.promote(a))),
            (_, PadicElem::Ext(b)) => PadicElem::Ext(fe(&self.promote(b), b)),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.binop(o, PadicNumber::add, PadicQuadExt::add)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.binop(o, PadicNumber::sub, PadicQuadExt::sub)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.binop(o, PadicNumber::mul, PadicQuadExt::mul)
    }

    pub fn neg(&self) -> Self {
        match self {
            PadicElem::Base(x) => PadicElem::Base(x.neg()),
            PadicElem::Ext(x) => PadicElem::Ext(x.neg()),
        }
    }

    pub fn inv(&self) -> Result<Self, PadicError> {
        Ok(match self {
            PadicElem::Base(x) => PadicElem::Base(x.inv()?),
            PadicElem::Ext(x) => PadicElem::Ext(x.inv()?),
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self, PadicError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow_i64(&self, k: i64) -> Result<Self, PadicError> {
        if k == 0 {
            return Ok(PadicElem::Base(PadicNumber::from_integer(
                self.prime(),
                &1.into(),
                8,
            )));
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = base.clone();
        for _ in 1..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Doubled valuation, certified only.
    pub fn val2(&self) -> Option<i64> {
        match self {
            PadicElem::Base(x) => x.valuation().map(|v| 2 * v),
            PadicElem::Ext(x) => x.val2(),
        }
    }

    /// Doubled valuation lower bound; `None` = exact zero.
    pub fn val2_lower(&self) -> Option<i64> {
        match self {
            PadicElem::Base(x) => x.val_lower_bound().map(|v| 2 * v),
            PadicElem::Ext(x) => x.val2_lower(),
        }
    }

    /// Doubled absolute precision; `None` = exact.
    pub fn prec2(&self) -> Option<i64> {
        match self {
            PadicElem::Base(x) => x.abs_prec().map(|a| 2 * a),
            PadicElem::Ext(x) => x.prec2(),
        }
    }

    pub fn is_certified_nonzero(&self) -> bool {
        self.val2().is_some()
    }

    pub fn is_exact_zero(&self) -> bool {
        match self {
            PadicElem::Base(x) => x.is_exact_zero(),
            PadicElem::Ext(x) => x.is_exact_zero(),
        }
    }

    /// Certified zero at doubled precision `a2` (or exactly zero).
    pub fn is_certified_zero_to(&self, a2: i64) -> bool {
        !self.is_certified_nonzero() && self.prec2().map_or(true, |p| p >= a2)
    }

    pub fn truncate_prec2(&self, a2: i64) -> Self {
        match self {
            PadicElem::Base(x) => {
                PadicElem::Base(x.truncate_abs_prec(a2.div_euclid(2)))
            }
            PadicElem::Ext(x) => PadicElem::Ext(x.truncate_prec2(a2)),
        }
    }

    /// `(agreement2, certified_distinct)`: doubled valuation of the
    /// difference, and whether the difference is certified nonzero.
    pub fn agreement2(&self, o: &Self) -> (i64, bool) {
        let d = self.sub(o);
        match d.val2() {
            Some(v) => (v, true),
            None => (d.prec2().unwrap_or(i64::MAX / 4), false),
        }
    }

    /// JSON form: digits lowest first, plus valuation and precision. For
    /// extension elements, both components with doubled precision metadata.
    pub fn to_json(&self) -> Json {
        match self {
            PadicElem::Base(x) => padic_to_json(x),
            PadicElem::Ext(x) => json!({
                "kind": "quad_ext",
                "a_p": x.a_p(),
                "c": padic_to_json(x.base_component()),
                "d": padic_to_json(x.alpha_component()),
                "prec2": x.prec2(),
            }),
        }
    }
}

fn padic_to_json(x: &PadicNumber) -> Json {
    if x.is_exact_zero() {
        return json!({ "kind": "zero" });
    }
    if !x.is_certified_nonzero() {
        return json!({ "kind": "approx_zero", "prec": x.abs_prec() });
    }
    json!({
        "kind": "value",
        "val": x.valuation(),
        "digits": x.unit_digits(),
        "prec": x.abs_prec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn mixed_arithmetic_promotes() {
        let a = PadicElem::Ext(PadicQuadExt::alpha(19, 0, 6));
        let two = PadicElem::Base(PadicNumber::from_integer(19, &BigInt::from(2), 6));
        let s = a.add(&two);
        assert!(matches!(s, PadicElem::Ext(_)));
        assert_eq!(s.val2(), Some(0));
        let p = a.mul(&a); // -19
        assert_eq!(p.val2(), Some(2));
    }

    #[test]
    fn base_valuation_doubled() {
        let x = PadicElem::Base(PadicNumber::from_integer(5, &BigInt::from(50), 8));
        assert_eq!(x.val2(), Some(4));
        assert_eq!(x.prec2(), Some(16));
    }

    #[test]
    fn truncation_caps_precision() {
        let x = PadicElem::Base(PadicNumber::from_integer(5, &BigInt::from(7), 8));
        let t = x.truncate_prec2(6);
        assert_eq!(t.prec2(), Some(6));
        let (agree, distinct) = t.agreement2(&x);
        assert!(!distinct && agree >= 6);
    }
}
