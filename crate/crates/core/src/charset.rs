//! Tame Dirichlet characters with values in `Z_p`: quadratic characters
//! `chi_D` given by the Kronecker symbol for a fundamental discriminant `D`,
//! Teichmüller powers `omega^j` at the working prime, and their products
//! `psi = chi_D * omega^j`. Restricting to this family keeps every value a
//! root of unity inside `Z_p`, so no cyclotomic extension arithmetic is
//! needed anywhere downstream.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::padic::{self, PadicNumber};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharError {
    #[error("{0} is not a fundamental discriminant (or 1)")]
    NotFundamental(i64),
    #[error("discriminant {0} shares a factor with p = {1}")]
    DiscriminantAtP(i64, u64),
    #[error("exponent {j} out of range mod p - 1 = {m}")]
    ExponentRange { j: u32, m: u32 },
    #[error("cannot parse character `{0}`; expected triv, kron:D, teich:j or kron:D*teich:j")]
    Parse(String),
}

/// Kronecker symbol `(a | n)`, extended Jacobi symbol over all integers.
pub fn kronecker_symbol(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let mut e2 = 0u32;
    while n % 2 == 0 {
        n /= 2;
        e2 += 1;
    }
    if e2 % 2 == 1 {
        // (a | 2): 0 for even a, +1 for a = +-1 mod 8, -1 for a = +-3 mod 8.
        match a.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return 0,
        }
    }
    // Jacobi symbol (a | n) for odd n > 0.
    a = a.rem_euclid(n);
    while a != 0 {
        let mut e = 0u32;
        while a % 2 == 0 {
            a /= 2;
            e += 1;
        }
        if e % 2 == 1 {
            match n % 8 {
                3 | 5 => result = -result,
                _ => {}
            }
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

fn is_squarefree(m: i64) -> bool {
    let mut m = m.unsigned_abs();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return false;
            }
        }
        d += 1;
    }
    true
}

/// Fundamental discriminant test; 1 denotes the trivial quadratic part.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    if d == 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
        }
        _ => false,
    }
}

/// `psi = chi_D * omega^j` at the working prime `p`, of conductor
/// `|D| * p^k` with `k = 0` or `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirichletCharacter {
    d: i64,
    j: u32,
    p: u64,
}

impl DirichletCharacter {
    pub fn new(d: i64, j: u32, p: u64) -> Result<Self, CharError> {
        if !is_fundamental_discriminant(d) {
            return Err(CharError::NotFundamental(d));
        }
        if d.unsigned_abs() % p == 0 {
            return Err(CharError::DiscriminantAtP(d, p));
        }
        let m = (p - 1) as u32;
        if j >= m {
            return Err(CharError::ExponentRange { j, m });
        }
        Ok(DirichletCharacter { d, j, p })
    }

    pub fn trivial(p: u64) -> Self {
        DirichletCharacter { d: 1, j: 0, p }
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    pub fn teich_exponent(&self) -> u32 {
        self.j
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_trivial(&self) -> bool {
        self.d == 1 && self.j == 0
    }

    /// Conductor `|D| * p^k`, `k = 1` exactly when the Teichmüller part is
    /// nontrivial.
    pub fn conductor(&self) -> u64 {
        self.d.unsigned_abs() * if self.j != 0 { self.p } else { 1 }
    }

    /// The prime-to-p part `M` of the conductor.
    pub fn conductor_prime_to_p(&self) -> u64 {
        self.d.unsigned_abs()
    }

    /// `psi(-1)`.
    pub fn sign(&self) -> i32 {
        let s_kron = if self.d < 0 { -1 } else { 1 };
        let s_teich = if self.j % 2 == 1 { -1 } else { 1 };
        s_kron * s_teich
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    /// The inverse (complex conjugate) character.
    pub fn bar(&self) -> Self {
        let m = (self.p - 1) as u32;
        DirichletCharacter { d: self.d, j: (m - self.j % m) % m, p: self.p }
    }

    pub fn is_real(&self) -> bool {
        *self == self.bar()
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        let quad: u64 = if self.d == 1 { 1 } else { 2 };
        let m = (self.p - 1) as u64;
        let teich = m / m.gcd(&(self.j as u64));
        quad.lcm(&teich)
    }

    /// Product character; the quadratic parts multiply to the Kronecker
    /// character of the fundamental discriminant of `D1 * D2`.
    pub fn product(&self, other: &Self) -> Result<Self, CharError> {
        assert_eq!(self.p, other.p, "characters at different primes");
        let d = fundamental_part(self.d.checked_mul(other.d).expect("discriminant overflow"));
        let m = (self.p - 1) as u32;
        DirichletCharacter::new(d, (self.j + other.j) % m, self.p)
    }

    /// The quadratic-part value `chi_D(x)` as an integer in {-1, 0, 1}.
    pub fn kronecker_part(&self, x: &BigInt) -> i32 {
        if self.d == 1 {
            return 1;
        }
        let md = BigInt::from(self.d.unsigned_abs());
        let xr = x.mod_floor(&md).to_i64().expect("residue fits i64");
        kronecker_symbol(self.d, xr)
    }

    /// `psi(x)` as an element of `Z_p` with `prec` digits; exact zero when
    /// `gcd(x, conductor) > 1`.
    pub fn eval(&self, x: &BigInt, prec: u32) -> PadicNumber {
        match self.int_representative(x, prec) {
            None => PadicNumber::exact_zero(self.p),
            Some(r) => PadicNumber::from_integer(self.p, &r, prec as i64),
        }
    }

    /// An exact integer congruent to `psi(x)` mod `p^prec`, or `None` when
    /// `psi(x) = 0`. For quadratic/trivial characters this is exactly +-1.
    pub fn int_representative(&self, x: &BigInt, prec: u32) -> Option<BigInt> {
        let kron = self.kronecker_part(x);
        if kron == 0 {
            return None;
        }
        let mut value = BigInt::from(kron);
        if self.j != 0 {
            if x.mod_floor(&BigInt::from(self.p)).is_zero() {
                return None;
            }
            let w = padic::teichmuller(self.p, x, prec).expect("unit checked");
            let wj = w.pow_i64(self.j as i64).expect("positive power");
            value *= BigInt::from(wj.residue_mod(prec));
        }
        Some(value)
    }

    /// Text form: `triv`, `kron:D`, `teich:j`, `kron:D*teich:j`.
    pub fn to_text(&self) -> String {
        match (self.d, self.j) {
            (1, 0) => "triv".to_string(),
            (d, 0) => format!("kron:{d}"),
            (1, j) => format!("teich:{j}"),
            (d, j) => format!("kron:{d}*teich:{j}"),
        }
    }

    pub fn parse(text: &str, p: u64) -> Result<Self, CharError> {
        let text = text.trim();
        if text == "triv" || text.is_empty() {
            return Ok(Self::trivial(p));
        }
        let mut d = 1i64;
        let mut j = 0u32;
        for part in text.split('*') {
            if let Some(ds) = part.strip_prefix("kron:") {
                d = ds.parse().map_err(|_| CharError::Parse(text.into()))?;
            } else if let Some(js) = part.strip_prefix("teich:") {
                j = js.parse().map_err(|_| CharError::Parse(text.into()))?;
            } else {
                return Err(CharError::Parse(text.into()));
            }
        }
        DirichletCharacter::new(d, j, p)
    }
}

/// Fundamental discriminant attached to the squarefree core of `m`.
pub fn fundamental_part(m: i64) -> i64 {
    assert!(m != 0);
    let mut core = m.signum();
    let mut rest = m.unsigned_abs();
    let mut d = 2u64;
    while d * d <= rest {
        let mut e = 0u32;
        while rest % d == 0 {
            rest /= d;
            e += 1;
        }
        if e % 2 == 1 {
            core *= d as i64;
        }
        d += 1;
    }
    core *= rest as i64;
    if core == 1 {
        return 1;
    }
    if core.rem_euclid(4) == 1 {
        core
    } else {
        4 * core
    }
}

/// Fundamental discriminants (or 1 on the positive side) in increasing |D|
/// of the requested sign, skipping any sharing a factor with `avoid`.
pub fn fundamental_discriminants(positive: bool, avoid: u64, count: usize) -> Vec<i64> {
    let mut out = Vec::new();
    let mut m = 1i64;
    while out.len() < count && m < 100_000 {
        let d = if positive { m } else { -m };
        if is_fundamental_discriminant(d) && m.unsigned_abs().gcd(&avoid.max(1)) == 1 {
            out.push(d);
        }
        m += 1;
    }
    out
}
