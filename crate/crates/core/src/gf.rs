//! Arithmetic in `GF(p)[w] / (w^2 + 1)` and square roots of -1 mod p.
//!
//! Elements are pairs `a + b*w` with `w^2 = -1`, stored canonically. When
//! `p = 3 (mod 4)` the quotient is the field `GF(p^2)`; when `p = 1 (mod 4)`
//! it splits, but the elements this crate cares about then live in the
//! embedded copy of `GF(p)` (with `b = 0`) after substituting a concrete
//! root of -1, so one arithmetic path serves both cases.

use crate::error::{Error, Result};
use crate::modular::{is_prime, mul_mod, pow_mod};

/// An element `a + b*w` of `GF(p)[w] / (w^2 + 1)` for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gf2Element {
    p: u64,
    a: u64,
    b: u64,
}

impl Gf2Element {
    /// Build an element, canonicalising signed parts. `p` must be an odd
    /// prime.
    pub fn new(a: i64, b: i64, p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not an odd prime")));
        }
        Ok(Self {
            p,
            a: a.rem_euclid(p as i64) as u64,
            b: b.rem_euclid(p as i64) as u64,
        })
    }

    /// The embedded base-field element `a + 0*w`.
    pub fn from_base(a: i64, p: u64) -> Result<Self> {
        Self::new(a, 0, p)
    }

    pub fn one(p: u64) -> Result<Self> {
        Self::new(1, 0, p)
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_one(&self) -> bool {
        self.a == 1 && self.b == 0
    }

    /// `(a + bw)(c + dw) = (ac - bd) + (ad + bc) w`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.p != rhs.p {
            return Err(Error::Contract(format!(
                "prime mismatch: {} vs {}",
                self.p, rhs.p
            )));
        }
        let p = self.p;
        let ac = mul_mod(self.a, rhs.a, p);
        let bd = mul_mod(self.b, rhs.b, p);
        let ad = mul_mod(self.a, rhs.b, p);
        let bc = mul_mod(self.b, rhs.a, p);
        Ok(Self {
            p,
            a: (ac + p - bd) % p,
            b: (ad + bc) % p,
        })
    }

    /// `self^e` by square-and-multiply; `self^0 = 1`.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self {
            p: self.p,
            a: 1,
            b: 0,
        };
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same prime");
            }
            base = base.mul(&base).expect("same prime");
            e >>= 1;
        }
        acc
    }

    /// Norm to the base field: `a^2 + b^2 mod p`. Multiplicative, and zero
    /// exactly on the non-units of the quotient ring.
    pub fn norm(&self) -> u64 {
        (mul_mod(self.a, self.a, self.p) + mul_mod(self.b, self.b, self.p)) % self.p
    }

    /// Multiplicative order: the least `e >= 1` with `self^e = 1`, by
    /// direct iteration.
    ///
    /// Zero and (in the split case) any other non-unit are domain errors.
    /// The iteration is bounded by `p^2 - 1`; intended for desk-scale `p`.
    pub fn order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::Domain("order of zero is undefined".into()));
        }
        if self.norm() == 0 {
            return Err(Error::Domain(format!(
                "{} + {}w is not a unit mod {}",
                self.a, self.b, self.p
            )));
        }
        let cap = self.p * self.p - 1;
        let mut acc = *self;
        for e in 1..=cap {
            if acc.is_one() {
                return Ok(e);
            }
            acc = acc.mul(self).expect("same prime");
        }
        Err(Error::Internal(format!(
            "unit order not found within p^2 - 1 iterations (p = {})",
            self.p
        )))
    }
}

/// The smaller square root of -1 modulo an odd prime, when it exists.
///
/// For `p = 1 (mod 4)` returns the smaller of the two roots `i` with
/// `i^2 = -1 (mod p)`; for `p = 3 (mod 4)` returns `None`. Non-primes
/// (and `p = 2`) are domain errors.
///
/// The root is located by testing `g^((p-1)/4)` for successive candidates
/// `g` (any quadratic non-residue works); a direct scan below 10^4 serves
/// as a fallback. The smaller root is always returned so downstream
/// records are reproducible.
pub fn sqrt_minus_one(p: u64) -> Result<Option<u64>> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    if p % 4 == 3 {
        return Ok(None);
    }
    let exp = (p - 1) / 4;
    for g in 2..p {
        let c = pow_mod(g, exp, p);
        if mul_mod(c, c, p) == p - 1 {
            return Ok(Some(c.min(p - c)));
        }
    }
    // Unreachable for a genuine prime = 1 (mod 4); kept as a deterministic
    // fallback for small inputs.
    if p < 10_000 {
        for i in 1..p {
            if mul_mod(i, i, p) == p - 1 {
                return Ok(Some(i.min(p - i)));
            }
        }
    }
    Err(Error::Internal(format!("no square root of -1 found mod {p}")))
}
