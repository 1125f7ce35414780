use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// Default modulus for the modular backend.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// A coefficient field, passed around as a value so that a prime field can
/// carry its modulus.
pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &Rational) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn tag(&self) -> FieldTag;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// `a - b * c`
    fn sub_mul(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(b, c))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::ZERO
    }
    fn one(&self) -> Rational {
        Rational::ONE
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn sub_mul(&self, a: &Rational, b: &Rational, c: &Rational) -> Rational {
        a.sub_mul(b, c)
    }
    fn tag(&self) -> FieldTag {
        FieldTag::Rational
    }
}

/// Z/p for a prime `p < 2^32`, so that products fit in `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not a prime below 2^32")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }

    fn reduce_big(&self, n: &num_bigint::BigInt) -> u64 {
        use num_traits::ToPrimitive;
        let p = num_bigint::BigInt::from(self.p);
        let r = ((n % &p) + &p) % &p;
        r.to_u64().expect("residue fits")
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    /// Panics if the denominator vanishes mod p.
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &Rational) -> u64 {
        let (n, d) = match q.to_small() {
            Some((n, d)) => (n.rem_euclid(self.p as i64) as u64, d.rem_euclid(self.p as i64) as u64),
            None => (self.reduce_big(&q.numer_big()), self.reduce_big(&q.denom_big())),
        };
        assert!(d != 0, "denominator divisible by the modulus");
        n * self.inv(&d) % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "division by zero");
        self.pow(*a, self.p - 2)
    }
    fn tag(&self) -> FieldTag {
        FieldTag::Modular(self.p)
    }
}

/// Which arithmetic produced a number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    Rational,
    Modular(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "rational"),
            FieldTag::Modular(p) => write!(f, "modular({p})"),
        }
    }
}

impl std::str::FromStr for FieldTag {
    type Err = Error;

    /// Accepts `rational`, `prime` (default modulus) or `prime:p`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "rational" => Ok(FieldTag::Rational),
            "prime" => Ok(FieldTag::Modular(DEFAULT_PRIME)),
            other => {
                let p = other
                    .strip_prefix("prime:")
                    .or_else(|| other.strip_prefix("modular(").and_then(|r| r.strip_suffix(')')))
                    .ok_or_else(|| Error::Parse(format!("unknown field {other:?}")))?;
                let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad modulus {p:?}")))?;
                PrimeField::new(p).map(|f| FieldTag::Modular(f.modulus()))
            }
        }
    }
}

impl Serialize for FieldTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldTag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
