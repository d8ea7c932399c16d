//! Coefficients in `Z_(p)`, exact or truncated modulo `p^m`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Largest modulus accepted for truncated arithmetic, so products fit in `u128`.
const MAX_MODULUS: u128 = 1 << 63;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalCoeff {
    /// A rational number whose denominator is prime to `p`.
    Exact(BigRational),
    /// A residue modulo `prime^precision`.
    Residue { value: u128, prime: u32, precision: u32 },
}

pub(crate) fn modulus(prime: u32, precision: u32) -> Result<u128> {
    let mut m: u128 = 1;
    for _ in 0..precision {
        m = m.checked_mul(prime as u128).filter(|&m| m <= MAX_MODULUS).ok_or_else(|| {
            Error::Precision(format!("{prime}^{precision} exceeds 2^63"))
        })?;
    }
    Ok(m)
}

fn reduce_big(x: &BigInt, m: u128) -> u128 {
    x.mod_floor(&BigInt::from(m)).to_u128().expect("reduced value fits")
}

fn inverse_mod(a: u128, m: u128) -> Option<u128> {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u128)
}

impl LocalCoeff {
    pub fn integer(n: i64) -> Self {
        LocalCoeff::Exact(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            LocalCoeff::Exact(q) => q.is_zero(),
            LocalCoeff::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, LocalCoeff::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            LocalCoeff::Exact(q) => Some(q),
            LocalCoeff::Residue { .. } => None,
        }
    }

    /// Reduction modulo `prime^precision`; a ring map on `Z_(p)`.
    pub fn to_residue(&self, prime: u32, precision: u32) -> Result<Self> {
        let m = modulus(prime, precision)?;
        match self {
            LocalCoeff::Exact(q) => {
                let den = reduce_big(q.denom(), m);
                let inv = inverse_mod(den, m).ok_or(Error::NotLocal { p: prime })?;
                let num = reduce_big(q.numer(), m);
                Ok(LocalCoeff::Residue { value: num * inv % m, prime, precision })
            }
            LocalCoeff::Residue { value, prime: q, precision: k } => {
                if *q != prime {
                    return Err(Error::PrimeMismatch(*q, prime));
                }
                if *k < precision {
                    return Err(Error::Precision(format!("cannot raise precision {k} to {precision}")));
                }
                Ok(LocalCoeff::Residue { value: value % m, prime, precision })
            }
        }
    }

    /// Brings both operands to a common representation: exact if both are,
    /// otherwise residues at the smaller precision.
    fn align(&self, other: &Self) -> Result<(Self, Self)> {
        match (self, other) {
            (LocalCoeff::Exact(_), LocalCoeff::Exact(_)) => Ok((self.clone(), other.clone())),
            (LocalCoeff::Residue { prime, precision, .. }, LocalCoeff::Exact(_)) => {
                Ok((self.clone(), other.to_residue(*prime, *precision)?))
            }
            (LocalCoeff::Exact(_), LocalCoeff::Residue { prime, precision, .. }) => {
                Ok((self.to_residue(*prime, *precision)?, other.clone()))
            }
            (LocalCoeff::Residue { prime: p, precision: a, .. }, LocalCoeff::Residue { prime: q, precision: b, .. }) => {
                if p != q {
                    return Err(Error::PrimeMismatch(*p, *q));
                }
                let m = (*a).min(*b);
                Ok((self.to_residue(*p, m)?, other.to_residue(*p, m)?))
            }
        }
    }

    fn combine(&self, other: &Self, exact: impl Fn(&BigRational, &BigRational) -> BigRational, residue: impl Fn(u128, u128, u128) -> u128) -> Result<Self> {
        match self.align(other)? {
            (LocalCoeff::Exact(a), LocalCoeff::Exact(b)) => Ok(LocalCoeff::Exact(exact(&a, &b))),
            (LocalCoeff::Residue { value: a, prime, precision }, LocalCoeff::Residue { value: b, .. }) => {
                let m = modulus(prime, precision)?;
                Ok(LocalCoeff::Residue { value: residue(a, b, m), prime, precision })
            }
            _ => unreachable!("aligned operands share a representation"),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b, |a, b, m| (a + b) % m)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b, |a, b, m| (a + m - b) % m)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a * b, |a, b, m| a * b % m)
    }

    /// Multiplicative inverse, defined when the value is a unit in `Z_(p)`.
    pub fn inverse(&self, prime: u32) -> Result<Self> {
        match self {
            LocalCoeff::Exact(q) => {
                if q.numer().is_multiple_of(&BigInt::from(prime)) {
                    return Err(Error::NotLocal { p: prime });
                }
                Ok(LocalCoeff::Exact(q.recip()))
            }
            LocalCoeff::Residue { value, prime: p, precision } => {
                let m = modulus(*p, *precision)?;
                let inv = inverse_mod(*value, m).ok_or(Error::NotLocal { p: *p })?;
                Ok(LocalCoeff::Residue { value: inv, prime: *p, precision: *precision })
            }
        }
    }

    /// Rational reconstruction `a/b ≡ value` with `|a|, b ≤ sqrt(M/2)`.
    pub fn recover(&self) -> Option<BigRational> {
        let (value, prime, precision) = match self {
            LocalCoeff::Exact(q) => return Some(q.clone()),
            LocalCoeff::Residue { value, prime, precision } => (*value, *prime, *precision),
        };
        let m = modulus(prime, precision).ok()? as i128;
        let bound = ((m / 2) as f64).sqrt() as i128;
        let (mut r0, mut r1) = (m, value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 > bound {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if t1 == 0 || t1.abs() > bound || r1.gcd(&t1) != 1 {
            return None;
        }
        let q = BigRational::new(BigInt::from(r1 * t1.signum()), BigInt::from(t1.abs()));
        if q.denom().is_multiple_of(&BigInt::from(prime)) {
            return None;
        }
        Some(q)
    }

    /// Fields of the JSON term format.
    pub fn to_json_fields(&self) -> Value {
        fn num(x: &BigInt) -> Value {
            x.to_i64().map_or_else(|| json!(x.to_string()), |v| json!(v))
        }
        match self {
            LocalCoeff::Exact(q) => json!({ "numerator": num(q.numer()), "denominator": num(q.denom()) }),
            LocalCoeff::Residue { value, precision, .. } => json!({ "residue": value.to_string(), "precision": precision }),
        }
    }
}

impl From<BigRational> for LocalCoeff {
    fn from(q: BigRational) -> Self {
        LocalCoeff::Exact(q)
    }
}

impl fmt::Display for LocalCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalCoeff::Exact(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            LocalCoeff::Exact(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            LocalCoeff::Residue { value, prime, precision } => write!(f, "{value} mod {prime}^{precision}"),
        }
    }
}

impl LocalCoeff {
    pub(crate) fn is_negative(&self) -> bool {
        matches!(self, LocalCoeff::Exact(q) if q.is_negative())
    }
}
