//! Exact coefficient arithmetic over the integers, the rationals and prime
//! fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::presentation::RelativeOrder;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    Rationals,
    PrimeField(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Integer(BigInt),
    Rational(BigRational),
    /// Canonical residue in `0..modulus`.
    Residue {
        value: u64,
        modulus: u64,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoefficientError {
    #[error("scalar {scalar} does not belong to {ring}")]
    RingMismatch {
        scalar: Scalar,
        ring: RingDescriptor,
    },
    #[error("finite relative orders are only supported over the integers, not {0}")]
    UnsupportedRing(RingDescriptor),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot read {text:?} as an element of {ring}")]
    BadLiteral { text: String, ring: RingDescriptor },
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl RingDescriptor {
    /// `GF(p)`; `p` must be a prime below 2^32.
    pub fn prime_field(p: u64) -> Result<Self, CoefficientError> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(CoefficientError::NotPrime(p));
        }
        Ok(RingDescriptor::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, RingDescriptor::Integers)
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        matches!(
            (self, s),
            (RingDescriptor::Integers, Scalar::Integer(_))
                | (RingDescriptor::Rationals, Scalar::Rational(_))
        ) || matches!((self, s), (RingDescriptor::PrimeField(p), Scalar::Residue { modulus, .. }) if p == modulus)
    }

    pub fn check(&self, s: &Scalar) -> Result<(), CoefficientError> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(CoefficientError::RingMismatch {
                scalar: s.clone(),
                ring: *self,
            })
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(&BigInt::zero())
    }

    pub fn one(&self) -> Scalar {
        self.from_int(&BigInt::one())
    }

    /// Image of an integer under the canonical map.
    pub fn from_int(&self, x: &BigInt) -> Scalar {
        match *self {
            RingDescriptor::Integers => Scalar::Integer(x.clone()),
            RingDescriptor::Rationals => Scalar::Rational(BigRational::from_integer(x.clone())),
            RingDescriptor::PrimeField(p) => Scalar::Residue {
                value: x
                    .mod_floor(&BigInt::from(p))
                    .to_u64()
                    .expect("residue fits the modulus"),
                modulus: p,
            },
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, CoefficientError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (Scalar::Integer(x), Scalar::Integer(y)) => Scalar::Integer(x + y),
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Residue { value: x, modulus }, Scalar::Residue { value: y, .. }) => {
                Scalar::Residue {
                    value: ((*x as u128 + *y as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!("operands checked against the ring"),
        })
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, CoefficientError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (Scalar::Integer(x), Scalar::Integer(y)) => Scalar::Integer(x * y),
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Residue { value: x, modulus }, Scalar::Residue { value: y, .. }) => {
                Scalar::Residue {
                    value: ((*x as u128 * *y as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!("operands checked against the ring"),
        })
    }

    pub fn neg(&self, a: &Scalar) -> Result<Scalar, CoefficientError> {
        self.check(a)?;
        Ok(match a {
            Scalar::Integer(x) => Scalar::Integer(-x),
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        })
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, CoefficientError> {
        self.add(a, &self.neg(b)?)
    }

    pub fn is_zero(&self, a: &Scalar) -> Result<bool, CoefficientError> {
        self.check(a)?;
        Ok(a.is_zero())
    }

    /// Multiplicative inverse in a field.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar, CoefficientError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(CoefficientError::DivisionByZero);
        }
        match a {
            Scalar::Rational(x) => Ok(Scalar::Rational(x.recip())),
            Scalar::Residue { value, modulus } => {
                let e = BigInt::from(*value).extended_gcd(&BigInt::from(*modulus));
                Ok(self.from_int(&e.x))
            }
            Scalar::Integer(x) if x.abs().is_one() => Ok(a.clone()),
            Scalar::Integer(_) => Err(CoefficientError::DivisionByZero),
        }
    }

    /// Parses an integer, a rational `p/q`, or (over `GF(p)`) an integer
    /// reduced mod `p`.
    pub fn parse(&self, text: &str) -> Result<Scalar, CoefficientError> {
        let bad = || CoefficientError::BadLiteral {
            text: text.to_string(),
            ring: *self,
        };
        let t = text.trim();
        match self {
            RingDescriptor::Rationals => {
                let (num, den) = match t.split_once('/') {
                    Some((a, b)) => (a.trim(), b.trim()),
                    None => (t, "1"),
                };
                let num: BigInt = num.parse().map_err(|_| bad())?;
                let den: BigInt = den.parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(CoefficientError::DivisionByZero);
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            _ => {
                let x: BigInt = t.parse().map_err(|_| bad())?;
                Ok(self.from_int(&x))
            }
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => f.write_str("Z"),
            RingDescriptor::Rationals => f.write_str("Q"),
            RingDescriptor::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Integer(x) => x.is_zero(),
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Integer(x) => x.is_one(),
            Scalar::Rational(x) => x.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Whether the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Integer(x) => x.is_negative(),
            Scalar::Rational(x) => x.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Integer(x) => write!(f, "{x}"),
            Scalar::Rational(x) => write!(f, "{x}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Splits `x = q * r + rem` with `0 <= rem < r` for finite `r`; infinite `r`
/// gives `(0, x)`. Finite orders only make sense over the integers.
pub fn reduce_mod_order(
    x: &Scalar,
    r: &RelativeOrder,
) -> Result<(Scalar, Scalar), CoefficientError> {
    match (x, r) {
        (_, RelativeOrder::Infinite) => {
            let zero = match x {
                Scalar::Integer(_) => Scalar::Integer(BigInt::zero()),
                Scalar::Rational(_) => Scalar::Rational(BigRational::zero()),
                Scalar::Residue { modulus, .. } => Scalar::Residue {
                    value: 0,
                    modulus: *modulus,
                },
            };
            Ok((zero, x.clone()))
        }
        (Scalar::Integer(v), RelativeOrder::Finite(order)) => {
            let (q, rem) = v.div_mod_floor(order);
            Ok((Scalar::Integer(q), Scalar::Integer(rem)))
        }
        (Scalar::Rational(_), RelativeOrder::Finite(_)) => {
            Err(CoefficientError::UnsupportedRing(RingDescriptor::Rationals))
        }
        (Scalar::Residue { modulus, .. }, RelativeOrder::Finite(_)) => Err(
            CoefficientError::UnsupportedRing(RingDescriptor::PrimeField(*modulus)),
        ),
    }
}
