//! Exact field scalars: elements of a prime field F_p or of the rationals.
//!
//! Every value carries its field tag; mixing tags in an arithmetic operation
//! is a programming error and panics. Fallible boundaries (parsers, matrix
//! constructors, evaluation maps) check tags up front and return
//! [`Error::FieldMismatch`](crate::error::Error) instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Identifies the field a scalar lives in: F_p for a verified prime p, or Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldTag(TagRepr);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum TagRepr {
    Fp(u64),
    Rational,
}

impl FieldTag {
    /// The prime field F_p. Primality is checked by trial division;
    /// primes up to 2^31 are supported.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime_u64(p) || p >= (1 << 31) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldTag(TagRepr::Fp(p)))
    }

    /// The field of rational numbers.
    pub fn rational() -> Self {
        FieldTag(TagRepr::Rational)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.0, TagRepr::Rational)
    }

    /// The characteristic p for a prime field, `None` over the rationals.
    pub fn prime_modulus(&self) -> Option<u64> {
        match self.0 {
            TagRepr::Fp(p) => Some(p),
            TagRepr::Rational => None,
        }
    }

    pub fn zero(&self) -> FieldScalar {
        FieldScalar::from_i64(0, *self)
    }

    pub fn one(&self) -> FieldScalar {
        FieldScalar::from_i64(1, *self)
    }

    /// Checks two tags agree, erroring with a readable message otherwise.
    pub fn ensure_same(&self, other: &FieldTag) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            TagRepr::Fp(p) => write!(f, "F_{p}"),
            TagRepr::Rational => write!(f, "Q"),
        }
    }
}

fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= p) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact element of F_p (canonical representative in `[0, p)`) or of Q
/// (reduced fraction with positive denominator).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldScalar {
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Fp { value: u64, prime: u64 },
    Rat(BigRational),
}

impl FieldScalar {
    pub fn from_i64(v: i64, tag: FieldTag) -> Self {
        match tag.0 {
            TagRepr::Fp(p) => {
                let r = v.rem_euclid(p as i64) as u64;
                FieldScalar {
                    repr: Repr::Fp { value: r, prime: p },
                }
            }
            TagRepr::Rational => FieldScalar {
                repr: Repr::Rat(BigRational::from_integer(BigInt::from(v))),
            },
        }
    }

    /// num/den in the field; over F_p this is num * den^{-1} mod p.
    pub fn from_fraction(num: i64, den: i64, tag: FieldTag) -> Result<Self> {
        let d = Self::from_i64(den, tag);
        Self::from_i64(num, tag).div(&d)
    }

    /// Parses an unsigned decimal literal into the field. Arbitrarily long
    /// digit strings are reduced mod p on the fly for prime fields.
    pub fn from_decimal_str(digits: &str, tag: FieldTag) -> Result<Self> {
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Syntax {
                pos: 0,
                msg: format!("expected integer, got {digits:?}"),
            });
        }
        match tag.0 {
            TagRepr::Fp(p) => {
                let mut acc = 0u64;
                for b in digits.bytes() {
                    acc = (acc * 10 + u64::from(b - b'0')) % p;
                }
                Ok(FieldScalar {
                    repr: Repr::Fp { value: acc, prime: p },
                })
            }
            TagRepr::Rational => {
                let n = BigInt::from_str(digits).map_err(|e| Error::Syntax {
                    pos: 0,
                    msg: e.to_string(),
                })?;
                Ok(FieldScalar {
                    repr: Repr::Rat(BigRational::from_integer(n)),
                })
            }
        }
    }

    pub fn tag(&self) -> FieldTag {
        match &self.repr {
            Repr::Fp { prime, .. } => FieldTag(TagRepr::Fp(*prime)),
            Repr::Rat(_) => FieldTag(TagRepr::Rational),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Fp { value, .. } => *value == 0,
            Repr::Rat(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Fp { value, .. } => *value == 1,
            Repr::Rat(q) => q.is_one(),
        }
    }

    /// The canonical representative in `[0, p)` for prime-field values.
    pub fn as_fp(&self) -> Option<u64> {
        match &self.repr {
            Repr::Fp { value, .. } => Some(*value),
            Repr::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(q) => Some(q),
            Repr::Fp { .. } => None,
        }
    }

    fn binop(&self, rhs: &FieldScalar, f_p: impl Fn(u64, u64, u64) -> u64, f_q: impl Fn(&BigRational, &BigRational) -> BigRational) -> FieldScalar {
        match (&self.repr, &rhs.repr) {
            (Repr::Fp { value: a, prime: p }, Repr::Fp { value: b, prime: q }) => {
                assert_eq!(p, q, "mixed prime fields F_{p} and F_{q}");
                FieldScalar {
                    repr: Repr::Fp { value: f_p(*a, *b, *p), prime: *p },
                }
            }
            (Repr::Rat(a), Repr::Rat(b)) => FieldScalar { repr: Repr::Rat(f_q(a, b)) },
            _ => panic!("mixed field tags {} and {}", self.tag(), rhs.tag()),
        }
    }

    pub fn add(&self, rhs: &FieldScalar) -> FieldScalar {
        self.binop(rhs, |a, b, p| (a + b) % p, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &FieldScalar) -> FieldScalar {
        self.binop(rhs, |a, b, p| (a + p - b) % p, |a, b| a - b)
    }

    pub fn mul(&self, rhs: &FieldScalar) -> FieldScalar {
        self.binop(rhs, |a, b, p| a * b % p, |a, b| a * b)
    }

    pub fn neg(&self) -> FieldScalar {
        match &self.repr {
            Repr::Fp { value, prime } => FieldScalar {
                repr: Repr::Fp { value: (prime - value) % prime, prime: *prime },
            },
            Repr::Rat(q) => FieldScalar { repr: Repr::Rat(-q) },
        }
    }

    /// Multiplicative inverse; `a * a.inv() == 1`.
    pub fn inv(&self) -> Result<FieldScalar> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.repr {
            Repr::Fp { value, prime } => FieldScalar {
                repr: Repr::Fp { value: mod_inverse(*value, *prime), prime: *prime },
            },
            Repr::Rat(q) => FieldScalar { repr: Repr::Rat(q.recip()) },
        })
    }

    pub fn div(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, e: u32) -> FieldScalar {
        let mut acc = self.tag().one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// True when the value has a sign and it is negative (rationals only).
    pub fn is_negative(&self) -> bool {
        match &self.repr {
            Repr::Fp { .. } => false,
            Repr::Rat(q) => q.is_negative(),
        }
    }

    pub fn abs(&self) -> FieldScalar {
        match &self.repr {
            Repr::Fp { .. } => self.clone(),
            Repr::Rat(q) => FieldScalar { repr: Repr::Rat(q.abs()) },
        }
    }
}

/// Extended-Euclid inverse of `a` mod `p`, for `0 < a < p` with `p` prime.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "{a} is not invertible mod {p}");
    old_s.rem_euclid(p as i128) as u64
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Fp { value, .. } => write!(f, "{value}"),
            Repr::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl Serialize for FieldScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Add for &FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        FieldScalar::add(self, rhs)
    }
}

impl Sub for &FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        FieldScalar::sub(self, rhs)
    }
}

impl Mul for &FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        FieldScalar::mul(self, rhs)
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar::neg(self)
    }
}

/// Total order helper used when sorting points deterministically.
pub fn scalar_cmp(a: &FieldScalar, b: &FieldScalar) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldTag {
        FieldTag::prime(7).unwrap()
    }

    #[test]
    fn primality_is_checked() {
        assert!(FieldTag::prime(2).is_ok());
        assert!(FieldTag::prime(101).is_ok());
        assert!(matches!(FieldTag::prime(1), Err(Error::NotPrime(1))));
        assert!(matches!(FieldTag::prime(15), Err(Error::NotPrime(15))));
        assert!(matches!(FieldTag::prime(1 << 32), Err(Error::NotPrime(_))));
    }

    #[test]
    fn inverse_in_f7() {
        let three = FieldScalar::from_i64(3, f7());
        let inv = three.inv().unwrap();
        assert_eq!(inv.as_fp(), Some(5));
        assert!(three.mul(&inv).is_one());
    }

    #[test]
    fn inverse_of_one_in_q() {
        let one = FieldTag::rational().one();
        assert!(one.inv().unwrap().is_one());
    }

    #[test]
    fn inverse_of_fraction() {
        let q = FieldTag::rational();
        let two_thirds = FieldScalar::from_fraction(2, 3, q).unwrap();
        let inv = two_thirds.inv().unwrap();
        assert_eq!(inv, FieldScalar::from_fraction(3, 2, q).unwrap());
        assert!(two_thirds.mul(&inv).is_one());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(f7().zero().inv(), Err(Error::ZeroInverse)));
        assert!(matches!(FieldTag::rational().zero().inv(), Err(Error::ZeroInverse)));
    }

    #[test]
    fn negative_literal_reduces() {
        let a = FieldScalar::from_i64(-1, f7());
        assert_eq!(a.as_fp(), Some(6));
    }

    #[test]
    fn rational_is_reduced_with_positive_denominator() {
        let q = FieldTag::rational();
        let a = FieldScalar::from_fraction(4, -6, q).unwrap();
        assert_eq!(a.to_string(), "-2/3");
        assert_eq!(a.inv().unwrap().to_string(), "-3/2");
        assert_eq!(FieldScalar::from_i64(-6, q).inv().unwrap().to_string(), "-1/6");
    }

    #[test]
    #[should_panic(expected = "mixed field tags")]
    fn mixing_tags_panics() {
        let a = f7().one();
        let b = FieldTag::rational().one();
        let _ = a.add(&b);
    }
}
