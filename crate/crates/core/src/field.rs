//! Exact coefficient fields: the rationals and prime fields `F_p`.
//!
//! A [`Field`] is a small copyable tag; a [`Scalar`] carries its own field so
//! that values from different fields are never mixed silently. The arithmetic
//! operators panic on a field mismatch; the `try_*` methods report it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// Largest supported prime modulus; products fit comfortably in `u128`.
pub const MAX_PRIME: u64 = (1 << 62) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Checked constructor for `F_p`.
    pub fn prime(p: u64) -> Result<Field, AlgebraError> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `q`, `Q`, `rationals` or `fp:P`.
    pub fn parse(s: &str) -> Result<Field, AlgebraError> {
        let s = s.trim();
        match s {
            "q" | "Q" | "rationals" => Ok(Field::Rationals),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .or_else(|| s.strip_prefix("Fp:"))
                    .ok_or_else(|| AlgebraError::Parse(format!("unknown field `{s}`")))?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| AlgebraError::Parse(format!("bad prime in `{s}`")))?;
                Field::prime(p)
            }
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod {
                value: reduce_i128(n as i128, p),
                modulus: p,
            },
        }
    }

    /// `num / den` in this field; `None` when `den` vanishes in the field.
    pub fn ratio(self, num: i64, den: i64) -> Option<Scalar> {
        let d = self.from_i64(den);
        if d.is_zero() {
            return None;
        }
        Some(&self.from_i64(num) * &d.inverse().ok()?)
    }

    pub fn from_rational(self, q: &BigRational) -> Option<Scalar> {
        match self {
            Field::Rationals => Some(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let num = big_mod(q.numer(), p);
                let den = big_mod(q.denom(), p);
                if den == 0 {
                    return None;
                }
                let inv = mod_inverse(den, p);
                Some(Scalar::Mod {
                    value: mul_mod(num, inv, p),
                    modulus: p,
                })
            }
        }
    }

    /// Parses an element such as `3`, `-1/2` (reduced into `F_p` when needed).
    pub fn parse_element(self, s: &str) -> Result<Scalar, AlgebraError> {
        let s = s.trim();
        let bad = || AlgebraError::Parse(format!("bad field element `{s}`"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        self.from_rational(&BigRational::new(num, den)).ok_or_else(bad)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    /// Number of elements, `None` for an infinite field.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(p),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// An element of a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => Ok(Scalar::Mod {
                value: add_mod(*a, *b, *p),
                modulus: *p,
            }),
            _ => Err(AlgebraError::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => Ok(Scalar::Mod {
                value: mul_mod(*a, *b, *p),
                modulus: *p,
            }),
            _ => Err(AlgebraError::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn inverse(&self) -> Result<Scalar, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: mod_inverse(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Scalar, AlgebraError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = self.field().one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Size measure used for pivot selection: total bit length of numerator
    /// and denominator over `Q`, zero over `F_p`.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Rational(q) => q.numer().bits() + q.denom().bits(),
            Scalar::Mod { .. } => 0,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Mod { .. } => None,
        }
    }

    /// Canonical residue in `0..p` for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(q) => q.to_f64().unwrap_or(f64::NAN),
            Scalar::Mod { value, .. } => *value as f64,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.try_add(rhs).expect("field mismatch in scalar addition")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.try_add(&-rhs).expect("field mismatch in scalar subtraction")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.try_mul(rhs).expect("field mismatch in scalar multiplication")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn reduce_i128(n: i128, p: u64) -> u64 {
    n.rem_euclid(p as i128) as u64
}

fn big_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.abs().to_u64().unwrap_or(0)
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime
    pow_mod(a, p - 2, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_fields() {
        assert_eq!(Field::parse("q").unwrap(), Field::Rationals);
        assert_eq!(Field::parse("fp:7").unwrap(), Field::Prime(7));
        assert!(matches!(Field::parse("fp:9"), Err(AlgebraError::NotPrime(9))));
        assert!(Field::parse("r").is_err());
    }

    #[test]
    fn elements_round_trip_through_display() {
        let q = Field::Rationals;
        let half = q.parse_element("1/2").unwrap();
        assert_eq!(half.to_string(), "1/2");
        assert_eq!(q.parse_element("-3").unwrap().to_string(), "-3");
        let f7 = Field::Prime(7);
        // 1/2 = 4 mod 7
        assert_eq!(f7.parse_element("1/2").unwrap(), f7.from_i64(4));
        assert!(f7.parse_element("1/7").is_err());
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let q = Field::Rationals;
        let two = q.from_i64(2);
        assert_eq!(two.pow(-2).unwrap(), q.ratio(1, 4).unwrap());
        assert_eq!(two.pow(0).unwrap(), q.one());
        assert!(q.zero().pow(-1).is_err());
        let f5 = Field::Prime(5);
        assert_eq!(f5.from_i64(2).pow(-1).unwrap(), f5.from_i64(3));
    }

    #[test]
    fn mismatch_is_reported() {
        let a = Field::Rationals.one();
        let b = Field::Prime(3).one();
        assert!(matches!(a.try_add(&b), Err(AlgebraError::FieldMismatch(..))));
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    fn field_strategy() -> impl Strategy<Value = Field> {
        prop_oneof![
            Just(Field::Rationals),
            Just(Field::Prime(2)),
            Just(Field::Prime(7)),
            Just(Field::Prime(101))
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(field in field_strategy(),
                        a in (-50i64..50, 1i64..9), b in (-50i64..50, 1i64..9), c in (-50i64..50, 1i64..9)) {
            let mk = |(n, d): (i64, i64)| field.ratio(n, d).unwrap_or_else(|| field.from_i64(n));
            let (a, b, c) = (mk(a), mk(b), mk(c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }
    }
}
