//! Exact field elements.
//!
//! A [`Scalar`] is either an arbitrary-precision rational or a residue modulo a
//! prime. Every scalar knows its [`Field`]; combining scalars from different
//! fields is a contract violation and panics, the same way a shape mismatch
//! panics in dense array libraries.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    /// Integers modulo a prime `q < 2^32`.
    Prime(u64),
}

impl Field {
    pub fn prime(q: u64) -> Result<Field> {
        if !(2..1 << 32).contains(&q) || !is_prime(q) {
            return Err(Error::InvalidField(format!(
                "{q} is not a prime below 2^32"
            )));
        }
        Ok(Field::Prime(q))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(q) => Scalar::Modular {
                value: n.rem_euclid(q as i64) as u64,
                modulus: q,
            },
        }
    }

    /// `num / den` in this field; `den` must be nonzero in the field.
    pub fn ratio(self, num: i64, den: i64) -> Scalar {
        let d = self.from_i64(den);
        let inv = d.inverse().expect("denominator vanishes in this field");
        &self.from_i64(num) * &inv
    }

    /// Parses the textual form used in the JSON formats: `"p/q"` or `"p"` for
    /// rationals, a decimal residue for prime fields (rationals `p/q` are also
    /// accepted there and reduced).
    pub fn parse(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::ParseScalar(text.to_string());
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(text).map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
            Field::Prime(q) => {
                let reduce = |b: &BigInt| -> u64 {
                    let m = BigInt::from(q);
                    let r = ((b % &m) + &m) % &m;
                    r.try_into().expect("residue fits")
                };
                let n = Scalar::Modular {
                    value: reduce(&num),
                    modulus: q,
                };
                let d = Scalar::Modular {
                    value: reduce(&den),
                    modulus: q,
                };
                let inv = d.inverse().ok_or_else(bad)?;
                Ok(&n * &inv)
            }
        }
    }

    pub fn name(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(q) => write!(f, "fp:{q}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        match s {
            "rational" | "Q" | "q" => Ok(Field::Rational),
            _ => match s.strip_prefix("fp:") {
                Some(q) => Field::prime(q.parse().map_err(|_| Error::InvalidField(s.into()))?),
                None => Err(Error::InvalidField(s.into())),
            },
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    fn check_field(&self, other: &Scalar) {
        if self.field() != other.field() {
            panic!(
                "{}",
                Error::FieldMismatch(self.field().name(), other.field().name())
            );
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, modulus);
        }
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: (a + modulus - b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a -= b,
            _ => *self = &*self - rhs,
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Rational(_) => s.serialize_str(&self.to_string()),
            Scalar::Modular { value, .. } => s.serialize_u64(*value),
        }
    }
}

/// Field-agnostic textual form of a scalar as it appears in JSON, resolved
/// against a [`Field`] once the session's field is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawScalar {
    Int(i64),
    Text(String),
}

impl RawScalar {
    pub fn resolve(&self, field: Field) -> Result<Scalar> {
        match self {
            RawScalar::Int(n) => Ok(field.from_i64(*n)),
            RawScalar::Text(t) => field.parse(t),
        }
    }
}

impl From<&Scalar> for RawScalar {
    fn from(s: &Scalar) -> RawScalar {
        match s {
            Scalar::Modular { value, .. } => RawScalar::Int(*value as i64),
            Scalar::Rational(_) => RawScalar::Text(s.to_string()),
        }
    }
}

impl Scalar {
    /// Absolute size of the numerator and denominator; used to keep random
    /// samples small.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Rational(r) => {
                let n: u64 = r.numer().abs().try_into().unwrap_or(u64::MAX);
                let d: u64 = r.denom().abs().try_into().unwrap_or(u64::MAX);
                n.max(d)
            }
            Scalar::Modular { value, .. } => *value,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        let q = Field::Rational;
        for text in ["0", "3", "-7", "1/2", "-5/3"] {
            assert_eq!(q.parse(text).unwrap().to_string(), text);
        }
        assert_eq!(q.parse("4/6").unwrap().to_string(), "2/3");
        assert_eq!(q.parse("3/-6").unwrap().to_string(), "-1/2");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("abc").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(5);
        let b = f.from_i64(4);
        assert_eq!((&a + &b).to_string(), "2");
        assert_eq!((&a * &b).to_string(), "6");
        assert_eq!((&a - &b).to_string(), "1");
        assert_eq!((&b - &a).to_string(), "6");
        assert!((&a * &a.inverse().unwrap()).is_one());
        assert_eq!(f.parse("1/2").unwrap().to_string(), "4");
        assert_eq!(f.from_i64(-1).to_string(), "6");
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!("fp:13".parse::<Field>().is_ok());
        assert!("fp:12".parse::<Field>().is_err());
    }

    #[test]
    #[should_panic]
    fn mixing_fields_panics() {
        let _ = Field::Rational.one() + Field::Prime(5).one();
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(Field::Rational.zero().inverse().is_none());
        assert!(Field::Prime(3).zero().inverse().is_none());
    }
}
