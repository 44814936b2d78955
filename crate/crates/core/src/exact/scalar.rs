use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

/// Default prime for experiments in "general" characteristic.
pub const DEFAULT_PRIME: u64 = 31991;

/// A base field: the rationals or a prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// GF(p) for an odd prime `p < 2^31`.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(AlgebraError::InvalidModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn default_prime() -> Field {
        Field::Prime(DEFAULT_PRIME)
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    /// Refuses fields whose characteristic is positive and `<= bound`.
    pub fn require_char_above(&self, bound: u64) -> Result<()> {
        match *self {
            Field::Prime(p) if p <= bound => {
                Err(AlgebraError::CharacteristicTooSmall { p, bound })
            }
            _ => Ok(()),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Modular(ModInt::new(v.rem_euclid(p as i64) as u64, p)),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let r = ((v % &m) + &m) % &m;
                Scalar::Modular(ModInt::new(r.to_u64().unwrap(), p))
            }
        }
    }

    /// The element `num/den`; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        let inv = d.inv().ok_or(AlgebraError::DivisionByZero)?;
        Ok(&n * &inv)
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        self.from_ratio(q.numer(), q.denom())
    }

    /// Uniform element of GF(p); for Q an integer in `[-100, 100]`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match *self {
            Field::Rational => self.from_i64(rng.gen_range(-100..=100)),
            Field::Prime(p) => Scalar::Modular(ModInt::new(rng.gen_range(0..p), p)),
        }
    }

    /// Like [`Field::random`] but never zero.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn factorial(&self, n: u64) -> Scalar {
        (1..=n).fold(self.one(), |acc, k| &acc * &self.from_i64(k as i64))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = AlgebraError;

    /// Accepts `q`, `Q`, `rational`, `gfp:<p>`, `gf(<p>)` and `gf<p>`.
    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "rational" || t == "qq" {
            return Ok(Field::Rational);
        }
        let digits = t
            .strip_prefix("gfp:")
            .or_else(|| t.strip_prefix("gf(").and_then(|r| r.strip_suffix(')')))
            .or_else(|| t.strip_prefix("gf"))
            .ok_or_else(|| AlgebraError::Parse {
                line: 1,
                column: 1,
                message: format!("unknown field '{s}'"),
            })?;
        let p: u64 = digits.parse().map_err(|_| AlgebraError::Parse {
            line: 1,
            column: 1,
            message: format!("bad modulus in '{s}'"),
        })?;
        Field::prime(p)
    }
}

/// A residue modulo an odd prime, always reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModInt {
    value: u64,
    modulus: u64,
}

impl ModInt {
    pub fn new(value: u64, modulus: u64) -> ModInt {
        ModInt {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub(crate) fn mod_inv(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(mod_pow(a, p - 2, p))
    }
}

/// An exact field element. Binary operators panic when the operands live
/// in different fields; the `try_*` variants return an error instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular(ModInt),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular(m) => Field::Prime(m.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular(m) => m.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular(m) => m.value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) if q.is_zero() => None,
            Scalar::Rational(q) => Some(Scalar::Rational(q.recip())),
            Scalar::Modular(m) => {
                mod_inv(m.value, m.modulus).map(|v| Scalar::Modular(ModInt::new(v, m.modulus)))
            }
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(num_traits::pow(q.clone(), e as usize)),
            Scalar::Modular(m) => {
                Scalar::Modular(ModInt::new(mod_pow(m.value, e as u64, m.modulus), m.modulus))
            }
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular(_) => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Modular(m) => Some(m.value),
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.field() != other.field() {
            return Err(AlgebraError::MixedFields {
                left: self.field(),
                right: other.field(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular(a), Scalar::Modular(b)) => {
                Scalar::Modular(ModInt::new(a.value + b.value, a.modulus))
            }
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular(a), Scalar::Modular(b)) => {
                Scalar::Modular(ModInt::new(a.value + a.modulus - b.value, a.modulus))
            }
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular(a), Scalar::Modular(b)) => {
                Scalar::Modular(ModInt::new(a.value * b.value, a.modulus))
            }
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        let inv = other.inv().ok_or(AlgebraError::DivisionByZero)?;
        self.try_mul(&inv)
    }

    /// Integer representative: the rational itself, or the symmetric residue
    /// in `(-p/2, p/2]`.
    pub fn to_rational_repr(&self) -> BigRational {
        match self {
            Scalar::Rational(q) => q.clone(),
            Scalar::Modular(m) => {
                let v = if m.value > m.modulus / 2 {
                    m.value as i64 - m.modulus as i64
                } else {
                    m.value as i64
                };
                BigRational::from_integer(BigInt::from(v))
            }
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative_repr(&self) -> bool {
        self.to_rational_repr().is_negative()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.to_rational_repr();
        if q.is_integer() {
            write!(f, "{}", q.numer())
        } else {
            write!(f, "{}/{}", q.numer(), q.denom())
        }
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);
forward_op!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Modular(m) => Scalar::Modular(ModInt::new(m.modulus - m.value, m.modulus)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
