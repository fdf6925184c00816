//! Exact coefficient arithmetic: arbitrary-precision rationals and prime fields Z/p.
//!
//! A [`Field`] is a lightweight descriptor that interprets [`FieldElem`] values;
//! elements do not carry the modulus themselves. All operations are exact and
//! rationals are kept in canonical form (lowest terms, positive denominator),
//! so equality and hashing are structural.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;

use crate::error::{AlgebraError, Result};

/// Field descriptor: the rationals or a prime field Z/p with p a machine-word prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

/// An element of a [`Field`]. `Rat` values are always reduced with positive
/// denominator (guaranteed by `BigRational`); `Fp` values are in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rat(BigRational),
    Fp(u64),
}

/// Binary operation selector for [`Field::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin for u64
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field {
    /// Prime field constructor; rejects composite moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime_u64(p) {
            Ok(Field::Prime(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rat(BigRational::zero()),
            Field::Prime(_) => FieldElem::Fp(0),
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rat(BigRational::one()),
            Field::Prime(_) => FieldElem::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rat(BigRational::from(BigInt::from(n))),
            Field::Prime(p) => FieldElem::Fp((n.rem_euclid(*p as i64)) as u64),
        }
    }

    /// a/b as a field element; errors when b maps to zero.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElem> {
        let d = self.from_i64(den);
        if self.is_zero(&d) {
            return Err(AlgebraError::DivisionByZero);
        }
        self.div(&self.from_i64(num), &d)
    }

    fn expect_fp(&self, a: &FieldElem) -> u64 {
        match a {
            FieldElem::Fp(v) => *v,
            FieldElem::Rat(_) => panic!("rational element used in a prime field"),
        }
    }

    fn matches(&self, a: &FieldElem) -> bool {
        matches!(
            (self, a),
            (Field::Rationals, FieldElem::Rat(_)) | (Field::Prime(_), FieldElem::Fp(_))
        )
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Rat(r) => r.is_zero(),
            FieldElem::Fp(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (Field::Rationals, FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(x + y),
            (Field::Prime(p), FieldElem::Fp(x), FieldElem::Fp(y)) => {
                FieldElem::Fp(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => panic!("mixed field tags"),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match (self, a) {
            (Field::Rationals, FieldElem::Rat(x)) => FieldElem::Rat(-x),
            (Field::Prime(p), FieldElem::Fp(x)) => FieldElem::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("mixed field tags"),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (Field::Rationals, FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(x * y),
            (Field::Prime(p), FieldElem::Fp(x), FieldElem::Fp(y)) => {
                FieldElem::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("mixed field tags"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (Field::Rationals, FieldElem::Rat(x)) => Some(FieldElem::Rat(x.recip())),
            (Field::Prime(p), FieldElem::Fp(_)) => {
                // Fermat: a^(p-2) mod p
                let x = self.expect_fp(a);
                let mut acc = 1u64;
                let mut base = x % p;
                let mut exp = p - 2;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = ((acc as u128 * base as u128) % *p as u128) as u64;
                    }
                    base = ((base as u128 * base as u128) % *p as u128) as u64;
                    exp >>= 1;
                }
                Some(FieldElem::Fp(acc))
            }
            _ => panic!("mixed field tags"),
        }
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        let inv = self.inv(b).ok_or(AlgebraError::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    /// The spec-level fallible entry point: checks field tags and zero divisors.
    pub fn arith(&self, a: &FieldElem, b: &FieldElem, op: FieldOp) -> Result<FieldElem> {
        if !self.matches(a) || !self.matches(b) {
            return Err(AlgebraError::MixedFields);
        }
        match op {
            FieldOp::Add => Ok(self.add(a, b)),
            FieldOp::Sub => Ok(self.sub(a, b)),
            FieldOp::Mul => Ok(self.mul(a, b)),
            FieldOp::Div => self.div(a, b),
        }
    }

    pub fn display(&self, a: &FieldElem) -> String {
        match a {
            FieldElem::Rat(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            FieldElem::Fp(v) => format!("{v}"),
        }
    }

    /// All field elements, for finite fields only (enumeration oracles).
    pub fn enumerate(&self) -> Option<Vec<FieldElem>> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..*p).map(FieldElem::Fp).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}
