//! Exact scalar fields: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Smallest modulus accepted for prime-field mode (exclusive bound).
pub const MIN_MODULUS: u64 = 1 << 20;

/// A field in which all linear algebra is done exactly.
///
/// Elements are plain values; the field itself carries whatever context
/// (the modulus) the arithmetic needs, in the style of a ring "store".
pub trait Field: Clone + Send + Sync + fmt::Debug + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Runtime description of this field.
    fn spec(&self) -> FieldSpec;

    /// Canonical textual form of an element, used in reports.
    fn format(&self, a: &Self::Elem) -> String;

    /// A uniformly random element (prime fields) or a small random integer
    /// in `[-9, 9]` (rationals).
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `dst[i] -= factor * src[i]` for every `i`.
    fn sub_scaled(&self, dst: &mut [Self::Elem], factor: &Self::Elem, src: &[Self::Elem]) {
        debug_assert_eq!(dst.len(), src.len());
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                *d = self.sub(d, &self.mul(factor, s));
            }
        }
    }

    /// `v[i] *= factor` for every `i`.
    fn scale(&self, v: &mut [Self::Elem], factor: &Self::Elem) {
        for x in v.iter_mut() {
            if !self.is_zero(x) {
                *x = self.mul(x, factor);
            }
        }
    }

    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        let mut acc = self.zero();
        for (x, y) in a.iter().zip(b) {
            if !self.is_zero(x) && !self.is_zero(y) {
                acc = self.add(&acc, &self.mul(x, y));
            }
        }
        acc
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Which exact field a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Rationals,
    PrimeField { modulus: u64 },
}

impl FieldSpec {
    pub fn prime(modulus: u64) -> Result<Self, Error> {
        PrimeField::new(modulus).map(|f| f.spec())
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField { modulus } => Some(*modulus),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "rationals"),
            FieldSpec::PrimeField { modulus } => write!(f, "fp:{modulus}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "rationals" {
            return Ok(FieldSpec::Rationals);
        }
        let Some(p) = s.strip_prefix("fp:") else {
            return Err(Error::InvalidField(format!("unrecognized field '{s}'")));
        };
        let modulus: u64 = p
            .parse()
            .map_err(|_| Error::InvalidField(format!("bad modulus '{p}'")))?;
        FieldSpec::prime(modulus)
    }
}

/// The prime field with `modulus` elements. Elements are least nonnegative
/// residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    modulus: u64,
    // products of two residues fit in a u64
    small: bool,
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self, Error> {
        if modulus <= MIN_MODULUS {
            return Err(Error::InvalidField(format!(
                "modulus {modulus} must exceed 2^20"
            )));
        }
        if modulus >= 1 << 63 {
            return Err(Error::InvalidField(format!(
                "modulus {modulus} must be below 2^63"
            )));
        }
        if !is_prime(modulus) {
            return Err(Error::InvalidField(format!("modulus {modulus} is not prime")));
        }
        Ok(PrimeField {
            modulus,
            small: modulus < 1 << 32,
        })
    }

    /// Draws a random prime in `[2^30, 2^31)`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let candidate = rng.gen_range((1u64 << 30)..(1u64 << 31)) | 1;
            if is_prime(candidate) {
                return PrimeField::new(candidate).expect("candidate is a valid prime");
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    fn mulmod(&self, a: u64, b: u64) -> u64 {
        if self.small {
            a * b % self.modulus
        } else {
            ((a as u128 * b as u128) % self.modulus as u128) as u64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }

    #[inline]
    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.modulus as i64) as u64
    }

    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulmod(*a, *b)
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        Some(self.pow(a, self.modulus - 2))
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField {
            modulus: self.modulus,
        }
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.modulus)
    }

    fn sub_scaled(&self, dst: &mut [u64], factor: &u64, src: &[u64]) {
        debug_assert_eq!(dst.len(), src.len());
        let p = self.modulus;
        if *factor == 0 {
            return;
        }
        if self.small {
            let f = *factor;
            for (d, &s) in dst.iter_mut().zip(src) {
                // p - f*s mod p lies in [1, p]; the sum stays below 2^33
                let t = *d + p - f * s % p;
                *d = if t >= p { t - p } else { t };
            }
        } else {
            for (d, &s) in dst.iter_mut().zip(src) {
                if s != 0 {
                    *d = self.sub(d, &self.mulmod(*factor, s));
                }
            }
        }
    }
}

/// The field of rational numbers with arbitrary-precision numerators and
/// denominators, always kept in lowest terms.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-9..=9))
    }
}

/// Parses a rational literal such as `3`, `-7` or `5/12`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Maps a rational into a prime field. Fails when the denominator vanishes
/// modulo the prime.
pub fn rational_to_prime(field: &PrimeField, r: &BigRational) -> Option<u64> {
    let p = BigInt::from(field.modulus());
    let reduce = |x: &BigInt| -> u64 {
        let m = x % &p;
        let m = if m.is_negative() { m + &p } else { m };
        m.to_u64().expect("residue fits in u64")
    };
    let num = reduce(r.numer());
    let den = reduce(r.denom());
    field.inv(&den).map(|inv| field.mul(&num, &inv))
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in SMALL {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
