use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact field. Elements are plain values; the field instance carries any
/// parameters (the modulus for prime fields).
pub trait Field: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + Eq + Ord + Hash;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Text form used in exported systems.
    fn render(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// The rational numbers with arbitrary-precision numerator and denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
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

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }

    fn render(&self, a: &BigRational) -> String {
        format_rational(a)
    }
}

/// Canonical representative of an element of a prime field, in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp(u64);

impl Fp {
    pub fn value(self) -> u64 {
        self.0
    }
}

/// The prime field `F_p`. Primes are limited to 32 bits so products fit in
/// a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> Fp {
        Fp(v % self.p)
    }

    /// Reduces an integer into the field.
    pub fn from_bigint(&self, v: &BigInt) -> Fp {
        let r = v.mod_floor(&BigInt::from(self.p));
        Fp(r.try_into().expect("residue below p fits in u64"))
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = Fp;

    fn zero(&self) -> Fp {
        Fp(0)
    }

    fn one(&self) -> Fp {
        Fp(1 % self.p)
    }

    fn from_i64(&self, v: i64) -> Fp {
        Fp(v.rem_euclid(self.p as i64) as u64)
    }

    fn is_zero(&self, a: &Fp) -> bool {
        a.0 == 0
    }

    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        Fp((a.0 + b.0) % self.p)
    }

    fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        Fp((a.0 + self.p - b.0) % self.p)
    }

    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        Fp(a.0 * b.0 % self.p)
    }

    fn neg(&self, a: &Fp) -> Fp {
        Fp((self.p - a.0) % self.p)
    }

    fn inv(&self, a: &Fp) -> Fp {
        assert!(a.0 != 0, "inverse of zero");
        Fp(self.pow(a.0, self.p - 2))
    }

    fn render(&self, a: &Fp) -> String {
        a.0.to_string()
    }
}

/// Parses `-?[0-9]+(/[1-9][0-9]*)?` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = num.parse().map_err(|_| bad())?;
    let denom = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || d.starts_with('0') || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
    };
    Ok(BigRational::new(numer, denom))
}

/// Formats a rational as `p` or `p/q` in lowest terms.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        debug_assert!(r.denom().is_positive());
        format!("{}/{}", r.numer(), r.denom())
    }
}
