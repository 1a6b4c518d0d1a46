//! Scalar fields for the exact linear algebra in the ring and complex labs.
//!
//! Everything rank-related is generic over [`Field`]. Two backends ship:
//! arbitrary-precision rationals and residues modulo a word-sized prime.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};

/// An exact commutative field usable by the elimination routines.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    /// Short human-readable descriptor, e.g. `"rational"` or `"prime:2147483647"`.
    fn descriptor() -> String;

    /// Characteristic of the field (0 for the rationals).
    fn characteristic() -> u64;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Embeds an arbitrary integer.
    fn from_bigint(n: &BigInt) -> Self;

    /// `self -= factor * other`, the inner step of every elimination.
    fn sub_mul_assign(&mut self, factor: &Self, other: &Self) {
        let prod = factor.clone() * other.clone();
        *self = self.clone() - prod;
    }
}

impl Field for BigRational {
    fn descriptor() -> String {
        "rational".to_string()
    }

    fn characteristic() -> u64 {
        0
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

/// Residue class modulo the prime `P` (which must be below 2^32).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in F_{P}");
        self * rhs.pow(P - 2)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> FromPrimitive for Fp<P> {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Fp::new(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Fp(n % P))
    }
}

impl<const P: u64> Field for Fp<P> {
    fn descriptor() -> String {
        format!("prime:{P}")
    }

    fn characteristic() -> u64 {
        P
    }

    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero in F_{P}");
        self.pow(P - 2)
    }

    fn from_bigint(n: &BigInt) -> Self {
        let m = BigInt::from(P);
        let r = ((n % &m) + &m) % &m;
        let (_, digits) = r.to_u64_digits();
        Fp(digits.first().copied().unwrap_or(0))
    }

    fn sub_mul_assign(&mut self, factor: &Self, other: &Self) {
        let prod = factor.0 * other.0 % P;
        self.0 = if self.0 >= prod { self.0 - prod } else { self.0 + P - prod };
    }
}

/// The default prime 2^31 - 1.
pub const MERSENNE_31: u64 = 2_147_483_647;
/// Fallback primes used when a computation over the default prime looks unlucky.
pub const PRIME_B: u64 = 2_147_483_629;
pub const PRIME_C: u64 = 2_147_483_587;

/// The smallest prime the labs accept; below it random coefficients collide too often.
pub const MIN_CHARACTERISTIC: u64 = 1 << 20;

/// Which scalar backend a lab computation ran over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

impl FieldKind {
    pub fn descriptor(self) -> String {
        match self {
            FieldKind::Rational => "rational".to_string(),
            FieldKind::Prime(p) => format!("prime:{p}"),
        }
    }

    /// Primes with a compiled backend, in retry order.
    pub const SUPPORTED_PRIMES: [u64; 3] = [MERSENNE_31, PRIME_B, PRIME_C];

    pub fn parse(s: &str) -> Option<FieldKind> {
        let s = s.trim();
        if s == "rational" {
            return Some(FieldKind::Rational);
        }
        if s == "prime" {
            return Some(FieldKind::Prime(MERSENNE_31));
        }
        let p: u64 = s.strip_prefix("prime:")?.parse().ok()?;
        Some(FieldKind::Prime(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = Fp<MERSENNE_31>;

    #[test]
    fn prime_field_inverse() {
        for v in [1i64, 2, 3, 12345, -7, 2_147_483_646] {
            let x = F::new(v);
            assert_eq!(x * x.inv(), F::one());
        }
    }

    #[test]
    fn from_bigint_matches_new() {
        let n = BigInt::from(-123_456_789_012i64);
        assert_eq!(F::from_bigint(&n), F::new(-123_456_789_012i64 % MERSENNE_31 as i64));
    }

    #[test]
    fn supported_primes_are_prime() {
        for p in FieldKind::SUPPORTED_PRIMES {
            let mut d = 2u64;
            while d * d <= p {
                assert!(p % d != 0, "{p} divisible by {d}");
                d += 1;
            }
        }
    }

    #[test]
    fn parse_descriptor() {
        assert_eq!(FieldKind::parse("rational"), Some(FieldKind::Rational));
        assert_eq!(FieldKind::parse("prime:101"), Some(FieldKind::Prime(101)));
        assert_eq!(FieldKind::parse("prime"), Some(FieldKind::Prime(MERSENNE_31)));
        assert_eq!(FieldKind::parse("reals"), None);
    }
}
