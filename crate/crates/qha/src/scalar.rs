//! Exact scalar arithmetic over the rationals or a prime field.
//!
//! Every computation in this crate reduces to linear algebra over one of
//! these fields, so correctness here is load-bearing: no rounding ever
//! happens, and division is only performed by provably nonzero elements.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::QhaError;

/// The coefficient field of an algebra or module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// The rational numbers with arbitrary-precision integers.
    Rationals,
    /// The prime field `F_p`.
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// Validates that `p` is prime and builds `F_p`.
    pub fn prime(p: u64) -> Result<Field, QhaError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(QhaError::NotPrime(p))
        }
    }

    /// Parses the interchange syntax `Q` or `Fp:<p>`.
    pub fn parse_spec(s: &str) -> Result<Field, QhaError> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| QhaError::BadFieldSpec(s.to_string()))?;
            return Field::prime(p);
        }
        Err(QhaError::BadFieldSpec(s.to_string()))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::one()),
            Field::Prime(p) => Scalar::Fp { v: 1, p: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { v: m, p: *p }
            }
        }
    }

    /// Builds `num/den`; `den` must be nonzero and invertible mod p.
    pub fn from_fraction(&self, num: i64, den: i64) -> Result<Scalar, QhaError> {
        if den == 0 {
            return Err(QhaError::DivisionByZero);
        }
        match self {
            Field::Rationals => Ok(Scalar::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            Field::Prime(_) => {
                let d = self.from_i64(den);
                let inv = d.inverse().ok_or(QhaError::DivisionByZero)?;
                Ok(self.from_i64(num).mul(&inv))
            }
        }
    }

    /// `0` for the rationals, `p` for `F_p`.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn spec_string(&self) -> String {
        match self {
            Field::Rationals => "Q".to_string(),
            Field::Prime(p) => format!("Fp:{p}"),
        }
    }
}

/// An element of the active field. Arithmetic between elements of distinct
/// fields is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: (a + b) % p, p: *p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { v, p } => Scalar::Fp { v: (p - v) % p, p: *p },
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rat(a) => Some(Scalar::Rat(a.recip())),
            Scalar::Fp { v, p } => {
                // extended Euclid on (v, p)
                let (mut r0, mut r1) = (*v as i128, *p as i128);
                let (mut s0, mut s1) = (1i128, 0i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                }
                debug_assert_eq!(r0, 1);
                let inv = s0.rem_euclid(*p as i128) as u64;
                Some(Scalar::Fp { v: inv, p: *p })
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inverse().expect("division by zero"))
    }

    /// Interprets the scalar as a rational when possible (used by trace
    /// arguments that need a characteristic-zero value).
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

/// Renders a coefficient for the relations syntax, e.g. `-3/2`.
pub fn coefficient_string(s: &Scalar) -> String {
    match s {
        Scalar::Rat(r) => {
            let sign = if r.is_negative() { "-" } else { "" };
            let a = r.abs();
            if a.denom().is_one() {
                format!("{sign}{}", a.numer())
            } else {
                format!("{sign}{}/{}", a.numer(), a.denom())
            }
        }
        Scalar::Fp { v, .. } => format!("{v}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_spec_roundtrip() {
        assert_eq!(Field::parse_spec("Q").unwrap(), Field::Rationals);
        assert_eq!(Field::parse_spec("Fp:7").unwrap(), Field::Prime(7));
        assert!(Field::parse_spec("Fp:6").is_err());
        assert!(Field::parse_spec("R").is_err());
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let f = Field::Rationals;
        let third = f.from_fraction(1, 3).unwrap();
        let sum = third.add(&third).add(&third);
        assert!(sum.is_one());
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::prime(97).unwrap();
        for n in 1..97 {
            let x = f.from_i64(n);
            let inv = x.inverse().unwrap();
            assert!(x.mul(&inv).is_one());
        }
        assert!(f.zero().inverse().is_none());
    }

    #[test]
    fn negation_wraps_mod_p() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.from_i64(-3), f.from_i64(2));
        assert!(f.zero().neg().is_zero());
    }
}
