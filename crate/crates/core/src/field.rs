//! Exact scalar domains.
//!
//! A [`Field`] is a small context value (the rationals, or `F_p` for a
//! runtime prime `p`) that hands out elements of its [`Field::Elem`] type.
//! Element arithmetic goes through the ordinary operator traits, so the
//! tensor code is generic over any exact field.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("modulus {0} exceeds 2^31")]
    ModulusTooLarge(u64),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("denominator vanishes in characteristic {0}")]
    ZeroDenominator(u64),
}

/// Which exact domain a package lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p > (1u64 << 31) {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NonPrimeModulus(p));
        }
        Ok(FieldSpec::PrimeField(p as u32))
    }

    /// Short tag used in witness file names: `Q` or `F5`.
    pub fn tag(&self) -> String {
        match self {
            FieldSpec::Rationals => "Q".to_string(),
            FieldSpec::PrimeField(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "Fp {p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts `Q`, `Fp 5`, `Fp5` and `F5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let rest = t
            .strip_prefix("Fp")
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| FieldError::BadScalar(t.to_string()))?;
        let p: u64 = rest
            .trim()
            .parse()
            .map_err(|_| FieldError::BadScalar(t.to_string()))?;
        FieldSpec::prime(p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Element-level operations every exact scalar provides.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn is_zero_elem(&self) -> bool;
    fn inverse(&self) -> Option<Self>;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Signed + Hash + fmt::Debug + fmt::Display + Send + Sync,
{
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// A scalar domain. Values of the implementing type are cheap contexts.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Scalar;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn characteristic(&self) -> u64;
    /// Every element, in a fixed order, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    /// Uniform over `F_p`; small integers in [-3, 3] over the rationals.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, FieldError>;

    fn from_ratio(&self, num: i64, den: i64) -> Result<Self::Elem, FieldError> {
        let d = self
            .from_i64(den)
            .inverse()
            .ok_or(FieldError::ZeroDenominator(self.characteristic()))?;
        Ok(self.from_i64(num) * d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-3..=3))
    }
    fn parse_elem(&self, s: &str) -> Result<BigRational, FieldError> {
        let bad = || FieldError::BadScalar(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(FieldError::ZeroDenominator(0));
        }
        Ok(BigRational::new(n, d))
    }
}

/// Residue class modulo a prime, stored canonically in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zp {
    v: u32,
    p: u32,
}

impl Zp {
    pub fn new(v: i64, p: u32) -> Self {
        Zp {
            v: v.rem_euclid(p as i64) as u32,
            p,
        }
    }
    pub fn value(&self) -> u32 {
        self.v
    }
    pub fn modulus(&self) -> u32 {
        self.p
    }
    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Zp { v: 1 % self.p, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}mod{}", self.v, self.p)
    }
}

impl fmt::Display for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Zp {
    type Output = Zp;
    fn add(self, o: Zp) -> Zp {
        debug_assert_eq!(self.p, o.p);
        let s = self.v as u64 + o.v as u64;
        Zp {
            v: (s % self.p as u64) as u32,
            p: self.p,
        }
    }
}

impl Sub for Zp {
    type Output = Zp;
    fn sub(self, o: Zp) -> Zp {
        self + (-o)
    }
}

impl Neg for Zp {
    type Output = Zp;
    fn neg(self) -> Zp {
        Zp {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
}

impl Mul for Zp {
    type Output = Zp;
    fn mul(self, o: Zp) -> Zp {
        debug_assert_eq!(self.p, o.p);
        Zp {
            v: ((self.v as u64 * o.v as u64) % self.p as u64) as u32,
            p: self.p,
        }
    }
}

impl Scalar for Zp {
    fn is_zero_elem(&self) -> bool {
        self.v == 0
    }
    fn inverse(&self) -> Option<Zp> {
        if self.v == 0 {
            None
        } else {
            Some(self.pow(self.p as u64 - 2))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        match FieldSpec::prime(p)? {
            FieldSpec::PrimeField(p) => Ok(PrimeField { p }),
            FieldSpec::Rationals => unreachable!(),
        }
    }
    pub fn modulus(&self) -> u32 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = Zp;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    fn zero(&self) -> Zp {
        Zp { v: 0, p: self.p }
    }
    fn one(&self) -> Zp {
        Zp { v: 1, p: self.p }
    }
    fn from_i64(&self, n: i64) -> Zp {
        Zp::new(n, self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn elements(&self) -> Option<Vec<Zp>> {
        Some((0..self.p).map(|v| Zp { v, p: self.p }).collect())
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Zp {
        Zp {
            v: rng.gen_range(0..self.p),
            p: self.p,
        }
    }
    fn parse_elem(&self, s: &str) -> Result<Zp, FieldError> {
        let bad = || FieldError::BadScalar(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        self.from_ratio(n, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_guard() {
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert_eq!(FieldSpec::prime(7).unwrap(), FieldSpec::PrimeField(7));
        assert!(matches!(
            FieldSpec::prime((1u64 << 31) + 11),
            Err(FieldError::ModulusTooLarge(_))
        ));
        assert_eq!(FieldSpec::prime(2147483647).unwrap(), FieldSpec::PrimeField(2147483647));
    }

    #[test]
    fn prime_field_inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in f.elements().unwrap().into_iter().skip(1) {
            assert_eq!(a * a.inverse().unwrap(), f.one());
        }
        assert_eq!(f.from_i64(-1).value(), 6);
        assert_eq!(f.parse_elem("1/2").unwrap(), f.from_i64(4));
        assert!(f.parse_elem("1/7").is_err());
    }

    #[test]
    fn rational_canonical_form() {
        let q = Rationals;
        let x = q.parse_elem("6/-4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(q.parse_elem("4/2").unwrap().to_string(), "2");
        assert_eq!((x.clone() - x).to_string(), "0");
    }

    #[test]
    fn field_spec_text() {
        for s in ["Q", "Fp 5", "Fp 2147483647"] {
            let f: FieldSpec = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert_eq!("F5".parse::<FieldSpec>().unwrap().tag(), "F5");
    }
}
