//! Exact scalars: arbitrary-precision rationals and residues modulo `n`.
//!
//! The active coefficient ring is a runtime value ([`Ring`]) because algebra
//! documents declare it. Mixing scalars from different rings in one
//! arithmetic operation is a programming error and panics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("malformed scalar literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("`{value}` is not representable in Z/{modulus}")]
    NotRepresentable { value: String, modulus: u64 },
    #[error("unknown scalar ring `{0}` (expected `Q` or `Zmod:<n>`)")]
    UnknownRing(String),
}

/// Coefficient ring descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Rational,
    Zmod(u64),
}

impl Ring {
    pub fn is_field(self) -> bool {
        match self {
            Ring::Rational => true,
            Ring::Zmod(n) => is_prime(n),
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Ring::Rational => Scalar::Q(Rational::zero()),
            Ring::Zmod(n) => Scalar::Mod { value: 0, modulus: n },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Ring::Rational => Scalar::Q(Rational::one()),
            Ring::Zmod(n) => Scalar::Mod { value: 1 % n, modulus: n },
        }
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Ring::Rational => Scalar::Q(Rational::from_integer(BigInt::from(v))),
            Ring::Zmod(n) => Scalar::Mod { value: v.rem_euclid(n as i64) as u64, modulus: n },
        }
    }

    /// Maps a rational into the ring. For `Z/n` the denominator must be a unit.
    pub fn from_rational(self, r: &Rational) -> Result<Scalar, ScalarError> {
        match self {
            Ring::Rational => Ok(Scalar::Q(r.clone())),
            Ring::Zmod(n) => {
                let m = BigInt::from(n);
                let num = r.numer().mod_floor(&m).to_u64().unwrap_or(0);
                let den = r.denom().mod_floor(&m).to_u64().unwrap_or(0);
                let inv = mod_inverse(den, n).ok_or_else(|| ScalarError::NotRepresentable {
                    value: r.to_string(),
                    modulus: n,
                })?;
                Ok(Scalar::Mod { value: mul_mod(num, inv, n), modulus: n })
            }
        }
    }

    /// Parses a scalar written as `p`, `-p` or `p/q`.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar, ScalarError> {
        let r = parse_rational(text)?;
        self.from_rational(&r)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rational => write!(f, "Q"),
            Ring::Zmod(n) => write!(f, "Zmod:{n}"),
        }
    }
}

impl FromStr for Ring {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Ring::Rational);
        }
        if let Some(n) = s.strip_prefix("Zmod:") {
            if let Ok(n) = n.trim().parse::<u64>() {
                if n >= 2 && n <= u32::MAX as u64 {
                    return Ok(Ring::Zmod(n));
                }
            }
        }
        Err(ScalarError::UnknownRing(s.to_string()))
    }
}

/// Parses `p`, `-p`, `p/q` or `-p/q` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let valid = |s: &str, signed: bool| {
        let digits = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return Err(ScalarError::Malformed(t.to_string()));
    }
    let n: BigInt = num.parse().map_err(|_| ScalarError::Malformed(t.to_string()))?;
    let d: BigInt = den.parse().map_err(|_| ScalarError::Malformed(t.to_string()))?;
    if d.is_zero() {
        return Err(ScalarError::ZeroDenominator(t.to_string()));
    }
    Ok(Rational::new(n, d))
}

/// Renders a rational as `p` when integral, else `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An element of the active coefficient ring.
///
/// Rationals are kept in lowest terms with positive denominator (guaranteed
/// by `BigRational`); residues live in `[0, modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Q(_) => Ring::Rational,
            Scalar::Mod { modulus, .. } => Ring::Zmod(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Mod { value, modulus } => *value == 1 % *modulus,
        }
    }

    /// Multiplicative inverse, if it exists in the ring.
    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(r) if r.is_zero() => None,
            Scalar::Q(r) => Some(Scalar::Q(r.recip())),
            Scalar::Mod { value, modulus } => {
                mod_inverse(*value, *modulus).map(|v| Scalar::Mod { value: v, modulus: *modulus })
            }
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    /// Residue representative; `None` for rationals.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Q(_) => None,
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.ring().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Q(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => f.write_str(&format_rational(r)),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar ring mismatch: {} vs {}", a.ring(), b.ring())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Mod { value: a, modulus: n }, Scalar::Mod { value: b, modulus: m }) if n == m => {
                Scalar::Mod { value: ((*a as u128 + *b as u128) % *n as u128) as u64, modulus: *n }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Mod { value: a, modulus: n }, Scalar::Mod { value: b, modulus: m }) if n == m => {
                Scalar::Mod { value: mul_mod(*a, *b, *n), modulus: *n }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Mod { value, modulus } => {
                Scalar::Mod { value: (*modulus - *value) % *modulus, modulus: *modulus }
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
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

pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Extended gcd on signed integers: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub(crate) fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a as i128, n as i128);
    (g == 1).then(|| s.rem_euclid(n as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Convenience constructor for a rational scalar from an integer pair.
pub fn q(num: i64, den: i64) -> Scalar {
    Scalar::Q(Rational::new(BigInt::from(num), BigInt::from(den)))
}

/// Convenience constructor for an integral rational.
pub fn qi(v: i64) -> Scalar {
    q(v, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let r = parse_rational("4/-2");
        assert!(r.is_err());
        let r = parse_rational("-4/6").unwrap();
        assert_eq!(format_rational(&r), "-2/3");
        assert_eq!(format_rational(&parse_rational("6/3").unwrap()), "2");
        assert!(matches!(parse_rational("1/0"), Err(ScalarError::ZeroDenominator(_))));
    }

    #[test]
    fn residues_are_canonical() {
        let z6 = Ring::Zmod(6);
        assert_eq!(z6.from_i64(-1).residue(), Some(5));
        let a = z6.from_i64(4);
        let b = z6.from_i64(5);
        assert_eq!((&a + &b).residue(), Some(3));
        assert_eq!((&a * &b).residue(), Some(2));
        assert_eq!((-&a).residue(), Some(2));
        assert_eq!(a.inverse(), None);
        assert_eq!(b.inverse().unwrap().residue(), Some(5));
        assert!(z6.parse_scalar("1/2").is_err());
        assert_eq!(Ring::Zmod(7).parse_scalar("1/2").unwrap().residue(), Some(4));
    }

    #[test]
    fn ring_parsing() {
        assert_eq!("Q".parse::<Ring>().unwrap(), Ring::Rational);
        assert_eq!("Zmod:6".parse::<Ring>().unwrap(), Ring::Zmod(6));
        assert!("Zmod:1".parse::<Ring>().is_err());
        assert!("R".parse::<Ring>().is_err());
        assert!(Ring::Zmod(7).is_field());
        assert!(!Ring::Zmod(6).is_field());
    }

    #[test]
    #[should_panic(expected = "ring mismatch")]
    fn mixing_rings_panics() {
        let _ = &qi(1) + &Ring::Zmod(5).one();
    }
}
