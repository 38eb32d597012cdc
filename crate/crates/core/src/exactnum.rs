//! Exact arithmetic in the quadratic field `Q(sqrt 2)`.
//!
//! Every coordinate, breakpoint and function coefficient in the crate is a
//! [`Scalar`] `a + b*sqrt(2)` with rational `a`, `b`. Rationals are backed by
//! arbitrary-precision integers, so no operation can overflow.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `rat + irr * sqrt(2)`. The representation is unique, so structural
/// equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    rat: Rational,
    irr: Rational,
}

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

impl Scalar {
    pub fn new(rat: Rational, irr: Rational) -> Self {
        Scalar { rat, irr }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    pub fn int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(n.into()))
    }

    /// `numer / denom`; panics on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Scalar::from_rational(rational(numer, denom))
    }

    pub fn from_rational(rat: Rational) -> Self {
        Scalar {
            rat,
            irr: Rational::zero(),
        }
    }

    /// `sqrt(2)`.
    pub fn sqrt2() -> Self {
        Scalar {
            rat: Rational::zero(),
            irr: Rational::one(),
        }
    }

    pub fn rat(&self) -> &Rational {
        &self.rat
    }

    pub fn irr(&self) -> &Rational {
        &self.irr
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    /// Exact sign of `rat + irr*sqrt(2)`.
    pub fn signum(&self) -> Ordering {
        let r = self.rat.cmp(&Rational::zero());
        let s = self.irr.cmp(&Rational::zero());
        match (r, s) {
            (r, Ordering::Equal) => r,
            (Ordering::Equal, s) => s,
            (r, s) if r == s => r,
            // Opposite signs: compare rat^2 against 2 irr^2.
            (r, _) => {
                let lhs = &self.rat * &self.rat;
                let rhs = &self.irr * &self.irr * Rational::from_integer(2.into());
                match lhs.cmp(&rhs) {
                    Ordering::Equal => Ordering::Equal,
                    Ordering::Greater => r,
                    Ordering::Less => r.reverse(),
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate `rat - irr*sqrt(2)`.
    pub fn conjugate(&self) -> Scalar {
        Scalar {
            rat: self.rat.clone(),
            irr: -&self.irr,
        }
    }

    /// Field norm `rat^2 - 2 irr^2`, zero only for zero.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - &self.irr * &self.irr * Rational::from_integer(2.into())
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(Scalar {
            rat: c.rat / &n,
            irr: c.irr / n,
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.recip()?)
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Average of two scalars.
    pub fn midpoint(&self, other: &Scalar) -> Scalar {
        (self + other) * &Scalar::ratio(1, 2)
    }

    /// Largest integer `n` with `n <= self`.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.rat.floor().to_integer();
        }
        // floor(irr*sqrt2) from an integer square root, then correct the
        // combined estimate, which is off by at most two.
        let two_s2 = (&self.irr * &self.irr * Rational::from_integer(2.into()))
            .floor()
            .to_integer();
        let root = two_s2.sqrt();
        let irr_floor = if self.irr.is_positive() { root } else { -root - 1 };
        let mut n = self.rat.floor().to_integer() + irr_floor;
        let as_scalar = |n: &BigInt| Scalar::from_rational(Rational::from_integer(n.clone()));
        while as_scalar(&n) > *self {
            n -= 1;
        }
        while as_scalar(&(&n + 1)) <= *self {
            n += 1;
        }
        n
    }

    /// Smallest integer `n` with `n >= self`.
    pub fn ceil(&self) -> BigInt {
        -((-self).floor())
    }

    /// Reduction modulo 1 into `[0, 1)`.
    pub fn fract(&self) -> Scalar {
        self - &Scalar::from_rational(Rational::from_integer(self.floor()))
    }

    pub fn from_bigint(n: BigInt) -> Scalar {
        Scalar::from_rational(Rational::from_integer(n))
    }

    /// Nearest double; for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        let r = self.rat.to_f64().unwrap_or(f64::NAN);
        let s = self.irr.to_f64().unwrap_or(f64::NAN);
        r + s * std::f64::consts::SQRT_2
    }
}

/// `compare` on scalars: the exact order of the real embedding.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.irr == other.irr {
            return self.rat.cmp(&other.rat);
        }
        (self - other).signum()
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            rat: -&self.rat,
            irr: -&self.irr,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            rat: &self.rat + &rhs.rat,
            irr: &self.irr + &rhs.irr,
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            rat: &self.rat - &rhs.rat,
            irr: &self.irr - &rhs.irr,
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let two = Rational::from_integer(2.into());
        Scalar {
            rat: &self.rat * &rhs.rat + &self.irr * &rhs.irr * two,
            irr: &self.rat * &rhs.irr + &self.irr * &rhs.rat,
        }
    }
}

/// Panics on division by zero, like the primitive types; use
/// [`Scalar::checked_div`] where the divisor is not known to be nonzero.
impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("Scalar division by zero")
    }
}

macro_rules! forward_binop {
    ($($imp:ident $method:ident),*) => {$(
        impl $imp<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $imp<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_binop!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.rat += &rhs.rat;
        self.irr += &rhs.irr;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

fn fmt_coefficient(r: &Rational) -> String {
    if r.is_one() {
        String::new()
    } else if (-r).is_one() {
        "-".into()
    } else {
        format!("{} ", fmt_rational(r))
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Literal grammar: `INT`, `INT/INT`, `INT/INT + INT/INT r2`, with either
/// component optional (`r2`, `-3/2 r2`, `1 + r2`).
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.irr.is_zero()) {
            (_, true) => f.write_str(&fmt_rational(&self.rat)),
            (true, false) => write!(f, "{}r2", fmt_coefficient(&self.irr)),
            (false, false) => write!(
                f,
                "{} + {}r2",
                fmt_rational(&self.rat),
                fmt_coefficient(&self.irr)
            ),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(src: &str, whole: &str) -> Result<Rational> {
    let bad = || Error::BadLiteral(whole.to_string());
    let int = |s: &str| -> Result<BigInt> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    match src.split_once('/') {
        None => Ok(Rational::from_integer(int(src)?)),
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(int(n)?, d))
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::BadLiteral(s.to_string()));
        }
        let Some(body) = compact.strip_suffix("r2") else {
            return Ok(Scalar::from_rational(parse_rational(&compact, s)?));
        };
        let (rat_part, irr_part) = match body.rfind('+') {
            Some(i) => (&body[..i], &body[i + 1..]),
            None => ("", body),
        };
        let rat = if rat_part.is_empty() {
            if body.contains('+') {
                return Err(Error::BadLiteral(s.to_string()));
            }
            Rational::zero()
        } else {
            parse_rational(rat_part, s)?
        };
        let irr = match irr_part {
            "" => Rational::one(),
            "-" => -Rational::one(),
            _ => parse_rational(irr_part, s)?,
        };
        Ok(Scalar { rat, irr })
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Greatest common divisor check used by tests and debug assertions.
pub fn is_canonical(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(src: &str) -> Scalar {
        src.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(s("1/2") + s("1/2"), s("1"));
        assert_eq!(s("r2") + s("-1 r2"), Scalar::zero());
        assert_eq!(s("1/3 + 1/2 r2") + s("1/6 + 1/2 r2"), s("1/2 + 1 r2"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(Scalar::sqrt2() * Scalar::sqrt2(), s("2"));
        let x = s("3/7 + -5/2 r2");
        assert_eq!(Scalar::one() * &x, x);
        assert_eq!(s("1 + r2") * s("1 + -r2"), s("-1"));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(s("1").cmp(&s("1")), Ordering::Equal);
        assert_eq!(s("r2").cmp(&s("3/2")), Ordering::Less);
        assert_eq!(s("r2").cmp(&s("7/5")), Ordering::Greater);
        assert!(s("-r2") < s("-7/5"));
    }

    #[test]
    fn rationality() {
        assert!(s("3/7").is_rational());
        assert!(!s("r2").is_rational());
        assert!(!s("1/2 + 1/3 r2").is_rational());
    }

    #[test]
    fn literal_grammar() {
        assert_eq!(s(" 1 / 2 + 1 / 3 r2 "), Scalar::new(rational(1, 2), rational(1, 3)));
        assert_eq!(s("-r2"), -Scalar::sqrt2());
        assert_eq!(s("2 + r2"), Scalar::int(2) + Scalar::sqrt2());
        assert_eq!(s("4/8"), s("1/2"));
        for bad in ["", "1/0", "x", "1/2/3", "+r2", "1 + ", "r3"] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad:?} should not parse");
        }
        for x in ["0", "-3", "5/7", "r2", "-r2", "1 + r2", "-2/3 r2", "1/2 + -1/3 r2"] {
            assert_eq!(s(x).to_string(), x);
        }
    }

    #[test]
    fn floor_and_fract() {
        assert_eq!(s("r2").floor(), BigInt::from(1));
        assert_eq!(s("-r2").floor(), BigInt::from(-2));
        assert_eq!(s("7/2").floor(), BigInt::from(3));
        assert_eq!(s("-7/2").ceil(), BigInt::from(-3));
        assert_eq!(s("3 + r2").fract(), s("-1 + r2"));
        assert_eq!(s("-1/4").fract(), s("3/4"));
    }

    #[test]
    fn reciprocal() {
        let x = s("1 + r2");
        assert_eq!(&x * &x.recip().unwrap(), Scalar::one());
        assert_eq!(Scalar::zero().recip(), Err(Error::DivisionByZero));
    }
}
