//! Exact arithmetic in `ℚ(√D)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `a + b√D` with rational `a`, `b` and a square-free radicand `D > 1`.
///
/// Values with `b = 0` are plain rationals and combine with any radicand.
/// Mixing two irrational values over different radicands is a logic error
/// and panics.
#[derive(Clone, Debug)]
pub struct QuadExact {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl QuadExact {
    pub fn rational(a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn new(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() {
            return Self::rational(a);
        }
        assert!(d > 1, "radicand must exceed 1");
        Self { a, b, d }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn common_radicand(&self, other: &Self) -> u64 {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.d,
            (_, true) => self.d,
            _ => {
                assert_eq!(self.d, other.d, "mismatched radicands");
                self.d
            }
        }
    }

    /// `a - b√D`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone(), self.d)
    }

    /// `a² - D b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(self.d.into()) * &self.b * &self.b
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            // opposite signs: compare a² with D b²
            (x, _) => match self.norm().cmp(&BigRational::zero()) {
                Ordering::Greater => x,
                Ordering::Less => x.reverse(),
                Ordering::Equal => Ordering::Equal,
            },
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        let n = self.norm();
        Ok(Self::new(&self.a / &n, -&self.b / &n, self.d))
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.is_rational() {
            return a;
        }
        a + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// Compares against a double exactly (every finite `f64` is rational).
    pub fn cmp_f64(&self, x: f64) -> Option<Ordering> {
        let r = BigRational::from_float(x)?;
        Some((self.clone() - QuadExact::rational(r)).signum())
    }
}

impl PartialEq for QuadExact {
    fn eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
}

impl Eq for QuadExact {}

impl PartialOrd for QuadExact {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExact {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum()
    }
}

impl Add for QuadExact {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let d = self.common_radicand(&rhs);
        Self::new(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for QuadExact {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let d = self.common_radicand(&rhs);
        Self::new(self.a - rhs.a, self.b - rhs.b, d)
    }
}

impl Mul for QuadExact {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = self.common_radicand(&rhs);
        let dd = BigRational::from_integer(d.into());
        Self::new(
            &self.a * &rhs.a + dd * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        )
    }
}

impl Div for QuadExact {
    type Output = Self;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip().expect("division by zero")
    }
}

impl Neg for QuadExact {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, self.d)
    }
}

impl From<BigRational> for QuadExact {
    fn from(r: BigRational) -> Self {
        Self::rational(r)
    }
}

impl fmt::Display for QuadExact {
    /// Renders as `(p + q√D)/r` with integer `p`, `q`, `r`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let den = self.a.denom().lcm(self.b.denom());
        let p = self.a.numer() * (&den / self.a.denom());
        let q = self.b.numer() * (&den / self.b.denom());
        let surd = match q.magnitude().to_u64() {
            Some(1) => format!("√{}", self.d),
            _ => format!("{}√{}", q.magnitude(), self.d),
        };
        let sign = if q.sign() == Sign::Minus { "-" } else { "+" };
        let body = if p.is_zero() {
            if sign == "-" {
                format!("-{surd}")
            } else {
                surd
            }
        } else {
            format!("{p} {sign} {surd}")
        };
        if den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

/// Parses `"3"`, `"-7/4"` or `"1.25"` as an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let numer = BigInt::from_str(&digits).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let denom = num_traits::pow(BigInt::from(10u32), frac.len());
        if frac.chars().any(|c| !c.is_ascii_digit()) {
            return Err(Error::Parse(format!("{s:?} is not a decimal")));
        }
        return Ok(BigRational::new(numer, denom));
    }
    BigRational::from_str(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

/// Writes a positive integer `n` as `s² · d` with `d` square-free.
/// Gives up (returns `None`) if trial division would exceed `limit` steps.
pub fn square_free_split(n: &BigInt, limit: u64) -> Option<(BigInt, BigInt)> {
    if !n.is_positive() {
        return None;
    }
    let mut rest = n.clone();
    let mut root = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2u32);
    let mut steps = 0u64;
    while &p * &p <= rest {
        steps += 1;
        if steps > limit {
            return None;
        }
        let mut count = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        for _ in 0..count / 2 {
            root *= &p;
        }
        if count % 2 == 1 {
            free *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    free *= rest;
    Some((root, free))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn standard_m2() -> QuadExact {
        QuadExact::new(q(2, 3), q(1, 3), 13)
    }

    #[test]
    fn display_forms() {
        assert_eq!(standard_m2().to_string(), "(2 + √13)/3");
        assert_eq!(QuadExact::new(q(2, 3), q(-1, 3), 13).to_string(), "(2 - √13)/3");
        assert_eq!(QuadExact::new(q(0, 1), q(2, 1), 5).to_string(), "2√5");
        assert_eq!(QuadExact::rational(q(-7, 4)).to_string(), "-7/4");
    }

    #[test]
    fn ring_identities() {
        let m = standard_m2();
        let sq = m.clone() * m.clone();
        assert_eq!(sq, QuadExact::new(q(17, 9), q(4, 9), 13));
        let inv = m.recip().unwrap();
        assert_eq!(inv * m, QuadExact::from_integer(1));
    }

    #[test]
    fn ordering_is_exact() {
        let m = standard_m2();
        assert!(m > QuadExact::rational(q(186, 100)));
        assert!(m < QuadExact::rational(q(187, 100)));
        let other = QuadExact::new(q(2, 3), q(-1, 3), 13);
        assert_eq!(other.signum(), Ordering::Less);
        assert_eq!(m.cmp_f64(1.8685), Some(Ordering::Greater));
        assert_eq!(QuadExact::from_integer(2).cmp_f64(2.0), Some(Ordering::Equal));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("2").unwrap(), q(2, 1));
        assert_eq!(parse_rational("-7/4").unwrap(), q(-7, 4));
        assert_eq!(parse_rational("1.25").unwrap(), q(5, 4));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2x").is_err());
    }

    #[test]
    fn square_free() {
        let (s, d) = square_free_split(&BigInt::from(52), 1000).unwrap();
        assert_eq!((s, d), (BigInt::from(2), BigInt::from(13)));
        let (s, d) = square_free_split(&BigInt::from(292), 1000).unwrap();
        assert_eq!((s, d), (BigInt::from(2), BigInt::from(73)));
        let (s, d) = square_free_split(&BigInt::from(36), 1000).unwrap();
        assert_eq!((s, d), (BigInt::from(6), BigInt::from(1)));
    }
}
