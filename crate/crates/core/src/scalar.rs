//! Exact scalars in the quadratic field Q(sqrt 3).
//!
//! Every coordinate that appears in a direction network or rigidity system is
//! an element `a + b*sqrt3` with rational `a`, `b`. For the square and
//! centrally symmetric groups `b` is always zero, so the same type covers the
//! rational case.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    rational: BigRational,
    radical: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn new(rational: BigRational, radical: BigRational) -> Self {
        Scalar { rational, radical }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { rational: rat(n), radical: BigRational::zero() }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar {
            rational: BigRational::new(BigInt::from(num), BigInt::from(den)),
            radical: BigRational::zero(),
        }
    }

    /// `num/den * sqrt3`
    pub fn sqrt3_ratio(num: i64, den: i64) -> Self {
        Scalar {
            rational: BigRational::zero(),
            radical: BigRational::new(BigInt::from(num), BigInt::from(den)),
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.radical
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    /// Field norm `a^2 - 3 b^2`; zero only for the zero element since sqrt3 is irrational.
    pub fn norm(&self) -> BigRational {
        &self.rational * &self.rational - rat(3) * &self.radical * &self.radical
    }

    pub fn conjugate(&self) -> Self {
        Scalar { rational: self.rational.clone(), radical: -&self.radical }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = self.norm();
        let c = self.conjugate();
        Some(Scalar { rational: c.rational / &norm, radical: c.radical / norm })
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        let b = self.radical.to_f64().unwrap_or(f64::NAN);
        a + b * 3f64.sqrt()
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    /// `a`, `a+b*sqrt3` or `a-b*sqrt3` with exact rationals `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radical.is_zero() {
            return write!(f, "{}", self.rational);
        }
        let sign = if self.radical.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*sqrt3", self.rational, sign, self.radical.abs())
    }
}

fn parse_rational(text: &str) -> Result<BigRational, ParseError> {
    let bad = || ParseError::new(0, format!("bad rational `{text}`"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for Scalar {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        let Some(body) = text.strip_suffix("*sqrt3") else {
            return Ok(Scalar { rational: parse_rational(text)?, radical: BigRational::zero() });
        };
        // the separating sign is the last '+' or '-' that is not the leading sign
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(|| ParseError::new(0, format!("bad scalar `{text}`")))?;
        let rational = parse_rational(&body[..split])?;
        let mut radical = parse_rational(&body[split + 1..])?;
        if body.as_bytes()[split] == b'-' {
            radical = -radical;
        }
        Ok(Scalar { rational, radical })
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { rational: &self.rational + &rhs.rational, radical: &self.radical + &rhs.radical }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { rational: &self.rational - &rhs.rational, radical: &self.radical - &rhs.radical }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.radical.is_zero() && rhs.radical.is_zero() {
            return Scalar { rational: &self.rational * &rhs.rational, radical: BigRational::zero() };
        }
        let three = rat(3);
        Scalar {
            rational: &self.rational * &rhs.rational + three * &self.radical * &rhs.radical,
            radical: &self.rational * &rhs.radical + &self.radical * &rhs.rational,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { rational: -&self.rational, radical: -&self.radical }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
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

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.rational += &rhs.rational;
        self.radical += &rhs.radical;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.rational -= &rhs.rational;
        self.radical -= &rhs.radical;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

/// Exact plane vector.
pub type Vec2 = [Scalar; 2];

/// Exact 2x2 matrix, row-major.
pub type Mat2 = [[Scalar; 2]; 2];

pub fn vec2(x: i64, y: i64) -> Vec2 {
    [Scalar::from_int(x), Scalar::from_int(y)]
}

pub fn mat_vec(m: &Mat2, v: &Vec2) -> Vec2 {
    [&m[0][0] * &v[0] + &m[0][1] * &v[1], &m[1][0] * &v[0] + &m[1][1] * &v[1]]
}

pub fn transpose_vec(m: &Mat2, v: &Vec2) -> Vec2 {
    [&m[0][0] * &v[0] + &m[1][0] * &v[1], &m[0][1] * &v[0] + &m[1][1] * &v[1]]
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let entry = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

pub fn identity2() -> Mat2 {
    [[Scalar::one(), Scalar::zero()], [Scalar::zero(), Scalar::one()]]
}

pub fn add2(a: &Vec2, b: &Vec2) -> Vec2 {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

pub fn sub2(a: &Vec2, b: &Vec2) -> Vec2 {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

pub fn scale2(c: &Scalar, v: &Vec2) -> Vec2 {
    [c * &v[0], c * &v[1]]
}

pub fn dot2(a: &Vec2, b: &Vec2) -> Scalar {
    &a[0] * &b[0] + &a[1] * &b[1]
}

/// Counterclockwise quarter turn: `(x, y) -> (-y, x)`.
pub fn perp(v: &Vec2) -> Vec2 {
    [-&v[1], v[0].clone()]
}

pub fn is_zero2(v: &Vec2) -> bool {
    v[0].is_zero() && v[1].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt3_squares_to_three() {
        let s = Scalar::sqrt3_ratio(1, 1);
        assert_eq!(&s * &s, Scalar::from_int(3));
    }

    #[test]
    fn inverse_is_two_sided() {
        let x = Scalar::new(BigRational::new(3.into(), 7.into()), BigRational::new((-2).into(), 5.into()));
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, Scalar::one());
        assert!(Scalar::zero().inverse().is_none());
    }

    #[test]
    fn zero_test_is_exact() {
        // a + b sqrt3 = 0 only when both parts vanish
        let x = Scalar::new(rat(3), rat(-1));
        assert!(!x.is_zero());
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn display_and_parse() {
        for text in ["0", "-3/4", "1/2+3/2*sqrt3", "-1/2-1*sqrt3", "0+1*sqrt3"] {
            let x: Scalar = text.parse().unwrap();
            assert_eq!(x.to_string(), text);
        }
        assert_eq!("6/4".parse::<Scalar>().unwrap().to_string(), "3/2");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }
}
