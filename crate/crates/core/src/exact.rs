//! Exact scalars: arbitrary-precision rationals and the Gaussian rationals `Q(i)`.
//!
//! Everything that has to hold "exactly" (commutators, series residuals,
//! algebra relations) is computed over one of these two fields.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number.
pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qint(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse `{0}` as an exact rational")]
pub struct ParseRationalError(pub String);

/// Parses `"p/q"`, `"-7"` or a finite decimal such as `"0.125"` exactly.
pub fn parse_q(text: &str) -> Result<Q, ParseRationalError> {
    let s = text.trim();
    let err = || ParseRationalError(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        let int_val = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(int_digits).map_err(|_| err())?
        };
        let frac_val = BigInt::from_str(frac_part).map_err(|_| err())?;
        let scale = num_traits::pow(BigInt::from(10), frac_part.len());
        let mut value = Q::new(int_val * &scale + frac_val, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    BigInt::from_str(s).map(Q::from_integer).map_err(|_| err())
}

/// `"p/q"`, or just `"p"` when the denominator is one.
pub fn fmt_q(value: &Q) -> String {
    value.to_string()
}

pub fn q_to_f64(value: &Q) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // numerator or denominator overflowed f64; fall back to a scaled quotient
        let n = value.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = value.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Scalar field operations used by the dense matrix and series code.
///
/// The by-reference methods let the big-number implementations avoid
/// cloning inside inner loops.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }
}

impl Field for Q {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

impl Field for f64 {}

impl Field for Complex64 {}

/// Gaussian rational `re + i·im` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QI {
    pub re: Q,
    pub im: Q,
}

impl QI {
    pub fn new(re: Q, im: Q) -> Self {
        Self { re, im }
    }

    pub fn real(re: Q) -> Self {
        Self { re, im: Q::zero() }
    }

    pub fn i() -> Self {
        Self { re: Q::zero(), im: Q::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(qint(n))
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(q_to_f64(&self.re), q_to_f64(&self.im))
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        Self { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn scale(&self, factor: &Q) -> Self {
        Self { re: &self.re * factor, im: &self.im * factor }
    }
}

impl From<Q> for QI {
    fn from(re: Q) -> Self {
        QI::real(re)
    }
}

impl fmt::Display for QI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Parses `"a"`, `"a+bi"`, `"a-bi"`, `"bi"` with rational or decimal parts.
impl FromStr for QI {
    type Err = ParseRationalError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || ParseRationalError(text.to_string());
        if let Some(body) = s.strip_suffix('i') {
            // split at the last sign that is not the leading one
            let split = body
                .char_indices()
                .skip(1)
                .filter(|(_, c)| *c == '+' || *c == '-')
                .map(|(k, _)| k)
                .last();
            let (re, im) = match split {
                Some(k) => (parse_q(&body[..k])?, &body[k..]),
                None => (Q::zero(), body),
            };
            let im = match im {
                "" | "+" => Q::one(),
                "-" => -Q::one(),
                other => parse_q(other.trim_start_matches('+'))?,
            };
            return Ok(QI::new(re, im));
        }
        parse_q(&s).map(QI::real).map_err(|_| err())
    }
}

impl Zero for QI {
    fn zero() -> Self {
        QI::real(Q::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for QI {
    fn one() -> Self {
        QI::real(Q::one())
    }
}

impl Add for QI {
    type Output = QI;
    fn add(self, o: QI) -> QI {
        QI { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for QI {
    type Output = QI;
    fn sub(self, o: QI) -> QI {
        QI { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for QI {
    type Output = QI;
    fn mul(self, o: QI) -> QI {
        self.mul_ref(&o)
    }
}

impl Div for QI {
    type Output = QI;
    fn div(self, o: QI) -> QI {
        self.mul_ref(&o.inv())
    }
}

impl Neg for QI {
    type Output = QI;
    fn neg(self) -> QI {
        QI { re: -self.re, im: -self.im }
    }
}

impl Field for QI {
    fn mul_ref(&self, o: &Self) -> Self {
        QI {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn add_ref(&self, o: &Self) -> Self {
        QI { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub_ref(&self, o: &Self) -> Self {
        QI { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn add_assign_ref(&mut self, o: &Self) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_q("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_q("-7").unwrap(), qint(-7));
        assert_eq!(parse_q("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_q("-1.5").unwrap(), q(-3, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
        assert!(parse_q("").is_err());
    }

    #[test]
    fn parses_gaussian_rationals() {
        assert_eq!("1/2+3i".parse::<QI>().unwrap(), QI::new(q(1, 2), qint(3)));
        assert_eq!("-2-i".parse::<QI>().unwrap(), QI::new(qint(-2), qint(-1)));
        assert_eq!("i".parse::<QI>().unwrap(), QI::i());
        assert_eq!("-3/4i".parse::<QI>().unwrap(), QI::new(Q::zero(), q(-3, 4)));
        assert_eq!("5".parse::<QI>().unwrap(), QI::from_int(5));
    }

    #[test]
    fn gaussian_field_axioms_on_samples() {
        let a = QI::new(q(1, 2), q(-3, 5));
        let b = QI::new(qint(2), q(7, 3));
        assert_eq!((a.clone() / b.clone()) * b.clone(), a);
        assert_eq!(QI::i().mul_ref(&QI::i()), QI::from_int(-1));
        assert_eq!(a.mul_ref(&a.conj()), QI::real(a.norm_sqr()));
        assert_eq!(a.to_string(), "1/2-3/5i");
    }
}
