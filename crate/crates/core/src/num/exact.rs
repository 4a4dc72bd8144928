//! Exact complex rationals used to carry ODE parameters.
//!
//! Parameters such as `c = -0.1` are not representable in binary floating
//! point; keeping them as rationals lets every series be built from the same
//! exact value at whatever working precision is requested, and makes the
//! parameter bookkeeping of the solution transforms exact.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::Complex;
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactComplex {
    pub re: Rational,
    pub im: Rational,
}

impl ExactComplex {
    pub fn zero() -> Self {
        ExactComplex::default()
    }

    pub fn real(re: Rational) -> Self {
        ExactComplex { re, im: Rational::new() }
    }

    pub fn new(re: Rational, im: Rational) -> Self {
        ExactComplex { re, im }
    }

    pub fn from_i64(v: i64) -> Self {
        ExactComplex::real(Rational::from(v))
    }

    /// Exact value of a binary double; fails for NaN and infinities.
    pub fn from_f64(v: f64) -> Result<Self, Error> {
        Rational::from_f64(v)
            .map(ExactComplex::real)
            .ok_or_else(|| Error::InvalidInput(format!("non-finite value {v}")))
    }

    pub fn from_f64_pair(re: f64, im: f64) -> Result<Self, Error> {
        let re = Rational::from_f64(re).ok_or_else(|| Error::InvalidInput(format!("non-finite value {re}")))?;
        let im = Rational::from_f64(im).ok_or_else(|| Error::InvalidInput(format!("non-finite value {im}")))?;
        Ok(ExactComplex { re, im })
    }

    /// Exact value of a (finite) multiprecision complex.
    pub fn from_complex(z: &Complex) -> Result<Self, Error> {
        let re =
            z.re.to_rational()
                .ok_or_else(|| Error::InvalidInput("non-finite real part".into()))?;
        let im =
            z.im.to_rational()
                .ok_or_else(|| Error::InvalidInput("non-finite imaginary part".into()))?;
        Ok(ExactComplex { re, im })
    }

    pub fn to_complex(&self, prec: u32) -> Complex {
        Complex::from_parts(Float::with_val(prec, &self.re), Float::with_val(prec, &self.im))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_real(&self) -> bool {
        self.im == 0
    }

    pub fn add(&self, o: &ExactComplex) -> ExactComplex {
        ExactComplex {
            re: Rational::from(&self.re + &o.re),
            im: Rational::from(&self.im + &o.im),
        }
    }

    pub fn sub(&self, o: &ExactComplex) -> ExactComplex {
        ExactComplex {
            re: Rational::from(&self.re - &o.re),
            im: Rational::from(&self.im - &o.im),
        }
    }

    pub fn mul(&self, o: &ExactComplex) -> ExactComplex {
        let re = Rational::from(&self.re * &o.re) - Rational::from(&self.im * &o.im);
        let im = Rational::from(&self.re * &o.im) + Rational::from(&self.im * &o.re);
        ExactComplex { re, im }
    }

    pub fn div(&self, o: &ExactComplex) -> Result<ExactComplex, Error> {
        if o.is_zero() {
            return Err(Error::InvalidInput("division by zero parameter".into()));
        }
        let n = Rational::from(o.re.square_ref()) + Rational::from(o.im.square_ref());
        let re = Rational::from(&self.re * &o.re) + Rational::from(&self.im * &o.im);
        let im = Rational::from(&self.im * &o.re) - Rational::from(&self.re * &o.im);
        Ok(ExactComplex { re: re / &n, im: im / n })
    }

    pub fn neg(&self) -> ExactComplex {
        ExactComplex {
            re: Rational::from(-&self.re),
            im: Rational::from(-&self.im),
        }
    }
}

/// Parses a decimal (`-0.1`, `2.5e-3`), a fraction (`1/3`) or a signed
/// integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::InvalidInput(format!("cannot parse number '{s}'"));
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if t.contains('/') {
        return Rational::from_str(t).map_err(|_| bad());
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.find('.') {
        Some(i) => (&digits[..i], &digits[i + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all = format!("{int_part}{frac_part}");
    let mut num = Integer::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = Integer::from(10);
    let r = if scale >= 0 {
        Rational::from(num * ten.pow(scale as u32))
    } else {
        Rational::from((num, ten.pow((-scale) as u32)))
    };
    Ok(r)
}

impl FromStr for ExactComplex {
    type Err = Error;

    /// Accepts `x` or `x,y` (real and imaginary parts).
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.split_once(',') {
            Some((re, im)) => Ok(ExactComplex {
                re: parse_rational(re)?,
                im: parse_rational(im)?,
            }),
            None => Ok(ExactComplex::real(parse_rational(s)?)),
        }
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64_pair();
        if self.is_real() {
            write!(f, "{re}")
        } else {
            write!(f, "{re}{im:+}i")
        }
    }
}
