//! Scalars in three arithmetic modes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// Arithmetic mode of a scalar or matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
    Gf2,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            "gf2" => Ok(Mode::Gf2),
            other => Err(Error::InvalidArgument(format!("unknown mode '{other}'"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
            Mode::Gf2 => "gf2",
        })
    }
}

/// A scalar tagged with its arithmetic mode.
///
/// Exact scalars are elements of a cyclotomic field; in practice almost all of
/// them are Gaussian rationals, but roots of unity produced by the root finder
/// keep their exact form.
#[derive(Clone, PartialEq)]
pub enum Scalar {
    Exact(Cyclotomic),
    Float(Complex64),
    Gf2(bool),
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
            Scalar::Gf2(_) => Mode::Gf2,
        }
    }

    pub fn zero(mode: Mode) -> Scalar {
        Scalar::from_i64(mode, 0)
    }

    pub fn one(mode: Mode) -> Scalar {
        Scalar::from_i64(mode, 1)
    }

    pub fn from_i64(mode: Mode, v: i64) -> Scalar {
        match mode {
            Mode::Exact => Scalar::Exact(Cyclotomic::from_i64(v)),
            Mode::Float => Scalar::Float(Complex64::new(v as f64, 0.0)),
            Mode::Gf2 => Scalar::Gf2(v.rem_euclid(2) == 1),
        }
    }

    pub fn ratio(num: i64, den: i64) -> Scalar {
        Scalar::Exact(Cyclotomic::from_ratio(num, den))
    }

    pub fn gauss(re: BigRational, im: BigRational) -> Scalar {
        Scalar::Exact(Cyclotomic::gauss(re, im))
    }

    pub fn float(re: f64, im: f64) -> Scalar {
        Scalar::Float(Complex64::new(re, im))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(x) => x.is_zero(),
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
            Scalar::Gf2(b) => !b,
        }
    }

    pub fn as_exact(&self) -> Result<&Cyclotomic> {
        match self {
            Scalar::Exact(x) => Ok(x),
            other => Err(Error::WrongMode {
                expected: Mode::Exact,
                found: other.mode(),
            }),
        }
    }

    /// Complex value; exact scalars are evaluated, GF(2) bits map to 0 and 1.
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(x) => x.to_complex(),
            Scalar::Float(z) => *z,
            Scalar::Gf2(b) => Complex64::new(if *b { 1.0 } else { 0.0 }, 0.0),
        }
    }

    /// Convert to another mode. Exact to GF(2) requires an integer value.
    pub fn to_mode(&self, mode: Mode) -> Result<Scalar> {
        if self.mode() == mode {
            return Ok(self.clone());
        }
        match (self, mode) {
            (_, Mode::Float) => Ok(Scalar::Float(self.to_complex())),
            (Scalar::Gf2(b), Mode::Exact) => Ok(Scalar::from_i64(Mode::Exact, *b as i64)),
            (Scalar::Exact(x), Mode::Gf2) => match x.rational_part() {
                Some(q) if q.is_integer() => {
                    let two = BigInt::from(2);
                    Ok(Scalar::Gf2(!(q.to_integer() % &two).is_zero()))
                }
                _ => Err(Error::InvalidArgument(format!(
                    "cannot reduce non-integer {x} modulo 2"
                ))),
            },
            _ => Err(Error::ModeMismatch {
                left: self.mode(),
                right: mode,
            }),
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.mode() == other.mode() {
            Ok(())
        } else {
            Err(Error::ModeMismatch {
                left: self.mode(),
                right: other.mode(),
            })
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.add(b)),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a + b),
            (Scalar::Gf2(a), Scalar::Gf2(b)) => Scalar::Gf2(a ^ b),
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.mul(b)),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a * b),
            (Scalar::Gf2(a), Scalar::Gf2(b)) => Scalar::Gf2(a & b),
            _ => unreachable!(),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        if other.is_zero() {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        Ok(match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.div(b).expect("nonzero divisor")),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a / b),
            (Scalar::Gf2(a), Scalar::Gf2(_)) => Scalar::Gf2(*a),
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(a.neg()),
            Scalar::Float(a) => Scalar::Float(-a),
            Scalar::Gf2(a) => Scalar::Gf2(*a),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(a.pow(e)),
            Scalar::Float(a) => Scalar::Float(a.powu(e)),
            Scalar::Gf2(a) => Scalar::Gf2(*a || e == 0),
        }
    }

    /// Parse an exact Gaussian rational such as `-3`, `1/2`, `2/3+1/5 i` or `-i`.
    pub fn parse_exact(text: &str) -> Result<Scalar> {
        let (re, im) = parse_gauss(text)?;
        Ok(Scalar::gauss(re, im))
    }
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("invalid rational '{text}'"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.to_string(), d.to_string()),
        None => (t.clone(), "1".to_string()),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn parse_gauss(text: &str) -> Result<(BigRational, BigRational)> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok((parse_rational(&t)?, BigRational::zero()));
    };
    // The imaginary part starts at the last sign that is not the leading character.
    let split = body
        .char_indices()
        .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
        .map(|(k, _)| k)
        .last();
    let (re_text, im_text) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im_text {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        s => parse_rational(s.strip_prefix('+').unwrap_or(s))?,
    };
    Ok((parse_rational(re_text)?, im))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(x) => write!(f, "{x}"),
            Scalar::Float(z) => write!(f, "{}{:+}i", z.re, z.im),
            Scalar::Gf2(b) => write!(f, "{}", *b as u8),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for text in ["0", "-3", "1/2", "2/3+1/5 i", "-7/4-1 i", "0+1 i"] {
            let s = Scalar::parse_exact(text).unwrap();
            let again = Scalar::parse_exact(&s.to_string()).unwrap();
            assert_eq!(s, again, "{text}");
        }
        assert_eq!(Scalar::parse_exact("-i").unwrap().to_string(), "0-1 i");
        assert_eq!(Scalar::parse_exact("4/8").unwrap().to_string(), "1/2");
        assert!(Scalar::parse_exact("1/0").is_err());
        assert!(Scalar::parse_exact("abc").is_err());
    }

    #[test]
    fn mixed_modes_are_rejected() {
        let a = Scalar::one(Mode::Exact);
        let b = Scalar::one(Mode::Float);
        assert!(matches!(a.add(&b), Err(Error::ModeMismatch { .. })));
        assert_eq!(
            Scalar::one(Mode::Gf2).add(&Scalar::one(Mode::Gf2)).unwrap(),
            Scalar::zero(Mode::Gf2)
        );
    }

    #[test]
    fn reduction_to_gf2() {
        assert_eq!(Scalar::from_i64(Mode::Exact, -3).to_mode(Mode::Gf2).unwrap(), Scalar::Gf2(true));
        assert!(Scalar::ratio(1, 2).to_mode(Mode::Gf2).is_err());
    }
}
