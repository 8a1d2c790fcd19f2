//! Dual-arithmetic scalar: exact rationals when a space has rational data,
//! f64 with an absolute tolerance otherwise. The two modes never mix inside
//! one space; mixed binary operations fall back to floats.

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::Serializer;
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Absolute tolerance used by float-mode comparisons and validations.
pub const FLOAT_TOL: f64 = 1e-9;

pub type Rational = Ratio<i128>;

/// A length (or any scalar derived from lengths: Gromov products, slacks,
/// δ values). May be negative; "length" refers to the unit, not a sign.
#[derive(Clone, Copy, Debug)]
pub enum Length {
    Exact(Rational),
    Float(f64),
}

impl Length {
    pub const ZERO_EXACT: Length = Length::Exact(Ratio::new_raw(0, 1));

    pub fn zero_like(&self) -> Length {
        match self {
            Length::Exact(_) => Length::Exact(Rational::zero()),
            Length::Float(_) => Length::Float(0.0),
        }
    }

    pub fn from_int(n: i64) -> Length {
        Length::Exact(Rational::from_integer(n as i128))
    }

    pub fn from_ratio(num: i128, den: i128) -> Length {
        Length::Exact(Rational::new(num, den))
    }

    pub fn from_f64(x: f64) -> Length {
        Length::Float(x)
    }

    /// Parse a weight literal: either a decimal number or an exact "p/q".
    pub fn parse(text: &str) -> Result<Length> {
        let t = text.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: i128 = p
                .trim()
                .parse()
                .map_err(|_| Error::InvalidWeight(text.to_string()))?;
            let q: i128 = q
                .trim()
                .parse()
                .map_err(|_| Error::InvalidWeight(text.to_string()))?;
            if q == 0 {
                return Err(Error::InvalidWeight(text.to_string()));
            }
            Ok(Length::Exact(Rational::new(p, q)))
        } else if let Ok(n) = t.parse::<i128>() {
            Ok(Length::Exact(Rational::from_integer(n)))
        } else {
            let x: f64 = t
                .parse()
                .map_err(|_| Error::InvalidWeight(text.to_string()))?;
            Ok(Length::Float(x))
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Length::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Length::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<Rational> {
        match self {
            Length::Exact(r) => Some(*r),
            Length::Float(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Length::Exact(_))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Length::Exact(r) => r.is_negative(),
            Length::Float(x) => *x < 0.0,
        }
    }

    pub fn abs(&self) -> Length {
        match self {
            Length::Exact(r) => Length::Exact(r.abs()),
            Length::Float(x) => Length::Float(x.abs()),
        }
    }

    pub fn half(&self) -> Length {
        match self {
            Length::Exact(r) => Length::Exact(r / Rational::from_integer(2)),
            Length::Float(x) => Length::Float(x / 2.0),
        }
    }

    pub fn scale_int(&self, k: i64) -> Length {
        match self {
            Length::Exact(r) => Length::Exact(r * Rational::from_integer(k as i128)),
            Length::Float(x) => Length::Float(x * k as f64),
        }
    }

    pub fn max(self, other: Length) -> Length {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Length) -> Length {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Floor at zero, the convention for constants like α and δ.
    pub fn floor_zero(self) -> Length {
        if self.is_negative() {
            self.zero_like()
        } else {
            self
        }
    }

    /// `self ≤ other`, exact in exact mode, within `FLOAT_TOL` otherwise.
    pub fn le_tol(&self, other: &Length) -> bool {
        match (self, other) {
            (Length::Exact(a), Length::Exact(b)) => a <= b,
            _ => self.to_f64() <= other.to_f64() + FLOAT_TOL,
        }
    }

    /// Equality, exact in exact mode, within `FLOAT_TOL` otherwise.
    pub fn eq_tol(&self, other: &Length) -> bool {
        match (self, other) {
            (Length::Exact(a), Length::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= FLOAT_TOL,
        }
    }

    pub fn ceil(&self) -> Length {
        match self {
            Length::Exact(r) => Length::Exact(r.ceil()),
            Length::Float(x) => Length::Float(x.ceil()),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Length {
            type Output = Length;
            fn $method(self, rhs: Length) -> Length {
                match (self, rhs) {
                    (Length::Exact(a), Length::Exact(b)) => Length::Exact(a $op b),
                    (a, b) => Length::Float(a.to_f64() $op b.to_f64()),
                }
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for Length {
    type Output = Length;
    fn neg(self) -> Length {
        match self {
            Length::Exact(r) => Length::Exact(-r),
            Length::Float(x) => Length::Float(-x),
        }
    }
}

impl PartialEq for Length {
    fn eq(&self, other: &Length) -> bool {
        match (self, other) {
            (Length::Exact(a), Length::Exact(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl PartialOrd for Length {
    fn partial_cmp(&self, other: &Length) -> Option<Ordering> {
        match (self, other) {
            (Length::Exact(a), Length::Exact(b)) => a.partial_cmp(b),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Exact(r) => {
                if r.denom() == &1 {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Length::Float(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Length::Exact(r) => {
                if r.denom() == &1 && r.numer().abs() < (1i128 << 53) {
                    s.serialize_i64(*r.numer() as i64)
                } else {
                    s.serialize_str(&self.to_string())
                }
            }
            Length::Float(x) => s.serialize_f64(*x),
        }
    }
}

/// A length that may be infinite. Infinity is a first-class marker, never a
/// large sentinel float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Dist {
    Finite(Length),
    Infinite,
}

impl Dist {
    pub fn finite(self) -> Option<Length> {
        match self {
            Dist::Finite(l) => Some(l),
            Dist::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Dist::Infinite)
    }

    pub fn min(self, other: Dist) -> Dist {
        match (self, other) {
            (Dist::Infinite, d) | (d, Dist::Infinite) => d,
            (Dist::Finite(a), Dist::Finite(b)) => Dist::Finite(a.min(b)),
        }
    }

    pub fn add(self, other: Dist) -> Dist {
        match (self, other) {
            (Dist::Finite(a), Dist::Finite(b)) => Dist::Finite(a + b),
            _ => Dist::Infinite,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Dist::Finite(l) => l.to_f64(),
            Dist::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(l) => l.fmt(f),
            Dist::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dist::Finite(l) => l.serialize(s),
            Dist::Infinite => s.serialize_str("inf"),
        }
    }
}
