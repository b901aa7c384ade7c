//! Angles that may be known exactly as rational multiples of π.
//!
//! Degeneracy between momentum blocks is an arithmetic question about `Nζ/π`,
//! so angles written as `3pi/4` keep their exact value alongside the float.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{QwcError, Result};
use crate::real::{wrap_pi, Real};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle<T> {
    /// `r·π` with `r` exact.
    PiMultiple(Rational64),
    Radians(T),
}

impl<T: Real> Angle<T> {
    pub fn radians(&self) -> T {
        match *self {
            Angle::PiMultiple(r) => {
                // numerator and denominator separately keep e.g. pi/3 correctly rounded
                let num = T::lit(*r.numer() as f64);
                let den = T::lit(*r.denom() as f64);
                T::PI() * num / den
            }
            Angle::Radians(x) => x,
        }
    }

    pub fn pi_multiple(&self) -> Option<Rational64> {
        match *self {
            Angle::PiMultiple(r) => Some(r),
            Angle::Radians(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        match *self {
            Angle::PiMultiple(_) => true,
            Angle::Radians(x) => x.is_finite(),
        }
    }

    /// Same angle wrapped into `[-π, π)`.
    pub fn canonical(self) -> Self {
        match self {
            Angle::PiMultiple(r) => Angle::PiMultiple(wrap_rational(r, Rational64::from(2))),
            Angle::Radians(x) => Angle::Radians(wrap_pi(x)),
        }
    }
}

impl<T> From<Rational64> for Angle<T> {
    fn from(r: Rational64) -> Self {
        Angle::PiMultiple(r)
    }
}

/// Wraps an exact rational into `[-period/2, period/2)`.
pub(crate) fn wrap_rational(r: Rational64, period: Rational64) -> Rational64 {
    let half = period / 2;
    let shifted = (r + half) / period;
    r - period * shifted.floor()
}

impl<T: Real> fmt::Display for Angle<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::PiMultiple(r) if r.is_zero() => write!(f, "0"),
            Angle::PiMultiple(r) => {
                let (n, d) = (*r.numer(), *r.denom());
                match (n, d) {
                    (1, 1) => write!(f, "pi"),
                    (-1, 1) => write!(f, "-pi"),
                    (n, 1) => write!(f, "{n}pi"),
                    (1, d) => write!(f, "pi/{d}"),
                    (-1, d) => write!(f, "-pi/{d}"),
                    (n, d) => write!(f, "{n}pi/{d}"),
                }
            }
            Angle::Radians(x) => write!(f, "{x}"),
        }
    }
}

/// Parses `pi`, `-pi/2`, `3pi/4`, `2*pi/3`, `0.5pi`, or plain radians like `0.785`.
pub fn parse_angle<T: Real>(s: &str) -> Result<Angle<T>> {
    let raw = s.trim();
    let err = || QwcError::Parse(format!("invalid angle `{raw}`"));
    if raw.is_empty() {
        return Err(err());
    }
    let lower = raw.to_ascii_lowercase();
    let Some(pos) = lower.find("pi") else {
        if let Ok(i) = lower.parse::<i64>() {
            if i == 0 {
                return Ok(Angle::PiMultiple(Rational64::zero()));
            }
        }
        let x: f64 = lower.parse().map_err(|_| err())?;
        if !x.is_finite() {
            return Err(err());
        }
        return Ok(Angle::Radians(T::lit(x)));
    };

    let (coef, rest) = lower.split_at(pos);
    let rest = &rest[2..];
    let coef = coef.trim().trim_end_matches('*').trim();
    let denom: Option<i64> = if rest.trim().is_empty() {
        None
    } else {
        let d = rest.trim().strip_prefix('/').ok_or_else(err)?;
        let d: i64 = d.trim().parse().map_err(|_| err())?;
        if d == 0 {
            return Err(err());
        }
        Some(d)
    };

    let exact_coef: Option<i64> = match coef {
        "" | "+" => Some(1),
        "-" => Some(-1),
        c => c.parse::<i64>().ok(),
    };
    match exact_coef {
        Some(n) => Ok(Angle::PiMultiple(Rational64::new(n, denom.unwrap_or(1)))),
        None => {
            let c: f64 = coef.parse().map_err(|_| err())?;
            let d = denom.unwrap_or(1) as f64;
            let x = c * std::f64::consts::PI / d;
            if !x.is_finite() {
                return Err(err());
            }
            Ok(Angle::Radians(T::lit(x)))
        }
    }
}

impl<T: Real> FromStr for Angle<T> {
    type Err = QwcError;
    fn from_str(s: &str) -> Result<Self> {
        parse_angle(s)
    }
}

/// Converts an exact rational to `f64`, for diagnostics.
pub fn rational_to_f64(r: Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
