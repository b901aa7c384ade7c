//! The general U(2) coin.
//!
//! ```text
//! Γ = e^{iη/2} [  e^{iζ} cos θ    e^{iξ} sin θ ]
//!              [ −e^{−iξ} sin θ   e^{−iζ} cos θ ]
//! ```

use std::fmt;

use num_complex::Complex;
use num_rational::Rational64;

use crate::angle::{parse_angle, wrap_rational, Angle};
use crate::error::{QwcError, Result};
use crate::linalg::ComplexMat;
use crate::real::{wrap_period, wrap_pi, Real};

/// Coin angles, canonicalized on construction.
///
/// `theta`, `zeta` and `xi` live in `[-π, π)`. `eta` enters only through
/// `e^{iη/2}` and is therefore wrapped modulo 4π into `[-2π, 2π)`. When ζ was
/// supplied as an exact multiple of π, that rational is retained for the
/// degeneracy test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinParams<T> {
    theta: T,
    zeta: T,
    xi: T,
    eta: T,
    zeta_pi: Option<Rational64>,
}

impl<T: Real> CoinParams<T> {
    pub fn new(theta: T, zeta: T, xi: T, eta: T) -> Result<Self> {
        Self::from_angles(
            Angle::Radians(theta),
            Angle::Radians(zeta),
            Angle::Radians(xi),
            Angle::Radians(eta),
        )
    }

    pub fn from_angles(theta: Angle<T>, zeta: Angle<T>, xi: Angle<T>, eta: Angle<T>) -> Result<Self> {
        for (name, a) in [("theta", theta), ("zeta", zeta), ("xi", xi), ("eta", eta)] {
            if !a.is_finite() {
                return Err(QwcError::InvalidParameter(format!("{name} is not finite")));
            }
        }
        let zeta = zeta.canonical();
        Ok(Self {
            theta: wrap_pi(theta.radians()),
            zeta: zeta.radians(),
            xi: wrap_pi(xi.radians()),
            eta: match eta {
                Angle::PiMultiple(r) => {
                    Angle::<T>::PiMultiple(wrap_rational(r, Rational64::from(4))).radians()
                }
                Angle::Radians(x) => wrap_period(x, T::lit(2.0) * T::two_pi()),
            },
            zeta_pi: zeta.pi_multiple(),
        })
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn zeta(&self) -> T {
        self.zeta
    }

    pub fn xi(&self) -> T {
        self.xi
    }

    pub fn eta(&self) -> T {
        self.eta
    }

    /// ζ/π when ζ is known exactly.
    pub fn zeta_pi(&self) -> Option<Rational64> {
        self.zeta_pi
    }

    /// Same coin with a different global phase.
    pub fn with_eta(&self, eta: T) -> Result<Self> {
        let mut out = Self::new(self.theta, self.zeta, self.xi, eta)?;
        out.zeta_pi = self.zeta_pi;
        Ok(out)
    }

    /// Same θ and η, new relative phases.
    pub fn with_phases(&self, zeta: Angle<T>, xi: Angle<T>) -> Result<Self> {
        Self::from_angles(
            Angle::Radians(self.theta),
            zeta,
            xi,
            Angle::Radians(self.eta),
        )
    }

    /// Casts to another scalar type, keeping the exact ζ.
    pub fn cast<U: Real>(&self) -> CoinParams<U> {
        CoinParams {
            theta: U::lit(self.theta.to_f64().unwrap_or(f64::NAN)),
            zeta: U::lit(self.zeta.to_f64().unwrap_or(f64::NAN)),
            xi: U::lit(self.xi.to_f64().unwrap_or(f64::NAN)),
            eta: U::lit(self.eta.to_f64().unwrap_or(f64::NAN)),
            zeta_pi: self.zeta_pi,
        }
    }
}

impl<T: Real> fmt::Display for CoinParams<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zeta = match self.zeta_pi {
            Some(r) => Angle::<T>::PiMultiple(r).to_string(),
            None => self.zeta.to_string(),
        };
        write!(f, "u2:{},{},{},{}", self.theta, zeta, self.xi, self.eta)
    }
}

/// A 2×2 unitary coin operator.
#[derive(Clone, Debug, PartialEq)]
pub struct CoinMatrix<T> {
    entries: ComplexMat<T>,
}

impl<T: Real> CoinMatrix<T> {
    /// Wraps an arbitrary 2×2 unitary.
    pub fn from_matrix(entries: ComplexMat<T>) -> Result<Self> {
        if entries.rows() != 2 || entries.cols() != 2 {
            return Err(QwcError::InvalidParameter("coin must be 2x2".into()));
        }
        if !entries.is_unitary(T::check_tol()) {
            return Err(QwcError::InvalidParameter("coin is not unitary".into()));
        }
        Ok(Self { entries })
    }

    pub fn matrix(&self) -> &ComplexMat<T> {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[(row, col)]
    }
}

/// Evaluates Γ for the given angles.
pub fn build_coin<T: Real>(params: &CoinParams<T>) -> CoinMatrix<T> {
    let (st, ct) = params.theta.sin_cos();
    let phase = Complex::cis(params.eta / T::lit(2.0));
    let e_zeta = Complex::cis(params.zeta);
    let e_xi = Complex::cis(params.xi);
    let entries = ComplexMat::from_rows(&[
        [e_zeta.scale(ct), e_xi.scale(st)],
        [-e_xi.conj().scale(st), e_zeta.conj().scale(ct)],
    ])
    .scale(phase);
    CoinMatrix { entries }
}

/// Hadamard-phase coin: θ = π/4, ζ = ξ = π/2, η = 0, i.e. `i·H`.
pub fn hadamard_params<T: Real>() -> CoinParams<T> {
    CoinParams::from_angles(
        Angle::PiMultiple(Rational64::new(1, 4)),
        Angle::PiMultiple(Rational64::new(1, 2)),
        Angle::PiMultiple(Rational64::new(1, 2)),
        Angle::PiMultiple(Rational64::from(0)),
    )
    .expect("hadamard angles are finite")
}

/// The real one-parameter coin `[[cos θ, sin θ], [sin θ, −cos θ]]`,
/// i.e. ζ = ξ = −π/2, η = π.
pub fn diaz_params<T: Real>(theta: T) -> Result<CoinParams<T>> {
    CoinParams::from_angles(
        Angle::Radians(theta),
        Angle::PiMultiple(Rational64::new(-1, 2)),
        Angle::PiMultiple(Rational64::new(-1, 2)),
        Angle::PiMultiple(Rational64::from(1)),
    )
}

/// Parses `hadamard`, `diaz:THETA` or `u2:THETA,ZETA,XI[,ETA]`.
pub fn parse_coin<T: Real>(s: &str) -> Result<CoinParams<T>> {
    let s = s.trim();
    let lower = s.to_ascii_lowercase();
    if lower == "hadamard" {
        return Ok(hadamard_params());
    }
    if let Some(arg) = lower.strip_prefix("diaz:") {
        return CoinParams::from_angles(
            parse_angle(arg)?,
            Angle::PiMultiple(Rational64::new(-1, 2)),
            Angle::PiMultiple(Rational64::new(-1, 2)),
            Angle::PiMultiple(Rational64::from(1)),
        );
    }
    if let Some(args) = lower.strip_prefix("u2:") {
        let parts: Vec<&str> = args.split(',').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(QwcError::Parse(format!(
                "u2 coin takes THETA,ZETA,XI[,ETA], got `{args}`"
            )));
        }
        let eta = match parts.get(3) {
            Some(e) => parse_angle(e)?,
            None => Angle::PiMultiple(Rational64::from(0)),
        };
        return CoinParams::from_angles(
            parse_angle(parts[0])?,
            parse_angle(parts[1])?,
            parse_angle(parts[2])?,
            eta,
        );
    }
    Err(QwcError::Parse(format!(
        "unknown coin `{s}` (expected hadamard, diaz:THETA or u2:THETA,ZETA,XI[,ETA])"
    )))
}
