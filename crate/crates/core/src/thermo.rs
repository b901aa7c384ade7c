//! Entanglement temperature of the asymptotic coin state and parameter scans.
//!
//! With `λ₁ ≥ λ₂` the eigenvalues of `ρ̃_c`, `T = 2E₀ / ln(λ₁/λ₂)`. A maximally
//! mixed coin is infinitely hot, a pure coin has `T = 0`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rayon::prelude::*;

use crate::angle::parse_angle;
use crate::asymptotics::{reduced_density_from, WalkSpectrum};
use crate::coin::{hadamard_params, CoinParams};
use crate::density::ReducedDensity;
use crate::error::{QwcError, Result};
use crate::real::Real;
use crate::state::{make_state, project_all, InitialStateSpec, Spinor};

/// `λ₁ − λ₂` at or below this counts as a maximally mixed coin.
const EQUAL_EIGENVALUES: f64 = 1e-12;
/// `λ₂` at or below this counts as a pure coin.
const PURE_STATE: f64 = 1e-14;

/// Default scan resolution per axis.
pub const DEFAULT_RESOLUTION: usize = 101;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TemperatureResult<T> {
    pub lambda1: T,
    pub lambda2: T,
    /// In units of `E₀`; `+∞` for a maximally mixed coin.
    pub temperature: T,
    pub ratio_to_reference: Option<T>,
}

impl<T: Real> TemperatureResult<T> {
    /// Attaches `T / T_ref`.
    pub fn with_reference(mut self, reference: &Self) -> Self {
        self.ratio_to_reference = Some(temperature_ratio(self.temperature, reference.temperature));
        self
    }
}

/// `T / T₀` with `∞/∞ = 0/0 = 1`.
pub fn temperature_ratio<T: Real>(t: T, t0: T) -> T {
    if t == t0 {
        T::one()
    } else if t.is_infinite() || t0.is_zero() {
        T::infinity()
    } else {
        t / t0
    }
}

pub fn entanglement_temperature<T: Real>(rho: &ReducedDensity<T>, e0: T) -> Result<TemperatureResult<T>> {
    if !(e0.is_finite() && e0 > T::zero()) {
        return Err(QwcError::InvalidParameter(format!("energy scale must be positive, got {e0}")));
    }
    if !rho.entries().is_hermitian(T::check_tol()) {
        return Err(QwcError::Domain("reduced density is not Hermitian".into()));
    }
    let (l1, l2) = rho.eigenvalues();
    let temperature = if l2 <= T::lit(PURE_STATE) {
        T::zero()
    } else if l1 - l2 <= T::lit(EQUAL_EIGENVALUES) {
        T::infinity()
    } else {
        T::lit(2.0) * e0 / (l1 / l2).ln()
    };
    Ok(TemperatureResult {
        lambda1: l1,
        lambda2: l2,
        temperature,
        ratio_to_reference: None,
    })
}

/// Evenly spaced samples `start..=end`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanAxis<T> {
    pub start: T,
    pub end: T,
    pub points: usize,
}

impl<T: Real> ScanAxis<T> {
    pub fn new(start: T, end: T, points: usize) -> Result<Self> {
        if points == 0 || !start.is_finite() || !end.is_finite() {
            return Err(QwcError::InvalidParameter(format!(
                "axis {start}:{end}:{points} needs finite bounds and at least one point"
            )));
        }
        Ok(Self { start, end, points })
    }

    pub fn value(&self, i: usize) -> T {
        if self.points == 1 {
            return self.start;
        }
        let f = T::from_usize(i) / T::from_usize(self.points - 1);
        self.start + (self.end - self.start) * f
    }

    pub fn values(&self) -> Vec<T> {
        (0..self.points).map(|i| self.value(i)).collect()
    }
}

/// Parses `a:b:n`, with `a` and `b` angle tokens (`-pi`, `3pi/4`, `0.5`).
impl<T: Real> FromStr for ScanAxis<T> {
    type Err = QwcError;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(QwcError::Parse(format!("axis '{s}' is not of the form a:b:n")));
        };
        let n = n
            .trim()
            .parse::<usize>()
            .map_err(|e| QwcError::Parse(format!("axis point count '{n}': {e}")))?;
        Self::new(parse_angle::<T>(a)?.radians(), parse_angle::<T>(b)?.radians(), n)
    }
}

impl<T: Real> fmt::Display for ScanAxis<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.end, self.points)
    }
}

/// `T/T₀` over a 2-D grid, row-major in (axis1, axis2).
#[derive(Clone, Debug, PartialEq)]
pub struct ScanGrid<T> {
    axis1: ScanAxis<T>,
    axis2: ScanAxis<T>,
    reference: TemperatureResult<T>,
    ratios: Vec<T>,
}

impl<T: Real> ScanGrid<T> {
    pub fn axis1(&self) -> &ScanAxis<T> {
        &self.axis1
    }

    pub fn axis2(&self) -> &ScanAxis<T> {
        &self.axis2
    }

    pub fn reference(&self) -> &TemperatureResult<T> {
        &self.reference
    }

    pub fn ratio(&self, i: usize, j: usize) -> T {
        self.ratios[i * self.axis2.points + j]
    }

    pub fn ratios(&self) -> &[T] {
        &self.ratios
    }

    /// `(axis1 value, axis2 value, ratio)` in row-major order.
    pub fn rows(&self) -> impl Iterator<Item = (T, T, T)> + '_ {
        let n2 = self.axis2.points;
        self.ratios
            .iter()
            .enumerate()
            .map(move |(idx, &r)| (self.axis1.value(idx / n2), self.axis2.value(idx % n2), r))
    }
}

fn bloch_spinor<T: Real>(gamma: T, phi: T, n_nodes: usize) -> Spinor<T> {
    let half = gamma / T::lit(2.0);
    let norm = T::from_usize(n_nodes).sqrt();
    [
        Complex::new(half.cos() / norm, T::zero()),
        Complex::cis(phi).scale(half.sin() / norm),
    ]
}

/// Temperature of a walker started with coin `[cos(γ/2), e^{iφ} sin(γ/2)]` at
/// the origin.
pub fn bloch_temperature<T: Real>(
    spectrum: &WalkSpectrum<T>,
    gamma: T,
    phi: T,
    e0: T,
) -> Result<TemperatureResult<T>> {
    // a walker localized at node 0 has the same spinor in every block
    let psi = vec![bloch_spinor(gamma, phi, spectrum.n_nodes()); spectrum.n_nodes()];
    entanglement_temperature(&reduced_density_from(spectrum, &psi), e0)
}

/// `T(γ, φ)/T₀` with `T₀` the temperature of the start `|1⟩` (`γ = π, φ = 0`).
pub fn bloch_temperature_scan<T: Real>(
    coin: &CoinParams<T>,
    n_nodes: usize,
    axis_gamma: &ScanAxis<T>,
    axis_phi: &ScanAxis<T>,
) -> Result<ScanGrid<T>> {
    if n_nodes < 2 {
        return Err(QwcError::InvalidParameter("temperature scans need N >= 2".into()));
    }
    let spectrum = WalkSpectrum::new(coin, n_nodes)?;
    let reference = bloch_temperature(&spectrum, T::PI(), T::zero(), T::one())?;
    let n2 = axis_phi.points;
    let ratios = (0..axis_gamma.points * n2)
        .into_par_iter()
        .map(|idx| {
            let t = bloch_temperature(&spectrum, axis_gamma.value(idx / n2), axis_phi.value(idx % n2), T::one())?;
            Ok(temperature_ratio(t.temperature, reference.temperature))
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(ScanGrid {
        axis1: axis_gamma.clone(),
        axis2: axis_phi.clone(),
        reference,
        ratios,
    })
}

/// Temperature of `initial` under the coin `(θ, ζ, ξ, 0)`.
pub fn phase_temperature<T: Real>(
    theta: T,
    zeta: T,
    xi: T,
    initial: &InitialStateSpec<T>,
    n_nodes: usize,
    e0: T,
) -> Result<TemperatureResult<T>> {
    let coin = CoinParams::new(theta, zeta, xi, T::zero())?;
    let spectrum = WalkSpectrum::new(&coin, n_nodes)?;
    let psi = project_all(&make_state(initial, n_nodes)?);
    entanglement_temperature(&reduced_density_from(&spectrum, &psi), e0)
}

/// `T(ζ, ξ)/T₀` for a fixed start and mixing angle θ, where `T₀` is the
/// temperature of the same start under the Hadamard phases `ζ = ξ = π/2`.
pub fn coin_phase_temperature_scan<T: Real>(
    theta: T,
    initial: &InitialStateSpec<T>,
    n_nodes: usize,
    axis_zeta: &ScanAxis<T>,
    axis_xi: &ScanAxis<T>,
) -> Result<ScanGrid<T>> {
    if n_nodes < 2 {
        return Err(QwcError::InvalidParameter("temperature scans need N >= 2".into()));
    }
    let h = hadamard_params::<T>();
    let reference = phase_temperature(theta, h.zeta(), h.xi(), initial, n_nodes, T::one())?;
    let psi = project_all(&make_state(initial, n_nodes)?);
    let n2 = axis_xi.points;
    let ratios = (0..axis_zeta.points * n2)
        .into_par_iter()
        .map(|idx| {
            let coin = CoinParams::new(theta, axis_zeta.value(idx / n2), axis_xi.value(idx % n2), T::zero())?;
            let spectrum = WalkSpectrum::new(&coin, n_nodes)?;
            let t = entanglement_temperature(&reduced_density_from(&spectrum, &psi), T::one())?;
            Ok(temperature_ratio(t.temperature, reference.temperature))
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(ScanGrid {
        axis1: axis_zeta.clone(),
        axis2: axis_xi.clone(),
        reference,
        ratios,
    })
}
