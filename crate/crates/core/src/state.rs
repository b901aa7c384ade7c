//! Walker states on the N-cycle and the initial-state presets.
//!
//! Amplitudes are stored coin-major: the amplitude of `|s, j⟩` lives at index
//! `s·N + j`.

use std::path::Path;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;

use crate::angle::parse_angle;
use crate::error::{QwcError, Result};
use crate::real::Real;

/// A coin spinor `(c₀, c₁)`.
pub type Spinor<T> = [Complex<T>; 2];

/// Normalized amplitude vector over coin ⊗ position.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkState<T> {
    n_nodes: usize,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> WalkState<T> {
    /// Builds a state from raw amplitudes, normalizing them.
    pub fn from_amplitudes(n_nodes: usize, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if n_nodes == 0 {
            return Err(QwcError::InvalidParameter("cycle needs at least one node".into()));
        }
        if amplitudes.len() != 2 * n_nodes {
            return Err(QwcError::InvalidParameter(format!(
                "expected {} amplitudes, got {}",
                2 * n_nodes,
                amplitudes.len()
            )));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(QwcError::InvalidParameter("non-finite amplitude".into()));
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm <= T::zero() {
            return Err(QwcError::ZeroNorm);
        }
        let amplitudes = amplitudes.into_iter().map(|z| z.unscale(norm)).collect();
        Ok(Self { n_nodes, amplitudes })
    }

    /// Wraps amplitudes that are already normalized (evolution output).
    pub(crate) fn from_normalized(n_nodes: usize, amplitudes: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(amplitudes.len(), 2 * n_nodes);
        Self { n_nodes, amplitudes }
    }

    /// `|s, j⟩`.
    pub fn basis(n_nodes: usize, s: usize, j: usize) -> Result<Self> {
        if s > 1 {
            return Err(QwcError::InvalidParameter(format!("coin index {s} not in {{0,1}}")));
        }
        if j >= n_nodes {
            return Err(QwcError::PositionOutOfRange { position: j, n_nodes });
        }
        let mut a = vec![Complex::zero(); 2 * n_nodes];
        a[s * n_nodes + j] = Complex::new(T::one(), T::zero());
        Ok(Self { n_nodes, amplitudes: a })
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    #[inline]
    pub fn amplitude(&self, s: usize, j: usize) -> Complex<T> {
        self.amplitudes[s * self.n_nodes + j]
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// The same state multiplied by `e^{iφ}`.
    pub fn with_global_phase(&self, phi: T) -> Self {
        let p = Complex::cis(phi);
        Self {
            n_nodes: self.n_nodes,
            amplitudes: self.amplitudes.iter().map(|&z| z * p).collect(),
        }
    }

    /// Maximum amplitude difference to another state of the same size.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.n_nodes, other.n_nodes);
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }
}

/// One `(s, j, amplitude)` entry of a raw initial state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RawAmplitude<T> {
    pub s: usize,
    pub j: usize,
    pub amplitude: Complex<T>,
}

/// Initial-state recipes.
#[derive(Clone, Debug, PartialEq)]
pub enum InitialStateSpec<T> {
    /// Coin spinor `coin` at node `position`; the spinor is normalized.
    Local { position: usize, coin: Spinor<T> },
    /// Coin `[cos(γ/2), e^{iφ} sin(γ/2)]` at node `position`.
    Bloch { gamma: T, phi: T, position: usize },
    /// `(|s=0, j=0⟩ + |s=1, j=p⟩)/√2`.
    EntangledPair { p: usize },
    /// `(|s=0, j=0⟩ + |s=0, j=p⟩)/√2`.
    SeparablePair { p: usize },
    /// Arbitrary amplitudes, normalized on construction; repeated entries add.
    Raw(Vec<RawAmplitude<T>>),
}

impl<T: Real> InitialStateSpec<T> {
    pub fn local_up(position: usize) -> Self {
        Self::Local {
            position,
            coin: [Complex::new(T::one(), T::zero()), Complex::zero()],
        }
    }

    /// Real spinor `[cos a, sin a]` at the origin.
    pub fn real_spinor(a: T) -> Self {
        let (s, c) = a.sin_cos();
        Self::Local {
            position: 0,
            coin: [Complex::new(c, T::zero()), Complex::new(s, T::zero())],
        }
    }
}

/// Builds the normalized state described by `spec` on an `n_nodes` cycle.
pub fn make_state<T: Real>(spec: &InitialStateSpec<T>, n_nodes: usize) -> Result<WalkState<T>> {
    if n_nodes == 0 {
        return Err(QwcError::InvalidParameter("cycle needs at least one node".into()));
    }
    let check = |position: usize| {
        if position < n_nodes {
            Ok(())
        } else {
            Err(QwcError::PositionOutOfRange { position, n_nodes })
        }
    };
    let pair_check = |p: usize| {
        if p == 0 || p >= n_nodes {
            Err(QwcError::InvalidParameter(format!(
                "pair offset p={p} must satisfy 0 < p < {n_nodes}"
            )))
        } else {
            Ok(())
        }
    };
    let mut a = vec![Complex::<T>::zero(); 2 * n_nodes];
    match spec {
        InitialStateSpec::Local { position, coin } => {
            check(*position)?;
            a[*position] = coin[0];
            a[n_nodes + *position] = coin[1];
        }
        InitialStateSpec::Bloch { gamma, phi, position } => {
            check(*position)?;
            let half = *gamma / T::lit(2.0);
            a[*position] = Complex::new(half.cos(), T::zero());
            a[n_nodes + *position] = Complex::cis(*phi).scale(half.sin());
        }
        InitialStateSpec::EntangledPair { p } => {
            pair_check(*p)?;
            let h = T::lit(0.5).sqrt();
            a[0] = Complex::new(h, T::zero());
            a[n_nodes + *p] = Complex::new(h, T::zero());
        }
        InitialStateSpec::SeparablePair { p } => {
            pair_check(*p)?;
            let h = T::lit(0.5).sqrt();
            a[0] = Complex::new(h, T::zero());
            a[*p] = Complex::new(h, T::zero());
        }
        InitialStateSpec::Raw(entries) => {
            for e in entries {
                if e.s > 1 {
                    return Err(QwcError::InvalidParameter(format!(
                        "coin index {} not in {{0,1}}",
                        e.s
                    )));
                }
                check(e.j)?;
                a[e.s * n_nodes + e.j] += e.amplitude;
            }
        }
    }
    WalkState::from_amplitudes(n_nodes, a)
}

/// `e^{-2πi m/N}` for `m = 0..N`.
pub(crate) fn roots_of_unity<T: Real>(n: usize) -> Vec<Complex<T>> {
    let nn = T::from_usize(n);
    (0..n)
        .map(|m| Complex::cis(-T::two_pi() * T::from_usize(m) / nn))
        .collect()
}

/// Momentum-space coin spinor `ψ_k = (1/√N) Σ_j e^{−2πikj/N} (a_{0,j}, a_{1,j})`.
pub fn project_initial<T: Real>(state: &WalkState<T>, k: usize) -> Result<Spinor<T>> {
    let n = state.n_nodes();
    if k >= n {
        return Err(QwcError::MomentumOutOfRange { k, n_nodes: n });
    }
    let roots = roots_of_unity::<T>(n);
    Ok(project_with(state, k, &roots))
}

/// All `N` momentum spinors at once.
pub fn project_all<T: Real>(state: &WalkState<T>) -> Vec<Spinor<T>> {
    let n = state.n_nodes();
    let roots = roots_of_unity::<T>(n);
    (0..n).map(|k| project_with(state, k, &roots)).collect()
}

fn project_with<T: Real>(state: &WalkState<T>, k: usize, roots: &[Complex<T>]) -> Spinor<T> {
    let n = state.n_nodes();
    let mut out = [Complex::zero(); 2];
    for j in 0..n {
        // (k·j) mod N keeps the phase argument exact
        let w = roots[(k * j) % n];
        out[0] += w * state.amplitude(0, j);
        out[1] += w * state.amplitude(1, j);
    }
    let scale = T::from_usize(n).sqrt();
    [out[0].unscale(scale), out[1].unscale(scale)]
}

/// Inverse of [`project_all`]: rebuilds position amplitudes from the spinors.
pub fn reconstruct<T: Real>(spinors: &[Spinor<T>]) -> Vec<Complex<T>> {
    let n = spinors.len();
    let roots = roots_of_unity::<T>(n);
    let scale = T::from_usize(n).sqrt();
    let mut a = vec![Complex::zero(); 2 * n];
    for j in 0..n {
        for (k, psi) in spinors.iter().enumerate() {
            let w = roots[(k * j) % n].conj();
            a[j] += w * psi[0];
            a[n + j] += w * psi[1];
        }
        a[j] = a[j].unscale(scale);
        a[n + j] = a[n + j].unscale(scale);
    }
    a
}

/// Parses the initial-state mini-language:
/// `local:J[,c0re,c0im,c1re,c1im]`, `bloch:GAMMA,PHI[@J]`, `entangled:P`,
/// `separable:P`, `raw:@FILE`.
pub fn parse_initial_state<T: Real>(s: &str) -> Result<InitialStateSpec<T>> {
    let s = s.trim();
    let (kind, arg) = s
        .split_once(':')
        .ok_or_else(|| QwcError::Parse(format!("initial state `{s}` lacks `kind:` prefix")))?;
    let int = |x: &str| -> Result<usize> {
        x.trim()
            .parse()
            .map_err(|_| QwcError::Parse(format!("expected a non-negative integer, got `{x}`")))
    };
    let real = |x: &str| -> Result<T> {
        x.trim()
            .parse::<f64>()
            .map(T::lit)
            .map_err(|_| QwcError::Parse(format!("expected a number, got `{x}`")))
    };
    match kind.trim().to_ascii_lowercase().as_str() {
        "local" => {
            let parts: Vec<&str> = arg.split(',').collect();
            match parts.len() {
                1 => Ok(InitialStateSpec::local_up(int(parts[0])?)),
                5 => Ok(InitialStateSpec::Local {
                    position: int(parts[0])?,
                    coin: [
                        Complex::new(real(parts[1])?, real(parts[2])?),
                        Complex::new(real(parts[3])?, real(parts[4])?),
                    ],
                }),
                _ => Err(QwcError::Parse(format!(
                    "local takes J or J,c0re,c0im,c1re,c1im; got `{arg}`"
                ))),
            }
        }
        "bloch" => {
            let (angles, position) = match arg.split_once('@') {
                Some((a, j)) => (a, int(j)?),
                None => (arg, 0),
            };
            let (g, p) = angles
                .split_once(',')
                .ok_or_else(|| QwcError::Parse(format!("bloch takes GAMMA,PHI[@J]; got `{arg}`")))?;
            Ok(InitialStateSpec::Bloch {
                gamma: parse_angle::<T>(g)?.radians(),
                phi: parse_angle::<T>(p)?.radians(),
                position,
            })
        }
        "entangled" => Ok(InitialStateSpec::EntangledPair { p: int(arg)? }),
        "separable" => Ok(InitialStateSpec::SeparablePair { p: int(arg)? }),
        "raw" => {
            let path = arg
                .strip_prefix('@')
                .ok_or_else(|| QwcError::Parse(format!("raw takes @FILE; got `{arg}`")))?;
            Ok(InitialStateSpec::Raw(read_raw_amplitudes(path)?))
        }
        other => Err(QwcError::Parse(format!("unknown initial state kind `{other}`"))),
    }
}

/// Reads `s,j,re,im` rows. A leading header row is skipped if its first field
/// is not an integer.
pub fn read_raw_amplitudes<T: Real, P: AsRef<Path>>(path: P) -> Result<Vec<RawAmplitude<T>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)?;
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        if rec.len() != 4 {
            return Err(QwcError::Parse(format!(
                "raw state row {} has {} fields, expected 4",
                i + 1,
                rec.len()
            )));
        }
        if i == 0 && rec[0].parse::<usize>().is_err() {
            continue;
        }
        let bad = |f: &str| QwcError::Parse(format!("raw state row {}: bad field `{f}`", i + 1));
        let s: usize = rec[0].parse().map_err(|_| bad(&rec[0]))?;
        let j: usize = rec[1].parse().map_err(|_| bad(&rec[1]))?;
        let re: f64 = rec[2].parse().map_err(|_| bad(&rec[2]))?;
        let im: f64 = rec[3].parse().map_err(|_| bad(&rec[3]))?;
        out.push(RawAmplitude {
            s,
            j,
            amplitude: Complex::new(T::lit(re), T::lit(im)),
        });
    }
    Ok(out)
}

impl<T: Real> FromStr for InitialStateSpec<T> {
    type Err = QwcError;
    fn from_str(s: &str) -> Result<Self> {
        parse_initial_state(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};
    use std::io::Write;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn local_basis_state() {
        let st = make_state(&InitialStateSpec::<f64>::local_up(0), 4).unwrap();
        assert_eq!(st.amplitude(0, 0), c(1.0, 0.0));
        assert_eq!(st.amplitudes().iter().filter(|z| z.norm() > 0.0).count(), 1);
    }

    #[test]
    fn entangled_pair_amplitudes() {
        let st = make_state(&InitialStateSpec::<f64>::EntangledPair { p: 20 }, 60).unwrap();
        assert!((st.amplitude(0, 0) - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((st.amplitude(1, 20) - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((st.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bloch_south_pole() {
        let st = make_state(&InitialStateSpec::Bloch { gamma: PI, phi: 0.0, position: 0 }, 3).unwrap();
        assert!(st.amplitude(0, 0).norm() < 1e-15);
        assert!((st.amplitude(1, 0) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            make_state(&InitialStateSpec::<f64>::local_up(4), 4),
            Err(QwcError::PositionOutOfRange { position: 4, n_nodes: 4 })
        ));
        assert!(make_state(&InitialStateSpec::<f64>::EntangledPair { p: 0 }, 4).is_err());
        assert!(make_state(&InitialStateSpec::<f64>::SeparablePair { p: 4 }, 4).is_err());
        let zero = InitialStateSpec::Raw(vec![RawAmplitude { s: 0, j: 1, amplitude: c(0.0, 0.0) }]);
        assert!(matches!(make_state(&zero, 4), Err(QwcError::ZeroNorm)));
    }

    #[test]
    fn raw_state_is_normalized() {
        let raw = InitialStateSpec::Raw(vec![
            RawAmplitude { s: 0, j: 1, amplitude: c(3.0, 0.0) },
            RawAmplitude { s: 1, j: 2, amplitude: c(0.0, 4.0) },
        ]);
        let st = make_state(&raw, 3).unwrap();
        assert!((st.amplitude(0, 1) - c(0.6, 0.0)).norm() < 1e-15);
        assert!((st.amplitude(1, 2) - c(0.0, 0.8)).norm() < 1e-15);
    }

    #[test]
    fn local_projection_is_flat() {
        let n = 7;
        let st = make_state(&InitialStateSpec::<f64>::local_up(0), n).unwrap();
        let expected = 1.0 / (n as f64).sqrt();
        for k in 0..n {
            let psi = project_initial(&st, k).unwrap();
            assert!((psi[0] - c(expected, 0.0)).norm() < 1e-15 && psi[1].norm() < 1e-15);
        }
        assert!(matches!(
            project_initial(&st, n),
            Err(QwcError::MomentumOutOfRange { .. })
        ));
    }

    #[test]
    fn translated_local_projection_phase() {
        let (n, t) = (9, 4);
        let st = make_state(&InitialStateSpec::<f64>::local_up(t), n).unwrap();
        for k in 0..n {
            let psi = project_initial(&st, k).unwrap();
            let expected = Complex::cis(-2.0 * PI * (k * t) as f64 / n as f64) / (n as f64).sqrt();
            assert!((psi[0] - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn entangled_projection() {
        let (n, p) = (12, 5);
        let st = make_state(&InitialStateSpec::<f64>::EntangledPair { p }, n).unwrap();
        let scale = 1.0 / (2.0 * n as f64).sqrt();
        for k in 0..n {
            let psi = project_initial(&st, k).unwrap();
            let phase = Complex::cis(-2.0 * PI * (k * p) as f64 / n as f64);
            assert!((psi[0] - c(scale, 0.0)).norm() < 1e-15);
            assert!((psi[1] - phase * scale).norm() < 1e-14);
        }
    }

    #[test]
    fn parse_mini_language() {
        assert_eq!(parse_initial_state::<f64>("local:3").unwrap(), InitialStateSpec::local_up(3));
        assert_eq!(
            parse_initial_state::<f64>("local:1,0,0,0,1").unwrap(),
            InitialStateSpec::Local { position: 1, coin: [c(0.0, 0.0), c(0.0, 1.0)] }
        );
        match parse_initial_state::<f64>("bloch:pi/2,pi@3").unwrap() {
            InitialStateSpec::Bloch { gamma, phi, position } => {
                assert!((gamma - PI / 2.0).abs() < 1e-15 && (phi - PI).abs() < 1e-15);
                assert_eq!(position, 3);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            parse_initial_state::<f64>("entangled:20").unwrap(),
            InitialStateSpec::EntangledPair { p: 20 }
        );
        assert_eq!(
            parse_initial_state::<f64>("separable:22").unwrap(),
            InitialStateSpec::SeparablePair { p: 22 }
        );
        for bad in ["local", "local:x", "local:1,2", "bloch:1", "foo:1", "raw:file.csv"] {
            assert!(parse_initial_state::<f64>(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn parse_raw_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "s,j,re,im").unwrap();
        writeln!(f, "0,0,1,0").unwrap();
        writeln!(f, "1, 2, 0, 1").unwrap();
        let spec = parse_initial_state::<f64>(&format!("raw:@{}", f.path().display())).unwrap();
        let st = make_state(&spec, 3).unwrap();
        assert!((st.amplitude(0, 0) - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((st.amplitude(1, 2) - c(0.0, FRAC_1_SQRT_2)).norm() < 1e-15);
    }
}
