//! Randomized differential check of the closed forms against the oracle.
//!
//! Instances are drawn sequentially from one seeded stream, so a seed fully
//! determines the sweep; evaluation runs in parallel and results keep the
//! draw order.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::angle::Angle;
use crate::asymptotics::{asymptotic_reduced_density, limiting_distribution};
use crate::coin::{build_coin, CoinParams};
use crate::error::{QwcError, Result};
use crate::oracle::time_averages;
use crate::state::{make_state, InitialStateSpec, RawAmplitude};

/// Keeps θ away from 0 and ±π/2 so every block has a spectral gap the finite
/// average can resolve.
const THETA_MARGIN: f64 = 0.15;
/// Minimum distance of a non-resonant `Nζ/π` from the nearest integer.
const RESONANCE_MARGIN: f64 = 0.2;

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub n_min: usize,
    pub n_max: usize,
    pub coins_per_n: usize,
    pub states_per_coin: usize,
    pub t_max: usize,
    pub tolerance: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            n_min: 3,
            n_max: 12,
            coins_per_n: 20,
            states_per_coin: 5,
            t_max: 200_000,
            tolerance: 1e-2,
        }
    }
}

impl VerifyConfig {
    fn validate(&self) -> Result<()> {
        if self.n_min < 2 || self.n_max < self.n_min {
            return Err(QwcError::InvalidParameter(format!(
                "node range {}..={} must satisfy 2 <= min <= max",
                self.n_min, self.n_max
            )));
        }
        if self.t_max == 0 || self.coins_per_n == 0 || self.states_per_coin == 0 {
            return Err(QwcError::InvalidParameter(
                "t_max, coin count and state count must be positive".into(),
            ));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(QwcError::InvalidParameter("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// One (N, coin, initial state) draw.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyInstance {
    pub index: usize,
    pub n_nodes: usize,
    pub coin: CoinParams<f64>,
    pub initial: InitialStateSpec<f64>,
}

impl fmt::Display for VerifyInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{} N={} coin={} init=", self.index, self.n_nodes, self.coin)?;
        match &self.initial {
            InitialStateSpec::Local { position, coin } => write!(
                f,
                "local:{position},{},{},{},{}",
                coin[0].re, coin[0].im, coin[1].re, coin[1].im
            ),
            InitialStateSpec::Bloch { gamma, phi, position } => write!(f, "bloch:{gamma},{phi}@{position}"),
            InitialStateSpec::EntangledPair { p } => write!(f, "entangled:{p}"),
            InitialStateSpec::SeparablePair { p } => write!(f, "separable:{p}"),
            InitialStateSpec::Raw(entries) => {
                write!(f, "raw[")?;
                for (i, e) in entries.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{},{},{},{}", e.s, e.j, e.amplitude.re, e.amplitude.im)?;
                }
                write!(f, "]")
            }
        }
    }
}

/// Deviations of one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceResult {
    pub instance: VerifyInstance,
    pub ld_deviation: f64,
    pub rdcm_deviation: f64,
    /// Both reduced densities Hermitian, unit trace and PSD within 1e−10.
    pub densities_valid: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub results: Vec<InstanceResult>,
}

impl VerifyReport {
    pub fn max_ld_deviation(&self) -> f64 {
        self.results.iter().map(|r| r.ld_deviation).fold(0.0, f64::max)
    }

    pub fn max_rdcm_deviation(&self) -> f64 {
        self.results.iter().map(|r| r.rdcm_deviation).fold(0.0, f64::max)
    }

    pub fn worst_ld(&self) -> Option<&InstanceResult> {
        self.results.iter().max_by(|a, b| a.ld_deviation.total_cmp(&b.ld_deviation))
    }

    pub fn worst_rdcm(&self) -> Option<&InstanceResult> {
        self.results.iter().max_by(|a, b| a.rdcm_deviation.total_cmp(&b.rdcm_deviation))
    }

    pub fn invalid_densities(&self) -> impl Iterator<Item = &InstanceResult> {
        self.results.iter().filter(|r| !r.densities_valid)
    }

    pub fn ld_passed(&self) -> bool {
        self.max_ld_deviation() < self.config.tolerance
    }

    pub fn rdcm_passed(&self) -> bool {
        self.max_rdcm_deviation() < self.config.tolerance && self.invalid_densities().next().is_none()
    }

    pub fn passed(&self) -> bool {
        self.ld_passed() && self.rdcm_passed()
    }
}

fn random_coin(rng: &mut ChaCha8Rng, n_nodes: usize) -> Result<CoinParams<f64>> {
    let mut theta = rng.random_range(THETA_MARGIN..PI / 2.0 - THETA_MARGIN);
    if rng.random_bool(0.5) {
        theta = PI - theta;
    }
    let n = n_nodes as i64;
    let zeta = if rng.random_bool(0.5) {
        // resonant: Nζ/π integral, decided exactly
        Angle::PiMultiple(Rational64::new(rng.random_range(-n..n), n))
    } else {
        let x = loop {
            let x: f64 = rng.random_range(-(n_nodes as f64)..n_nodes as f64);
            if (x - x.round()).abs() >= RESONANCE_MARGIN {
                break x;
            }
        };
        Angle::Radians(x * PI / n_nodes as f64)
    };
    let xi = rng.random_range(-PI..PI);
    let eta = rng.random_range(-PI..PI);
    CoinParams::from_angles(Angle::Radians(theta), zeta, Angle::Radians(xi), Angle::Radians(eta))
}

fn random_spinor(rng: &mut ChaCha8Rng) -> [Complex<f64>; 2] {
    let mut g = || Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    [g(), g()]
}

fn random_state(rng: &mut ChaCha8Rng, n_nodes: usize) -> InitialStateSpec<f64> {
    match rng.random_range(0..5) {
        0 => InitialStateSpec::Local {
            position: rng.random_range(0..n_nodes),
            coin: random_spinor(rng),
        },
        1 => InitialStateSpec::Bloch {
            gamma: rng.random_range(0.0..PI),
            phi: rng.random_range(0.0..2.0 * PI),
            position: rng.random_range(0..n_nodes),
        },
        2 => InitialStateSpec::EntangledPair {
            p: rng.random_range(1..n_nodes),
        },
        3 => InitialStateSpec::SeparablePair {
            p: rng.random_range(1..n_nodes),
        },
        _ => InitialStateSpec::Raw(
            (0..2)
                .flat_map(|s| (0..n_nodes).map(move |j| (s, j)))
                .map(|(s, j)| RawAmplitude {
                    s,
                    j,
                    amplitude: Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)),
                })
                .collect(),
        ),
    }
}

/// The instances a config expands to, in evaluation order.
pub fn generate_instances(config: &VerifyConfig) -> Result<Vec<VerifyInstance>> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::new();
    for n_nodes in config.n_min..=config.n_max {
        for _ in 0..config.coins_per_n {
            let coin = random_coin(&mut rng, n_nodes)?;
            for _ in 0..config.states_per_coin {
                out.push(VerifyInstance {
                    index: out.len(),
                    n_nodes,
                    coin,
                    initial: random_state(&mut rng, n_nodes),
                });
            }
        }
    }
    Ok(out)
}

/// Closed forms vs. the oracle for one instance.
pub fn check_instance(instance: &VerifyInstance, t_max: usize) -> Result<InstanceResult> {
    let n = instance.n_nodes;
    let state = make_state(&instance.initial, n)?;
    let ld = limiting_distribution(&state, &instance.coin, n)?;
    let rho = asymptotic_reduced_density(&state, &instance.coin, n)?;
    let avg = time_averages(&state, &build_coin(&instance.coin), t_max)?;
    let tol = 1e-10;
    Ok(InstanceResult {
        instance: instance.clone(),
        ld_deviation: ld.max_abs_diff(&avg.distribution),
        rdcm_deviation: rho.max_abs_diff(&avg.reduced),
        densities_valid: rho.is_valid(tol) && avg.reduced.is_valid(tol),
    })
}

pub fn run_verification(config: &VerifyConfig) -> Result<VerifyReport> {
    let instances = generate_instances(config)?;
    let results = instances
        .par_iter()
        .map(|inst| check_instance(inst, config.t_max))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        config: config.clone(),
        results,
    })
}
