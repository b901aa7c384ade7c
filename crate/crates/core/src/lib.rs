//! Discrete-time coined quantum walks on N-cycles with a general U(2) coin.
//!
//! The walk operator block-diagonalizes in momentum space into 2×2 unitaries,
//! which gives closed forms for the infinite-time averages: the reduced coin
//! density [`asymptotic_reduced_density`], the limiting position distribution
//! [`limiting_distribution`] and the derived [`entanglement_temperature`].
//! The [`oracle`] module evolves the walk step by step and serves as the
//! independent reference for all of them.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! `*F64` aliases below name the usual instantiation.
//!
//! ```
//! use qwalk::{hadamard_params, limiting_distribution, make_state, InitialStateSpec};
//!
//! let state = make_state(&InitialStateSpec::local_up(0), 5).unwrap();
//! let ld = limiting_distribution(&state, &hadamard_params::<f64>(), 5).unwrap();
//! assert!(ld.probs().iter().all(|p| (p - 0.2).abs() < 1e-12));
//! ```

pub mod angle;
pub mod asymptotics;
pub mod coin;
pub mod density;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod real;
pub mod spectral;
pub mod state;
pub mod thermo;
pub mod verify;

pub use angle::{parse_angle, Angle};
pub use asymptotics::{
    asymptotic_reduced_density, hadamard_local_ld, limiting_distribution, m_matrix, theta_matrix, MMatrix,
    ThetaMatrix, WalkSpectrum,
};
pub use coin::{build_coin, diaz_params, hadamard_params, parse_coin, CoinMatrix, CoinParams};
pub use density::{DensityMatrix, Distribution, ReducedDensity};
pub use error::{QwcError, Result};
pub use linalg::ComplexMat;
pub use real::Real;
pub use spectral::{block, degeneracy_table, solve_block, DegeneracyTable, KBlock, Zone};
pub use state::{
    make_state, parse_initial_state, project_all, project_initial, read_raw_amplitudes, InitialStateSpec,
    RawAmplitude, Spinor, WalkState,
};
pub use thermo::{
    bloch_temperature_scan, coin_phase_temperature_scan, entanglement_temperature, ScanAxis, ScanGrid,
    TemperatureResult,
};
pub use verify::{run_verification, VerifyConfig, VerifyReport};

pub type CoinParamsF64 = CoinParams<f64>;
pub type CoinMatrixF64 = CoinMatrix<f64>;
pub type WalkStateF64 = WalkState<f64>;
pub type InitialStateSpecF64 = InitialStateSpec<f64>;
pub type DistributionF64 = Distribution<f64>;
pub type ReducedDensityF64 = ReducedDensity<f64>;
pub type DensityMatrixF64 = DensityMatrix<f64>;
pub type KBlockF64 = KBlock<f64>;
pub type ComplexMatF64 = ComplexMat<f64>;

pub type CoinParamsF32 = CoinParams<f32>;
pub type WalkStateF32 = WalkState<f32>;
pub type DistributionF32 = Distribution<f32>;
pub type ReducedDensityF32 = ReducedDensity<f32>;
