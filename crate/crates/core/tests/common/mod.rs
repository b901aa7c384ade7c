#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex;
use num_rational::Rational64;
use proptest::prelude::*;

use qwalk::{Angle, CoinParams, RawAmplitude, InitialStateSpec, WalkState};

pub fn angle() -> impl Strategy<Value = f64> {
    -PI..PI
}

/// Coin with generic (float) angles.
pub fn float_coin() -> impl Strategy<Value = CoinParams<f64>> {
    (angle(), angle(), angle(), angle()).prop_map(|(t, z, x, e)| CoinParams::new(t, z, x, e).unwrap())
}

/// Coin whose ζ = mπ/N makes the N-cycle degenerate.
pub fn resonant_coin(n: usize) -> impl Strategy<Value = CoinParams<f64>> {
    let n = n as i64;
    (angle(), -n..n, angle(), angle()).prop_map(move |(t, m, x, e)| {
        CoinParams::from_angles(
            Angle::Radians(t),
            Angle::PiMultiple(Rational64::new(m, n)),
            Angle::Radians(x),
            Angle::Radians(e),
        )
        .unwrap()
    })
}

pub fn any_coin(n: usize) -> BoxedStrategy<CoinParams<f64>> {
    prop_oneof![float_coin(), resonant_coin(n)].boxed()
}

pub fn amplitudes(n: usize) -> impl Strategy<Value = Vec<Complex<f64>>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2 * n)
        .prop_map(|v| v.into_iter().map(|(re, im)| Complex::new(re, im)).collect::<Vec<_>>())
        .prop_filter("non-zero state", |v: &Vec<Complex<f64>>| {
            v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3
        })
}

pub fn state(n: usize) -> impl Strategy<Value = WalkState<f64>> {
    amplitudes(n).prop_map(move |a| WalkState::from_amplitudes(n, a).unwrap())
}

/// `(N, coin, state)` with N in `lo..=hi`.
pub fn config(lo: usize, hi: usize) -> impl Strategy<Value = (usize, CoinParams<f64>, WalkState<f64>)> {
    (lo..=hi).prop_flat_map(|n| (Just(n), any_coin(n), state(n)))
}

pub fn raw_spec(state: &WalkState<f64>) -> InitialStateSpec<f64> {
    let n = state.n_nodes();
    InitialStateSpec::Raw(
        (0..2)
            .flat_map(|s| (0..n).map(move |j| (s, j)))
            .map(|(s, j)| RawAmplitude {
                s,
                j,
                amplitude: state.amplitude(s, j),
            })
            .collect(),
    )
}
