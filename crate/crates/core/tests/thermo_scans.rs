use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex;

use qwalk::thermo::{bloch_temperature, phase_temperature, temperature_ratio};
use qwalk::{
    bloch_temperature_scan, coin_phase_temperature_scan, entanglement_temperature, hadamard_params, ReducedDensity,
    ScanAxis, InitialStateSpec, WalkSpectrum,
};

const N: usize = 100;

#[test]
fn hadamard_reference_temperature() {
    let spectrum = WalkSpectrum::new(&hadamard_params(), N).unwrap();
    let t0 = bloch_temperature(&spectrum, PI, 0.0, 1.0).unwrap();
    // on this cycle ρ̃_c has eigenvalues 1/√2 and 1 − 1/√2, so T₀ = 2/ln(1 + √2)
    let l1 = 0.5f64.sqrt();
    assert!((t0.lambda1 - l1).abs() < 1e-12);
    assert!((t0.lambda2 - (1.0 - l1)).abs() < 1e-12);
    assert!((t0.temperature - 2.0 / (1.0 + 2f64.sqrt()).ln()).abs() < 1e-10);
    assert!((t0.temperature - 2.2692).abs() < 1e-4);
}

#[test]
fn bloch_scan_extremes() {
    let axis_g = ScanAxis::new(0.0, PI, 101).unwrap();
    let axis_p = ScanAxis::new(0.0, 2.0 * PI, 101).unwrap();
    let grid = bloch_temperature_scan(&hadamard_params(), N, &axis_g, &axis_p).unwrap();
    assert_eq!(grid.ratio(100, 0), 1.0);
    let finite: Vec<f64> = grid.ratios().iter().copied().filter(|r| r.is_finite()).collect();
    let min = finite.iter().copied().fold(f64::INFINITY, f64::min);
    // coldest start: spinor [cos π/8, sin π/8], i.e. γ = π/4, φ = 0
    assert!((min - grid.ratio(25, 0)).abs() < 1e-12);
    assert!((min - 0.6565).abs() < 1e-3);
    // [cos 3π/8, sin 3π/8] leaves the coin maximally mixed
    assert!(grid.ratio(75, 0).is_infinite());
    assert!(finite.iter().any(|&r| r > 6.0));
}

#[test]
fn phase_scan_diagonal_is_neutral() {
    for gamma in [FRAC_PI_4, 3.0 * FRAC_PI_4] {
        let init = InitialStateSpec::Bloch { gamma, phi: 0.0, position: 0 };
        let axis = ScanAxis::new(-PI, PI, 51).unwrap();
        let grid = coin_phase_temperature_scan(FRAC_PI_4, &init, N, &axis, &axis).unwrap();
        for i in 0..51 {
            assert!((grid.ratio(i, i) - 1.0).abs() < 1e-9, "gamma={gamma} i={i}");
        }
        if gamma == FRAC_PI_4 {
            // anti-phase coins heat the walker, without bound
            assert!(grid.ratio(25, 0) > 1.0 && grid.ratio(0, 25) > 1.0);
            assert!(grid.ratios().iter().any(|&r| r > 6.0));
            let min = grid.ratios().iter().copied().fold(f64::INFINITY, f64::min);
            assert!(min > 1.0 - 1e-9);
        }
    }
}

#[test]
fn phase_temperature_is_scale_free() {
    let init = InitialStateSpec::Bloch { gamma: FRAC_PI_4, phi: 0.0, position: 0 };
    let a = phase_temperature(0.7, 0.3, -1.0, &init, 20, 1.0).unwrap();
    let b = phase_temperature(0.7, 0.3, -1.0, &init, 20, 3.5).unwrap();
    let r0 = phase_temperature(0.7, 0.1, 0.1, &init, 20, 1.0).unwrap();
    let r1 = phase_temperature(0.7, 0.1, 0.1, &init, 20, 3.5).unwrap();
    assert!((b.temperature - 3.5 * a.temperature).abs() < 1e-12 * b.temperature);
    let ra = temperature_ratio(a.temperature, r0.temperature);
    let rb = temperature_ratio(b.temperature, r1.temperature);
    assert!((ra - rb).abs() < 1e-12 * ra);
}

#[test]
fn reference_ratio_is_attached() {
    let c = |x: f64| Complex::new(x, 0.0);
    let hot = entanglement_temperature(&ReducedDensity::from_rows([[c(0.6), c(0.0)], [c(0.0), c(0.4)]]), 1.0).unwrap();
    let cold = entanglement_temperature(&ReducedDensity::from_rows([[c(0.9), c(0.0)], [c(0.0), c(0.1)]]), 1.0).unwrap();
    let r = hot.with_reference(&cold).ratio_to_reference.unwrap();
    assert!((r - 9f64.ln() / 1.5f64.ln()).abs() < 1e-12);
}
