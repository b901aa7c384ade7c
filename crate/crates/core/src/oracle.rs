//! Brute-force time evolution and time averages.
//!
//! This is the reference every closed-form result is checked against. It
//! applies `U = S (Γ ⊗ I)` step by step and accumulates averages over
//! `t = 1..=t_max`, never storing the trajectory.

use num_complex::Complex;
use num_traits::Zero;

use crate::coin::CoinMatrix;
use crate::density::{DensityMatrix, Distribution, ReducedDensity};
use crate::error::{QwcError, Result};
use crate::linalg::ComplexMat;
use crate::real::Real;
use crate::state::WalkState;

/// Moves `(s, j)` to `(s, j + (−1)^s mod N)`.
pub fn apply_shift<T: Real>(state: &WalkState<T>) -> WalkState<T> {
    let n = state.n_nodes();
    let a = state.amplitudes();
    let mut out = vec![Complex::zero(); 2 * n];
    for j in 0..n {
        out[(j + 1) % n] = a[j];
        out[n + (j + n - 1) % n] = a[n + j];
    }
    WalkState::from_normalized(n, out)
}

/// One step `S (Γ ⊗ I_p)`.
pub fn step<T: Real>(state: &WalkState<T>, coin: &CoinMatrix<T>) -> WalkState<T> {
    let n = state.n_nodes();
    let mut out = vec![Complex::zero(); 2 * n];
    step_into(state.amplitudes(), &CoinEntries::new(coin), n, &mut out);
    WalkState::from_normalized(n, out)
}

/// `U^t |ψ⟩`.
pub fn evolve<T: Real>(state0: &WalkState<T>, coin: &CoinMatrix<T>, t: usize) -> WalkState<T> {
    let mut walker = Walker::new(state0, coin);
    for _ in 0..t {
        walker.advance();
    }
    walker.state()
}

/// `|a_{0,j}|² + |a_{1,j}|²` per node.
pub fn position_distribution<T: Real>(state: &WalkState<T>) -> Distribution<T> {
    let n = state.n_nodes();
    let a = state.amplitudes();
    let probs = (0..n).map(|j| a[j].norm_sqr() + a[n + j].norm_sqr()).collect();
    Distribution::new(probs).expect("N > 0")
}

/// Partial trace over position: `(ρ_c)_{s,s'} = Σ_j ρ_{(s,j),(s',j)}`.
pub fn reduce_to_coin<T: Real>(rho: &DensityMatrix<T>) -> ReducedDensity<T> {
    let n = rho.n_nodes();
    let e = rho.entries();
    let mut out = ComplexMat::zeros(2, 2);
    for s in 0..2 {
        for sp in 0..2 {
            out[(s, sp)] = (0..n).map(|j| e[(s * n + j, sp * n + j)]).sum();
        }
    }
    ReducedDensity::new(out).expect("2x2")
}

/// `(1/T) Σ_{t=1}^{T} |Ψ(t)⟩⟨Ψ(t)|`, accumulated in O(N²) memory.
pub fn time_avg_density<T: Real>(
    state0: &WalkState<T>,
    coin: &CoinMatrix<T>,
    t_max: usize,
) -> Result<DensityMatrix<T>> {
    check_t_max(t_max)?;
    let n = state0.n_nodes();
    let d = 2 * n;
    let mut acc = ComplexMat::zeros(d, d);
    let mut walker = Walker::new(state0, coin);
    for _ in 0..t_max {
        walker.advance();
        let a = walker.amplitudes();
        for r in 0..d {
            if a[r].is_zero() {
                continue;
            }
            for c in 0..d {
                acc[(r, c)] += a[r] * a[c].conj();
            }
        }
    }
    let inv = Complex::new(T::one() / T::from_usize(t_max), T::zero());
    DensityMatrix::new(n, acc.scale(inv))
}

/// `(1/T) Σ_{t=1}^{T} position_distribution(Ψ(t))`.
pub fn time_avg_distribution<T: Real>(
    state0: &WalkState<T>,
    coin: &CoinMatrix<T>,
    t_max: usize,
) -> Result<Distribution<T>> {
    Ok(time_averages(state0, coin, t_max)?.distribution)
}

/// `reduce_to_coin(time_avg_density(..))`, computed by accumulating the
/// per-step reduced matrices directly (O(N) per step instead of O(N²)).
pub fn time_avg_reduced_density<T: Real>(
    state0: &WalkState<T>,
    coin: &CoinMatrix<T>,
    t_max: usize,
) -> Result<ReducedDensity<T>> {
    Ok(time_averages(state0, coin, t_max)?.reduced)
}

/// Both finite-time averages from a single pass over the trajectory.
#[derive(Clone, Debug)]
pub struct TimeAverages<T> {
    pub distribution: Distribution<T>,
    pub reduced: ReducedDensity<T>,
    pub t_max: usize,
}

pub fn time_averages<T: Real>(
    state0: &WalkState<T>,
    coin: &CoinMatrix<T>,
    t_max: usize,
) -> Result<TimeAverages<T>> {
    check_t_max(t_max)?;
    let n = state0.n_nodes();
    let mut probs = vec![T::zero(); n];
    let (mut r00, mut r11) = (T::zero(), T::zero());
    let mut r01 = Complex::<T>::zero();
    let mut walker = Walker::new(state0, coin);
    for _ in 0..t_max {
        walker.advance();
        let a = walker.amplitudes();
        for j in 0..n {
            let (u, d) = (a[j], a[n + j]);
            let (pu, pd) = (u.norm_sqr(), d.norm_sqr());
            probs[j] += pu + pd;
            r00 += pu;
            r11 += pd;
            r01 += u * d.conj();
        }
    }
    let inv = T::one() / T::from_usize(t_max);
    for p in &mut probs {
        *p *= inv;
    }
    let re = |x: T| Complex::new(x * inv, T::zero());
    let r01 = r01.scale(inv);
    Ok(TimeAverages {
        distribution: Distribution::new(probs)?,
        reduced: ReducedDensity::from_rows([[re(r00), r01], [r01.conj(), re(r11)]]),
        t_max,
    })
}

fn check_t_max(t_max: usize) -> Result<()> {
    if t_max == 0 {
        Err(QwcError::InvalidParameter("t_max must be at least 1".into()))
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy)]
struct CoinEntries<T> {
    g00: Complex<T>,
    g01: Complex<T>,
    g10: Complex<T>,
    g11: Complex<T>,
}

impl<T: Real> CoinEntries<T> {
    fn new(coin: &CoinMatrix<T>) -> Self {
        Self {
            g00: coin.get(0, 0),
            g01: coin.get(0, 1),
            g10: coin.get(1, 0),
            g11: coin.get(1, 1),
        }
    }
}

#[inline]
fn step_into<T: Real>(a: &[Complex<T>], g: &CoinEntries<T>, n: usize, out: &mut [Complex<T>]) {
    for j in 0..n {
        let (u, d) = (a[j], a[n + j]);
        let up = g.g00 * u + g.g01 * d;
        let down = g.g10 * u + g.g11 * d;
        let right = if j + 1 == n { 0 } else { j + 1 };
        let left = if j == 0 { n - 1 } else { j - 1 };
        out[right] = up;
        out[n + left] = down;
    }
}

/// Double-buffered in-place stepping.
struct Walker<T> {
    n: usize,
    coin: CoinEntries<T>,
    cur: Vec<Complex<T>>,
    next: Vec<Complex<T>>,
}

impl<T: Real> Walker<T> {
    fn new(state: &WalkState<T>, coin: &CoinMatrix<T>) -> Self {
        Self {
            n: state.n_nodes(),
            coin: CoinEntries::new(coin),
            cur: state.amplitudes().to_vec(),
            next: vec![Complex::zero(); state.amplitudes().len()],
        }
    }

    #[inline]
    fn advance(&mut self) {
        step_into(&self.cur, &self.coin, self.n, &mut self.next);
        std::mem::swap(&mut self.cur, &mut self.next);
    }

    fn amplitudes(&self) -> &[Complex<T>] {
        &self.cur
    }

    fn state(self) -> WalkState<T> {
        WalkState::from_normalized(self.n, self.cur)
    }
}
