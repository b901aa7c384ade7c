//! Momentum-space blocks of the walk operator.
//!
//! Fourier transforming the position register block-diagonalizes
//! `U = S(Γ ⊗ I)` into N independent 2×2 unitaries
//! `Ũ_k = diag(e^{−iω}, e^{iω})·Γ` with `ω = 2πk/N`. Each block has the
//! eigenvalues `e^{iη/2} e^{±iα}` where `cos α = cos θ cos(ω − ζ)`; the `+`
//! branch is zone I, the `−` branch zone II.
//!
//! Eigenvalues of different blocks coincide exactly when
//! `k + k' ≡ Nζ/π (mod N)`, which requires `Nζ/π` to be an integer.
//! [`DegeneracyTable`] records that pairing.

use std::collections::BTreeSet;

use num_complex::Complex;
use num_traits::Zero;

use crate::coin::{build_coin, CoinParams};
use crate::error::{QwcError, Result};
use crate::linalg::{eigenvector2, norm2, ComplexMat};
use crate::real::Real;
use crate::state::Spinor;

/// Below this norm the closed-form eigenvector is replaced by the generic
/// 2×2 solver; the closed form loses accuracy as `ε / norm`.
const CLOSED_FORM_MIN_NORM: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Zone {
    /// Eigenvalue `e^{iη/2} e^{+iα}`.
    I,
    /// Eigenvalue `e^{iη/2} e^{−iα}`.
    II,
}

impl Zone {
    pub const BOTH: [Zone; 2] = [Zone::I, Zone::II];

    pub fn index(self) -> usize {
        match self {
            Zone::I => 0,
            Zone::II => 1,
        }
    }
}

/// Spectral data of one block `Ũ_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct KBlock<T> {
    k: usize,
    n_nodes: usize,
    omega: T,
    alpha: T,
    eigenvalues: [Complex<T>; 2],
    eigenvectors: [Spinor<T>; 2],
    scalar: bool,
}

impl<T: Real> KBlock<T> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    /// `α ∈ [0, π]`.
    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn eigenvalue(&self, zone: Zone) -> Complex<T> {
        self.eigenvalues[zone.index()]
    }

    /// Unit-norm eigenvector for `zone`.
    pub fn eigenvector(&self, zone: Zone) -> &Spinor<T> {
        &self.eigenvectors[zone.index()]
    }

    /// `true` when `sin α ≈ 0`, i.e. `Ũ_k` is a multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        self.scalar
    }

    /// `|λ⟩⟨λ|` for `zone`.
    pub fn projector(&self, zone: Zone) -> ComplexMat<T> {
        let v = self.eigenvector(zone);
        ComplexMat::outer(v, v)
    }

    /// `Σ_i λ_i |λ_i⟩⟨λ_i|`.
    pub fn reconstruct(&self) -> ComplexMat<T> {
        let mut m = self.projector(Zone::I).scale(self.eigenvalue(Zone::I));
        m += &self.projector(Zone::II).scale(self.eigenvalue(Zone::II));
        m
    }

    /// Same block with each eigenvector multiplied by `e^{i·phases[zone]}`.
    pub fn regauged(&self, phases: [T; 2]) -> Self {
        let mut out = self.clone();
        for (v, &p) in out.eigenvectors.iter_mut().zip(&phases) {
            let ph = Complex::cis(p);
            v[0] *= ph;
            v[1] *= ph;
        }
        out
    }
}

fn omega_of<T: Real>(k: usize, n_nodes: usize) -> T {
    T::two_pi() * T::from_usize(k) / T::from_usize(n_nodes)
}

fn check_k(k: usize, n_nodes: usize) -> Result<()> {
    if n_nodes == 0 || k >= n_nodes {
        Err(QwcError::MomentumOutOfRange { k, n_nodes })
    } else {
        Ok(())
    }
}

/// `Ũ_k = diag(e^{−iω}, e^{iω})·Γ`.
pub fn block<T: Real>(k: usize, coin: &CoinParams<T>, n_nodes: usize) -> Result<ComplexMat<T>> {
    check_k(k, n_nodes)?;
    let w: T = omega_of(k, n_nodes);
    let d = ComplexMat::from_diag(&[Complex::cis(-w), Complex::cis(w)]);
    Ok(d.matmul(build_coin(coin).matrix()))
}

/// Eigen-decomposition of `Ũ_k`.
pub fn solve_block<T: Real>(k: usize, coin: &CoinParams<T>, n_nodes: usize) -> Result<KBlock<T>> {
    check_k(k, n_nodes)?;
    let omega: T = omega_of(k, n_nodes);
    let (st, ct) = coin.theta().sin_cos();
    let (sx, cx) = (omega - coin.zeta()).sin_cos();
    let cos_alpha = ct * cx;
    // 1 − cos²θ cos²x = sin²θ + cos²θ sin²x, without cancellation near α = 0, π
    let sin_alpha = (st * st + ct * ct * sx * sx).sqrt();
    let alpha = sin_alpha.atan2(cos_alpha);
    let phase = Complex::cis(coin.eta() / T::lit(2.0));
    let e_plus = Complex::cis(alpha);
    let e_minus = e_plus.conj();
    let eigenvalues = [phase * e_plus, phase * e_minus];

    if sin_alpha <= T::degeneracy_tol() {
        let one = Complex::new(T::one(), T::zero());
        return Ok(KBlock {
            k,
            n_nodes,
            omega,
            alpha,
            eigenvalues,
            eigenvectors: [[one, Complex::zero()], [Complex::zero(), one]],
            scalar: true,
        });
    }

    // η-free block; its eigenvectors are those of Ũ_k
    let b = ComplexMat::from_rows(&[
        [Complex::cis(coin.zeta() - omega).scale(ct), Complex::cis(coin.xi() - omega).scale(st)],
        [-Complex::cis(omega - coin.xi()).scale(st), Complex::cis(omega - coin.zeta()).scale(ct)],
    ]);
    let top = -Complex::cis(coin.xi() - omega).scale(st);
    let tail = Complex::cis(omega - coin.zeta()).scale(ct);
    // closed form: the spinor built with e^{∓iα} belongs to e^{±iα}
    let closed = [[top, e_minus - tail], [top, e_plus - tail]];
    let targets = [e_plus, e_minus];
    let mut eigenvectors = [[Complex::zero(); 2]; 2];
    for i in 0..2 {
        let n = norm2(&closed[i]);
        eigenvectors[i] = if n >= T::lit(CLOSED_FORM_MIN_NORM) {
            [closed[i][0] / n, closed[i][1] / n]
        } else {
            eigenvector2(&b, targets[i], i)
        };
    }
    Ok(KBlock {
        k,
        n_nodes,
        omega,
        alpha,
        eigenvalues,
        eigenvectors,
        scalar: false,
    })
}

/// All N blocks in `k` order.
pub fn solve_all<T: Real>(coin: &CoinParams<T>, n_nodes: usize) -> Result<Vec<KBlock<T>>> {
    (0..n_nodes).map(|k| solve_block(k, coin, n_nodes)).collect()
}

/// Pairing `k ↔ k' = (Nζ/π − k) mod N` of blocks with equal spectra.
#[derive(Clone, Debug, PartialEq)]
pub struct DegeneracyTable {
    n_nodes: usize,
    zeta: f64,
    shift: Option<usize>,
    partners: Vec<Option<usize>>,
    self_paired: BTreeSet<usize>,
}

impl DegeneracyTable {
    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    /// `(Nζ/π) mod N` when it is an integer.
    pub fn shift(&self) -> Option<usize> {
        self.shift
    }

    /// `true` when `Nζ/π` is not an integer and no block pairs up.
    pub fn is_empty(&self) -> bool {
        self.shift.is_none()
    }

    pub fn partner(&self, k: usize) -> Option<usize> {
        self.partners.get(k).copied().flatten()
    }

    /// Momenta that are their own partner (`2k ≡ Nζ/π mod N`).
    pub fn self_paired(&self) -> &BTreeSet<usize> {
        &self.self_paired
    }

    /// Ordered pairs `(k, partner(k))` with `partner(k) ≠ k`.
    pub fn off_diagonal_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partners
            .iter()
            .enumerate()
            .filter_map(|(k, p)| p.filter(|&kp| kp != k).map(|kp| (k, kp)))
    }
}

/// Builds the pairing from ζ and N.
///
/// When ζ carries an exact rational multiple of π the integrality of `Nζ/π`
/// is decided exactly; otherwise it is tested with absolute tolerance 1e−9.
pub fn degeneracy_table<T: Real>(coin: &CoinParams<T>, n_nodes: usize) -> DegeneracyTable {
    let n = n_nodes as i64;
    let shift: Option<i64> = match coin.zeta_pi() {
        Some(r) => {
            let (p, q) = (*r.numer(), *r.denom());
            let num = n * p;
            if num % q == 0 {
                Some(num / q)
            } else {
                None
            }
        }
        None => {
            let x = n_nodes as f64 * coin.zeta().to_f64().unwrap_or(f64::NAN) / std::f64::consts::PI;
            let r = x.round();
            if (x - r).abs() <= 1e-9 {
                Some(r as i64)
            } else {
                None
            }
        }
    };
    let shift = if n_nodes == 0 { None } else { shift.map(|m| m.rem_euclid(n) as usize) };
    let mut partners = vec![None; n_nodes];
    let mut self_paired = BTreeSet::new();
    if let Some(m) = shift {
        for (k, slot) in partners.iter_mut().enumerate() {
            let kp = (m + n_nodes - k) % n_nodes;
            *slot = Some(kp);
            if kp == k {
                self_paired.insert(k);
            }
        }
    }
    DegeneracyTable {
        n_nodes,
        zeta: coin.zeta().to_f64().unwrap_or(f64::NAN),
        shift,
        partners,
        self_paired,
    }
}

/// `true` when `a` and `b` agree within the degeneracy tolerance.
pub fn eigenvalues_coincide<T: Real>(a: Complex<T>, b: Complex<T>) -> bool {
    (a - b).norm() < T::degeneracy_tol()
}

/// Whether `cos θ ≈ 0`: every block then has `α = π/2` and all blocks share
/// the same two eigenvalues.
pub fn fully_degenerate<T: Real>(coin: &CoinParams<T>) -> bool {
    coin.theta().cos().abs() < T::degeneracy_tol()
}

/// Residual `max_i ‖Ũ_k v_i − λ_i v_i‖`.
pub fn eigen_residual<T: Real>(block_matrix: &ComplexMat<T>, kb: &KBlock<T>) -> T {
    Zone::BOTH
        .iter()
        .map(|&z| {
            let v = kb.eigenvector(z);
            let uv = block_matrix.mul_vec(v);
            let lam = kb.eigenvalue(z);
            let r = [uv[0] - lam * v[0], uv[1] - lam * v[1]];
            norm2(&r)
        })
        .fold(T::zero(), T::max)
}
