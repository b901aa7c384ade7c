//! Infinite-time averages from the block spectrum.
//!
//! The time average of `|ψ_k(t)⟩⟨ψ_k'(t)|` keeps only eigenpairs with equal
//! eigenvalues. Collecting those pairs into the 4×4 matrix
//! `M(k,k') = Σ |v_k^i⟩⟨v_k'^j| ⊗ |v_k'^j⟩⟨v_k^i|` and contracting with the
//! initial spinors gives the 2×2 matrices `Θ(k,k')`:
//!
//! * reduced coin density: `ρ̃_c = Σ_k Θ(k,k)`
//! * limiting distribution:
//!   `π(v) = 1/N + (1/N)·Re Σ_{k≠k'} e^{2πiv(k−k')/N} tr Θ(k,k')`,
//!   where the sum runs over degenerate pairs.

use num_complex::Complex;
use num_traits::Zero;

use crate::coin::CoinParams;
use crate::density::{Distribution, ReducedDensity};
use crate::error::{QwcError, Result};
use crate::linalg::{inner, ComplexMat};
use crate::real::Real;
use crate::spectral::{
    degeneracy_table, eigenvalues_coincide, fully_degenerate, solve_all, DegeneracyTable, KBlock, Zone,
};
use crate::state::{project_all, Spinor, WalkState};

/// Blocks, pairing table and coupling structure for one (coin, N).
#[derive(Clone, Debug)]
pub struct WalkSpectrum<T> {
    blocks: Vec<KBlock<T>>,
    table: DegeneracyTable,
    fully_degenerate: bool,
}

impl<T: Real> WalkSpectrum<T> {
    pub fn new(coin: &CoinParams<T>, n_nodes: usize) -> Result<Self> {
        if n_nodes == 0 {
            return Err(QwcError::InvalidParameter("N must be positive".into()));
        }
        Ok(Self {
            blocks: solve_all(coin, n_nodes)?,
            table: degeneracy_table(coin, n_nodes),
            fully_degenerate: fully_degenerate(coin),
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[KBlock<T>] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &KBlock<T> {
        &self.blocks[k]
    }

    pub fn table(&self) -> &DegeneracyTable {
        &self.table
    }

    /// `cos θ ≈ 0`: every block has the spectrum `{±i}` (times the global
    /// phase), so every pair of momenta is coupled.
    pub fn is_fully_degenerate(&self) -> bool {
        self.fully_degenerate
    }

    /// Momenta `k' ≠ k` sharing an eigenvalue with block `k`.
    pub fn coupled(&self, k: usize) -> Vec<usize> {
        if self.fully_degenerate {
            (0..self.n_nodes()).filter(|&kp| kp != k).collect()
        } else {
            self.table.partner(k).filter(|&kp| kp != k).into_iter().collect()
        }
    }

    /// Replaces every block by a re-phased copy; observables must not change.
    pub fn regauged(&self, phases: &[[T; 2]]) -> Self {
        assert_eq!(phases.len(), self.blocks.len());
        Self {
            blocks: self.blocks.iter().zip(phases).map(|(b, &p)| b.regauged(p)).collect(),
            table: self.table.clone(),
            fully_degenerate: self.fully_degenerate,
        }
    }
}

/// 4×4 characteristic matrix on coin⊗coin, basis order (00, 01, 10, 11).
#[derive(Clone, Debug, PartialEq)]
pub struct MMatrix<T> {
    k: usize,
    k_prime: usize,
    entries: ComplexMat<T>,
}

impl<T: Real> MMatrix<T> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn k_prime(&self) -> usize {
        self.k_prime
    }

    pub fn entries(&self) -> &ComplexMat<T> {
        &self.entries
    }
}

/// 2×2 matrix `Θ(k,k')`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaMatrix<T> {
    entries: ComplexMat<T>,
}

impl<T: Real> ThetaMatrix<T> {
    pub fn entries(&self) -> &ComplexMat<T> {
        &self.entries
    }

    pub fn trace(&self) -> Complex<T> {
        self.entries.trace()
    }
}

/// Eigenpairs `(i, j)` of blocks `a`, `b` with `λ_a^i = λ_b^j`.
fn matched_zones<T: Real>(a: &KBlock<T>, b: &KBlock<T>) -> Vec<(Zone, Zone)> {
    if a.k() == b.k() && a.is_scalar() {
        // one eigenspace: any pairing of the basis vectors
        return Zone::BOTH
            .iter()
            .flat_map(|&i| Zone::BOTH.iter().map(move |&j| (i, j)))
            .collect();
    }
    let mut out = Vec::with_capacity(2);
    for i in Zone::BOTH {
        for j in Zone::BOTH {
            if eigenvalues_coincide(a.eigenvalue(i), b.eigenvalue(j)) {
                out.push((i, j));
            }
        }
    }
    out
}

/// `M(k,k') = Σ_{λ_k^i = λ_k'^j} |v_k^i⟩⟨v_k'^j| ⊗ |v_k'^j⟩⟨v_k^i|`.
pub fn m_matrix<T: Real>(kb: &KBlock<T>, kb_prime: &KBlock<T>) -> Result<MMatrix<T>> {
    let pairs = matched_zones(kb, kb_prime);
    if pairs.is_empty() {
        return Err(QwcError::NotDegenerate {
            k: kb.k(),
            k_prime: kb_prime.k(),
        });
    }
    let mut entries = ComplexMat::zeros(4, 4);
    for (i, j) in pairs {
        let u = kb.eigenvector(i);
        let w = kb_prime.eigenvector(j);
        entries += &ComplexMat::outer(u, w).kron(&ComplexMat::outer(w, u));
    }
    Ok(MMatrix {
        k: kb.k(),
        k_prime: kb_prime.k(),
        entries,
    })
}

/// `Θ(k,k') = Tr₂((I ⊗ |ψ_k⟩⟨ψ_k'|)·M(k,k'))`.
pub fn theta_matrix<T: Real>(m: &MMatrix<T>, psi_k: &Spinor<T>, psi_k_prime: &Spinor<T>) -> ThetaMatrix<T> {
    let lift = ComplexMat::identity(2).kron(&ComplexMat::outer(psi_k, psi_k_prime));
    ThetaMatrix {
        entries: lift.matmul(&m.entries).partial_trace_second(2, 2),
    }
}

/// `Θ(k,k')` contracted directly from the eigenvectors, without forming M:
/// `Σ ⟨v_k^i|ψ_k⟩⟨ψ_k'|v_k'^j⟩ |v_k^i⟩⟨v_k'^j|`.
fn theta_direct<T: Real>(
    kb: &KBlock<T>,
    kb_prime: &KBlock<T>,
    psi_k: &Spinor<T>,
    psi_k_prime: &Spinor<T>,
) -> ComplexMat<T> {
    let mut out = ComplexMat::zeros(2, 2);
    for (i, j) in matched_zones(kb, kb_prime) {
        let u = kb.eigenvector(i);
        let w = kb_prime.eigenvector(j);
        let c = inner(u, psi_k) * inner(psi_k_prime, w);
        out += &ComplexMat::outer(u, w).scale(c);
    }
    out
}

/// Trace of [`theta_direct`], i.e. the time average of `⟨ψ_k'(t)|ψ_k(t)⟩`.
fn theta_trace<T: Real>(kb: &KBlock<T>, kb_prime: &KBlock<T>, psi_k: &Spinor<T>, psi_k_prime: &Spinor<T>) -> Complex<T> {
    matched_zones(kb, kb_prime)
        .into_iter()
        .map(|(i, j)| {
            let u = kb.eigenvector(i);
            let w = kb_prime.eigenvector(j);
            inner(u, psi_k) * inner(psi_k_prime, w) * inner(w, u)
        })
        .sum()
}

fn check_state<T: Real>(state0: &WalkState<T>, n_nodes: usize) -> Result<()> {
    if state0.n_nodes() != n_nodes {
        return Err(QwcError::InvalidParameter(format!(
            "state has {} nodes, expected {n_nodes}",
            state0.n_nodes()
        )));
    }
    Ok(())
}

/// `ρ̃_c = Σ_k Θ(k,k)`.
pub fn asymptotic_reduced_density<T: Real>(
    state0: &WalkState<T>,
    coin: &CoinParams<T>,
    n_nodes: usize,
) -> Result<ReducedDensity<T>> {
    check_state(state0, n_nodes)?;
    let spectrum = WalkSpectrum::new(coin, n_nodes)?;
    Ok(reduced_density_from(&spectrum, &project_all(state0)))
}

/// [`asymptotic_reduced_density`] for precomputed spectrum and spinors.
pub fn reduced_density_from<T: Real>(spectrum: &WalkSpectrum<T>, psi: &[Spinor<T>]) -> ReducedDensity<T> {
    let mut rho = ComplexMat::zeros(2, 2);
    for (kb, p) in spectrum.blocks().iter().zip(psi) {
        rho += &theta_direct(kb, kb, p, p);
    }
    // symmetrize away rounding so Hermiticity holds exactly
    let herm = (&rho + &rho.adjoint()).scale(Complex::new(T::lit(0.5), T::zero()));
    ReducedDensity::from_rows([[herm[(0, 0)], herm[(0, 1)]], [herm[(1, 0)], herm[(1, 1)]]])
}

/// `π(v)` for `v = 0..N`.
pub fn limiting_distribution<T: Real>(
    state0: &WalkState<T>,
    coin: &CoinParams<T>,
    n_nodes: usize,
) -> Result<Distribution<T>> {
    check_state(state0, n_nodes)?;
    let spectrum = WalkSpectrum::new(coin, n_nodes)?;
    limiting_distribution_from(&spectrum, &project_all(state0))
}

/// [`limiting_distribution`] for precomputed spectrum and spinors.
pub fn limiting_distribution_from<T: Real>(spectrum: &WalkSpectrum<T>, psi: &[Spinor<T>]) -> Result<Distribution<T>> {
    let n = spectrum.n_nodes();
    let nn = T::from_usize(n);
    let uniform = T::one() / nn;

    // Fold the pair sum by frequency d = (k − k') mod N first so that the
    // v-loop costs O(N²) regardless of how many pairs are coupled.
    let mut by_freq = vec![Complex::<T>::zero(); n];
    let mut any = false;
    for k in 0..n {
        for kp in spectrum.coupled(k) {
            let tr = theta_trace(spectrum.block(k), spectrum.block(kp), &psi[k], &psi[kp]);
            by_freq[(k + n - kp) % n] += tr;
            any = true;
        }
    }
    if !any {
        return Distribution::new(vec![uniform; n]);
    }

    let roots: Vec<Complex<T>> = (0..n)
        .map(|m| Complex::cis(T::two_pi() * T::from_usize(m) / nn))
        .collect();
    let mut probs = Vec::with_capacity(n);
    for v in 0..n {
        let mut s = Complex::<T>::zero();
        for (d, c) in by_freq.iter().enumerate() {
            if !c.is_zero() {
                s += roots[(v * d) % n] * c;
            }
        }
        probs.push(uniform + s.re / nn);
    }
    clean_distribution(probs)
}

fn clean_distribution<T: Real>(mut probs: Vec<T>) -> Result<Distribution<T>> {
    // larger negatives signal a real error, not rounding
    let dust = T::dust();
    for p in probs.iter_mut() {
        if !p.is_finite() || *p < -dust {
            return Err(QwcError::Domain(format!("limiting probability {p} out of range")));
        }
        if *p < T::zero() {
            *p = T::zero();
        }
    }
    let total: T = probs.iter().copied().sum();
    for p in probs.iter_mut() {
        *p /= total;
    }
    Distribution::new(probs)
}

/// Closed-form limiting distribution of the Hadamard walk started in
/// `|0⟩ ⊗ |t⟩`:
///
/// `π(v) = 1/N + ((−1)^{v−t}/N²) Σ_{k≠N/4,3N/4} sin ω · sin(ω(2(v−t)+1)) / (cos²ω + 1)`,
/// `ω = 2πk/N`. Uniform for odd N.
pub fn hadamard_local_ld<T: Real>(n_nodes: usize, t: usize) -> Result<Distribution<T>> {
    if n_nodes == 0 {
        return Err(QwcError::InvalidParameter("N must be positive".into()));
    }
    if t >= n_nodes {
        return Err(QwcError::PositionOutOfRange {
            position: t,
            n_nodes,
        });
    }
    let n = n_nodes;
    if n % 2 == 1 {
        return Ok(Distribution::uniform(n));
    }
    let nn = T::from_usize(n);
    let excluded = |k: usize| 4 * k == n || 4 * k == 3 * n;
    let probs = (0..n)
        .map(|v| {
            let d = (v + n - t) % n;
            let sign = if d % 2 == 0 { T::one() } else { -T::one() };
            let s: T = (0..n)
                .filter(|&k| !excluded(k))
                .map(|k| {
                    let w = T::two_pi() * T::from_usize(k) / nn;
                    // reduce ω(2d+1) mod 2π through the integer k(2d+1) mod N
                    let arg = T::two_pi() * T::from_usize((k * (2 * d + 1)) % n) / nn;
                    let c = w.cos();
                    w.sin() * arg.sin() / (c * c + T::one())
                })
                .sum();
            T::one() / nn + sign * s / (nn * nn)
        })
        .collect();
    Distribution::new(probs)
}
