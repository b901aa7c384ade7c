//! Density matrices and position distributions.

use std::ops::Index;

use num_complex::Complex;

use crate::error::{QwcError, Result};
use crate::linalg::{hermitian2_eigenvalues, ComplexMat};
use crate::real::Real;

/// Full coin⊗position density matrix, indexed like [`crate::WalkState`]
/// (`s·N + j`).
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T> {
    n_nodes: usize,
    entries: ComplexMat<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(n_nodes: usize, entries: ComplexMat<T>) -> Result<Self> {
        if entries.rows() != 2 * n_nodes || entries.cols() != 2 * n_nodes {
            return Err(QwcError::InvalidParameter(format!(
                "density matrix for N={n_nodes} must be {0}x{0}",
                2 * n_nodes
            )));
        }
        Ok(Self { n_nodes, entries })
    }

    /// `(1/2N)·I`.
    pub fn maximally_mixed(n_nodes: usize) -> Self {
        let d = 2 * n_nodes;
        let entries = ComplexMat::identity(d).scale(Complex::new(T::one() / T::from_usize(d), T::zero()));
        Self { n_nodes, entries }
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn dim(&self) -> usize {
        2 * self.n_nodes
    }

    pub fn entries(&self) -> &ComplexMat<T> {
        &self.entries
    }

    /// Hermitian, unit trace and positive semidefinite within `tol`.
    pub fn is_valid(&self, tol: T) -> bool {
        let tr = self.entries.trace();
        self.entries.is_hermitian(tol)
            && (tr.re - T::one()).abs() <= tol
            && tr.im.abs() <= tol
            && self.entries.is_positive_semidefinite(tol)
    }
}

/// Coin-space (2×2) density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedDensity<T> {
    entries: ComplexMat<T>,
}

impl<T: Real> ReducedDensity<T> {
    pub fn new(entries: ComplexMat<T>) -> Result<Self> {
        if entries.rows() != 2 || entries.cols() != 2 {
            return Err(QwcError::InvalidParameter("reduced density must be 2x2".into()));
        }
        Ok(Self { entries })
    }

    pub fn from_rows(rows: [[Complex<T>; 2]; 2]) -> Self {
        Self {
            entries: ComplexMat::from_rows(&rows),
        }
    }

    pub fn entries(&self) -> &ComplexMat<T> {
        &self.entries
    }

    pub fn trace(&self) -> Complex<T> {
        self.entries.trace()
    }

    /// Eigenvalues in decreasing order.
    pub fn eigenvalues(&self) -> (T, T) {
        hermitian2_eigenvalues(&self.entries)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.entries.max_abs_diff(&other.entries)
    }

    pub fn is_valid(&self, tol: T) -> bool {
        let tr = self.trace();
        let (_, l2) = self.eigenvalues();
        self.entries.is_hermitian(tol)
            && (tr.re - T::one()).abs() <= tol
            && tr.im.abs() <= tol
            && l2 >= -tol
    }
}

impl<T> Index<(usize, usize)> for ReducedDensity<T> {
    type Output = Complex<T>;
    fn index(&self, idx: (usize, usize)) -> &Complex<T> {
        &self.entries[idx]
    }
}

/// Probability vector over the N nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution<T> {
    probs: Vec<T>,
}

impl<T: Real> Distribution<T> {
    pub fn new(probs: Vec<T>) -> Result<Self> {
        if probs.is_empty() {
            return Err(QwcError::InvalidParameter("empty distribution".into()));
        }
        Ok(Self { probs })
    }

    pub fn uniform(n: usize) -> Self {
        let p = T::one() / T::from_usize(n);
        Self { probs: vec![p; n] }
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn into_vec(self) -> Vec<T> {
        self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn sum(&self) -> T {
        self.probs.iter().copied().sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.len(), other.len());
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max)
    }

    /// Entries ≥ −`neg_tol` and sum within `sum_tol` of one.
    pub fn is_valid(&self, neg_tol: T, sum_tol: T) -> bool {
        self.probs.iter().all(|&p| p.is_finite() && p >= -neg_tol)
            && (self.sum() - T::one()).abs() <= sum_tol
    }

    /// Cyclic shift: `out[(v + t) mod N] = self[v]`.
    pub fn rolled(&self, t: usize) -> Self {
        let n = self.len();
        let mut out = vec![T::zero(); n];
        for (v, &p) in self.probs.iter().enumerate() {
            out[(v + t) % n] = p;
        }
        Self { probs: out }
    }
}

impl<T> Index<usize> for Distribution<T> {
    type Output = T;
    fn index(&self, v: usize) -> &T {
        &self.probs[v]
    }
}
