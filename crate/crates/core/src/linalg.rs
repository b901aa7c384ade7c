//! Small dense complex matrices.
//!
//! Everything here is sized for 2×2 coin operators, 4×4 coin⊗coin operators
//! and the occasional 2N×2N density matrix, so storage is a plain row-major
//! `Vec` and all algorithms are the textbook ones.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::real::Real;

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMat<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[Complex<T>]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.as_ref().len()).unwrap_or(0);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), c, "ragged rows");
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    pub fn from_diag(diag: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// `|u⟩⟨v|`.
    pub fn outer(u: &[Complex<T>], v: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                m[(i, j)] = ui * vj.conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex<T> {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Kronecker product `self ⊗ rhs`; `self` indexes the outer (first) factor.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out[(i * rhs.rows + k, j * rhs.cols + l)] = a * rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Partial trace over the second factor of a `d1·d2`-dimensional
    /// operator on `C^{d1} ⊗ C^{d2}`.
    pub fn partial_trace_second(&self, d1: usize, d2: usize) -> Self {
        assert!(self.is_square() && self.rows == d1 * d2);
        let mut out = Self::zeros(d1, d1);
        for i in 0..d1 {
            for j in 0..d1 {
                out[(i, j)] = (0..d2).map(|k| self[(i * d2 + k, j * d2 + k)]).sum();
            }
        }
        out
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.is_square() && self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// `‖U†U − I‖_max ≤ tol`.
    pub fn is_unitary(&self, tol: T) -> bool {
        self.is_square()
            && self
                .adjoint()
                .matmul(self)
                .max_abs_diff(&Self::identity(self.rows))
                <= tol
    }

    /// Determinant of a 2×2 matrix.
    pub fn det2(&self) -> Complex<T> {
        assert!(self.rows == 2 && self.cols == 2);
        self[(0, 0)] * self[(1, 1)] - self[(0, 1)] * self[(1, 0)]
    }

    /// Positive semidefiniteness test for a Hermitian matrix: attempts a
    /// Cholesky factorization of `self + tol·I`, which succeeds iff every
    /// eigenvalue exceeds `-tol` (up to rounding of order `ε·‖self‖`).
    pub fn is_positive_semidefinite(&self, tol: T) -> bool {
        if !self.is_hermitian(tol) {
            return false;
        }
        let n = self.rows;
        let mut l: Vec<Complex<T>> = vec![Complex::zero(); n * n];
        for j in 0..n {
            let mut d = self[(j, j)].re + tol;
            for k in 0..j {
                d -= l[j * n + k].norm_sqr();
            }
            if d <= T::zero() {
                return false;
            }
            let dj = d.sqrt();
            l[j * n + j] = Complex::new(dj, T::zero());
            for i in j + 1..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = s / dj;
            }
        }
        true
    }
}

impl<T> Index<(usize, usize)> for ComplexMat<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMat<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Add for &ComplexMat<T> {
    type Output = ComplexMat<T>;
    fn add(self, rhs: Self) -> ComplexMat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMat<T> {
    type Output = ComplexMat<T>;
    fn sub(self, rhs: Self) -> ComplexMat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> AddAssign<&ComplexMat<T>> for ComplexMat<T> {
    fn add_assign(&mut self, rhs: &ComplexMat<T>) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl<T: Real> Mul for &ComplexMat<T> {
    type Output = ComplexMat<T>;
    fn mul(self, rhs: Self) -> ComplexMat<T> {
        self.matmul(rhs)
    }
}

impl<T: fmt::Debug> fmt::Debug for ComplexMat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = &self[(i, j)];
                write!(f, "{:+.6?}{:+.6?}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Eigenvalues of a 2×2 Hermitian matrix in decreasing order, from the
/// closed form `tr/2 ± sqrt((tr/2)² − det)`.
pub fn hermitian2_eigenvalues<T: Real>(m: &ComplexMat<T>) -> (T, T) {
    assert!(m.rows() == 2 && m.cols() == 2);
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let half_tr = (a + d) / T::lit(2.0);
    // (tr/2)² − det written without cancellation
    let half_diff = (a - d) / T::lit(2.0);
    let disc = (half_diff * half_diff + b.norm_sqr()).sqrt();
    (half_tr + disc, half_tr - disc)
}

/// Unit eigenvector of a normal 2×2 matrix for the eigenvalue `lambda`.
///
/// Uses whichever row of `m − λI` is better conditioned; when both rows vanish
/// (the matrix is `λI`) the canonical vector `e_fallback` is returned.
pub fn eigenvector2<T: Real>(
    m: &ComplexMat<T>,
    lambda: Complex<T>,
    fallback: usize,
) -> [Complex<T>; 2] {
    let from_row0 = [m[(0, 1)], lambda - m[(0, 0)]];
    let from_row1 = [lambda - m[(1, 1)], m[(1, 0)]];
    let n0 = norm2(&from_row0);
    let n1 = norm2(&from_row1);
    let (v, n) = if n0 >= n1 {
        (from_row0, n0)
    } else {
        (from_row1, n1)
    };
    if n <= T::degeneracy_tol() {
        let mut e = [Complex::zero(); 2];
        e[fallback] = Complex::one();
        return e;
    }
    [v[0] / n, v[1] / n]
}

/// Euclidean norm of a complex vector.
pub fn norm2<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// `⟨u|v⟩`, antilinear in the first argument.
pub fn inner<T: Real>(u: &[Complex<T>], v: &[Complex<T>]) -> Complex<T> {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}
