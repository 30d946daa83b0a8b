//! Dense complex-matrix kernel for the small dimensions used here (2, 3, 4, 16).
//!
//! Everything is row-major `Complex64`. The Hermitian eigensolver is a cyclic
//! Jacobi iteration, which is more than fast enough at these sizes and gives
//! eigenvectors orthonormal to machine precision.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

/// Tolerance on `max|M - M†|` (scaled by `max(1, max|M|)`) for Hermitian inputs.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues this close to zero are treated as exactly zero before log/sqrt.
pub const ZERO_EIG_CLAMP: f64 = 1e-12;
/// Most negative eigenvalue accepted by [`matrix_sqrt_psd`].
pub const PSD_TOL: f64 = 1e-9;
/// Unit-trace tolerance for entropies.
pub const TRACE_TOL: f64 = 1e-10;

const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not Hermitian: max |M - M^dagger| = {violation:e}")]
    NotHermitian { violation: f64 },
    #[error("matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("matrix is not unit trace: trace = {trace}")]
    NotNormalized { trace: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular to working precision")]
    Singular,
    #[error("Jacobi iteration did not converge (off-diagonal norm {off_norm:e})")]
    NoConvergence { off_norm: f64 },
    #[error("matrix norm {norm:e} too large for exponentiation")]
    Overflow { norm: f64 },
}

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, " ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, " {:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self { dim, data: vec![C64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics unless `data.len() == dim²`.
    pub fn from_row_major(dim: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), dim * dim, "entries count must equal dim^2");
        Self { dim, data }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        assert_eq!(u.len(), v.len());
        Self::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn projector(psi: &[C64]) -> Self {
        Self::outer(psi, psi)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal_real(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self[(i, i)].re).collect()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// `(M + M†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Induced 1-norm (max absolute column sum).
    pub fn norm_one(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max|M - M†|`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let row = &self.data[i * self.dim..(i + 1) * self.dim];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let rrow = &rhs.data[k * n..(k + 1) * n];
                let orow = &mut out.data[i * n..(i + 1) * n];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// Column-stacking vectorization: index `col * dim + row`.
    pub fn vectorize(&self) -> Vec<C64> {
        let n = self.dim;
        let mut v = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                v[j * n + i] = self[(i, j)];
            }
        }
        v
    }

    /// Inverse of [`vectorize`](Self::vectorize).
    pub fn unvectorize(v: &[C64]) -> Self {
        let n = (v.len() as f64).sqrt().round() as usize;
        assert_eq!(n * n, v.len(), "vector length must be a perfect square");
        Self::from_fn(n, |i, j| v[j * n + i])
    }

    /// Commutator `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Kronecker product: `(A⊗B)[(i·dimB+k),(j·dimB+l)] = A[i,j]·B[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    let mut out = ComplexMatrix::zeros(na * nb);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Pauli matrices and the 2×2 identity in the `|e⟩, |g⟩` ordering.
pub mod pauli {
    use super::{ComplexMatrix, C64};

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn x() -> ComplexMatrix {
        let (o, l) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
        ComplexMatrix::from_row_major(2, vec![o, l, l, o])
    }

    pub fn y() -> ComplexMatrix {
        let o = C64::new(0.0, 0.0);
        ComplexMatrix::from_row_major(2, vec![o, C64::new(0.0, -1.0), C64::new(0.0, 1.0), o])
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_real_diag(&[1.0, -1.0])
    }

    /// `[σx, σy, σz]`.
    pub fn xyz() -> [ComplexMatrix; 3] {
        [x(), y(), z()]
    }
}

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// Eigenvectors stored as columns.
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        (0..self.vectors.dim()).map(|i| self.vectors[(i, k)]).collect()
    }

    /// `Σ f(λ_k) v_k v_k†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim();
        let mut out = ComplexMatrix::zeros(n);
        for (k, &lam) in self.values.iter().enumerate() {
            let w = f(lam);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vi = self.vectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vi * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|x| x)
    }

    pub fn max_value(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    pub fn min_value(&self) -> f64 {
        self.values[0]
    }
}

fn check_hermitian(m: &ComplexMatrix) -> Result<(), LinalgError> {
    let violation = m.hermiticity_error();
    if violation > HERMITIAN_TOL * m.max_abs().max(1.0) {
        return Err(LinalgError::NotHermitian { violation });
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenDecomposition, LinalgError> {
    check_hermitian(m)?;
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius().max(f64::MIN_POSITIVE);

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = n == 1;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_norm(&a) <= 1e-16 * scale {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag; // e^{iα}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // U = Φ R with U_pp = c, U_pq = s, U_qp = -s e^{-iα}, U_qq = c e^{-iα}
                let ph_c = phase.conj();
                let u_pp = C64::new(c, 0.0);
                let u_pq = C64::new(s, 0.0);
                let u_qp = -ph_c * s;
                let u_qq = ph_c * c;
                // A <- A U
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                // A <- U† A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                // V <- V U
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * u_pp + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }
    if !converged {
        let off = off_norm(&a);
        if off > 1e-12 * scale {
            return Err(LinalgError::NoConvergence { off_norm: off });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition { values, vectors })
}

/// Principal square root of a positive semidefinite matrix.
///
/// Eigenvalues in `[-PSD_TOL, ZERO_EIG_CLAMP]` are clamped to zero.
pub fn matrix_sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let eig = hermitian_eig(m)?;
    if eig.min_value() < -PSD_TOL {
        return Err(LinalgError::NotPositive { min_eigenvalue: eig.min_value() });
    }
    Ok(eig.map_spectrum(|x| if x <= ZERO_EIG_CLAMP { 0.0 } else { x.sqrt() }))
}

/// Shannon entropy in bits of a spectrum, with `0·log₂0 = 0`.
pub fn shannon_bits(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&p| p > ZERO_EIG_CLAMP)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Von Neumann entropy `-Tr ρ log₂ ρ` in bits.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64, LinalgError> {
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
        return Err(LinalgError::NotNormalized { trace: tr.re });
    }
    let eig = hermitian_eig(rho)?;
    let s = shannon_bits(&eig.values);
    Ok(s.min((rho.dim() as f64).log2()))
}

/// Which qubit survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Partial trace of a 4×4 two-qubit operator (qubit A is the left tensor factor).
pub fn partial_trace(rho: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix, LinalgError> {
    if rho.dim() != 4 {
        return Err(LinalgError::DimensionMismatch { expected: 4, got: rho.dim() });
    }
    let mut out = ComplexMatrix::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = match keep {
                Subsystem::A => (0..2).map(|k| rho[(2 * i + k, 2 * j + k)]).sum(),
                Subsystem::B => (0..2).map(|k| rho[(2 * k + i, 2 * k + j)]).sum(),
            };
        }
    }
    Ok(out)
}

/// Solves `A x = b` by LU factorization with partial pivoting.
pub fn solve(a: &ComplexMatrix, b: &[C64]) -> Result<Vec<C64>, LinalgError> {
    let n = a.dim();
    if b.len() != n {
        return Err(LinalgError::DimensionMismatch { expected: n, got: b.len() });
    }
    let mut m = a.clone();
    let mut x = b.to_vec();
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[(i, col)].norm().total_cmp(&m[(j, col)].norm()))
            .expect("non-empty range");
        if m[(pivot, col)].norm() <= 1e-14 * scale {
            return Err(LinalgError::Singular);
        }
        if pivot != col {
            for k in 0..n {
                let tmp = m[(col, k)];
                m[(col, k)] = m[(pivot, k)];
                m[(pivot, k)] = tmp;
            }
            x.swap(col, pivot);
        }
        let d = m[(col, col)];
        for row in col + 1..n {
            let f = m[(row, col)] / d;
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            for k in col..n {
                let t = m[(col, k)];
                m[(row, k)] -= f * t;
            }
            let t = x[col];
            x[row] -= f * t;
        }
    }
    for row in (0..n).rev() {
        let mut s = x[row];
        for k in row + 1..n {
            s -= m[(row, k)] * x[k];
        }
        x[row] = s / m[(row, row)];
    }
    Ok(x)
}

/// Matrix exponential by scaling and squaring around a truncated Taylor series.
pub fn expm(m: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let norm = m.norm_one();
    if !norm.is_finite() || norm > 1e6 {
        return Err(LinalgError::Overflow { norm });
    }
    // scale until ‖M/2^s‖₁ ≤ 1/2, 20 Taylor terms, square back
    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > 0.5 {
        scaled_norm /= 2.0;
        squarings += 1;
    }
    let a = m.scale_real(0.5f64.powi(squarings as i32));
    let n = m.dim();
    let mut result = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=20 {
        term = term.matmul(&a).scale_real(1.0 / k as f64);
        result = &result + &term;
        if term.max_abs() < 1e-18 * result.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    if result.data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(LinalgError::Overflow { norm });
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn bell_phi_plus() -> ComplexMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::projector(&[c(s), c(0.0), c(0.0), c(s)])
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn pauli_z_spectrum() {
        let eig = hermitian_eig(&pauli::z()).unwrap();
        assert_close(&eig.values, &[-1.0, 1.0], 1e-14);
    }

    #[test]
    fn scalar_and_projector_spectra() {
        let eig = hermitian_eig(&ComplexMatrix::identity(4).scale_real(0.25)).unwrap();
        assert_close(&eig.values, &[0.25; 4], 1e-14);
        let eig = hermitian_eig(&bell_phi_plus()).unwrap();
        assert_close(&eig.values, &[0.0, 0.0, 0.0, 1.0], 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_row_major(2, vec![c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert!(matches!(hermitian_eig(&m), Err(LinalgError::NotHermitian { .. })));
    }

    #[test]
    fn eig_handles_complex_offdiagonals() {
        let eig = hermitian_eig(&pauli::y()).unwrap();
        assert_close(&eig.values, &[-1.0, 1.0], 1e-14);
        assert!(eig.reconstruct().max_abs_diff(&pauli::y()) < 1e-14);
    }

    #[test]
    fn sqrt_examples() {
        let r = matrix_sqrt_psd(&ComplexMatrix::identity(4).scale_real(0.25)).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.5)) < 1e-14);
        let p = bell_phi_plus();
        assert!(matrix_sqrt_psd(&p).unwrap().max_abs_diff(&p) < 1e-12);
        let d = ComplexMatrix::from_real_diag(&[0.64, 0.36, 0.0, 0.0]);
        let r = matrix_sqrt_psd(&d).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::from_real_diag(&[0.8, 0.6, 0.0, 0.0])) < 1e-14);
    }

    #[test]
    fn sqrt_rejects_negative() {
        let d = ComplexMatrix::from_real_diag(&[1.1, -0.1]);
        assert!(matches!(matrix_sqrt_psd(&d), Err(LinalgError::NotPositive { .. })));
        // within tolerance: clamped
        let d = ComplexMatrix::from_real_diag(&[1.0, -1e-10]);
        assert!(matrix_sqrt_psd(&d).is_ok());
    }

    #[test]
    fn entropy_examples() {
        assert!(von_neumann_entropy(&bell_phi_plus()).unwrap().abs() < 1e-12);
        let mixed = ComplexMatrix::identity(4).scale_real(0.25);
        assert!((von_neumann_entropy(&mixed).unwrap() - 2.0).abs() < 1e-12);
        let half = ComplexMatrix::from_real_diag(&[0.5, 0.5, 0.0, 0.0]);
        assert!((von_neumann_entropy(&half).unwrap() - 1.0).abs() < 1e-12);
        let bad = ComplexMatrix::from_real_diag(&[0.5, 0.4]);
        assert!(matches!(von_neumann_entropy(&bad), Err(LinalgError::NotNormalized { .. })));
    }

    #[test]
    fn partial_trace_examples() {
        let half_id = ComplexMatrix::identity(2).scale_real(0.5);
        let a = partial_trace(&bell_phi_plus(), Subsystem::A).unwrap();
        assert!(a.max_abs_diff(&half_id) < 1e-15);
        let e = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let g = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
        let b = partial_trace(&kron(&e, &g), Subsystem::B).unwrap();
        assert!(b.max_abs_diff(&g) < 1e-15);
        let a = partial_trace(&ComplexMatrix::identity(4).scale_real(0.25), Subsystem::A).unwrap();
        assert!(a.max_abs_diff(&half_id) < 1e-15);
        assert!(partial_trace(&half_id, Subsystem::A).is_err());
    }

    #[test]
    fn kron_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        let zz = kron(&pauli::z(), &pauli::z());
        assert_eq!(zz, ComplexMatrix::from_real_diag(&[1.0, -1.0, -1.0, 1.0]));
        // σx⊗I |ee⟩ = |ge⟩
        let xi = kron(&pauli::x(), &i2);
        let out = xi.matvec(&[c(1.0), c(0.0), c(0.0), c(0.0)]);
        assert_eq!(out, vec![c(0.0), c(0.0), c(1.0), c(0.0)]);
    }

    #[test]
    fn expm_examples() {
        let z = ComplexMatrix::zeros(16);
        assert!(expm(&z).unwrap().max_abs_diff(&ComplexMatrix::identity(16)) < 1e-15);
        let d = [0.3, -1.2, 2.5, 0.0];
        let e = expm(&ComplexMatrix::from_real_diag(&d)).unwrap();
        let expect = ComplexMatrix::from_real_diag(&d.map(f64::exp));
        assert!(e.max_abs_diff(&expect) < 1e-13);
        let nil = ComplexMatrix::from_row_major(2, vec![c(0.0), C64::new(3.0, -1.0), c(0.0), c(0.0)]);
        let e = expm(&nil).unwrap();
        assert!(e.max_abs_diff(&(&ComplexMatrix::identity(2) + &nil)) < 1e-14);
    }

    #[test]
    fn expm_overflow_is_reported() {
        let big = ComplexMatrix::from_real_diag(&[1e7, 0.0]);
        assert!(matches!(expm(&big), Err(LinalgError::Overflow { .. })));
    }

    #[test]
    fn solve_recovers_solution() {
        let a = ComplexMatrix::from_row_major(
            3,
            vec![c(0.0), c(2.0), C64::new(1.0, 1.0), c(1.0), c(0.0), c(3.0), C64::new(0.0, 2.0), c(1.0), c(1.0)],
        );
        let x = vec![c(1.0), C64::new(-2.0, 0.5), C64::new(0.0, 3.0)];
        let b = a.matvec(&x);
        let got = solve(&a, &b).unwrap();
        for (g, e) in got.iter().zip(&x) {
            assert!((g - e).norm() < 1e-13);
        }
        assert_eq!(solve(&ComplexMatrix::zeros(2), &[c(1.0), c(1.0)]), Err(LinalgError::Singular));
    }

    #[test]
    fn vectorize_roundtrip_is_column_major() {
        let m = ComplexMatrix::from_fn(2, |i, j| c((10 * i + j) as f64));
        assert_eq!(m.vectorize(), vec![c(0.0), c(10.0), c(1.0), c(11.0)]);
        assert_eq!(ComplexMatrix::unvectorize(&m.vectorize()), m);
    }
}
