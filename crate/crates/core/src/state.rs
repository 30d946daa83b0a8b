//! Two-qubit density matrices in the `|ee⟩, |eg⟩, |ge⟩, |gg⟩` basis.

use std::f64::consts::FRAC_1_SQRT_2;

use thiserror::Error;

use crate::linalg::{hermitian_eig, kron, ComplexMatrix, LinalgError, C64};

pub const STATE_HERMITIAN_TOL: f64 = 1e-12;
pub const STATE_TRACE_TOL: f64 = 1e-10;
pub const STATE_PSD_TOL: f64 = 1e-9;

/// Basis indices.
pub const EE: usize = 0;
pub const EG: usize = 1;
pub const GE: usize = 2;
pub const GG: usize = 3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("density matrix must be 4x4, got {0}x{0}")]
    WrongDimension(usize),
    #[error("density matrix not Hermitian: max |rho - rho^dagger| = {0:e}")]
    NotHermitian(f64),
    #[error("density matrix trace {0} differs from 1")]
    NotNormalized(f64),
    #[error("density matrix has negative eigenvalue {0:e}")]
    NotPositive(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Validated two-qubit state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

/// Tolerances applied when validating a matrix as a state.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub hermitian: f64,
    pub trace: f64,
    pub min_eig: f64,
}

impl Tolerances {
    pub const STRICT: Tolerances =
        Tolerances { hermitian: STATE_HERMITIAN_TOL, trace: STATE_TRACE_TOL, min_eig: STATE_PSD_TOL };
}

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self, StateError> {
        Self::with_tolerances(m, Tolerances::STRICT)
    }

    pub fn with_tolerances(m: ComplexMatrix, tol: Tolerances) -> Result<Self, StateError> {
        if m.dim() != 4 {
            return Err(StateError::WrongDimension(m.dim()));
        }
        let herm = m.hermiticity_error();
        if herm > tol.hermitian {
            return Err(StateError::NotHermitian(herm));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(StateError::NotNormalized(tr.re));
        }
        let m = m.hermitian_part();
        let min_eig = hermitian_eig(&m)?.min_value();
        if min_eig < -tol.min_eig {
            return Err(StateError::NotPositive(min_eig));
        }
        Ok(Self(m))
    }

    pub fn pure(psi: [C64; 4]) -> Result<Self, StateError> {
        Self::new(ComplexMatrix::projector(&psi))
    }

    /// Projector onto a computational basis state.
    pub fn basis(index: usize) -> Self {
        let mut m = ComplexMatrix::zeros(4);
        m[(index, index)] = C64::new(1.0, 0.0);
        Self(m)
    }

    /// `|e⟩|g⟩`, the separable starting state of the dynamics.
    pub fn excited_ground() -> Self {
        Self::basis(EG)
    }

    pub fn maximally_mixed() -> Self {
        Self(ComplexMatrix::identity(4).scale_real(0.25))
    }

    /// `(|ee⟩ + |gg⟩)/√2`.
    pub fn bell_phi_plus() -> Self {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        let o = C64::new(0.0, 0.0);
        Self(ComplexMatrix::projector(&[s, o, o, s]))
    }

    /// `(|eg⟩ + |ge⟩)/√2`.
    pub fn bell_psi_plus() -> Self {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        let o = C64::new(0.0, 0.0);
        Self(ComplexMatrix::projector(&[o, s, s, o]))
    }

    /// `p|Φ+⟩⟨Φ+| + (1−p)I/4`.
    pub fn werner(p: f64) -> Result<Self, StateError> {
        let m = &Self::bell_phi_plus().0.scale_real(p) + &ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
        Self::new(m)
    }

    /// `ρ_A ⊗ ρ_B` for two single-qubit states.
    pub fn product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Self, StateError> {
        Self::new(kron(a, b))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn trace_error(&self) -> f64 {
        (self.0.trace() - C64::new(1.0, 0.0)).norm()
    }

    pub fn min_eigenvalue(&self) -> Result<f64, LinalgError> {
        Ok(hermitian_eig(&self.0)?.min_value())
    }

    /// Largest modulus among entries outside the X pattern (diagonal + anti-diagonal).
    pub fn x_leakage(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    worst = worst.max(self.0[(i, j)].norm());
                }
            }
        }
        worst
    }

    pub fn is_x_state(&self, tol: f64) -> bool {
        self.x_leakage() <= tol
    }

    /// Applies a unitary: `U ρ U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Self {
        Self(u.matmul(&self.0).matmul(&u.adjoint()).hermitian_part())
    }
}
