//! Teleportation figures of merit for a two-qubit resource state.

use crate::linalg::{hermitian_eig, kron, pauli, ComplexMatrix, LinalgError, C64};
use crate::state::DensityMatrix;

/// Best average fidelity achievable without entanglement.
pub const CLASSICAL_LIMIT: f64 = 2.0 / 3.0;

pub type Matrix3 = [[f64; 3]; 3];

#[derive(Debug, Clone, PartialEq)]
pub struct TeleportReport {
    pub t_matrix: Matrix3,
    /// `½(1 + ⅓Σ|t_ii|)`.
    pub max_fidelity: f64,
    /// Same expression with the singular values of T in place of `|t_ii|`.
    pub max_fidelity_svd: f64,
    pub fidelity_deviation: f64,
    pub det_t: f64,
    /// `det T < 0`, where the deviation formula applies.
    pub in_regime: bool,
    pub useful: bool,
}

/// `T_ij = Tr(ρ σ_i⊗σ_j)`.
pub fn correlation_matrix(rho: &DensityMatrix) -> Matrix3 {
    let paulis = pauli::xyz();
    let mut t = [[0.0; 3]; 3];
    for (i, si) in paulis.iter().enumerate() {
        for (j, sj) in paulis.iter().enumerate() {
            t[i][j] = rho.matrix().matmul(&kron(si, sj)).trace().re;
        }
    }
    t
}

pub fn determinant(t: &Matrix3) -> f64 {
    t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1]) - t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0])
        + t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0])
}

fn abs_diag(t: &Matrix3) -> [f64; 3] {
    [t[0][0].abs(), t[1][1].abs(), t[2][2].abs()]
}

pub fn max_fidelity_from_t(t: &Matrix3) -> f64 {
    0.5 * (1.0 + abs_diag(t).iter().sum::<f64>() / 3.0)
}

pub fn fidelity_deviation_from_t(t: &Matrix3) -> f64 {
    let d = abs_diag(t);
    let sum_sq = (d[0] - d[1]).powi(2) + (d[0] - d[2]).powi(2) + (d[1] - d[2]).powi(2);
    sum_sq.sqrt() / (3.0 * 10f64.sqrt())
}

/// Singular values of a real 3×3 matrix, descending.
pub fn singular_values(t: &Matrix3) -> Result<[f64; 3], LinalgError> {
    let gram = ComplexMatrix::from_fn(3, |i, j| C64::new((0..3).map(|k| t[k][i] * t[k][j]).sum(), 0.0));
    let eig = hermitian_eig(&gram)?;
    let mut s = [0.0; 3];
    for (k, v) in eig.values.iter().rev().enumerate() {
        s[k] = v.max(0.0).sqrt();
    }
    Ok(s)
}

pub fn max_fidelity(rho: &DensityMatrix) -> f64 {
    max_fidelity_from_t(&correlation_matrix(rho))
}

pub fn fidelity_deviation(rho: &DensityMatrix) -> f64 {
    fidelity_deviation_from_t(&correlation_matrix(rho))
}

pub fn teleport_report(rho: &DensityMatrix) -> Result<TeleportReport, LinalgError> {
    let t = correlation_matrix(rho);
    let max_fidelity = max_fidelity_from_t(&t);
    let det_t = determinant(&t);
    let sv = singular_values(&t)?;
    Ok(TeleportReport {
        t_matrix: t,
        max_fidelity,
        max_fidelity_svd: 0.5 * (1.0 + sv.iter().sum::<f64>() / 3.0),
        fidelity_deviation: fidelity_deviation_from_t(&t),
        det_t,
        in_regime: det_t < 0.0,
        useful: max_fidelity >= CLASSICAL_LIMIT,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_matrix(t: &Matrix3, want: &Matrix3) {
        for i in 0..3 {
            for j in 0..3 {
                assert!((t[i][j] - want[i][j]).abs() < 1e-14, "{t:?}");
            }
        }
    }

    #[test]
    fn correlation_examples() {
        let bell = correlation_matrix(&DensityMatrix::bell_phi_plus());
        assert_matrix(&bell, &[[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert_matrix(&correlation_matrix(&DensityMatrix::maximally_mixed()), &[[0.0; 3]; 3]);
        let eg = correlation_matrix(&DensityMatrix::excited_ground());
        assert_matrix(&eg, &[[0.0; 3], [0.0; 3], [0.0, 0.0, -1.0]]);
    }

    #[test]
    fn fidelity_examples() {
        assert!((max_fidelity(&DensityMatrix::bell_phi_plus()) - 1.0).abs() < 1e-14);
        assert!((max_fidelity(&DensityMatrix::maximally_mixed()) - 0.5).abs() < 1e-14);
        assert!((max_fidelity(&DensityMatrix::excited_ground()) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn deviation_examples() {
        let bell = teleport_report(&DensityMatrix::bell_phi_plus()).unwrap();
        assert!(bell.fidelity_deviation.abs() < 1e-14);
        assert!(bell.in_regime && bell.useful);

        let mixed = teleport_report(&DensityMatrix::maximally_mixed()).unwrap();
        assert_eq!(mixed.fidelity_deviation, 0.0);
        assert_eq!(mixed.det_t, 0.0);
        assert!(!mixed.in_regime && !mixed.useful);

        let t = [[1.0, 0.0, 0.0], [0.0, -0.5, 0.0], [0.0, 0.0, 0.5]];
        assert!((fidelity_deviation_from_t(&t) - 0.0745355992499930).abs() < 1e-14);
        assert!((determinant(&t) + 0.25).abs() < 1e-15);
    }

    #[test]
    fn werner_sweep() {
        for k in 0..=20 {
            let p = k as f64 / 20.0;
            let r = teleport_report(&DensityMatrix::werner(p).unwrap()).unwrap();
            assert!((r.max_fidelity - 0.5 * (1.0 + p)).abs() < 1e-13);
            assert!(r.fidelity_deviation < 1e-13);
            assert!((r.max_fidelity - r.max_fidelity_svd).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_values_of_diagonal() {
        let sv = singular_values(&[[0.2, 0.0, 0.0], [0.0, -0.9, 0.0], [0.0, 0.0, 0.4]]).unwrap();
        for (a, b) in sv.iter().zip([0.9, 0.4, 0.2]) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
