//! Squeezed thermal reservoir: bath coefficients, collective rates and the
//! vectorized 16×16 generator of the two-qubit master equation.
//!
//! Units: ħ = k_B = ω₀ = 1, rates in units of Γ, time in units of 1/Γ.
//! Basis order is `|ee⟩, |eg⟩, |ge⟩, |gg⟩` with qubit A leftmost.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{self, hermitian_eig, kron, ComplexMatrix, LinalgError, C64};

/// Below this separation (in resonant wavelengths) the dipole shift diverges as x⁻³.
pub const R12_MIN: f64 = 0.01;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BathError {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter { name: &'static str, value: f64, reason: &'static str },
    #[error("r12 = {r12} is at or below {R12_MIN}: collective frequency shift is near its x^-3 singularity")]
    NearSingular { r12: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Physical knobs of the two-qubit + squeezed-bath model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathParams {
    /// Bath temperature T.
    pub temperature: f64,
    /// Squeezing magnitude r.
    pub squeeze_r: f64,
    /// Squeezing phase φ (radians).
    pub squeeze_phase: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    /// Interqubit distance in units of the resonant wavelength λ₀.
    pub r12: f64,
    /// μ̂·r̂₁₂, cosine between dipole and separation axis.
    pub mu_dot_rhat: f64,
    pub omega1: f64,
    pub omega2: f64,
    /// x = k₀r₁₂ = `distance_scale`·r12; 2π for r12 measured in λ₀.
    pub distance_scale: f64,
}

impl Default for BathParams {
    fn default() -> Self {
        Self {
            temperature: 1.0,
            squeeze_r: 0.35,
            squeeze_phase: 0.0,
            gamma1: 1.0,
            gamma2: 1.0,
            r12: 0.1,
            mu_dot_rhat: 0.0,
            omega1: 1.0,
            omega2: 1.0,
            distance_scale: 2.0 * PI,
        }
    }
}

impl BathParams {
    pub fn new(temperature: f64, squeeze_r: f64, r12: f64) -> Self {
        Self { temperature, squeeze_r, r12, ..Self::default() }
    }

    pub fn with_r12(self, r12: f64) -> Self {
        Self { r12, ..self }
    }

    pub fn with_temperature(self, temperature: f64) -> Self {
        Self { temperature, ..self }
    }

    pub fn validate(&self) -> Result<(), BathError> {
        let checks: [(&'static str, f64, bool, &'static str); 7] = [
            ("temperature", self.temperature, self.temperature > 0.0, "must be > 0"),
            ("squeeze_r", self.squeeze_r, self.squeeze_r >= 0.0, "must be >= 0"),
            ("gamma1", self.gamma1, self.gamma1 > 0.0, "must be > 0"),
            ("gamma2", self.gamma2, self.gamma2 > 0.0, "must be > 0"),
            ("r12", self.r12, self.r12 > 0.0, "must be > 0"),
            ("mu_dot_rhat", self.mu_dot_rhat, self.mu_dot_rhat.abs() <= 1.0, "must lie in [-1, 1]"),
            ("distance_scale", self.distance_scale, self.distance_scale > 0.0, "must be > 0"),
        ];
        for (name, value, ok, reason) in checks {
            if !ok || !value.is_finite() {
                return Err(BathError::InvalidParameter { name, value, reason });
            }
        }
        for (name, value) in [("squeeze_phase", self.squeeze_phase), ("omega1", self.omega1), ("omega2", self.omega2)] {
            if !value.is_finite() {
                return Err(BathError::InvalidParameter { name, value, reason: "must be finite" });
            }
        }
        Ok(())
    }

    /// Mean transition frequency ω₀ = (ω₁+ω₂)/2.
    pub fn omega0(&self) -> f64 {
        0.5 * (self.omega1 + self.omega2)
    }

    /// Dimensionless separation x = k₀r₁₂.
    pub fn kr(&self) -> f64 {
        self.distance_scale * self.r12
    }
}

/// Derived coefficients entering the generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathCoefficients {
    pub n_th: f64,
    pub n_tilde: f64,
    pub m_tilde: C64,
    /// Γ_mn, real symmetric.
    pub gamma: [[f64; 2]; 2],
    pub omega12: f64,
}

/// Thermal occupation 1/(exp(ω₀/T) − 1).
pub fn planck_occupation(params: &BathParams) -> Result<f64, BathError> {
    if !(params.temperature > 0.0) {
        return Err(BathError::InvalidParameter {
            name: "temperature",
            value: params.temperature,
            reason: "must be > 0",
        });
    }
    let ratio = params.omega0() / params.temperature;
    // exp_m1 for small ω/T
    Ok(1.0 / ratio.exp_m1())
}

/// Squeezed-bath coefficients (Ñ, M̃).
pub fn squeeze_coefficients(params: &BathParams) -> Result<(f64, C64), BathError> {
    let n_th = planck_occupation(params)?;
    Ok(squeeze_from_occupation(n_th, params.squeeze_r, params.squeeze_phase))
}

pub(crate) fn squeeze_from_occupation(n_th: f64, r: f64, phi: f64) -> (f64, C64) {
    let n_tilde = n_th * (2.0 * r).cosh() + r.sinh().powi(2);
    let m_tilde = Complex64::from_polar(1.0, phi) * (-0.5 * (2.0 * r).sinh() * (2.0 * n_th + 1.0));
    (n_tilde, m_tilde)
}

/// Dipole-dipole frequency shift Ω₁₂.
pub fn collective_shift(params: &BathParams) -> Result<f64, BathError> {
    if params.r12 <= R12_MIN {
        return Err(BathError::NearSingular { r12: params.r12 });
    }
    let x = params.kr();
    let mu2 = params.mu_dot_rhat * params.mu_dot_rhat;
    let (s, c) = x.sin_cos();
    let bracket = -(1.0 - mu2) * c / x + (1.0 - 3.0 * mu2) * (s / (x * x) + c / (x * x * x));
    Ok(0.75 * (params.gamma1 * params.gamma2).sqrt() * bracket)
}

/// Collective decay matrix Γ_mn. Finite as r12 → 0, where Γ₁₂ → √(Γ₁Γ₂).
pub fn collective_decay(params: &BathParams) -> [[f64; 2]; 2] {
    let x = params.kr();
    let mu2 = params.mu_dot_rhat * params.mu_dot_rhat;
    let (sinc, tail) = if x < 1e-2 {
        let x2 = x * x;
        (1.0 - x2 / 6.0 + x2 * x2 / 120.0, -1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0)
    } else {
        let (s, c) = x.sin_cos();
        (s / x, c / (x * x) - s / (x * x * x))
    };
    let g12 = 1.5 * (params.gamma1 * params.gamma2).sqrt() * ((1.0 - mu2) * sinc + (1.0 - 3.0 * mu2) * tail);
    [[params.gamma1, g12], [g12, params.gamma2]]
}

pub fn bath_coefficients(params: &BathParams) -> Result<BathCoefficients, BathError> {
    params.validate()?;
    let n_th = planck_occupation(params)?;
    let (n_tilde, m_tilde) = squeeze_from_occupation(n_th, params.squeeze_r, params.squeeze_phase);
    Ok(BathCoefficients {
        n_th,
        n_tilde,
        m_tilde,
        gamma: collective_decay(params),
        omega12: collective_shift(params)?,
    })
}

/// Two-qubit ladder operators `S_j^±` and `S_j^z` (spin-½ convention, S^z = ±½).
pub mod ops {
    use super::*;

    fn single_raise() -> ComplexMatrix {
        let (o, l) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
        ComplexMatrix::from_row_major(2, vec![o, l, o, o])
    }

    fn embed(op: &ComplexMatrix, qubit: usize) -> ComplexMatrix {
        let id = ComplexMatrix::identity(2);
        match qubit {
            0 => kron(op, &id),
            1 => kron(&id, op),
            _ => panic!("qubit index must be 0 or 1"),
        }
    }

    /// `S_j^+ = |e_j⟩⟨g_j|`.
    pub fn raise(qubit: usize) -> ComplexMatrix {
        embed(&single_raise(), qubit)
    }

    /// `S_j^- = |g_j⟩⟨e_j|`.
    pub fn lower(qubit: usize) -> ComplexMatrix {
        embed(&single_raise().transpose(), qubit)
    }

    pub fn sz(qubit: usize) -> ComplexMatrix {
        embed(&ComplexMatrix::from_real_diag(&[0.5, -0.5]), qubit)
    }
}

/// `H = ω₁S₁ᶻ + ω₂S₂ᶻ + Ω₁₂(S₁⁺S₂⁻ + S₂⁺S₁⁻)`.
pub fn dressed_hamiltonian_with_shift(params: &BathParams, omega12: f64) -> ComplexMatrix {
    let free = &ops::sz(0).scale_real(params.omega1) + &ops::sz(1).scale_real(params.omega2);
    let exchange = &ops::raise(0).matmul(&ops::lower(1)) + &ops::raise(1).matmul(&ops::lower(0));
    &free + &exchange.scale_real(omega12)
}

pub fn dressed_hamiltonian(params: &BathParams) -> Result<ComplexMatrix, BathError> {
    Ok(dressed_hamiltonian_with_shift(params, collective_shift(params)?))
}

/// 16×16 generator acting on column-stacked density matrices.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    pub generator: ComplexMatrix,
}

/// `ρ ↦ Aρ`.
fn spre(a: &ComplexMatrix) -> ComplexMatrix {
    kron(&ComplexMatrix::identity(a.dim()), a)
}

/// `ρ ↦ ρB`.
fn spost(b: &ComplexMatrix) -> ComplexMatrix {
    kron(&b.transpose(), &ComplexMatrix::identity(b.dim()))
}

/// `ρ ↦ AρB`.
fn sandwich(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    kron(&b.transpose(), a)
}

/// Superoperator of `ρ PQ + PQ ρ − 2 Q ρ P`.
fn bracket(p: &ComplexMatrix, q: &ComplexMatrix) -> ComplexMatrix {
    let pq = p.matmul(q);
    &(&spre(&pq) + &spost(&pq)) - &sandwich(q, p).scale_real(2.0)
}

/// Assembles the generator from explicit coefficients.
pub fn liouvillian_from_coefficients(params: &BathParams, coeffs: &BathCoefficients) -> Liouvillian {
    let h = dressed_hamiltonian_with_shift(params, coeffs.omega12);
    let minus_i = C64::new(0.0, -1.0);
    let mut gen = (&spre(&h) - &spost(&h)).scale(minus_i);

    let up = [ops::raise(0), ops::raise(1)];
    let down = [ops::lower(0), ops::lower(1)];
    let n = coeffs.n_tilde;
    let m = coeffs.m_tilde;
    for a in 0..2 {
        for b in 0..2 {
            let g = coeffs.gamma[a][b];
            if g == 0.0 {
                continue;
            }
            let emission = bracket(&up[a], &down[b]).scale_real(-0.5 * g * (1.0 + n));
            let absorption = bracket(&down[a], &up[b]).scale_real(-0.5 * g * n);
            let sq_up = bracket(&up[a], &up[b]).scale(m * (0.5 * g));
            let sq_down = bracket(&down[a], &down[b]).scale(m.conj() * (0.5 * g));
            gen = &gen + &emission;
            gen = &gen + &absorption;
            gen = &gen + &sq_up;
            gen = &gen + &sq_down;
        }
    }
    Liouvillian { generator: gen }
}

pub fn build_liouvillian(params: &BathParams) -> Result<Liouvillian, BathError> {
    let coeffs = bath_coefficients(params)?;
    Ok(liouvillian_from_coefficients(params, &coeffs))
}

impl Liouvillian {
    /// `L(ρ)` for a 4×4 operator.
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::unvectorize(&self.generator.matvec(&rho.vectorize()))
    }

    /// Largest entry of `Σ_i L[(i·4+i), :]`; zero for a trace-preserving generator.
    pub fn trace_preservation_error(&self) -> f64 {
        (0..16)
            .map(|col| (0..4).map(|i| self.generator[(i * 4 + i, col)]).sum::<C64>().norm())
            .fold(0.0, f64::max)
    }

    /// Smallest two singular values of the generator (via the spectrum of L†L).
    ///
    /// A unique steady state shows up as one singular value at ~0 and a clear gap.
    pub fn null_space_gap(&self) -> Result<(f64, f64), LinalgError> {
        let gram = self.generator.adjoint().matmul(&self.generator).hermitian_part();
        let eig = hermitian_eig(&gram)?;
        Ok((eig.values[0].max(0.0).sqrt(), eig.values[1].max(0.0).sqrt()))
    }

    /// Stationary state: solves `L vec(ρ) = 0` with one row swapped for `Tr ρ = 1`.
    pub fn steady_state(&self) -> Result<ComplexMatrix, LinalgError> {
        let mut a = self.generator.clone();
        let mut rhs = vec![C64::new(0.0, 0.0); 16];
        for col in 0..16 {
            a[(0, col)] = C64::new(0.0, 0.0);
        }
        for i in 0..4 {
            a[(0, i * 4 + i)] = C64::new(1.0, 0.0);
        }
        rhs[0] = C64::new(1.0, 0.0);
        let v = linalg::solve(&a, &rhs)?;
        Ok(ComplexMatrix::unvectorize(&v).hermitian_part())
    }
}
