//! Brute-force references for the closed-form fast paths.
//!
//! Nothing here reuses the fast-path algebra: discord projects explicitly and
//! diagonalizes the conditional states, LQU minimizes the skew information
//! directly, the integrator is a fixed-step RK4, and teleportation fidelity is
//! sampled by running the protocol on Haar-random inputs.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::bath::Liouvillian;
use crate::evolve::{restore_state, time_grid, EvolveError, Trajectory};
use crate::linalg::{
    hermitian_eig, kron, matrix_sqrt_psd, partial_trace, pauli, von_neumann_entropy, ComplexMatrix, LinalgError,
    Subsystem, C64,
};
use crate::measures::{direction, mutual_information, refine_direction, MeasureError};
use crate::state::DensityMatrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("RK4 step too large: dt*||L|| = {0}")]
    StepSize(f64),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Evolve(#[from] EvolveError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Measurement basis `{|n+⟩, |n−⟩}` for Bloch direction (θ, φ).
fn measurement_basis(theta: f64, phi: f64) -> [[C64; 2]; 2] {
    let (s, co) = (0.5 * theta).sin_cos();
    let e = C64::from_polar(1.0, phi);
    [[c(co), e * s], [-e.conj() * s, c(co)]]
}

/// `min Σ_i p_i S(ρ_{A|i})` at one direction, by explicit projection.
fn conditional_entropy_explicit(rho: &ComplexMatrix, theta: f64, phi: f64) -> f64 {
    let id = pauli::identity();
    let mut total = 0.0;
    for ket in measurement_basis(theta, phi) {
        let proj = kron(&id, &ComplexMatrix::projector(&ket));
        let post = proj.matmul(rho).matmul(&proj);
        let p = post.trace().re;
        if p <= 1e-14 {
            continue;
        }
        let cond = partial_trace(&post, Subsystem::A).expect("4x4").scale_real(1.0 / p).hermitian_part();
        total += p * von_neumann_entropy(&cond).unwrap_or_else(|_| {
            // trace off by rounding
            let eig = hermitian_eig(&cond).expect("hermitian 2x2");
            crate::linalg::shannon_bits(&eig.values)
        });
    }
    total
}

/// Discord by direct minimization over projective measurements on B.
///
/// Grid of `n_theta × n_phi` directions, then golden-section descent around the best point.
pub fn discord_grid(rho: &DensityMatrix, n_theta: usize, n_phi: usize) -> Result<f64, MeasureError> {
    assert!(n_theta >= 2 && n_phi >= 1, "grid needs at least 2 x 1 points");
    let m = rho.matrix();
    let f = |theta: f64, phi: f64| conditional_entropy_explicit(m, theta, phi);
    let d_theta = PI / (n_theta - 1) as f64;
    let d_phi = 2.0 * PI / n_phi as f64;
    let mut best = (0.0, 0.0, f64::INFINITY);
    for i in 0..n_theta {
        for j in 0..n_phi {
            let (theta, phi) = (i as f64 * d_theta, j as f64 * d_phi);
            let v = f(theta, phi);
            if v < best.2 {
                best = (theta, phi, v);
            }
        }
    }
    let (_, _, min_cond) = refine_direction(&f, best, d_theta, d_phi, 20);
    let sa = von_neumann_entropy(&partial_trace(m, Subsystem::A)?)?;
    let classical = sa - min_cond;
    Ok((mutual_information(rho)? - classical).max(0.0))
}

/// Skew information `−½Tr([√ρ, H]²)` for `H = n̂·σ ⊗ I`.
fn skew_information(sqrt_rho: &ComplexMatrix, n: [f64; 3]) -> f64 {
    let [sx, sy, sz] = pauli::xyz();
    let local = &(&sx.scale_real(n[0]) + &sy.scale_real(n[1])) + &sz.scale_real(n[2]);
    let h = kron(&local, &pauli::identity());
    let comm = sqrt_rho.commutator(&h);
    -0.5 * comm.matmul(&comm).trace().re
}

/// LQU by minimizing the skew information over local observables on A.
pub fn lqu_minimize(rho: &DensityMatrix, n_theta: usize, n_phi: usize) -> Result<f64, MeasureError> {
    assert!(n_theta >= 2 && n_phi >= 1, "grid needs at least 2 x 1 points");
    let s = matrix_sqrt_psd(rho.matrix())?;
    let f = |theta: f64, phi: f64| skew_information(&s, direction(theta, phi));
    let d_theta = PI / (n_theta - 1) as f64;
    let d_phi = 2.0 * PI / n_phi as f64;
    let mut best = (0.0, 0.0, f64::INFINITY);
    for i in 0..n_theta {
        for j in 0..n_phi {
            let (theta, phi) = (i as f64 * d_theta, j as f64 * d_phi);
            let v = f(theta, phi);
            if v < best.2 {
                best = (theta, phi, v);
            }
        }
    }
    let (_, _, v) = refine_direction(&f, best, d_theta, d_phi, 30);
    Ok(v.clamp(0.0, 1.0))
}

/// Consonance from its general definition: rotate both marginals diagonal,
/// then sum the moduli of the doubly off-diagonal entries.
pub fn consonance_general(rho: &DensityMatrix) -> Result<f64, MeasureError> {
    let m = rho.matrix();
    let ua = hermitian_eig(&partial_trace(m, Subsystem::A)?)?.vectors.adjoint();
    let ub = hermitian_eig(&partial_trace(m, Subsystem::B)?)?.vectors.adjoint();
    let u = kron(&ua, &ub);
    let rotated = u.matmul(m).matmul(&u.adjoint());
    let mut total = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    if i != k && j != l {
                        total += rotated[(2 * i + j, 2 * k + l)].norm();
                    }
                }
            }
        }
    }
    Ok(total)
}

/// Classic fixed-step RK4 for `d vec(ρ)/dt = L vec(ρ)`, sampled at `{0, dt, …, t_max}`.
pub fn rk4_trajectory(l: &Liouvillian, rho0: &DensityMatrix, t_max: f64, dt: f64) -> Result<Trajectory, OracleError> {
    let times = time_grid(t_max, dt)?;
    let stiffness = dt * l.generator.norm_one();
    // stability bound and local error estimate (dt‖L‖)^5/120
    if stiffness > 2.5 || stiffness.powi(5) / 120.0 > 1e-8 {
        return Err(OracleError::StepSize(stiffness));
    }
    let g = &l.generator;
    let mut v = rho0.matrix().vectorize();
    let mut states = vec![rho0.clone()];
    let axpy = |x: &[C64], k: &[C64], a: f64| -> Vec<C64> { x.iter().zip(k).map(|(x, k)| x + k * a).collect() };
    for _ in 1..times.len() {
        let k1 = g.matvec(&v);
        let k2 = g.matvec(&axpy(&v, &k1, 0.5 * dt));
        let k3 = g.matvec(&axpy(&v, &k2, 0.5 * dt));
        let k4 = g.matvec(&axpy(&v, &k3, dt));
        for i in 0..v.len() {
            v[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0);
        }
        states.push(restore_state(&v)?);
    }
    Ok(Trajectory { times, states, reports: None })
}

/// Sample statistics of teleportation fidelity over Haar-random inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityStats {
    pub mean: f64,
    pub stddev: f64,
    /// Fourth central moment, for the standard error of `stddev`.
    pub m4: f64,
    pub n_samples: usize,
}

impl FidelityStats {
    pub fn mean_std_error(&self) -> f64 {
        self.stddev / (self.n_samples as f64).sqrt()
    }

    /// Delta-method standard error of the sample standard deviation.
    pub fn stddev_std_error(&self) -> f64 {
        let var = self.stddev * self.stddev;
        if var <= 1e-24 {
            return 0.0;
        }
        ((self.m4 - var * var).max(0.0) / (4.0 * var * self.n_samples as f64)).sqrt()
    }
}

/// Bell states on two qubits as 2×2 amplitude arrays `[first][second]`:
/// Φ+, Φ−, Ψ+, Ψ−.
fn bell_amplitudes() -> [[[C64; 2]; 2]; 4] {
    let s = FRAC_1_SQRT_2;
    [
        [[c(s), c(0.0)], [c(0.0), c(s)]],
        [[c(s), c(0.0)], [c(0.0), c(-s)]],
        [[c(0.0), c(s)], [c(s), c(0.0)]],
        [[c(0.0), c(s)], [c(-s), c(0.0)]],
    ]
}

/// Pauli taking each Bell state to Φ+ when applied to the second qubit: I, Z, X, Y.
fn bell_corrections() -> [ComplexMatrix; 4] {
    [pauli::identity(), pauli::z(), pauli::x(), pauli::y()]
}

/// Average fidelity of one input through the Bell-measurement protocol with resource `rho`.
fn protocol_fidelity(rho: &ComplexMatrix, psi: [C64; 2]) -> f64 {
    let bells = bell_amplitudes();
    let fixes = bell_corrections();
    let mut out = ComplexMatrix::zeros(2);
    for (bell, fix) in bells.iter().zip(&fixes) {
        // u[a] = Σ_i conj(β[i][a]) ψ_i: contraction of the input and Alice's qubit
        let u: [C64; 2] = std::array::from_fn(|a| (0..2).map(|i| bell[i][a].conj() * psi[i]).sum());
        let bob = ComplexMatrix::from_fn(2, |b, bp| {
            let mut z = c(0.0);
            for a in 0..2 {
                for ap in 0..2 {
                    z += u[a] * rho[(2 * a + b, 2 * ap + bp)] * u[ap].conj();
                }
            }
            z
        });
        out = &out + &fix.matmul(&bob).matmul(&fix.adjoint());
    }
    let mut f = c(0.0);
    for i in 0..2 {
        for j in 0..2 {
            f += psi[i].conj() * out[(i, j)] * psi[j];
        }
    }
    f.re
}

/// Monte-Carlo teleportation fidelity statistics.
///
/// Bob's Pauli frame is chosen by the largest Bell-state overlap of `rho`, then
/// `n_samples` Haar-random inputs are teleported with the standard protocol.
pub fn avg_fidelity_monte_carlo(rho: &DensityMatrix, n_samples: usize, seed: u64) -> Result<FidelityStats, OracleError> {
    if n_samples < 10_000 {
        return Err(OracleError::InvalidArgument(format!("n_samples must be >= 10^4, got {n_samples}")));
    }
    let m = rho.matrix();
    let bells = bell_amplitudes();
    let overlap = |k: usize| -> f64 {
        let ket: Vec<C64> = (0..4).map(|idx| bells[k][idx / 2][idx % 2]).collect();
        ket.iter().zip(m.matvec(&ket)).map(|(a, b)| a.conj() * b).sum::<C64>().re
    };
    let best = (0..4).max_by(|&a, &b| overlap(a).total_cmp(&overlap(b))).expect("four Bell states");
    let frame = kron(&pauli::identity(), &bell_corrections()[best]);
    let resource = frame.matmul(m).matmul(&frame.adjoint());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let z: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let norm = z.iter().map(|x| x * x).sum::<f64>().sqrt();
        let psi = [C64::new(z[0], z[1]) / norm, C64::new(z[2], z[3]) / norm];
        samples.push(protocol_fidelity(&resource, psi));
    }
    let n = n_samples as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let m4 = samples.iter().map(|f| (f - mean).powi(4)).sum::<f64>() / n;
    Ok(FidelityStats { mean, stddev: var.sqrt(), m4, n_samples })
}

/// Random X state: Dirichlet diagonal, anti-diagonal coherences inside the PSD bound.
pub fn random_x_state<R: Rng>(rng: &mut R) -> DensityMatrix {
    let w: [f64; 4] = std::array::from_fn(|_| -rng.random::<f64>().max(1e-300).ln());
    let total: f64 = w.iter().sum();
    let p = w.map(|x| x / total);
    let mut m = ComplexMatrix::from_real_diag(&p);
    let z14 = C64::from_polar(rng.random::<f64>() * (p[0] * p[3]).sqrt(), 2.0 * PI * rng.random::<f64>());
    let z23 = C64::from_polar(rng.random::<f64>() * (p[1] * p[2]).sqrt(), 2.0 * PI * rng.random::<f64>());
    m[(0, 3)] = z14;
    m[(3, 0)] = z14.conj();
    m[(1, 2)] = z23;
    m[(2, 1)] = z23.conj();
    DensityMatrix::new(m).expect("X construction is PSD by design of the bounds")
}

/// Random full-rank state `GG†/Tr(GG†)` from a complex Ginibre matrix.
pub fn random_state<R: Rng>(rng: &mut R) -> DensityMatrix {
    let g = ComplexMatrix::from_fn(4, |_, _| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let m = g.matmul(&g.adjoint());
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr).hermitian_part()).expect("Ginibre states are valid")
}
