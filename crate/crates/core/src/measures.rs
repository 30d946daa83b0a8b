//! Coherence, correlation and metrology quantifiers of a two-qubit state.
//!
//! All entropies are in bits. Eigenvalues within [`ZERO_EIG_CLAMP`] of zero
//! are treated as zero before any log or square root.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use thiserror::Error;

use crate::bath::{build_liouvillian, BathError, BathParams};
use crate::evolve::{initial_state_eg, propagate, trajectory, EvolveError};
use crate::linalg::{
    hermitian_eig, kron, matrix_sqrt_psd, partial_trace, pauli, shannon_bits, von_neumann_entropy, ComplexMatrix,
    LinalgError, Subsystem, C64, ZERO_EIG_CLAMP,
};
use crate::oracle;
use crate::state::DensityMatrix;
use crate::teleport::{correlation_matrix, Matrix3};

/// Off-X entries allowed before the X-state fast paths refuse a state.
pub const X_STATE_TOL: f64 = 1e-8;
/// Eigenvalue-pair cutoff in the QFI sum.
pub const QFI_EIG_CUTOFF: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("state is not an X state (off-pattern entry {leakage:e}); use the general path")]
    NotXState { leakage: f64 },
    #[error("state vector not normalized: norm = {0}")]
    NotNormalized(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Bath(#[from] BathError),
    #[error(transparent)]
    Evolve(#[from] EvolveError),
}

/// Reference basis for the relative entropy of coherence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoherenceBasis {
    /// `{|ee⟩, (|eg⟩+|ge⟩)/√2, (|eg⟩−|ge⟩)/√2, |gg⟩}`.
    #[default]
    Dressed,
    Computational,
}

impl CoherenceBasis {
    /// Unitary whose columns are the basis vectors.
    pub fn unitary(self) -> ComplexMatrix {
        match self {
            CoherenceBasis::Computational => ComplexMatrix::identity(4),
            CoherenceBasis::Dressed => {
                let s = FRAC_1_SQRT_2;
                let mut u = ComplexMatrix::zeros(4);
                u[(0, 0)] = C64::new(1.0, 0.0);
                u[(1, 1)] = C64::new(s, 0.0);
                u[(2, 1)] = C64::new(s, 0.0);
                u[(1, 2)] = C64::new(s, 0.0);
                u[(2, 2)] = C64::new(-s, 0.0);
                u[(3, 3)] = C64::new(1.0, 0.0);
                u
            }
        }
    }
}

/// `C_rel = S(ρ_diag) − S(ρ)` with the diagonal taken in `basis`.
pub fn rel_entropy_coherence(rho: &DensityMatrix, basis: CoherenceBasis) -> Result<f64, MeasureError> {
    let u = basis.unitary();
    let rotated = u.adjoint().matmul(rho.matrix()).matmul(&u);
    let diag = rotated.diagonal_real();
    let s_diag = shannon_bits(&diag);
    let s = von_neumann_entropy(rho.matrix())?;
    Ok((s_diag - s).max(0.0))
}

/// Spin-flipped state `(σy⊗σy) ρ* (σy⊗σy)`.
pub fn spin_flip(rho: &DensityMatrix) -> ComplexMatrix {
    let yy = kron(&pauli::y(), &pauli::y());
    yy.matmul(&rho.matrix().conj()).matmul(&yy)
}

/// Wootters concurrence.
///
/// The eigenvalues of ρρ̃ are taken from the Hermitian `√ρ ρ̃ √ρ`, which has the same spectrum.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64, MeasureError> {
    let s = matrix_sqrt_psd(rho.matrix())?;
    let r = s.matmul(&spin_flip(rho)).matmul(&s).hermitian_part();
    let eig = hermitian_eig(&r)?;
    let mut roots: Vec<f64> =
        eig.values.iter().map(|&l| if l <= ZERO_EIG_CLAMP { 0.0 } else { l.sqrt() }).collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).clamp(0.0, 1.0))
}

/// `I = S(ρ_A) + S(ρ_B) − S(ρ)`.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64, MeasureError> {
    let m = rho.matrix();
    let sa = von_neumann_entropy(&partial_trace(m, Subsystem::A)?)?;
    let sb = von_neumann_entropy(&partial_trace(m, Subsystem::B)?)?;
    let s = von_neumann_entropy(m)?;
    Ok((sa + sb - s).clamp(0.0, 2.0))
}

/// Pauli decomposition `ρ = ¼(I + a·σ⊗I + I⊗b·σ + Σ T_ij σ_i⊗σ_j)`.
#[derive(Debug, Clone, Copy)]
pub struct BlochForm {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub t: Matrix3,
}

impl BlochForm {
    pub fn of(rho: &DensityMatrix) -> Self {
        let paulis = pauli::xyz();
        let id = pauli::identity();
        let expect = |op: &ComplexMatrix| rho.matrix().matmul(op).trace().re;
        let mut a = [0.0; 3];
        let mut b = [0.0; 3];
        for k in 0..3 {
            a[k] = expect(&kron(&paulis[k], &id));
            b[k] = expect(&kron(&id, &paulis[k]));
        }
        Self { a, b, t: correlation_matrix(rho) }
    }

    /// `Σ_± p_± S(ρ_{A|±})` for a projective measurement of B along `n`.
    pub fn conditional_entropy(&self, n: [f64; 3]) -> f64 {
        let bn: f64 = (0..3).map(|k| self.b[k] * n[k]).sum();
        let tn: [f64; 3] = std::array::from_fn(|i| (0..3).map(|j| self.t[i][j] * n[j]).sum());
        let mut total = 0.0;
        for sign in [1.0, -1.0] {
            let weight = 1.0 + sign * bn;
            let p = 0.5 * weight;
            if p <= ZERO_EIG_CLAMP {
                continue;
            }
            let v: f64 = (0..3).map(|i| (self.a[i] + sign * tn[i]).powi(2)).sum::<f64>().sqrt() / weight;
            let v = v.min(1.0);
            total += p * shannon_bits(&[0.5 * (1.0 + v), 0.5 * (1.0 - v)]);
        }
        total
    }

    pub fn entropy_a(&self) -> f64 {
        let v = self.a.iter().map(|x| x * x).sum::<f64>().sqrt().min(1.0);
        shannon_bits(&[0.5 * (1.0 + v), 0.5 * (1.0 - v)])
    }
}

pub(crate) fn direction(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

/// Golden-section minimization of a 1-D function on `[lo, hi]`.
pub(crate) fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn angles(n: [f64; 3]) -> (f64, f64) {
    (n[2].clamp(-1.0, 1.0).acos(), n[1].atan2(n[0]))
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Golden-section descent along two orthogonal great circles through the
/// current best direction, re-centred every round so the poles are not special.
pub(crate) fn refine_direction(
    f: &impl Fn(f64, f64) -> f64,
    start: (f64, f64, f64),
    step_theta: f64,
    step_phi: f64,
    rounds: usize,
) -> (f64, f64, f64) {
    let (theta0, phi0, mut best) = start;
    let mut n = direction(theta0, phi0);
    let mut width = step_theta.max(step_phi);
    let on_circle = |n: [f64; 3], e: [f64; 3], a: f64| {
        let (s, c) = a.sin_cos();
        [c * n[0] + s * e[0], c * n[1] + s * e[1], c * n[2] + s * e[2]]
    };
    let eval = |v: [f64; 3]| {
        let (t, p) = angles(v);
        f(t, p)
    };
    for _ in 0..rounds {
        let helper = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let e1 = unit(cross(n, helper));
        let e2 = cross(n, e1);
        for e in [e1, e2] {
            let (a, v) = golden_section(|a| eval(on_circle(n, e, a)), -width, width, 40);
            if v < best {
                n = unit(on_circle(n, e, a));
                best = v;
            }
        }
        width *= 0.7;
    }
    let (theta, phi) = angles(n);
    (theta, phi, best)
}

const FAST_GRID_THETA: usize = 18;
const FAST_GRID_PHI: usize = 36;

/// Minimum conditional entropy over projective measurements on B, X-state fast path.
fn min_conditional_entropy_fast(form: &BlochForm) -> f64 {
    let f = |theta: f64, phi: f64| form.conditional_entropy(direction(theta, phi));

    // closed-form candidates: z axis, equator along the dominant xy correlation, and the 45° cone
    let txy = [[form.t[0][0], form.t[0][1]], [form.t[1][0], form.t[1][1]]];
    let gram = [
        [txy[0][0].powi(2) + txy[1][0].powi(2), txy[0][0] * txy[0][1] + txy[1][0] * txy[1][1]],
        [txy[0][0] * txy[0][1] + txy[1][0] * txy[1][1], txy[0][1].powi(2) + txy[1][1].powi(2)],
    ];
    let phi_star = 0.5 * (2.0 * gram[0][1]).atan2(gram[0][0] - gram[1][1]);
    let mut best = (0.0, 0.0, f(0.0, 0.0));
    for theta in [0.0, PI / 4.0, PI / 2.0] {
        for phi in [phi_star, phi_star + PI / 2.0, 0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0] {
            let v = f(theta, phi);
            if v < best.2 {
                best = (theta, phi, v);
            }
        }
    }
    let d_theta = PI / (FAST_GRID_THETA - 1) as f64;
    let d_phi = 2.0 * PI / FAST_GRID_PHI as f64;
    for i in 0..FAST_GRID_THETA {
        for j in 0..FAST_GRID_PHI {
            let (theta, phi) = (i as f64 * d_theta, j as f64 * d_phi);
            let v = f(theta, phi);
            if v < best.2 {
                best = (theta, phi, v);
            }
        }
    }
    refine_direction(&f, best, d_theta, d_phi, 20).2
}

/// Quantum discord with measurement on B, X states only.
pub fn discord(rho: &DensityMatrix) -> Result<f64, MeasureError> {
    let leakage = rho.x_leakage();
    if leakage > X_STATE_TOL {
        return Err(MeasureError::NotXState { leakage });
    }
    let form = BlochForm::of(rho);
    let mutual = mutual_information(rho)?;
    let classical = form.entropy_a() - min_conditional_entropy_fast(&form);
    Ok((mutual - classical).max(0.0))
}

/// Discord for arbitrary states: X fast path when possible, otherwise the grid oracle.
pub fn discord_general(rho: &DensityMatrix) -> Result<f64, MeasureError> {
    match discord(rho) {
        Err(MeasureError::NotXState { .. }) => oracle::discord_grid(rho, 181, 91),
        other => other,
    }
}

/// Quantum consonance of an X state, `2(|ρ₂₃| + |ρ₁₄|)`.
pub fn consonance(rho: &DensityMatrix) -> Result<f64, MeasureError> {
    let leakage = rho.x_leakage();
    if leakage > X_STATE_TOL {
        return Err(MeasureError::NotXState { leakage });
    }
    Ok(2.0 * (rho.entry(1, 2).norm() + rho.entry(0, 3).norm()))
}

/// `W_ij = Tr[√ρ (σ_i⊗I) √ρ (σ_j⊗I)]`.
pub fn lqu_matrix(rho: &DensityMatrix) -> Result<Matrix3, MeasureError> {
    let s = matrix_sqrt_psd(rho.matrix())?;
    let local: Vec<ComplexMatrix> = pauli::xyz().iter().map(|p| kron(p, &pauli::identity())).collect();
    let half: Vec<ComplexMatrix> = local.iter().map(|op| s.matmul(op)).collect();
    let mut w = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            w[i][j] = half[i].matmul(&half[j]).trace().re;
        }
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let avg = 0.5 * (w[i][j] + w[j][i]);
            w[i][j] = avg;
            w[j][i] = avg;
        }
    }
    Ok(w)
}

/// Local quantum uncertainty `1 − λ_max(W)`.
pub fn lqu(rho: &DensityMatrix) -> Result<f64, MeasureError> {
    let w = lqu_matrix(rho)?;
    let wm = ComplexMatrix::from_fn(3, |i, j| C64::new(w[i][j], 0.0));
    Ok((1.0 - hermitian_eig(&wm)?.max_value()).clamp(0.0, 1.0))
}

/// QFI from a state and its parameter derivative, using the eigenbasis matrix-element form
/// `Σ_{λm+λn>ε} 2|⟨Φm|∂ρ|Φn⟩|²/(λm+λn)`.
pub fn qfi_from_derivative(rho: &DensityMatrix, drho: &ComplexMatrix) -> Result<f64, MeasureError> {
    let eig = hermitian_eig(rho.matrix())?;
    let v = &eig.vectors;
    let d = v.adjoint().matmul(drho).matmul(v);
    let mut f = 0.0;
    for m in 0..4 {
        for n in 0..4 {
            let denom = eig.values[m] + eig.values[n];
            if denom > QFI_EIG_CUTOFF {
                f += 2.0 * d[(m, n)].norm_sqr() / denom;
            }
        }
    }
    Ok(f.max(0.0))
}

/// QFI of a one-parameter state family at `theta`, derivative by central differences.
pub fn qfi_family<F>(family: F, theta: f64, h: f64) -> Result<f64, MeasureError>
where
    F: Fn(f64) -> Result<DensityMatrix, MeasureError>,
{
    let plus = family(theta + h)?;
    let minus = family(theta - h)?;
    let drho = (plus.matrix() - minus.matrix()).scale_real(0.5 / h);
    qfi_from_derivative(&family(theta)?, &drho)
}

/// Default finite-difference step for ϑ = r12.
pub fn default_qfi_step(r12: f64) -> f64 {
    1e-4 * r12.max(1.0)
}

/// QFI with respect to r12 of the state evolved from `|eg⟩` for time `t`.
pub fn qfi(params: &BathParams, t: f64, h: Option<f64>) -> Result<f64, MeasureError> {
    let h = h.unwrap_or_else(|| default_qfi_step(params.r12));
    let rho0 = initial_state_eg();
    let family = |r12: f64| -> Result<DensityMatrix, MeasureError> {
        let l = build_liouvillian(&params.with_r12(r12))?;
        Ok(propagate(&l, &rho0, t)?)
    };
    qfi_family(family, params.r12, h)
}

/// QFI (ϑ = r12) along the time grid `{0, dt, …, t_max}`.
pub fn qfi_series(params: &BathParams, t_max: f64, dt: f64, h: Option<f64>) -> Result<Vec<f64>, MeasureError> {
    let h = h.unwrap_or_else(|| default_qfi_step(params.r12));
    let rho0 = initial_state_eg();
    let run = |r12: f64| -> Result<Vec<DensityMatrix>, MeasureError> {
        let l = build_liouvillian(&params.with_r12(r12))?;
        Ok(trajectory(&l, &rho0, t_max, dt)?.states)
    };
    let (center, plus, minus) = (run(params.r12)?, run(params.r12 + h)?, run(params.r12 - h)?);
    center
        .iter()
        .zip(plus.iter().zip(&minus))
        .map(|(rho, (p, m))| qfi_from_derivative(rho, &(p.matrix() - m.matrix()).scale_real(0.5 / h)))
        .collect()
}

/// Pure-state QFI `4(⟨∂ψ|∂ψ⟩ − |⟨ψ|∂ψ⟩|²)`.
pub fn qfi_pure(psi: &[C64], dpsi: &[C64]) -> Result<f64, MeasureError> {
    assert_eq!(psi.len(), dpsi.len(), "state and derivative lengths differ");
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(MeasureError::NotNormalized(norm));
    }
    let dd: f64 = dpsi.iter().map(|z| z.norm_sqr()).sum();
    let overlap: C64 = psi.iter().zip(dpsi).map(|(a, b)| a.conj() * b).sum();
    Ok((4.0 * (dd - overlap.norm_sqr())).max(0.0))
}

/// All quantifiers evaluated on one state.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub c_rel: f64,
    pub concurrence: f64,
    pub discord: f64,
    pub consonance: f64,
    pub lqu: f64,
    pub qfi: Option<f64>,
    pub correlation_t: Matrix3,
}

impl MeasureReport {
    pub fn is_finite(&self) -> bool {
        [self.c_rel, self.concurrence, self.discord, self.consonance, self.lqu].iter().all(|v| v.is_finite())
            && self.qfi.is_none_or(f64::is_finite)
            && self.correlation_t.iter().flatten().all(|v| v.is_finite())
    }
}

/// Evaluates every state measure; X-only measures fall back to the general routes.
pub fn measure_all(rho: &DensityMatrix, basis: CoherenceBasis) -> Result<MeasureReport, MeasureError> {
    let consonance = match consonance(rho) {
        Err(MeasureError::NotXState { .. }) => oracle::consonance_general(rho)?,
        other => other?,
    };
    Ok(MeasureReport {
        c_rel: rel_entropy_coherence(rho, basis)?,
        concurrence: concurrence(rho)?,
        discord: discord_general(rho)?,
        consonance,
        lqu: lqu(rho)?,
        qfi: None,
        correlation_t: correlation_matrix(rho),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{EG, EE, GG};

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn near(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    fn product_state() -> DensityMatrix {
        let a = ComplexMatrix::from_row_major(2, vec![c(0.7), C64::new(0.2, 0.1), C64::new(0.2, -0.1), c(0.3)]);
        let b = ComplexMatrix::from_real_diag(&[0.4, 0.6]);
        DensityMatrix::product(&a, &b).unwrap()
    }

    #[test]
    fn coherence_examples() {
        let bell = DensityMatrix::bell_phi_plus();
        near(rel_entropy_coherence(&bell, CoherenceBasis::Computational).unwrap(), 1.0, 1e-12);
        let diag = DensityMatrix::new(ComplexMatrix::from_real_diag(&[0.1, 0.2, 0.3, 0.4])).unwrap();
        near(rel_entropy_coherence(&diag, CoherenceBasis::Computational).unwrap(), 0.0, 1e-12);
        let eg = DensityMatrix::excited_ground();
        near(rel_entropy_coherence(&eg, CoherenceBasis::Dressed).unwrap(), 1.0, 1e-12);
        near(rel_entropy_coherence(&eg, CoherenceBasis::Computational).unwrap(), 0.0, 1e-12);
    }

    #[test]
    fn concurrence_examples() {
        near(concurrence(&DensityMatrix::bell_phi_plus()).unwrap(), 1.0, 1e-10);
        near(concurrence(&product_state()).unwrap(), 0.0, 1e-10);
        near(concurrence(&DensityMatrix::werner(0.5).unwrap()).unwrap(), 0.25, 1e-10);
    }

    #[test]
    fn concurrence_werner_closed_form() {
        for k in 0..=10 {
            let p = k as f64 / 10.0;
            let want = ((3.0 * p - 1.0) / 2.0).max(0.0);
            near(concurrence(&DensityMatrix::werner(p).unwrap()).unwrap(), want, 1e-8);
        }
    }

    #[test]
    fn mutual_information_examples() {
        near(mutual_information(&product_state()).unwrap(), 0.0, 1e-12);
        near(mutual_information(&DensityMatrix::bell_phi_plus()).unwrap(), 2.0, 1e-12);
        let classical = DensityMatrix::new(ComplexMatrix::from_real_diag(&[0.5, 0.0, 0.0, 0.5])).unwrap();
        near(mutual_information(&classical).unwrap(), 1.0, 1e-12);
    }

    #[test]
    fn discord_examples() {
        near(discord(&DensityMatrix::bell_phi_plus()).unwrap(), 1.0, 1e-10);
        let prod = DensityMatrix::new(ComplexMatrix::from_real_diag(&[0.28, 0.42, 0.12, 0.18])).unwrap();
        near(discord(&prod).unwrap(), 0.0, 1e-10);
        let classical = DensityMatrix::new(ComplexMatrix::from_real_diag(&[0.5, 0.0, 0.0, 0.5])).unwrap();
        near(discord(&classical).unwrap(), 0.0, 1e-10);
    }

    #[test]
    fn discord_rejects_non_x_states() {
        assert!(matches!(discord(&product_state()), Err(MeasureError::NotXState { .. })));
        near(discord_general(&product_state()).unwrap(), 0.0, 1e-8);
    }

    #[test]
    fn consonance_examples() {
        near(consonance(&DensityMatrix::bell_phi_plus()).unwrap(), 1.0, 1e-14);
        near(consonance(&DensityMatrix::bell_psi_plus()).unwrap(), 1.0, 1e-14);
        near(consonance(&DensityMatrix::basis(GG)).unwrap(), 0.0, 0.0);
        assert!(consonance(&product_state()).is_err());
    }

    #[test]
    fn lqu_examples() {
        near(lqu(&DensityMatrix::bell_phi_plus()).unwrap(), 1.0, 1e-10);
        near(lqu(&DensityMatrix::excited_ground()).unwrap(), 0.0, 1e-10);
        near(lqu(&DensityMatrix::maximally_mixed()).unwrap(), 0.0, 1e-12);
    }

    #[test]
    fn qfi_pure_examples() {
        let zero = [c(1.0), c(0.0)];
        near(qfi_pure(&zero, &[c(0.0), c(0.0)]).unwrap(), 0.0, 0.0);
        let th: f64 = 0.4;
        let psi = [c(th.cos()), c(th.sin())];
        let dpsi = [c(-th.sin()), c(th.cos())];
        near(qfi_pure(&psi, &dpsi).unwrap(), 4.0, 1e-14);
        // e^{iϑ}|0⟩ is a pure gauge
        let phase = C64::from_polar(1.0, th);
        near(qfi_pure(&[phase, c(0.0)], &[phase * C64::i(), c(0.0)]).unwrap(), 0.0, 1e-14);
        assert!(matches!(qfi_pure(&[c(2.0), c(0.0)], &[c(0.0), c(0.0)]), Err(MeasureError::NotNormalized(_))));
    }

    fn cos_sin_family(theta: f64) -> Result<DensityMatrix, MeasureError> {
        let mut psi = [c(0.0); 4];
        psi[EE] = c(theta.cos());
        psi[GG] = c(theta.sin());
        Ok(DensityMatrix::pure(psi).expect("unit vector"))
    }

    #[test]
    fn mixed_qfi_reproduces_pure_family() {
        for theta in [0.1, 0.3, 0.77, 1.2] {
            near(qfi_family(cos_sin_family, theta, 1e-4).unwrap(), 4.0, 1e-6);
        }
        let constant = |_: f64| Ok(DensityMatrix::excited_ground());
        near(qfi_family(constant, 0.5, 1e-4).unwrap(), 0.0, 0.0);
    }

    #[test]
    fn qfi_collective_exceeds_independent() {
        let base = BathParams::new(1.0, 0.35, 0.1);
        let collective = qfi(&base, 1.0, None).unwrap();
        let independent = qfi(&base.with_r12(1.1), 1.0, None).unwrap();
        assert!(collective > independent, "{collective} vs {independent}");
    }

    #[test]
    fn qfi_series_matches_pointwise() {
        let base = BathParams::new(1.0, 0.35, 0.2);
        let series = qfi_series(&base, 1.0, 0.25, None).unwrap();
        for (k, q) in series.iter().enumerate() {
            let direct = qfi(&base, k as f64 * 0.25, None).unwrap();
            assert!((q - direct).abs() <= 1e-6 * direct.max(1.0), "{q} vs {direct}");
        }
    }

    #[test]
    fn report_for_initial_state() {
        let r = measure_all(&DensityMatrix::basis(EG), CoherenceBasis::Computational).unwrap();
        assert_eq!(r.concurrence, 0.0);
        assert!(r.discord.abs() < 1e-12 && r.consonance == 0.0 && r.lqu.abs() < 1e-10 && r.c_rel.abs() < 1e-12);
        assert!(r.is_finite());
    }
}
