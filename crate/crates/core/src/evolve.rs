//! Time propagation under a fixed Liouvillian.
//!
//! States are propagated with the exact propagator `expm(L·t)`; trajectories
//! reuse one cached step propagator `expm(L·dt)`.

use thiserror::Error;

use crate::bath::Liouvillian;
use crate::linalg::{ComplexMatrix, LinalgError, C64};
use crate::measures::MeasureReport;
use crate::state::{DensityMatrix, StateError, Tolerances};

pub use crate::linalg::expm;

/// Anti-Hermitian drift tolerated before Hermitization.
pub const HERMITIAN_DRIFT_TOL: f64 = 1e-10;
/// Accumulated trace drift tolerated along a trajectory.
pub const TRACE_DRIFT_TOL: f64 = 1e-8;
/// Negative eigenvalues below this abort the integration.
pub const POSITIVITY_FAIL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvolveError {
    #[error("invalid time argument: {0}")]
    InvalidTime(String),
    #[error("Hermiticity drift {0:e} exceeds {HERMITIAN_DRIFT_TOL:e}")]
    HermiticityDrift(f64),
    #[error("trace drift: trace = {0}")]
    TraceDrift(f64),
    #[error("integration failure: eigenvalue {0:e} below -{POSITIVITY_FAIL:e}")]
    PositivityViolation(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    State(StateError),
}

impl From<StateError> for EvolveError {
    fn from(e: StateError) -> Self {
        match e {
            StateError::NotHermitian(v) => EvolveError::HermiticityDrift(v),
            StateError::NotNormalized(t) => EvolveError::TraceDrift(t),
            StateError::NotPositive(v) => EvolveError::PositivityViolation(v),
            other => EvolveError::State(other),
        }
    }
}

const PROPAGATED: Tolerances =
    Tolerances { hermitian: HERMITIAN_DRIFT_TOL, trace: TRACE_DRIFT_TOL, min_eig: POSITIVITY_FAIL };

/// Separable starting state `|e⟩|g⟩`.
pub fn initial_state_eg() -> DensityMatrix {
    DensityMatrix::excited_ground()
}

/// Un-stacks a propagated vector and restores the density-matrix invariants.
pub(crate) fn restore_state(v: &[C64]) -> Result<DensityMatrix, EvolveError> {
    Ok(DensityMatrix::with_tolerances(ComplexMatrix::unvectorize(v), PROPAGATED)?)
}

/// `ρ(t) = unstack(expm(L·t)·vec(ρ₀))`.
pub fn propagate(l: &Liouvillian, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix, EvolveError> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(EvolveError::InvalidTime(format!("t must be >= 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(rho0.clone());
    }
    let prop = expm(&l.generator.scale_real(t))?;
    restore_state(&prop.matvec(&rho0.matrix().vectorize()))
}

/// Cached one-step propagator.
#[derive(Debug, Clone)]
pub struct Propagator {
    pub dt: f64,
    step: ComplexMatrix,
}

impl Propagator {
    pub fn new(l: &Liouvillian, dt: f64) -> Result<Self, EvolveError> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(EvolveError::InvalidTime(format!("dt must be > 0, got {dt}")));
        }
        Ok(Self { dt, step: expm(&l.generator.scale_real(dt))? })
    }

    pub fn step_vec(&self, v: &[C64]) -> Vec<C64> {
        self.step.matvec(v)
    }
}

/// Time grid `{0, dt, 2dt, …}` up to and including `t_max` (within rounding).
pub fn time_grid(t_max: f64, dt: f64) -> Result<Vec<f64>, EvolveError> {
    if !(t_max > 0.0) || !(dt > 0.0) || !t_max.is_finite() || !dt.is_finite() {
        return Err(EvolveError::InvalidTime(format!("need t_max > 0 and dt > 0, got t_max={t_max}, dt={dt}")));
    }
    let steps = (t_max / dt + 1e-9).floor() as usize;
    Ok((0..=steps).map(|k| k as f64 * dt).collect())
}

/// Sampled time evolution.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub reports: Option<Vec<MeasureReport>>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &DensityMatrix)> {
        self.times.iter().copied().zip(&self.states)
    }
}

/// States at `{0, dt, …, t_max}` by repeated application of `expm(L·dt)`.
pub fn trajectory(l: &Liouvillian, rho0: &DensityMatrix, t_max: f64, dt: f64) -> Result<Trajectory, EvolveError> {
    let times = time_grid(t_max, dt)?;
    let prop = Propagator::new(l, dt)?;
    let mut states = Vec::with_capacity(times.len());
    let mut v = rho0.matrix().vectorize();
    states.push(rho0.clone());
    for _ in 1..times.len() {
        v = prop.step_vec(&v);
        let state = restore_state(&v)?;
        // continue from the Hermitized state
        v = state.matrix().vectorize();
        states.push(state);
    }
    Ok(Trajectory { times, states, reports: None })
}
