//! Two qubits coupled to a common squeezed thermal bath.
//!
//! Builds the Markovian generator for a pair of two-level emitters, evolves
//! the `|eg⟩` state, and tracks coherence, entanglement, discord-like
//! correlations, quantum Fisher information and teleportation fidelity.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bath;
pub mod cli;
pub mod evolve;
pub mod linalg;
pub mod measures;
pub mod oracle;
pub mod state;
pub mod svg;
pub mod teleport;

pub use bath::{build_liouvillian, BathCoefficients, BathParams, Liouvillian};
pub use evolve::{initial_state_eg, propagate, trajectory, Trajectory};
pub use linalg::{ComplexMatrix, C64};
pub use measures::{measure_all, CoherenceBasis, MeasureReport};
pub use state::DensityMatrix;
pub use teleport::{teleport_report, TeleportReport};
