//! Simulation toolkit for solving the nonstationary Schrödinger equation on a
//! simulated noisy qubit register.
//!
//! The pieces fit together like this:
//!
//! * [`state`] — pure states of an n-qubit register, elementary gates, Haar
//!   sampling, and the fidelity metric.
//! * [`density`] — density matrices, Kraus-channel application, and low-rank
//!   truncation for the operator-sum noise picture.
//! * [`noise`] — the per-gate noise model (random rotations on one-qubit gates,
//!   random phase kicks on controlled phases), its exact Kraus-operator
//!   equivalents, and Choi-matrix channel comparison.
//! * [`qft`] — quantum Fourier transform circuits (ideal, noisy, and
//!   depth-truncated), the optimal-truncation-depth rule, closed-form fidelity
//!   estimates, and a unit-rank-truncation oracle that validates them.
//! * [`evolution`] — the split-operator stepper that alternates potential
//!   phases in coordinate space with kinetic phases in momentum space,
//!   switching representations with the QFT, plus closed-form accuracy
//!   predictors for larger systems.
//! * [`poschl_teller`] — the exactly solvable Pöschl-Teller well used as the
//!   analytic reference for all evolution accuracy measurements.
//!
//! Natural units ħ = m = 1 are used throughout; all times, lengths, and
//! energies are dimensionless.

pub mod density;
pub mod error;
pub mod evolution;
pub mod noise;
pub mod poschl_teller;
pub mod qft;
pub mod rng;
pub mod state;

pub use error::{Error, Result};
pub use rng::RandomStream;
pub use state::PureState;

/// Re-exported because it appears throughout the public API (amplitudes,
/// mode coefficients); downstream crates need the exact same type.
pub use num_complex::Complex64;
