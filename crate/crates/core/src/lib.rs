//! Quantum-correlation numerics for qubit–qudit (2⊗d) states.
//!
//! The crate computes geometric discord `D_G`, its observable lower bound `Q`
//! and the negativity of bipartite states whose first party is a qubit, and
//! cross-checks the closed forms against a brute-force minimisation over
//! projective measurements. On top of that it builds non-tomographic
//! measurement plans (spin observables and multicopy swap/projector
//! observables), the four-qubit DQC1 case study, and two exactly solvable
//! two-qubit open-system channels.
//!
//! Conventions used everywhere:
//! - the computational basis is ordered with the first tensor factor as the
//!   slowest index (`|a b⟩ ↦ a·d + b`);
//! - Hermiticity, unitarity and positivity checks default to a tolerance of
//!   [`DEFAULT_TOL`].

pub mod dqc1;
pub mod dynamics;
mod error;
pub mod exec;
pub mod matrix;
pub mod measures;
pub mod output;
pub mod schemes;
pub mod states;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, SubsystemLayout, C64};
pub use measures::CorrelationReport;
pub use states::{BlochFano, DensityMatrix, OperatorBasis};

/// Default tolerance for Hermiticity, unitarity, trace and positivity checks.
pub const DEFAULT_TOL: f64 = 1e-9;
