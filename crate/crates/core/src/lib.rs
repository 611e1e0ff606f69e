//! Dual quantum information splitting: a secret is shared by teleporting a
//! fixed fiducial state over an entangled channel that encodes the secret in
//! a stabilizer code space, with security witnessed by a Bell test.
//!
//! The crate provides the exact signed Pauli algebra, a dense state-vector
//! engine, graph-state construction, Bell-operator analysis (local-realist
//! bounds, quantum values, degenerate subspaces, GHZ contradictions), the
//! teleportation-divergence checker with full protocol execution, a
//! single-qubit eavesdropping attack model and a deterministic multi-party
//! protocol harness.

pub mod attack;
pub mod bell;
pub mod dqis;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod harness;
pub mod linalg;
pub mod pauli;
pub mod state;

pub use error::{Error, Result};
pub use pauli::{PauliLetter, PauliString, Phase};
pub use state::{DensityMatrix, MeasurementBranch, ProjectiveBasis, StateVector};
