//! Qudit state-vector simulation of ancilla-driven quantum computation and
//! its minimal-control variant.

pub mod adqc;
pub mod circuit;
pub mod error;
pub mod frame;
pub mod gate;
pub mod gates;
pub mod harness;
pub mod kernel;
pub mod measure;
pub mod mincontrol;
pub mod pauli;
pub mod ring;
pub mod state;

pub use error::{QvError, Result};
pub use frame::PauliFrame;
pub use gate::Gate;
pub use measure::{Outcome, OutcomeSource};
pub use num_complex::Complex64;
pub use pauli::{CliffordOp, PauliElement};
pub use state::{DimSpec, QState};
