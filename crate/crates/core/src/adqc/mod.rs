//! Ancilla-driven computation: a fixed ancilla-register interaction, fresh
//! `|+_0⟩` ancillas and single-ancilla measurements, with Pauli-frame
//! feed-forward for step-wise determinism.

mod compile;
mod protocols;
mod run;

pub use compile::compile_logical;
pub use protocols::{
    ancilla_dim, build_interaction, protocol_entangle, protocol_entangle_checke,
    protocol_entangle_hybrid, protocol_local, protocol_local_checke, protocol_local_hybrid,
    protocol_measure_x, raw_entangle, raw_local, raw_measure_x, StepOutcome,
};
pub use run::{run, schedule_layers, LayerReport, Residual, RunMode, RunResult};

use serde::{Deserialize, Serialize};

use crate::error::{QvError, Result};
use crate::gates::PhaseFunction;

/// Which fixed two-body interaction couples ancilla and register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Interaction {
    /// `E = F_r F_a† CZ`.
    E,
    /// `Ě = F_a · SWAP · CZ`.
    CheckE,
    /// `E′ = F_r F_a† C^r_a Z` with an ancilla of dimension `d_a`.
    Hybrid { d_a: usize },
}

impl Interaction {
    /// `k = d / d_a` when the hybrid ancilla dimension divides `d`.
    pub fn scale(self, d: usize) -> Option<usize> {
        match self {
            Interaction::Hybrid { d_a } => d.is_multiple_of(d_a).then_some(d / d_a),
            _ => Some(1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Step {
    Entangle { r: usize, s: usize },
    /// `FR(ϑ)` up to frame. For hybrid programs `theta` has length `d_a`.
    Local { r: usize, theta: PhaseFunction, adaptive: bool },
    /// `FP(p)` up to frame, never adaptive.
    LocalFP { r: usize, p: usize },
    /// Logical `X(q)Z(q')` applied by frame update only.
    AbsorbPauli { r: usize, q: usize, qp: usize },
    /// Destructive x̂ measurement of a register QV.
    MeasureX { r: usize },
}

impl Step {
    pub fn qvs(&self) -> Vec<usize> {
        match self {
            Step::Entangle { r, s } => vec![*r, *s],
            Step::Local { r, .. }
            | Step::LocalFP { r, .. }
            | Step::AbsorbPauli { r, .. }
            | Step::MeasureX { r } => vec![*r],
        }
    }

    /// Number of ancilla-register interactions the step uses.
    pub fn interactions(&self) -> usize {
        match self {
            Step::Entangle { .. } => 2,
            Step::AbsorbPauli { .. } => 0,
            _ => 1,
        }
    }

    pub fn uses_ancilla(&self) -> bool {
        !matches!(self, Step::AbsorbPauli { .. })
    }
}

/// A sequence of protocol steps on a register. QV indices are labels fixed
/// at construction; measured labels are dead afterwards.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdqcProgram {
    dims: Vec<usize>,
    interaction: Interaction,
    steps: Vec<Step>,
}

impl AdqcProgram {
    pub fn new(dims: Vec<usize>, interaction: Interaction) -> Result<Self> {
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(QvError::InvalidDimension(d));
        }
        if let Interaction::Hybrid { d_a } = interaction {
            if d_a < 2 {
                return Err(QvError::InvalidDimension(d_a));
            }
        }
        Ok(Self { dims, interaction, steps: Vec::new() })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn interaction(&self) -> Interaction {
        self.interaction
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn push(&mut self, step: Step) -> Result<()> {
        let qvs = step.qvs();
        for &q in &qvs {
            if q >= self.dims.len() {
                return Err(QvError::NoSuchSubsystem { index: q, len: self.dims.len() });
            }
            let dead = self.steps.iter().any(|s| matches!(s, Step::MeasureX { r } if *r == q));
            if dead {
                return Err(QvError::InvalidParameter(format!("QV {q} was already measured")));
            }
        }
        if let Step::Entangle { r, s } = step {
            if r == s {
                return Err(QvError::DuplicateTarget(r));
            }
            if self.dims[r] != self.dims[s] {
                return Err(QvError::DimensionMismatch("entangling QVs of different dimension".into()));
            }
        }
        if let Step::Local { r, theta, .. } = &step {
            let want = match self.interaction {
                Interaction::Hybrid { d_a } => d_a,
                _ => self.dims[*r],
            };
            if theta.d() != want {
                return Err(QvError::DimensionMismatch(format!(
                    "phase table of length {} where {want} is needed",
                    theta.d()
                )));
            }
        }
        self.steps.push(step);
        Ok(())
    }

    pub fn adaptive_count(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Local { adaptive: true, .. })).count()
    }
}
