//! Program execution with frame feed-forward, and the layer scheduler.

use serde::{Deserialize, Serialize};

use super::protocols::{adapt, raw_entangle, raw_local, raw_measure_x};
use super::{AdqcProgram, Interaction, Step};
use crate::circuit::{Labels, LogicalMeasurement};
use crate::error::{QvError, Result};
use crate::frame::PauliFrame;
use crate::gate::Gate;
use crate::gates::{self, ObservableKind, PhaseFunction};
use crate::measure::{MeasurementRecord, OutcomeSource};
use crate::ring::reduce;
use crate::state::QState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RunMode {
    /// Every step is made logically deterministic through the frame.
    Deterministic,
    /// Allows hybrid ancillas whose dimension does not divide `d`; their
    /// non-Pauli errors are reported as residual gates.
    Stochastic,
}

/// A non-Pauli error left on the register by a stochastic hybrid step.
#[derive(Debug, Clone)]
pub struct Residual {
    pub step: usize,
    pub qv: usize,
    pub gate: Gate,
}

/// Static resource summary of a program.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerReport {
    pub layers: usize,
    pub adaptive: usize,
    pub ancillas: usize,
    pub interactions: usize,
    /// Distinct ancilla observables, in order of first use.
    pub observables: Vec<ObservableKind>,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    /// Physical register state of the unmeasured QVs.
    pub state: QState,
    pub frame: PauliFrame,
    /// Labels of the QVs in `state`, in order.
    pub live: Vec<usize>,
    /// One record per ancilla, with raw outcomes.
    pub log: Vec<MeasurementRecord>,
    /// Frame-corrected register measurement results.
    pub measurements: Vec<LogicalMeasurement>,
    pub report: LayerReport,
    pub residuals: Vec<Residual>,
}

impl RunResult {
    /// The logical state: the physical state with the frame undone.
    pub fn corrected_state(&self) -> Result<QState> {
        self.frame.correct(&self.state)
    }

    pub fn outcomes(&self) -> Vec<usize> {
        self.log.iter().map(|r| r.outcome).collect()
    }
}

fn observable(step: &Step, interaction: Interaction, d: usize) -> ObservableKind {
    let checke = interaction == Interaction::CheckE;
    match step {
        Step::Entangle { .. } => ObservableKind::X,
        Step::MeasureX { .. } if checke => ObservableKind::P,
        Step::MeasureX { .. } => ObservableKind::X,
        Step::Local { theta, .. } if checke => ObservableKind::XFRFdag(theta.table().to_vec()),
        Step::Local { theta, .. } if theta.table().iter().all(|&t| t == 0.0) => ObservableKind::XF,
        Step::Local { theta, .. } => ObservableKind::XFR(theta.table().to_vec()),
        Step::LocalFP { p, .. } if checke => {
            ObservableKind::XFRFdag(PhaseFunction::phase_gate(d, *p).table().to_vec())
        }
        Step::LocalFP { p, .. } => ObservableKind::XFP(*p),
        Step::AbsorbPauli { .. } => ObservableKind::X,
    }
}

/// Layer count under as-soon-as-possible scheduling per QV: a local step
/// or register measurement takes 2 layers (interaction, readout), an
/// entangling step 3 (two interactions, readout), a Pauli absorption none.
pub fn schedule_layers(program: &AdqcProgram) -> LayerReport {
    let mut t = vec![0usize; program.dims().len()];
    let mut observables: Vec<ObservableKind> = Vec::new();
    let mut ancillas = 0;
    let mut interactions = 0;
    for step in program.steps() {
        match step {
            Step::Entangle { r, s } => {
                let start = t[*r].max(t[*s]);
                t[*r] = start + 3;
                t[*s] = start + 3;
            }
            Step::Local { r, .. } | Step::LocalFP { r, .. } | Step::MeasureX { r } => t[*r] += 2,
            Step::AbsorbPauli { .. } => continue,
        }
        ancillas += 1;
        interactions += step.interactions();
        let d = program.dims()[step.qvs()[0]];
        let obs = observable(step, program.interaction(), d);
        if !observables.contains(&obs) {
            observables.push(obs);
        }
    }
    LayerReport {
        layers: t.into_iter().max().unwrap_or(0),
        adaptive: program.adaptive_count(),
        ancillas,
        interactions,
        observables,
    }
}

pub fn run(program: &AdqcProgram, init: &QState, source: &mut OutcomeSource, mode: RunMode) -> Result<RunResult> {
    if init.dims().dims() != program.dims() {
        return Err(QvError::DimensionMismatch(format!(
            "program over {:?} given a state over {:?}",
            program.dims(),
            init.dims().dims()
        )));
    }
    let interaction = program.interaction();
    let exact = program.dims().iter().all(|&d| interaction.scale(d).is_some());
    if !exact && mode == RunMode::Deterministic {
        return Err(QvError::Unsupported(
            "hybrid ancilla dimension does not divide the register dimension; use stochastic mode".into(),
        ));
    }
    let mut labels = Labels::new(program.dims().len());
    let mut state = init.clone();
    let mut frame = PauliFrame::new(program.dims());
    let mut log = Vec::new();
    let mut measurements = Vec::new();
    let mut residuals = Vec::new();

    for (i, step) in program.steps().iter().enumerate() {
        let head = step.qvs()[0];
        let pr = labels.position(head)?;
        let d = state.dims().dim(pr);
        let k = interaction.scale(d);
        let refuse = |what: &str| {
            QvError::Unsupported(format!("{what} needs a frame, which a non-divisible hybrid ancilla cannot keep"))
        };
        let (m, forced) = match step {
            Step::Entangle { s, .. } => {
                let ps = labels.position(*s)?;
                let out = raw_entangle(&state, pr, ps, interaction, source.next_outcome())?;
                frame = match (interaction, k) {
                    (Interaction::CheckE, _) => frame.update_entangle_swap(pr, ps, out.m)?,
                    (_, Some(k)) => frame.update_entangle_scaled(pr, ps, out.m, k)?,
                    (Interaction::Hybrid { d_a }, None) => {
                        residuals.push(Residual { step: i, qv: head, gate: gates::hybrid_u(d, d_a, out.m) });
                        frame
                    }
                    _ => unreachable!("only hybrids lack a scale"),
                };
                state = out.state;
                (out.m, out.forced)
            }
            Step::Local { theta, adaptive, .. } => {
                if *adaptive && k.is_none() {
                    return Err(refuse("an adaptive measurement"));
                }
                let used = if *adaptive { adapt(theta, &frame, pr)? } else { theta.clone() };
                let out = raw_local(&state, pr, &used, interaction, source.next_outcome())?;
                match (interaction, k) {
                    (_, Some(k)) => frame = frame.update_fr_scaled(pr, out.m, k)?,
                    (Interaction::Hybrid { d_a }, None) => {
                        let gate = gates::hybrid_u(d, d_a, (d_a - out.m) % d_a);
                        residuals.push(Residual { step: i, qv: head, gate });
                    }
                    _ => unreachable!("only hybrids lack a scale"),
                }
                state = out.state;
                (out.m, out.forced)
            }
            Step::LocalFP { p, .. } => {
                if k != Some(1) {
                    return Err(QvError::Unsupported("FP steps need an ancilla of the register dimension".into()));
                }
                let theta = PhaseFunction::phase_gate(d, *p);
                let out = raw_local(&state, pr, &theta, interaction, source.next_outcome())?;
                frame = frame.update_fp(pr, *p, out.m)?;
                state = out.state;
                (out.m, out.forced)
            }
            Step::AbsorbPauli { q, qp, .. } => {
                if k.is_none() {
                    return Err(refuse("a Pauli absorption"));
                }
                frame = frame.absorb_pauli(pr, *q, *qp)?;
                continue;
            }
            Step::MeasureX { .. } => {
                let out = raw_measure_x(&state, pr, interaction, source.next_outcome())?;
                let value = reduce(out.m as i64 - frame.x(pr) as i64, d);
                measurements.push(LogicalMeasurement { qv: head, value });
                frame = frame.remove(pr)?;
                labels.remove(head)?;
                state = out.state;
                (out.m, out.forced)
            }
        };
        log.push(MeasurementRecord {
            target: head,
            observable: observable(step, interaction, d),
            outcome: m,
            forced,
        });
    }

    Ok(RunResult {
        state,
        frame,
        live: labels.live().to_vec(),
        log,
        measurements,
        report: schedule_layers(program),
        residuals,
    })
}
