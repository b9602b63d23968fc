//! Logical circuits over the gate alphabet {F, P, X, Z, CZ, R, D₃} plus
//! destructive x̂ measurements, and their direct state-vector simulation.

use serde::{Deserialize, Serialize};

use crate::error::{QvError, Result};
use crate::gate::Gate;
use crate::gates::{self, CubicConstant, PhaseFunction};
use crate::measure::{measure_x, OutcomeSource};
use crate::state::QState;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum LogicalGate {
    F { t: usize },
    P { p: usize, t: usize },
    X { q: usize, t: usize },
    Z { q: usize, t: usize },
    Cz { a: usize, b: usize },
    R { t: usize, theta: PhaseFunction },
    D3 { qp: usize, t: usize, c: CubicConstant },
}

impl LogicalGate {
    pub fn targets(&self) -> Vec<usize> {
        match self {
            LogicalGate::F { t }
            | LogicalGate::P { t, .. }
            | LogicalGate::X { t, .. }
            | LogicalGate::Z { t, .. }
            | LogicalGate::R { t, .. }
            | LogicalGate::D3 { t, .. } => vec![*t],
            LogicalGate::Cz { a, b } => vec![*a, *b],
        }
    }

    pub fn is_clifford(&self) -> bool {
        !matches!(self, LogicalGate::R { .. } | LogicalGate::D3 { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            LogicalGate::F { .. } => "F",
            LogicalGate::P { .. } => "P",
            LogicalGate::X { .. } => "X",
            LogicalGate::Z { .. } => "Z",
            LogicalGate::Cz { .. } => "CZ",
            LogicalGate::R { .. } => "R",
            LogicalGate::D3 { .. } => "D3",
        }
    }

    /// Phase table of a diagonal single-QV gate given as `R` or `D₃`.
    pub fn phase_table(&self, d: usize) -> Option<PhaseFunction> {
        match self {
            LogicalGate::R { theta, .. } => Some(theta.clone()),
            LogicalGate::D3 { qp, c, .. } => Some(gates::cubic_phase_function(d, *qp, *c)),
            _ => None,
        }
    }

    /// Unitary in dimension `d`, acting on `targets()` in order.
    pub fn matrix(&self, d: usize) -> Gate {
        match self {
            LogicalGate::F { .. } => gates::fourier(d),
            LogicalGate::P { p, .. } => gates::phase_gate(d, *p),
            LogicalGate::X { q, .. } => gates::pauli_x(d, *q),
            LogicalGate::Z { q, .. } => gates::pauli_z(d, *q),
            LogicalGate::Cz { .. } => gates::cz(d, d),
            LogicalGate::R { theta, .. } => gates::rotation(theta),
            LogicalGate::D3 { qp, c, .. } => gates::cubic_phase(d, *qp, *c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum LogicalOp {
    Gate(LogicalGate),
    /// Destructive x̂ measurement of a QV label.
    Measure(usize),
}

/// A circuit on `n` QVs of dimension `d`. Targets are QV labels fixed at
/// construction; measured labels cannot be used again.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    d: usize,
    n: usize,
    ops: Vec<LogicalOp>,
}

impl Circuit {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d < 2 {
            return Err(QvError::InvalidDimension(d));
        }
        Ok(Self { d, n, ops: Vec::new() })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ops(&self) -> &[LogicalOp] {
        &self.ops
    }

    pub fn is_clifford(&self) -> bool {
        self.ops.iter().all(|op| match op {
            LogicalOp::Gate(g) => g.is_clifford(),
            LogicalOp::Measure(_) => true,
        })
    }

    pub fn has_cz(&self) -> bool {
        self.ops.iter().any(|op| matches!(op, LogicalOp::Gate(LogicalGate::Cz { .. })))
    }

    fn measured(&self) -> Vec<usize> {
        self.ops
            .iter()
            .filter_map(|op| if let LogicalOp::Measure(t) = op { Some(*t) } else { None })
            .collect()
    }

    fn check_label(&self, t: usize) -> Result<()> {
        if t >= self.n {
            return Err(QvError::NoSuchSubsystem { index: t, len: self.n });
        }
        if self.measured().contains(&t) {
            return Err(QvError::InvalidParameter(format!("QV {t} was already measured")));
        }
        Ok(())
    }

    pub fn push_gate(&mut self, gate: LogicalGate) -> Result<()> {
        let ts = gate.targets();
        for &t in &ts {
            self.check_label(t)?;
        }
        if ts.len() == 2 && ts[0] == ts[1] {
            return Err(QvError::DuplicateTarget(ts[0]));
        }
        if let LogicalGate::R { theta, .. } = &gate {
            if theta.d() != self.d {
                return Err(QvError::DimensionMismatch(format!(
                    "phase table of length {} for d = {}",
                    theta.d(),
                    self.d
                )));
            }
        }
        self.ops.push(LogicalOp::Gate(gate));
        Ok(())
    }

    pub fn push_measure(&mut self, t: usize) -> Result<()> {
        self.check_label(t)?;
        self.ops.push(LogicalOp::Measure(t));
        Ok(())
    }

    pub fn num_measurements(&self) -> usize {
        self.measured().len()
    }
}

/// Map from QV labels to positions in a state that shrinks as QVs are
/// measured out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    live: Vec<usize>,
}

impl Labels {
    pub fn new(n: usize) -> Self {
        Self { live: (0..n).collect() }
    }

    pub fn live(&self) -> &[usize] {
        &self.live
    }

    pub fn position(&self, label: usize) -> Result<usize> {
        self.live
            .iter()
            .position(|&l| l == label)
            .ok_or(QvError::NoSuchSubsystem { index: label, len: self.live.len() })
    }

    pub fn remove(&mut self, label: usize) -> Result<usize> {
        let p = self.position(label)?;
        self.live.remove(p);
        Ok(p)
    }
}

/// One destructive register measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalMeasurement {
    pub qv: usize,
    pub value: usize,
}

#[derive(Debug, Clone)]
pub struct DirectResult {
    pub state: QState,
    pub live: Vec<usize>,
    pub measurements: Vec<LogicalMeasurement>,
}

/// Apply the circuit gate by gate to `init`.
pub fn simulate_direct(circuit: &Circuit, init: &QState, source: &mut OutcomeSource) -> Result<DirectResult> {
    if init.dims().dims() != vec![circuit.d; circuit.n].as_slice() {
        return Err(QvError::DimensionMismatch("initial state does not match circuit".into()));
    }
    let mut labels = Labels::new(circuit.n);
    let mut state = init.clone();
    let mut measurements = Vec::new();
    for op in &circuit.ops {
        match op {
            LogicalOp::Gate(g) => {
                let pos: Vec<usize> =
                    g.targets().iter().map(|&t| labels.position(t)).collect::<Result<_>>()?;
                state = state.apply(&g.matrix(circuit.d), &pos)?;
            }
            LogicalOp::Measure(t) => {
                let p = labels.remove(*t)?;
                let (m, post) = measure_x(&state, p, source.next_outcome())?;
                state = post;
                measurements.push(LogicalMeasurement { qv: *t, value: m });
            }
        }
    }
    Ok(DirectResult { state, live: labels.live, measurements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::DimSpec;

    #[test]
    fn rejects_bad_ops() {
        let mut c = Circuit::new(3, 2).unwrap();
        assert!(c.push_gate(LogicalGate::F { t: 2 }).is_err());
        assert!(c.push_gate(LogicalGate::Cz { a: 1, b: 1 }).is_err());
        let short = PhaseFunction::new(vec![0.0, 1.0]).unwrap();
        assert!(c.push_gate(LogicalGate::R { t: 0, theta: short }).is_err());
        c.push_measure(0).unwrap();
        assert!(c.push_gate(LogicalGate::F { t: 0 }).is_err());
        assert!(c.push_measure(0).is_err());
    }

    #[test]
    fn direct_run_measures_and_relabels() {
        let mut c = Circuit::new(2, 2).unwrap();
        c.push_gate(LogicalGate::X { q: 1, t: 1 }).unwrap();
        c.push_measure(0).unwrap();
        c.push_measure(1).unwrap();
        let init = QState::basis(DimSpec::uniform(2, 2).unwrap(), &[0, 0]).unwrap();
        let out = simulate_direct(&c, &init, &mut OutcomeSource::seeded(0)).unwrap();
        assert_eq!(out.measurements, vec![
            LogicalMeasurement { qv: 0, value: 0 },
            LogicalMeasurement { qv: 1, value: 1 }
        ]);
        assert_eq!(out.state.num_subsystems(), 0);
        assert!(out.live.is_empty());
    }
}
