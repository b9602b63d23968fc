//! Circuit files, execution in the three modes, oracle comparison and JSON
//! result documents.

mod parse;

pub use parse::{parse_circuit, serialize_circuit, CircuitFile, InitQv};

use serde::Serialize;
use thiserror::Error;

use crate::adqc::{compile_logical, run, schedule_layers, Interaction, LayerReport, RunMode};
use crate::circuit::{simulate_direct, Circuit, LogicalGate, LogicalMeasurement, LogicalOp};
use crate::error::QvError;
use crate::gates;
use crate::measure::{measure_x, MeasurementRecord, OutcomeSource};
use crate::mincontrol::{self, MinControlSpec};
use crate::state::{fidelity, QState};

/// Fidelity below `1 − COMPARE_TOL` counts as a failed comparison.
pub const COMPARE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Sim(#[from] QvError),
}

impl HarnessError {
    /// 2 for parse errors, 3 for numerical invariant violations, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Parse { .. } => 2,
            HarnessError::Sim(QvError::Numerical(_) | QvError::NotNormalized(_)) => 3,
            HarnessError::Sim(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Direct,
    Adqc,
    MinControl,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Direct => "direct",
            Mode::Adqc => "adqc",
            Mode::MinControl => "mincontrol",
        }
    }
}

/// Which fixed interaction the minimal-control mode uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum McSpecChoice {
    /// `cz` when the circuit has a CZ gate, `universal` otherwise.
    #[default]
    Auto,
    Universal,
    Cz,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub compare: bool,
    /// Overrides the file's `seed`.
    pub seed: Option<u64>,
    /// Overrides the file's `force`.
    pub force: Option<Vec<usize>>,
    /// Seed of the random minimal-control spec; defaults to the run seed.
    pub spec_seed: Option<u64>,
    pub mc_spec: McSpecChoice,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameDoc {
    pub qv: usize,
    pub x: usize,
    pub z: usize,
}

/// Everything a run reports. Amplitudes are over the unmeasured QVs listed
/// in `qvs`, first QV most significant, frame-corrected in `adqc` mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultDocument {
    pub mode: &'static str,
    pub d: usize,
    pub qvs: Vec<usize>,
    pub seed: u64,
    pub forced: Vec<usize>,
    pub variant: Option<String>,
    pub spec: Option<String>,
    pub amplitudes: Vec<[f64; 2]>,
    pub frame: Vec<FrameDoc>,
    pub measurements: Vec<LogicalMeasurement>,
    pub ancilla_log: Vec<MeasurementRecord>,
    pub layers: Option<LayerReport>,
    pub interactions: Option<usize>,
    pub fidelity: Option<f64>,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// False only when a comparison ran and fell short.
    pub fn compare_ok(&self) -> bool {
        self.fidelity.is_none_or(|f| f > 1.0 - COMPARE_TOL)
    }
}

/// Round to 15 significant digits, with −0 printed as 0.
fn round15(x: f64) -> f64 {
    let r: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn variant_name(v: Interaction) -> String {
    match v {
        Interaction::E => "E".into(),
        Interaction::CheckE => "checkE".into(),
        Interaction::Hybrid { d_a } => format!("hybrid:{d_a}"),
    }
}

pub fn initial_state(file: &CircuitFile) -> Result<QState, HarnessError> {
    let d = file.circuit.d();
    let parts = file
        .init
        .iter()
        .map(|q| match *q {
            InitQv::Basis(q) => QState::basis(crate::state::DimSpec::new(vec![d])?, &[q]),
            InitQv::Plus(q) => QState::plus(d, q),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QState::product(&parts)?)
}

/// Compiled ADQC layer count, adaptive-measurement count and resources.
pub fn report_layers(file: &CircuitFile) -> Result<LayerReport, HarnessError> {
    Ok(schedule_layers(&compile_logical(&file.circuit, file.variant)?))
}

struct ModeOutput {
    state: QState,
    live: Vec<usize>,
    measurements: Vec<LogicalMeasurement>,
    frame: Vec<FrameDoc>,
    log: Vec<MeasurementRecord>,
    layers: Option<LayerReport>,
    interactions: Option<usize>,
    spec: Option<String>,
}

fn run_direct(circuit: &Circuit, init: &QState, source: &mut OutcomeSource) -> Result<ModeOutput, HarnessError> {
    let out = simulate_direct(circuit, init, source)?;
    Ok(ModeOutput {
        state: out.state,
        live: out.live,
        measurements: out.measurements,
        frame: Vec::new(),
        log: Vec::new(),
        layers: None,
        interactions: None,
        spec: None,
    })
}

fn run_adqc(file: &CircuitFile, init: &QState, source: &mut OutcomeSource) -> Result<ModeOutput, HarnessError> {
    let program = compile_logical(&file.circuit, file.variant)?;
    let out = run(&program, init, source, RunMode::Deterministic)?;
    let state = out.corrected_state()?;
    let frame = out
        .live
        .iter()
        .enumerate()
        .map(|(k, &qv)| FrameDoc { qv, x: out.frame.x(k), z: out.frame.z(k) })
        .collect();
    Ok(ModeOutput {
        state,
        live: out.live,
        measurements: out.measurements,
        frame,
        log: out.log,
        layers: Some(out.report),
        interactions: None,
        spec: None,
    })
}

fn mc_spec(file: &CircuitFile, choice: McSpecChoice, spec_seed: u64) -> Result<(MinControlSpec, String), HarnessError> {
    let d = file.circuit.d();
    let cz = match choice {
        McSpecChoice::Auto => file.circuit.has_cz(),
        McSpecChoice::Cz => true,
        McSpecChoice::Universal => false,
    };
    if cz {
        Ok((mincontrol::cz_spec(d)?, "cz".into()))
    } else {
        Ok((mincontrol::universal_spec(d, spec_seed)?, format!("universal:{spec_seed}")))
    }
}

/// Reorder subsystems so the labels in `live` are increasing.
fn sort_labels(mut state: QState, live: &mut [usize]) -> Result<QState, HarnessError> {
    for i in 0..live.len() {
        let j = (i..live.len()).min_by_key(|&j| live[j]).expect("non-empty range");
        if j != i {
            let d = state.dims().dim(i);
            state = state.apply(&gates::swap(d), &[i, j])?;
            live.swap(i, j);
        }
    }
    Ok(state)
}

fn run_mincontrol(
    file: &CircuitFile,
    init: &QState,
    source: &mut OutcomeSource,
    opts: &RunOptions,
    seed: u64,
) -> Result<ModeOutput, HarnessError> {
    if matches!(file.variant, Interaction::Hybrid { .. }) {
        return Err(QvError::Unsupported("hybrid ancillas have no minimal-control counterpart".into()).into());
    }
    let c = &file.circuit;
    let d = c.d();
    let (spec, name) = mc_spec(file, opts.mc_spec, opts.spec_seed.unwrap_or(seed))?;
    if c.has_cz() && name != "cz" {
        return Err(QvError::Unsupported("CZ needs the cz interaction spec in minimal-control mode".into()).into());
    }
    let s0_is_f = mincontrol::s_matrix(&spec, 0)?.approx_eq(&gates::fourier(d), 1e-12);
    let mut state = init.clone();
    let mut live: Vec<usize> = (0..c.n()).collect();
    let mut measurements = Vec::new();
    let mut interactions = 0;
    let pos = |live: &[usize], t: usize| {
        live.iter().position(|&l| l == t).ok_or(QvError::NoSuchSubsystem { index: t, len: live.len() })
    };
    for op in c.ops() {
        match op {
            LogicalOp::Gate(LogicalGate::F { t }) if s0_is_f => {
                state = mincontrol::mc_local(&state, pos(&live, *t)?, 0, &spec)?;
                interactions += 2;
            }
            LogicalOp::Gate(LogicalGate::Cz { a, b }) => {
                // CZ = SWAP · F†_a · W_ab · F†_a, the SWAP done by relabelling
                let (pa, pb) = (pos(&live, *a)?, pos(&live, *b)?);
                for _ in 0..3 {
                    state = mincontrol::mc_local(&state, pa, 0, &spec)?;
                }
                state = mincontrol::mc_entangle(&state, pa, pb, &spec)?;
                for _ in 0..3 {
                    state = mincontrol::mc_local(&state, pa, 0, &spec)?;
                }
                live.swap(pa, pb);
                interactions += 15;
            }
            LogicalOp::Gate(g) => {
                let p = pos(&live, g.targets()[0])?;
                state = mincontrol::mc_ancilla_controlled(&state, p, &g.matrix(d), &spec)?;
                interactions += 2;
            }
            LogicalOp::Measure(t) => {
                let p = pos(&live, *t)?;
                let (m, post) = measure_x(&state, p, source.next_outcome())?;
                state = post;
                live.remove(p);
                measurements.push(LogicalMeasurement { qv: *t, value: m });
            }
        }
    }
    let state = sort_labels(state, &mut live)?;
    Ok(ModeOutput {
        state,
        live,
        measurements,
        frame: Vec::new(),
        log: Vec::new(),
        layers: None,
        interactions: Some(interactions),
        spec: Some(name),
    })
}

/// Run `file` in `mode`. With `compare`, the direct oracle is rerun with
/// the register outcomes this mode produced and the fidelity is reported.
pub fn run_mode(file: &CircuitFile, mode: Mode, opts: &RunOptions) -> Result<ResultDocument, HarnessError> {
    let seed = opts.seed.or(file.seed).unwrap_or(0);
    let forced = opts.force.clone().unwrap_or_else(|| file.force.clone());
    let init = initial_state(file)?;
    let mut source = OutcomeSource::with_forced(seed, forced.iter().copied());
    let out = match mode {
        Mode::Direct => run_direct(&file.circuit, &init, &mut source)?,
        Mode::Adqc => run_adqc(file, &init, &mut source)?,
        Mode::MinControl => run_mincontrol(file, &init, &mut source, opts, seed)?,
    };
    let norm = out.state.norm_sqr();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(QvError::NotNormalized(norm).into());
    }
    let fidelity = if opts.compare {
        let values: Vec<usize> = out.measurements.iter().map(|m| m.value).collect();
        let oracle = simulate_direct(&file.circuit, &init, &mut OutcomeSource::with_forced(seed, values))?;
        if oracle.live != out.live {
            return Err(QvError::Numerical(format!("oracle keeps QVs {:?}, run keeps {:?}", oracle.live, out.live)).into());
        }
        let f = fidelity(&oracle.state, &out.state)?;
        if !(0.0..=1.0 + 1e-12).contains(&f) {
            return Err(QvError::Numerical(format!("fidelity {f} outside [0, 1]")).into());
        }
        Some(round15(f))
    } else {
        None
    };
    Ok(ResultDocument {
        mode: mode.name(),
        d: file.circuit.d(),
        qvs: out.live,
        seed,
        forced,
        variant: (mode == Mode::Adqc).then(|| variant_name(file.variant)),
        spec: out.spec,
        amplitudes: out.state.amplitudes().iter().map(|a| [round15(a.re), round15(a.im)]).collect(),
        frame: out.frame,
        measurements: out.measurements,
        ancilla_log: out.log,
        layers: out.layers,
        interactions: out.interactions,
        fidelity,
    })
}
