//! Single protocol steps: attach a fresh `|+_0⟩` ancilla, let it interact
//! with one or two register QVs, rotate it and measure x̂.

use num_complex::Complex64;

use super::Interaction;
use crate::error::{QvError, Result};
use crate::frame::PauliFrame;
use crate::gate::Gate;
use crate::gates::{self, PhaseFunction};
use crate::measure::{choose, outcome_probabilities, Outcome};
use crate::state::QState;

/// Register state after one step, with the ancilla outcome and the exact
/// Born distribution it was drawn from.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub state: QState,
    pub m: usize,
    pub forced: bool,
    pub probabilities: Vec<f64>,
}

pub fn ancilla_dim(interaction: Interaction, d: usize) -> usize {
    match interaction {
        Interaction::Hybrid { d_a } => d_a,
        _ => d,
    }
}

/// The two-QV interaction on (register, ancilla).
pub fn build_interaction(interaction: Interaction, d: usize) -> Result<Gate> {
    if d < 2 {
        return Err(QvError::InvalidDimension(d));
    }
    match interaction {
        Interaction::E => gates::fourier(d).kron(&gates::fourier_dagger(d))?.mul(&gates::cz(d, d)),
        Interaction::CheckE => {
            gates::identity(d).kron(&gates::fourier(d))?.mul(&gates::swap(d))?.mul(&gates::cz(d, d))
        }
        Interaction::Hybrid { d_a } => {
            if d_a < 2 {
                return Err(QvError::InvalidDimension(d_a));
            }
            gates::fourier(d).kron(&gates::fourier_dagger(d_a))?.mul(&gates::cz(d, d_a))
        }
    }
}

/// Append an ancilla, interact with each of `partners` in order, apply
/// `rotation` to the ancilla and measure it in the computational basis.
fn drive(
    state: &QState,
    interaction: Interaction,
    partners: &[usize],
    rotation: Option<&Gate>,
    how: Outcome<'_>,
) -> Result<StepOutcome> {
    for &p in partners {
        state.dims().check_index(p)?;
    }
    let d = state.dims().dim(partners[0]);
    let d_a = ancilla_dim(interaction, d);
    let e = build_interaction(interaction, d)?;
    let a = state.num_subsystems();
    let mut joint = state.tensor(&QState::plus(d_a, 0)?)?;
    for &p in partners {
        joint = joint.apply(&e, &[p, a])?;
    }
    if let Some(u) = rotation {
        joint = joint.apply(u, &[a])?;
    }
    let probabilities = outcome_probabilities(&joint, a)?;
    let (m, forced) = choose(&probabilities, how)?;
    let mut e_m = vec![Complex64::new(0.0, 0.0); d_a];
    e_m[m] = Complex64::new(1.0, 0.0);
    let (post, _) = joint.contract(a, &e_m)?;
    Ok(StepOutcome { state: post, m, forced, probabilities })
}

fn local_rotation(interaction: Interaction, theta: &PhaseFunction) -> Result<Gate> {
    let da = theta.d();
    let fr = gates::fourier(da).mul(&gates::rotation(theta))?;
    match interaction {
        Interaction::CheckE => fr.mul(&gates::fourier_dagger(da)),
        _ => Ok(fr),
    }
}

/// Entangling step without frame bookkeeping.
pub fn raw_entangle(state: &QState, r: usize, s: usize, interaction: Interaction, how: Outcome<'_>) -> Result<StepOutcome> {
    if r == s {
        return Err(QvError::DuplicateTarget(r));
    }
    state.dims().check_index(r)?;
    state.dims().check_index(s)?;
    if state.dims().dim(r) != state.dims().dim(s) {
        return Err(QvError::DimensionMismatch("entangling QVs of different dimension".into()));
    }
    drive(state, interaction, &[r, s], None, how)
}

/// Single-QV step measuring the ancilla in the `FR(ϑ)` basis (or
/// `FR(ϑ)F†` for the swap-based interaction). `theta` lives on the ancilla.
pub fn raw_local(state: &QState, r: usize, theta: &PhaseFunction, interaction: Interaction, how: Outcome<'_>) -> Result<StepOutcome> {
    state.dims().check_index(r)?;
    let d_a = ancilla_dim(interaction, state.dims().dim(r));
    if theta.d() != d_a {
        return Err(QvError::DimensionMismatch(format!(
            "phase table of length {} for an ancilla of dimension {d_a}",
            theta.d()
        )));
    }
    let u = local_rotation(interaction, theta)?;
    drive(state, interaction, &[r], Some(&u), how)
}

/// x̂ measurement of register QV `r` through an ancilla; `r` is removed.
pub fn raw_measure_x(state: &QState, r: usize, interaction: Interaction, how: Outcome<'_>) -> Result<StepOutcome> {
    state.dims().check_index(r)?;
    let d = state.dims().dim(r);
    let rotation = match interaction {
        Interaction::Hybrid { d_a } if d_a < d => {
            return Err(QvError::Unsupported(format!(
                "x̂ measurement through an ancilla of dimension {d_a} < {d} only reads q mod {d_a}"
            )))
        }
        Interaction::CheckE => Some(gates::fourier_dagger(d)),
        _ => None,
    };
    let out = drive(state, interaction, &[r], rotation.as_ref(), how)?;
    // the register QV is left in |+_m⟩, a product factor
    let plus = QState::plus(d, out.m)?;
    let (rest, weight) = out.state.contract(r, plus.amplitudes())?;
    if (weight - 1.0).abs() > 1e-9 {
        return Err(QvError::Numerical(format!("measured register QV not in |+_m⟩ (weight {weight})")));
    }
    Ok(StepOutcome { state: rest, ..out })
}

/// Entangling step with `E`: the register gains `X_r(m)·F_rF_s·CZ`.
pub fn protocol_entangle(state: &QState, r: usize, s: usize, how: Outcome<'_>) -> Result<StepOutcome> {
    raw_entangle(state, r, s, Interaction::E, how)
}

/// Local step with `E`. The register gains `X_r(−m)F_rR_r(ϑ')` where
/// `ϑ' = ϑ` or, when adaptive, `ϑ'(q) = ϑ(q − x_r)` so that the logical
/// action is `FR(ϑ)` in the updated frame.
pub fn protocol_local(
    state: &QState,
    r: usize,
    theta: &PhaseFunction,
    frame: &PauliFrame,
    adaptive: bool,
    how: Outcome<'_>,
) -> Result<(StepOutcome, PauliFrame)> {
    let used = if adaptive { adapt(theta, frame, r)? } else { theta.clone() };
    let out = raw_local(state, r, &used, Interaction::E, how)?;
    let next = frame.update_fr(r, out.m)?;
    Ok((out, next))
}

/// The table to measure so that `R(ϑ)` passes through the frame error
/// `X(x_r)` unchanged.
pub(crate) fn adapt(theta: &PhaseFunction, frame: &PauliFrame, r: usize) -> Result<PhaseFunction> {
    if r >= frame.len() {
        return Err(QvError::NoSuchSubsystem { index: r, len: frame.len() });
    }
    let n = theta.d();
    let x = frame.x(r) % n;
    Ok(theta.shifted((n - x) % n))
}

pub fn protocol_measure_x(state: &QState, r: usize, how: Outcome<'_>) -> Result<StepOutcome> {
    raw_measure_x(state, r, Interaction::E, how)
}

/// Entangling step with `E′`: the register gains `u_r(m)·F_rF_s·CZ_{d_a}`.
pub fn protocol_entangle_hybrid(state: &QState, r: usize, s: usize, d_a: usize, how: Outcome<'_>) -> Result<StepOutcome> {
    raw_entangle(state, r, s, Interaction::Hybrid { d_a }, how)
}

/// Local step with `E′`: the register gains `u_r(−m)·F_r·R_r(ϑ̄)` with
/// `ϑ̄(q) = ϑ(q mod d_a)`.
pub fn protocol_local_hybrid(state: &QState, r: usize, theta: &PhaseFunction, how: Outcome<'_>) -> Result<StepOutcome> {
    raw_local(state, r, theta, Interaction::Hybrid { d_a: theta.d() }, how)
}

/// Entangling step with `Ě`: the register gains `X_r(m)X_s(−m)·F_rF_s·C^r_sX`.
pub fn protocol_entangle_checke(state: &QState, r: usize, s: usize, how: Outcome<'_>) -> Result<StepOutcome> {
    raw_entangle(state, r, s, Interaction::CheckE, how)
}

/// Local step with `Ě`, measuring `x̂_{FR(ϑ)F†}`: the register gains `X_r(−m)F_rR_r(ϑ)`.
pub fn protocol_local_checke(state: &QState, r: usize, theta: &PhaseFunction, how: Outcome<'_>) -> Result<StepOutcome> {
    raw_local(state, r, theta, Interaction::CheckE, how)
}
