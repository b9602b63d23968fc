//! Lowering of logical circuits to protocol steps.
//!
//! F is a local step with ϑ ≡ 0. Diagonal gates use `R(ϑ) = F³·FR(ϑ)`, and
//! `P(p)` is `p` rounds of `F³·FP(1)` so that Clifford programs only ever
//! measure x̂, x̂_F and x̂_{FP}. CZ is `(F³⊗F³)·F_rF_s·CZ` for `E`; for `Ě`
//! the entangler yields `F_rF_s·CX`, and `CZ = F_r³·(F_rF_s·CX)·F_s³`.

use super::{AdqcProgram, Interaction, Step};
use crate::circuit::{Circuit, LogicalGate, LogicalOp};
use crate::error::{QvError, Result};
use crate::gates::PhaseFunction;
use crate::ring::rho;

fn fourier_cube(prog: &mut AdqcProgram, r: usize, zero: &PhaseFunction) -> Result<()> {
    for _ in 0..3 {
        prog.push(Step::Local { r, theta: zero.clone(), adaptive: false })?;
    }
    Ok(())
}

/// The table over `Z(d_a)` whose periodic extension is `theta`, if any.
fn periodic_restriction(theta: &PhaseFunction, d_a: usize) -> Option<PhaseFunction> {
    let d = theta.d();
    if d_a >= d {
        return None;
    }
    let ok = (0..d).all(|q| {
        crate::ring::angle_mod_2pi_distance(theta.get(q) - theta.get(q % d_a)) < 1e-12
    });
    if !ok {
        return None;
    }
    PhaseFunction::new(theta.table()[..d_a].to_vec()).ok()
}

pub fn compile_logical(circuit: &Circuit, interaction: Interaction) -> Result<AdqcProgram> {
    let d = circuit.d();
    let k = match interaction.scale(d) {
        Some(k) => k,
        None => {
            return Err(QvError::Unsupported(format!(
                "hybrid ancilla dimension must divide d = {d} for deterministic compilation"
            )))
        }
    };
    let d_a = d / k;
    let mut prog = AdqcProgram::new(vec![d; circuit.n()], interaction)?;
    let zero = PhaseFunction::zero(d_a);
    // ancilla-side table for a register-side diagonal gate
    let local_table = |theta: &PhaseFunction, name: &str| -> Result<PhaseFunction> {
        if k == 1 {
            return Ok(theta.clone());
        }
        periodic_restriction(theta, d_a).ok_or_else(|| {
            QvError::Unsupported(format!("{name} is not {d_a}-periodic, so an ancilla of dimension {d_a} cannot drive it"))
        })
    };

    for op in circuit.ops() {
        let gate = match op {
            LogicalOp::Measure(t) => {
                prog.push(Step::MeasureX { r: *t })?;
                continue;
            }
            LogicalOp::Gate(g) => g,
        };
        match gate {
            LogicalGate::F { t } => prog.push(Step::Local { r: *t, theta: zero.clone(), adaptive: false })?,
            LogicalGate::X { q, t } => prog.push(Step::AbsorbPauli { r: *t, q: q % d, qp: 0 })?,
            LogicalGate::Z { q, t } => prog.push(Step::AbsorbPauli { r: *t, q: 0, qp: q % d })?,
            LogicalGate::P { p, t } => {
                if k != 1 {
                    let table = PhaseFunction::phase_gate(d, *p);
                    let theta = local_table(&table, "P")?;
                    prog.push(Step::Local { r: *t, adaptive: !theta.is_shift_invariant(), theta })?;
                    fourier_cube(&mut prog, *t, &zero)?;
                    continue;
                }
                let period = if rho(d) == 1 { d } else { 2 * d };
                for _ in 0..(p % period) {
                    prog.push(Step::LocalFP { r: *t, p: 1 })?;
                    fourier_cube(&mut prog, *t, &zero)?;
                }
            }
            LogicalGate::Cz { a, b } => {
                if k != 1 {
                    return Err(QvError::Unsupported(format!(
                        "a hybrid entangler with d/d_a = {k} yields CZ^{k}, which does not generate CZ"
                    )));
                }
                match interaction {
                    Interaction::CheckE => {
                        fourier_cube(&mut prog, *b, &zero)?;
                        prog.push(Step::Entangle { r: *a, s: *b })?;
                        fourier_cube(&mut prog, *a, &zero)?;
                    }
                    _ => {
                        prog.push(Step::Entangle { r: *a, s: *b })?;
                        fourier_cube(&mut prog, *a, &zero)?;
                        fourier_cube(&mut prog, *b, &zero)?;
                    }
                }
            }
            LogicalGate::R { t, .. } | LogicalGate::D3 { t, .. } => {
                let table = gate.phase_table(d).expect("diagonal gate");
                let theta = local_table(&table, gate.name())?;
                prog.push(Step::Local { r: *t, adaptive: !theta.is_shift_invariant(), theta })?;
                fourier_cube(&mut prog, *t, &zero)?;
            }
        }
    }
    Ok(prog)
}
