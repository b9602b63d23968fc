//! Globally unitary minimal control: ancillas prepared in computational
//! basis states interact with the register through the fixed gate
//! `Ê(u, φ) = u_a · SWAP · D_ra(φ)`, and the preparation label selects the
//! gate that is applied.

mod schmidt;
mod synthesis;

pub use schmidt::{is_product_unitary, operator_schmidt_values};
pub use synthesis::{haar_unitary, phase_invariant_distance, universality_witness, SynthesisConfig, SynthesisReport};

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{QvError, Result};
use crate::gate::Gate;
use crate::gates::{self, PhaseFunction, TwoPhaseFunction};
use crate::ring::angle_mod_2pi_distance;
use crate::state::{DimSpec, QState};

/// Parameters `(u, φ)` of the fixed interaction.
#[derive(Debug, Clone, PartialEq)]
pub struct MinControlSpec {
    d: usize,
    u: Gate,
    phi: TwoPhaseFunction,
}

impl MinControlSpec {
    pub fn new(u: Gate, phi: TwoPhaseFunction) -> Result<Self> {
        if u.arity() != 1 {
            return Err(QvError::InvalidParameter("u must act on a single QV".into()));
        }
        let d = u.dims()[0];
        if phi.d() != d {
            return Err(QvError::DimensionMismatch(format!("u on dimension {d}, φ over Z({})", phi.d())));
        }
        Ok(Self { d, u, phi })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn u(&self) -> &Gate {
        &self.u
    }

    pub fn phi(&self) -> &TwoPhaseFunction {
        &self.phi
    }
}

/// `u = F` with φ nonzero only on the last column: `φ(q, d−1) = θ_q`,
/// `θ_0 = 0` and the other `θ_q` uniform on `[0, 2π)`.
pub fn universal_spec(d: usize, seed: u64) -> Result<MinControlSpec> {
    if d < 2 {
        return Err(QvError::InvalidDimension(d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut theta = vec![0.0; d];
    for t in theta.iter_mut().skip(1) {
        *t = rng.random::<f64>() * 2.0 * PI;
    }
    let phi = TwoPhaseFunction::from_fn(d, |q, qp| if qp == d - 1 { theta[q] } else { 0.0 })?;
    MinControlSpec::new(gates::fourier(d), phi)
}

/// `u = F`, `φ(q, q') = 2πqq'/d`: here `W = F_r·SWAP·CZ·F_r`, which gives CZ
/// exactly.
pub fn cz_spec(d: usize) -> Result<MinControlSpec> {
    if d < 2 {
        return Err(QvError::InvalidDimension(d));
    }
    MinControlSpec::new(gates::fourier(d), TwoPhaseFunction::cz(d))
}

/// `Ê_ar = u_a · SWAP · D_ra(φ)` on (register, ancilla).
pub fn build_e_hat(spec: &MinControlSpec) -> Gate {
    let d = spec.d;
    gates::identity(d)
        .kron(&spec.u)
        .and_then(|ua| ua.mul(&gates::swap(d)))
        .and_then(|g| g.mul(&gates::diag2(&spec.phi)))
        .expect("dimensions agree")
}

/// `s(q) = R(φ(q,·)) · u · R(φ(·,q))`.
pub fn s_matrix(spec: &MinControlSpec, q: usize) -> Result<Gate> {
    if q >= spec.d {
        return Err(QvError::LabelOutOfRange { label: q, dim: spec.d });
    }
    gates::rotation(&spec.phi.row(q)).mul(&spec.u)?.mul(&gates::rotation(&spec.phi.col(q)))
}

/// The register action of three interactions with one `|0⟩` ancilla:
/// `W = R_r(φ(0,·)) · u_r · SWAP · D_sr(φ) · u_r · R_r(φ(·,0))`, where
/// `D_sr` applies `e^{iφ(q_s, q_r)}`.
pub fn w_matrix(spec: &MinControlSpec) -> Gate {
    let d = spec.d;
    let id = gates::identity(d);
    let on_r = |g: &Gate| g.kron(&id).expect("single-QV");
    let d_sr = gates::diag2(&spec.phi).reversed();
    let pre = on_r(&spec.u.mul(&gates::rotation(&spec.phi.col(0))).expect("same d"));
    let post = on_r(&gates::rotation(&spec.phi.row(0)).mul(&spec.u).expect("same d"));
    post.mul(&gates::swap(d))
        .and_then(|g| g.mul(&d_sr))
        .and_then(|g| g.mul(&pre))
        .expect("dimensions agree")
}

/// True when some `φ(q,q) + φ(q',q') − φ(q,q') − φ(q',q) ≢ 0 (mod 2π)`.
pub fn entangling_condition(phi: &TwoPhaseFunction) -> bool {
    let d = phi.d();
    (0..d).any(|q| {
        (0..d).any(|qp| {
            let v = phi.get(q, q) + phi.get(qp, qp) - phi.get(q, qp) - phi.get(qp, q);
            angle_mod_2pi_distance(v) > 1e-9
        })
    })
}

fn check_register(state: &QState, spec: &MinControlSpec, r: usize) -> Result<()> {
    state.dims().check_index(r)?;
    if state.dims().dim(r) != spec.d {
        return Err(QvError::DimensionMismatch(format!(
            "QV {r} has dimension {}, spec is for {}",
            state.dims().dim(r),
            spec.d
        )));
    }
    Ok(())
}

/// Remove the ancilla (last subsystem) after checking it is in `expected`.
fn release(state: &QState, expected: &[Complex64]) -> Result<QState> {
    let a = state.num_subsystems() - 1;
    let (rest, weight) = state.contract(a, expected)?;
    if (weight - 1.0).abs() > 1e-9 {
        return Err(QvError::Numerical(format!("ancilla did not disentangle (overlap {weight})")));
    }
    Ok(rest)
}

fn with_ancilla(state: &QState, d: usize, q: usize) -> Result<QState> {
    state.tensor(&QState::basis(DimSpec::new(vec![d])?, &[q])?)
}

/// Two interactions with an ancilla prepared in `|q⟩` apply `s(q)` to QV `r`
/// and leave the ancilla in `u|q⟩`.
pub fn mc_local(state: &QState, r: usize, q: usize, spec: &MinControlSpec) -> Result<QState> {
    check_register(state, spec, r)?;
    if q >= spec.d {
        return Err(QvError::LabelOutOfRange { label: q, dim: spec.d });
    }
    let e = build_e_hat(spec);
    let mut s = with_ancilla(state, spec.d, q)?;
    let a = s.num_subsystems() - 1;
    s = s.apply(&e, &[r, a])?.apply(&e, &[r, a])?;
    release(&s, &spec.u.apply_vec(&unit(spec.d, q)))
}

/// Three interactions with a `|0⟩` ancilla apply `W` to `(r, s)`.
pub fn mc_entangle(state: &QState, r: usize, s: usize, spec: &MinControlSpec) -> Result<QState> {
    check_register(state, spec, r)?;
    check_register(state, spec, s)?;
    if r == s {
        return Err(QvError::DuplicateTarget(r));
    }
    let e = build_e_hat(spec);
    let mut st = with_ancilla(state, spec.d, 0)?;
    let a = st.num_subsystems() - 1;
    st = st.apply(&e, &[r, a])?.apply(&e, &[s, a])?.apply(&e, &[r, a])?;
    release(&st, &spec.u.apply_vec(&unit(spec.d, 0)))
}

/// The ancilla gate `v' = R(−φ(0,·)) · v · R(−φ(·,0)) · u†` that makes
/// `Ê_ar v'_a Ê_ar` act as `v` on the register.
pub fn ancilla_gate_for(v: &Gate, spec: &MinControlSpec) -> Result<Gate> {
    if v.dims() != [spec.d] {
        return Err(QvError::DimensionMismatch("v must be a single-QV gate of the spec dimension".into()));
    }
    gates::rotation(&spec.phi.row(0).negated())
        .mul(v)?
        .mul(&gates::rotation(&spec.phi.col(0).negated()))?
        .mul(&spec.u.dagger())
}

/// Apply an arbitrary single-QV `v` to QV `r` by acting on a `|0⟩` ancilla
/// between two interactions. The ancilla ends in `u|0⟩`.
pub fn mc_ancilla_controlled(state: &QState, r: usize, v: &Gate, spec: &MinControlSpec) -> Result<QState> {
    check_register(state, spec, r)?;
    let vp = ancilla_gate_for(v, spec)?;
    let e = build_e_hat(spec);
    let mut s = with_ancilla(state, spec.d, 0)?;
    let a = s.num_subsystems() - 1;
    s = s.apply(&e, &[r, a])?.apply(&vp, &[a])?.apply(&e, &[r, a])?;
    release(&s, &spec.u.apply_vec(&unit(spec.d, 0)))
}

/// `{s(0), …, s(d−1)}`.
pub fn s_gate_set(spec: &MinControlSpec) -> Vec<Gate> {
    (0..spec.d).map(|q| s_matrix(spec, q).expect("q < d")).collect()
}

/// Diagonal `u` with the given phases; a spec of this kind never
/// generates non-diagonal gates.
pub fn diagonal_u_spec(phases: &PhaseFunction, phi: TwoPhaseFunction) -> Result<MinControlSpec> {
    MinControlSpec::new(gates::rotation(phases), phi)
}

fn unit(d: usize, q: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); d];
    v[q] = Complex64::new(1.0, 0.0);
    v
}
