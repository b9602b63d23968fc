//! Named gates and observables.
//!
//! Everything diagonal or monomial (Paulis, phase gates, CZ, SWAP, rotations,
//! cubic phase, two-QV diagonals) is built in structured form. Only the
//! Fourier gate and gates derived from it are dense.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QvError, Result};
use crate::gate::Gate;
use crate::ring::{angle_mod_2pi_distance, is_prime, omega_pow, reduce, rho, tau_pow};

/// A phase function ϑ: Z(d) → ℝ, the parameter of `R(ϑ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseFunction {
    table: Vec<f64>,
}

impl PhaseFunction {
    pub fn new(table: Vec<f64>) -> Result<Self> {
        if table.len() < 2 {
            return Err(QvError::InvalidDimension(table.len()));
        }
        if table.iter().any(|t| !t.is_finite()) {
            return Err(QvError::InvalidParameter("phase table has non-finite entries".into()));
        }
        Ok(Self { table })
    }

    pub fn zero(d: usize) -> Self {
        Self { table: vec![0.0; d] }
    }

    pub fn d(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn get(&self, q: usize) -> f64 {
        self.table[q % self.table.len()]
    }

    /// ϑ_x(q) = ϑ(q + x).
    pub fn shifted(&self, x: usize) -> Self {
        let d = self.d();
        Self { table: (0..d).map(|q| self.table[(q + x) % d]).collect() }
    }

    pub fn negated(&self) -> Self {
        Self { table: self.table.iter().map(|t| -t).collect() }
    }

    /// Pointwise sum.
    pub fn plus(&self, other: &PhaseFunction) -> Result<Self> {
        if self.d() != other.d() {
            return Err(QvError::DimensionMismatch("phase functions of different length".into()));
        }
        Ok(Self { table: self.table.iter().zip(&other.table).map(|(a, b)| a + b).collect() })
    }

    /// True when every shift changes ϑ only by a constant mod 2π, so
    /// `R(ϑ_x)` equals `R(ϑ)` up to global phase and no adaptation is needed.
    pub fn is_shift_invariant(&self) -> bool {
        let d = self.d();
        (1..d).all(|x| {
            let c = self.table[x % d] - self.table[0];
            (0..d).all(|q| angle_mod_2pi_distance(self.table[(q + x) % d] - self.table[q] - c) < 1e-12)
        })
    }

    /// Table of the phase gate `P(p)`: ϑ(q) = π p q (q + ϱ_d) / d.
    pub fn phase_gate(d: usize, p: usize) -> Self {
        let r = rho(d);
        Self {
            table: (0..d)
                .map(|q| {
                    let k = reduce((p * q * (q + r)) as i64, 2 * d);
                    PI * k as f64 / d as f64
                })
                .collect(),
        }
    }
}

/// A two-argument phase function φ: Z(d)² → ℝ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoPhaseFunction {
    d: usize,
    table: Vec<f64>,
}

impl TwoPhaseFunction {
    /// Row-major table with `table[q * d + q'] = φ(q, q')`.
    pub fn new(d: usize, table: Vec<f64>) -> Result<Self> {
        if d < 2 {
            return Err(QvError::InvalidDimension(d));
        }
        if table.len() != d * d {
            return Err(QvError::DimensionMismatch(format!(
                "two-phase table of length {} for d = {d}",
                table.len()
            )));
        }
        if table.iter().any(|t| !t.is_finite()) {
            return Err(QvError::InvalidParameter("phase table has non-finite entries".into()));
        }
        Ok(Self { d, table })
    }

    pub fn from_fn(d: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        Self::new(d, (0..d * d).map(|i| f(i / d, i % d)).collect())
    }

    pub fn zero(d: usize) -> Self {
        Self { d, table: vec![0.0; d * d] }
    }

    /// φ(q, q') = 2π q q' / d, the phases of CZ.
    pub fn cz(d: usize) -> Self {
        Self::from_fn(d, |q, qp| 2.0 * PI * (q * qp % d) as f64 / d as f64).expect("valid d")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, q: usize, qp: usize) -> f64 {
        self.table[q * self.d + qp]
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    /// φ(q, ·).
    pub fn row(&self, q: usize) -> PhaseFunction {
        PhaseFunction { table: (0..self.d).map(|qp| self.get(q, qp)).collect() }
    }

    /// φ(·, q').
    pub fn col(&self, qp: usize) -> PhaseFunction {
        PhaseFunction { table: (0..self.d).map(|q| self.get(q, qp)).collect() }
    }
}

/// Constant `c` in the cubic phase gate `D₃(q')|q⟩ = ω^{q³q'/c}|q⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum CubicConstant {
    /// c = d³, a non-Clifford gate in every prime dimension.
    #[default]
    Cube,
    /// c = 1, non-Clifford only for prime d > 3.
    One,
}

impl CubicConstant {
    pub fn value(self, d: usize) -> usize {
        match self {
            CubicConstant::Cube => d * d * d,
            CubicConstant::One => 1,
        }
    }

    /// Whether this choice is a known non-Clifford gate in dimension d.
    pub fn is_non_clifford_for(self, d: usize) -> bool {
        match self {
            CubicConstant::Cube => is_prime(d),
            CubicConstant::One => is_prime(d) && d > 3,
        }
    }
}

pub fn identity(d: usize) -> Gate {
    Gate::identity(vec![d]).expect("d >= 2")
}

/// Fourier gate, `F|q⟩ = d^{-1/2} Σ ω^{qq'} |q'⟩`.
pub fn fourier(d: usize) -> Gate {
    let s = 1.0 / (d as f64).sqrt();
    let m = (0..d * d).map(|i| omega_pow(d, ((i / d) * (i % d)) as i64) * s).collect();
    Gate::dense(vec![d], m).expect("Fourier matrix is unitary")
}

pub fn fourier_dagger(d: usize) -> Gate {
    fourier(d).dagger()
}

/// `X(q)|j⟩ = |j + q⟩`.
pub fn pauli_x(d: usize, q: usize) -> Gate {
    let perm = (0..d).map(|j| (j + q) % d).collect();
    Gate::structured(vec![d], perm, vec![Complex64::new(1.0, 0.0); d]).expect("valid shift")
}

/// `Z(q)|j⟩ = ω^{qj}|j⟩`.
pub fn pauli_z(d: usize, q: usize) -> Gate {
    Gate::diagonal(vec![d], (0..d).map(|j| omega_pow(d, (q * j) as i64)).collect())
        .expect("unit phases")
}

/// `P(p)|q⟩ = τ^{pq(q+ϱ_d)}|q⟩` with `p ∈ Z(2d)`.
pub fn phase_gate(d: usize, p: usize) -> Gate {
    let r = rho(d);
    Gate::diagonal(vec![d], (0..d).map(|q| tau_pow(d, (p * q * (q + r)) as i64)).collect())
        .expect("unit phases")
}

/// Hybrid controlled-Z, `|q⟩_r|q'⟩_a ↦ e^{2πi qq'/d_a}|q⟩|q'⟩`. The phase
/// root is set by the target (second) dimension.
pub fn cz(d_r: usize, d_a: usize) -> Gate {
    let phases = (0..d_r * d_a)
        .map(|i| omega_pow(d_a, ((i / d_a) * (i % d_a)) as i64))
        .collect();
    Gate::diagonal(vec![d_r, d_a], phases).expect("unit phases")
}

/// `|q⟩|q'⟩ ↦ e^{2πi qq'/root}|q⟩|q'⟩` on dimensions `(d1, d2)`.
pub fn cz_with_root(d1: usize, d2: usize, root: usize) -> Gate {
    let phases = (0..d1 * d2).map(|i| omega_pow(root, ((i / d2) * (i % d2)) as i64)).collect();
    Gate::diagonal(vec![d1, d2], phases).expect("unit phases")
}

pub fn swap(d: usize) -> Gate {
    let perm = (0..d * d).map(|i| (i % d) * d + i / d).collect();
    Gate::structured(vec![d, d], perm, vec![Complex64::new(1.0, 0.0); d * d]).expect("valid swap")
}

/// `R(ϑ)|q⟩ = e^{iϑ(q)}|q⟩`.
pub fn rotation(theta: &PhaseFunction) -> Gate {
    Gate::from_angles(vec![theta.d()], theta.table()).expect("finite angles")
}

/// `D₃(q')|q⟩ = ω^{q³q'/c}|q⟩`.
pub fn cubic_phase(d: usize, qp: usize, c: CubicConstant) -> Gate {
    rotation(&cubic_phase_function(d, qp, c))
}

pub fn cubic_phase_function(d: usize, qp: usize, c: CubicConstant) -> PhaseFunction {
    let c = c.value(d) as f64;
    PhaseFunction {
        table: (0..d)
            .map(|q| 2.0 * PI * ((q * q * q * qp) as f64) / (c * d as f64))
            .collect(),
    }
}

/// `C_u: |q⟩_c|q'⟩_t ↦ |q⟩_c u^q|q'⟩_t` with a control of dimension `d_c`.
pub fn controlled_u(u: &Gate, d_c: usize) -> Result<Gate> {
    if u.arity() != 1 {
        return Err(QvError::InvalidParameter("controlled_u needs a single-QV u".into()));
    }
    if d_c < 2 {
        return Err(QvError::InvalidDimension(d_c));
    }
    // Σ_q |q⟩⟨q| ⊗ u^q, assembled block by block.
    let dt = u.dims()[0];
    if u.is_structured() {
        let mut perm = Vec::with_capacity(d_c * dt);
        let mut phases = Vec::with_capacity(d_c * dt);
        for q in 0..d_c {
            let uq = u.pow(q);
            for j in 0..dt {
                let col = uq.apply_vec(&unit(dt, j));
                let (row, ph) = col
                    .iter()
                    .enumerate()
                    .find(|(_, z)| z.norm() > 0.5)
                    .map(|(i, z)| (i, *z))
                    .expect("structured gate columns are monomial");
                perm.push(q * dt + row);
                phases.push(ph);
            }
        }
        return Gate::structured(vec![d_c, dt], perm, phases);
    }
    let n = d_c * dt;
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    for q in 0..d_c {
        let uq = u.pow(q).matrix();
        for i in 0..dt {
            for j in 0..dt {
                m[(q * dt + i) * n + q * dt + j] = uq[i * dt + j];
            }
        }
    }
    Gate::dense(vec![d_c, dt], m)
}

fn unit(n: usize, j: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[j] = Complex64::new(1.0, 0.0);
    v
}

/// Controlled shift `|q⟩|q'⟩ ↦ |q⟩|q' + q⟩`.
pub fn cx(d: usize) -> Gate {
    controlled_u(&pauli_x(d, 1), d).expect("valid")
}

/// `D(φ)|q⟩|q'⟩ = e^{iφ(q,q')}|q⟩|q'⟩`.
pub fn diag2(phi: &TwoPhaseFunction) -> Gate {
    Gate::from_angles(vec![phi.d(), phi.d()], phi.table()).expect("finite angles")
}

/// The hybrid error gate `u(k)` on a register of dimension `d`, defined by
/// `u(k)|+_q⟩ = e^{−2πi qk/d_a}|+_q⟩`.
pub fn hybrid_u(d: usize, d_a: usize, k: usize) -> Gate {
    let diag: Vec<f64> = (0..d)
        .map(|q| -2.0 * PI * (reduce((q * k) as i64, d_a)) as f64 / d_a as f64)
        .collect();
    let f = fourier(d);
    let dg = Gate::from_angles(vec![d], &diag).expect("finite");
    f.mul(&dg).and_then(|g| g.mul(&f.dagger())).expect("same dims")
}

/// Which observable an ancilla measurement used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "param")]
pub enum ObservableKind {
    /// x̂ (computational basis).
    X,
    /// p̂ = x̂_{F†} (conjugate basis).
    P,
    /// x̂_F.
    XF,
    /// x̂_{FP(p)}.
    XFP(usize),
    /// x̂_{FR(ϑ)} for a generic phase table.
    XFR(Vec<f64>),
    /// x̂_{FR(ϑ)F†}, used by the swap-based interaction.
    XFRFdag(Vec<f64>),
    /// Any other rotated observable.
    Custom(String),
}

/// A computational-basis measurement preceded by a basis change: measuring
/// this observable on `|ψ⟩` is measuring `x̂` on `basis_change|ψ⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    pub kind: ObservableKind,
    pub basis_change: Gate,
}

impl Observable {
    /// Eigenvalue label of outcome index `m`.
    pub fn eigenvalue(&self, m: usize) -> usize {
        m
    }
}

pub fn observable_x(d: usize) -> Observable {
    Observable { kind: ObservableKind::X, basis_change: identity(d) }
}

pub fn observable_p(d: usize) -> Observable {
    Observable { kind: ObservableKind::P, basis_change: fourier_dagger(d) }
}

/// x̂_U for an arbitrary single-QV `U`.
pub fn observable_xu(kind: ObservableKind, u: Gate) -> Observable {
    Observable { kind, basis_change: u }
}
