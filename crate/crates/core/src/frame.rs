//! Pauli-frame bookkeeping for step-wise determinism.
//!
//! The physical register is `⊗_k X(x_k)Z(z_k)|ψ⟩` up to global phase, where
//! `|ψ⟩` is the logical state. Each protocol step rewrites `(x, z)` with an
//! affine map mod `d_k`; the global phase is not tracked.

use serde::{Deserialize, Serialize};

use crate::error::{QvError, Result};
use crate::gate::Gate;
use crate::gates::{pauli_x, pauli_z};
use crate::pauli::PauliElement;
use crate::ring::reduce;
use crate::state::QState;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrameEntry {
    pub x: usize,
    pub z: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliFrame {
    dims: Vec<usize>,
    entries: Vec<FrameEntry>,
}

impl PauliFrame {
    pub fn new(dims: &[usize]) -> Self {
        Self {
            dims: dims.to_vec(),
            entries: vec![FrameEntry { x: 0, z: 0 }; dims.len()],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn entries(&self) -> &[FrameEntry] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.x == 0 && e.z == 0)
    }

    pub fn x(&self, k: usize) -> usize {
        self.entries[k].x
    }

    pub fn z(&self, k: usize) -> usize {
        self.entries[k].z
    }

    fn check(&self, k: usize) -> Result<()> {
        if k >= self.entries.len() {
            Err(QvError::NoSuchSubsystem { index: k, len: self.entries.len() })
        } else {
            Ok(())
        }
    }

    pub fn set(&mut self, k: usize, x: i64, z: i64) -> Result<()> {
        self.check(k)?;
        let d = self.dims[k];
        self.entries[k] = FrameEntry { x: reduce(x, d), z: reduce(z, d) };
        Ok(())
    }

    fn pair(&self, r: usize, s: usize) -> Result<(i64, i64, i64, i64)> {
        self.check(r)?;
        self.check(s)?;
        if r == s {
            return Err(QvError::DuplicateTarget(r));
        }
        if self.dims[r] != self.dims[s] {
            return Err(QvError::DimensionMismatch("entangling QVs of different dimension".into()));
        }
        Ok((self.x(r) as i64, self.z(r) as i64, self.x(s) as i64, self.z(s) as i64))
    }

    /// After `X_r(m)·F_rF_s·CZ`: `(x_r, x_s, z_r, z_s) ↦ (m − z_r − x_s, −z_s − x_r, x_r, x_s)`.
    pub fn update_entangle(&self, r: usize, s: usize, m: usize) -> Result<PauliFrame> {
        self.update_entangle_scaled(r, s, m, 1)
    }

    /// Hybrid entangler with ancilla dimension `d/k`: the register gains
    /// `X_r(km)·F_rF_s·CZ^k`.
    pub fn update_entangle_scaled(&self, r: usize, s: usize, m: usize, k: usize) -> Result<PauliFrame> {
        let (xr, zr, xs, zs) = self.pair(r, s)?;
        let (m, k) = (m as i64, k as i64);
        let mut out = self.clone();
        out.set(r, k * m - zr - k * xs, xr)?;
        out.set(s, -zs - k * xr, xs)?;
        Ok(out)
    }

    /// After the swap-based entangler `X_r(m)X_s(−m)·F_rF_s·C^r_sX`.
    pub fn update_entangle_swap(&self, r: usize, s: usize, m: usize) -> Result<PauliFrame> {
        let (xr, zr, xs, zs) = self.pair(r, s)?;
        let m = m as i64;
        let mut out = self.clone();
        out.set(r, m - zr + zs, xr)?;
        out.set(s, -m - zs, xs + xr)?;
        Ok(out)
    }

    /// After an (adapted) `X(−m)FR(ϑ)`: `(x, z) ↦ (−z − m, x)`.
    pub fn update_fr(&self, r: usize, m: usize) -> Result<PauliFrame> {
        self.update_fr_scaled(r, m, 1)
    }

    /// Hybrid local gate with error `X(−km)`.
    pub fn update_fr_scaled(&self, r: usize, m: usize, k: usize) -> Result<PauliFrame> {
        self.check(r)?;
        let (x, z) = (self.x(r) as i64, self.z(r) as i64);
        let mut out = self.clone();
        out.set(r, -z - (k * m) as i64, x)?;
        Ok(out)
    }

    /// After an unadapted `X(−m)FP(p)`: `(x, z) ↦ (−z − px − m, x)`.
    pub fn update_fp(&self, r: usize, p: usize, m: usize) -> Result<PauliFrame> {
        self.check(r)?;
        let (x, z) = (self.x(r) as i64, self.z(r) as i64);
        let mut out = self.clone();
        out.set(r, -z - p as i64 * x - m as i64, x)?;
        Ok(out)
    }

    /// Logical `X(q)Z(q')` done purely classically: `(x, z) ↦ (x − q, z − q')`.
    pub fn absorb_pauli(&self, r: usize, q: usize, qp: usize) -> Result<PauliFrame> {
        self.check(r)?;
        let (x, z) = (self.x(r) as i64, self.z(r) as i64);
        let mut out = self.clone();
        out.set(r, x - q as i64, z - qp as i64)?;
        Ok(out)
    }

    /// Drop the entry of a QV that has been measured out.
    pub fn remove(&self, k: usize) -> Result<PauliFrame> {
        self.check(k)?;
        let mut out = self.clone();
        out.dims.remove(k);
        out.entries.remove(k);
        Ok(out)
    }

    /// `X(x_k)Z(z_k)` on QV `k`.
    pub fn error_gate(&self, k: usize) -> Gate {
        let d = self.dims[k];
        pauli_x(d, self.x(k)).mul(&pauli_z(d, self.z(k))).expect("same dims")
    }

    /// Undo the frame: apply `(X(x_k)Z(z_k))^{-1}` to every QV.
    pub fn correct(&self, state: &QState) -> Result<QState> {
        if state.dims().dims() != self.dims.as_slice() {
            return Err(QvError::DimensionMismatch(format!(
                "frame over {:?} applied to state over {:?}",
                self.dims,
                state.dims().dims()
            )));
        }
        let mut out = state.clone();
        for k in 0..self.len() {
            if self.x(k) != 0 || self.z(k) != 0 {
                out = out.apply(&self.error_gate(k).dagger(), &[k])?;
            }
        }
        Ok(out)
    }

    /// Apply the frame as an error: `⊗ X(x_k)Z(z_k)`.
    pub fn impose(&self, state: &QState) -> Result<QState> {
        let mut out = state.clone();
        for k in 0..self.len() {
            if self.x(k) != 0 || self.z(k) != 0 {
                out = out.apply(&self.error_gate(k), &[k])?;
            }
        }
        Ok(out)
    }

    /// As a phase-free Pauli element, for uniform-dimension frames.
    pub fn to_pauli(&self) -> Result<PauliElement> {
        let d = *self.dims.first().unwrap_or(&2);
        if self.dims.iter().any(|&x| x != d) {
            return Err(QvError::Unsupported("Pauli element of a mixed-dimension frame".into()));
        }
        let mut v: Vec<i64> = self.entries.iter().map(|e| e.x as i64).collect();
        v.extend(self.entries.iter().map(|e| e.z as i64));
        PauliElement::new(d, 0, &v)
    }
}
