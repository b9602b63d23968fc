//! Dense state vectors over registers of mixed-dimension subsystems.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QvError, Result};
use crate::gate::Gate;
use crate::kernel;
use crate::ring::omega_pow;

/// Largest state vector the simulator will allocate (2^26 amplitudes).
pub const MAX_AMPLITUDES: usize = 1 << 26;

/// Norm tolerance enforced after every operation.
pub const NORM_TOL: f64 = 1e-9;

/// Subsystem dimensions of a register, most significant subsystem first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimSpec {
    dims: Vec<usize>,
}

impl DimSpec {
    pub fn new(dims: impl Into<Vec<usize>>) -> Result<Self> {
        let dims = dims.into();
        let mut total: usize = 1;
        for &d in &dims {
            if d < 2 {
                return Err(QvError::InvalidDimension(d));
            }
            total = total
                .checked_mul(d)
                .filter(|&t| t <= MAX_AMPLITUDES)
                .ok_or_else(|| QvError::TooLarge(format!("{dims:?}")))?;
        }
        Ok(Self { dims })
    }

    /// `n` subsystems of dimension `d`.
    pub fn uniform(d: usize, n: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    pub fn empty() -> Self {
        Self { dims: Vec::new() }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims[k]
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    /// Row-major strides: `stride(k)` is the index step of subsystem `k`.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    pub fn index_of(&self, labels: &[usize]) -> Result<usize> {
        if labels.len() != self.dims.len() {
            return Err(QvError::DimensionMismatch(format!(
                "{} labels for {} subsystems",
                labels.len(),
                self.dims.len()
            )));
        }
        let mut index = 0;
        for (&q, &d) in labels.iter().zip(&self.dims) {
            if q >= d {
                return Err(QvError::LabelOutOfRange { label: q, dim: d });
            }
            index = index * d + q;
        }
        Ok(index)
    }

    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            digits[k] = index % self.dims[k];
            index /= self.dims[k];
        }
        digits
    }

    pub fn without(&self, k: usize) -> Self {
        let mut dims = self.dims.clone();
        dims.remove(k);
        Self { dims }
    }

    pub fn check_index(&self, k: usize) -> Result<()> {
        if k >= self.dims.len() {
            Err(QvError::NoSuchSubsystem { index: k, len: self.dims.len() })
        } else {
            Ok(())
        }
    }
}

/// A normalized pure state. Values are never mutated in place; every
/// operation returns a new state.
#[derive(Debug, Clone, PartialEq)]
pub struct QState {
    dims: DimSpec,
    amps: Vec<Complex64>,
}

impl QState {
    pub fn from_amplitudes(dims: DimSpec, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != dims.total() {
            return Err(QvError::DimensionMismatch(format!(
                "{} amplitudes for total dimension {}",
                amps.len(),
                dims.total()
            )));
        }
        let state = Self { dims, amps };
        state.check_norm()?;
        Ok(state)
    }

    /// Build from amplitudes and rescale to unit norm.
    pub fn normalized(dims: DimSpec, amps: Vec<Complex64>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 || !norm.is_finite() {
            return Err(QvError::NotNormalized(norm * norm));
        }
        Self::from_amplitudes(dims, amps.into_iter().map(|a| a / norm).collect())
    }

    /// The zero-subsystem state, a single amplitude equal to one.
    pub fn scalar() -> Self {
        Self { dims: DimSpec::empty(), amps: vec![Complex64::new(1.0, 0.0)] }
    }

    pub fn basis(dims: DimSpec, labels: &[usize]) -> Result<Self> {
        let index = dims.index_of(labels)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { dims, amps })
    }

    /// Conjugate-basis state `|+_q⟩ = F|q⟩` with `⟨q'|+_q⟩ = ω^{qq'}/√d`.
    pub fn plus(d: usize, q: usize) -> Result<Self> {
        let dims = DimSpec::new(vec![d])?;
        if q >= d {
            return Err(QvError::LabelOutOfRange { label: q, dim: d });
        }
        let s = 1.0 / (d as f64).sqrt();
        let amps = (0..d).map(|qp| omega_pow(d, (q * qp) as i64) * s).collect();
        Ok(Self { dims, amps })
    }

    pub fn dims(&self) -> &DimSpec {
        &self.dims
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn check_norm(&self) -> Result<()> {
        let n = self.norm_sqr();
        if (n - 1.0).abs() > NORM_TOL {
            Err(QvError::NotNormalized(n))
        } else {
            Ok(())
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QState) -> Result<Complex64> {
        if self.dims != other.dims {
            return Err(QvError::DimensionMismatch(format!(
                "{:?} vs {:?}",
                self.dims.dims(),
                other.dims.dims()
            )));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// Tensor product `self ⊗ other`; `other`'s subsystems are appended.
    pub fn tensor(&self, other: &QState) -> Result<QState> {
        let mut dims = self.dims.dims().to_vec();
        dims.extend_from_slice(other.dims.dims());
        let dims = DimSpec::new(dims)?;
        let mut amps = Vec::with_capacity(dims.total());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(QState { dims, amps })
    }

    pub fn product(states: &[QState]) -> Result<QState> {
        states.iter().try_fold(QState::scalar(), |acc, s| acc.tensor(s))
    }

    /// Apply a one- or two-subsystem gate to the listed targets.
    pub fn apply(&self, gate: &Gate, targets: &[usize]) -> Result<QState> {
        self.check_targets(gate, targets)?;
        let amps = kernel::apply(&self.amps, self.dims.dims(), gate, targets);
        let out = QState { dims: self.dims.clone(), amps };
        out.check_norm()?;
        Ok(out)
    }

    pub(crate) fn check_targets(&self, gate: &Gate, targets: &[usize]) -> Result<()> {
        if targets.len() != gate.arity() {
            return Err(QvError::DimensionMismatch(format!(
                "gate of arity {} given {} targets",
                gate.arity(),
                targets.len()
            )));
        }
        for (i, &t) in targets.iter().enumerate() {
            self.dims.check_index(t)?;
            if targets[..i].contains(&t) {
                return Err(QvError::DuplicateTarget(t));
            }
            if self.dims.dim(t) != gate.dims()[i] {
                return Err(QvError::DimensionMismatch(format!(
                    "gate acts on dimension {} but subsystem {t} has dimension {}",
                    gate.dims()[i],
                    self.dims.dim(t)
                )));
            }
        }
        Ok(())
    }

    /// Project subsystem `target` onto `⟨phi|` and remove it. Returns the
    /// renormalized remainder and the squared norm of the projection.
    pub fn contract(&self, target: usize, phi: &[Complex64]) -> Result<(QState, f64)> {
        self.dims.check_index(target)?;
        let d = self.dims.dim(target);
        if phi.len() != d {
            return Err(QvError::DimensionMismatch(format!(
                "contraction vector of length {} on dimension {d}",
                phi.len()
            )));
        }
        let rest = self.dims.without(target);
        let stride = self.dims.strides()[target];
        let mut amps = vec![Complex64::new(0.0, 0.0); rest.total()];
        for (j, slot) in amps.iter_mut().enumerate() {
            let high = j / stride;
            let low = j % stride;
            let base = high * stride * d + low;
            *slot = (0..d).map(|q| phi[q].conj() * self.amps[base + q * stride]).sum();
        }
        let weight: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if weight < 1e-300 {
            return Err(QvError::ZeroProbability { outcome: 0, probability: weight });
        }
        let s = weight.sqrt();
        amps.iter_mut().for_each(|a| *a /= s);
        Ok((QState { dims: rest, amps }, weight))
    }

    /// Reduced density matrix of one subsystem, row-major `d x d`.
    pub fn reduced_density(&self, target: usize) -> Result<Vec<Complex64>> {
        self.dims.check_index(target)?;
        let d = self.dims.dim(target);
        let stride = self.dims.strides()[target];
        let outer = self.amps.len() / (stride * d);
        let mut rho = vec![Complex64::new(0.0, 0.0); d * d];
        for high in 0..outer {
            for low in 0..stride {
                let base = high * stride * d + low;
                for i in 0..d {
                    let ai = self.amps[base + i * stride];
                    for j in 0..d {
                        rho[i * d + j] += ai * self.amps[base + j * stride].conj();
                    }
                }
            }
        }
        Ok(rho)
    }

    /// `tr(ρ²)` of the reduced state of one subsystem.
    pub fn reduced_purity(&self, target: usize) -> Result<f64> {
        let rho = self.reduced_density(target)?;
        Ok(rho.iter().map(|z| z.norm_sqr()).sum())
    }
}

/// Global-phase-insensitive overlap `|⟨a|b⟩|²`.
pub fn fidelity(a: &QState, b: &QState) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr())
}
