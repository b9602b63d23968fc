//! Unitary gates on one or two subsystems.
//!
//! A gate is stored either as a dense row-major matrix or in structured
//! form: a basis permutation with one phase per input basis state, so that
//! `|j⟩ ↦ phases[j] |perm[j]⟩`. Structured gates are applied without ever
//! materializing their matrix.

use num_complex::Complex64;

use crate::error::{QvError, Result};

/// Unitarity tolerance for gate construction.
pub const UNITARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum GateRepr {
    Dense(Vec<Complex64>),
    Structured { perm: Vec<usize>, phases: Vec<Complex64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    dims: Vec<usize>,
    repr: GateRepr,
}

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() || dims.len() > 2 {
        return Err(QvError::InvalidParameter(format!(
            "gates act on 1 or 2 subsystems, got {}",
            dims.len()
        )));
    }
    for &d in dims {
        if d < 2 {
            return Err(QvError::InvalidDimension(d));
        }
    }
    Ok(dims.iter().product())
}

impl Gate {
    /// Dense gate from a row-major matrix; rejects non-unitary input.
    pub fn dense(dims: impl Into<Vec<usize>>, matrix: Vec<Complex64>) -> Result<Self> {
        let dims = dims.into();
        let n = check_dims(&dims)?;
        if matrix.len() != n * n {
            return Err(QvError::DimensionMismatch(format!(
                "{} entries for a {n}x{n} matrix",
                matrix.len()
            )));
        }
        let gate = Self { dims, repr: GateRepr::Dense(matrix) };
        let dev = gate.unitarity_error();
        if dev > UNITARY_TOL {
            return Err(QvError::NotUnitary(dev));
        }
        Ok(gate)
    }

    pub fn structured(
        dims: impl Into<Vec<usize>>,
        perm: Vec<usize>,
        phases: Vec<Complex64>,
    ) -> Result<Self> {
        let dims = dims.into();
        let n = check_dims(&dims)?;
        if perm.len() != n || phases.len() != n {
            return Err(QvError::DimensionMismatch(format!(
                "structured gate of size {n} given {} targets and {} phases",
                perm.len(),
                phases.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(QvError::InvalidParameter("perm is not a permutation".into()));
            }
        }
        if let Some(bad) = phases.iter().find(|z| (z.norm() - 1.0).abs() > UNITARY_TOL) {
            return Err(QvError::NotUnitary((bad.norm() - 1.0).abs()));
        }
        Ok(Self { dims, repr: GateRepr::Structured { perm, phases } })
    }

    /// Diagonal gate from unit-modulus phases.
    pub fn diagonal(dims: impl Into<Vec<usize>>, phases: Vec<Complex64>) -> Result<Self> {
        let perm = (0..phases.len()).collect();
        Self::structured(dims, perm, phases)
    }

    /// Diagonal gate `|j⟩ ↦ e^{iθ_j}|j⟩`.
    pub fn from_angles(dims: impl Into<Vec<usize>>, angles: &[f64]) -> Result<Self> {
        Self::diagonal(dims, angles.iter().map(|&t| Complex64::from_polar(1.0, t)).collect())
    }

    pub fn identity(dims: impl Into<Vec<usize>>) -> Result<Self> {
        let dims = dims.into();
        let n = check_dims(&dims)?;
        Self::diagonal(dims, vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension of the space the gate acts on.
    pub fn size(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn repr(&self) -> &GateRepr {
        &self.repr
    }

    pub fn is_structured(&self) -> bool {
        matches!(self.repr, GateRepr::Structured { .. })
    }

    pub fn is_diagonal(&self) -> bool {
        match &self.repr {
            GateRepr::Structured { perm, .. } => perm.iter().enumerate().all(|(i, &p)| i == p),
            GateRepr::Dense(m) => {
                let n = self.size();
                (0..n).all(|i| (0..n).all(|j| i == j || m[i * n + j].norm() < 1e-12))
            }
        }
    }

    /// Row-major matrix.
    pub fn matrix(&self) -> Vec<Complex64> {
        match &self.repr {
            GateRepr::Dense(m) => m.clone(),
            GateRepr::Structured { perm, phases } => {
                let n = perm.len();
                let mut m = vec![Complex64::new(0.0, 0.0); n * n];
                for j in 0..n {
                    m[perm[j] * n + j] = phases[j];
                }
                m
            }
        }
    }

    /// Dense copy of this gate.
    pub fn to_dense(&self) -> Gate {
        Gate { dims: self.dims.clone(), repr: GateRepr::Dense(self.matrix()) }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        match &self.repr {
            GateRepr::Dense(m) => m[row * self.size() + col],
            GateRepr::Structured { perm, phases } => {
                if perm[col] == row {
                    phases[col]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
        }
    }

    pub fn dagger(&self) -> Gate {
        match &self.repr {
            GateRepr::Dense(m) => {
                let n = self.size();
                let mut out = vec![Complex64::new(0.0, 0.0); n * n];
                for i in 0..n {
                    for j in 0..n {
                        out[j * n + i] = m[i * n + j].conj();
                    }
                }
                Gate { dims: self.dims.clone(), repr: GateRepr::Dense(out) }
            }
            GateRepr::Structured { perm, phases } => {
                let n = perm.len();
                let mut inv = vec![0; n];
                let mut ph = vec![Complex64::new(0.0, 0.0); n];
                for j in 0..n {
                    inv[perm[j]] = j;
                    ph[perm[j]] = phases[j].conj();
                }
                Gate { dims: self.dims.clone(), repr: GateRepr::Structured { perm: inv, phases: ph } }
            }
        }
    }

    /// Operator product `self · rhs` (apply `rhs` first).
    pub fn mul(&self, rhs: &Gate) -> Result<Gate> {
        if self.dims != rhs.dims {
            return Err(QvError::DimensionMismatch(format!(
                "product of gates on {:?} and {:?}",
                self.dims, rhs.dims
            )));
        }
        let n = self.size();
        let repr = match (&self.repr, &rhs.repr) {
            (
                GateRepr::Structured { perm: pa, phases: fa },
                GateRepr::Structured { perm: pb, phases: fb },
            ) => GateRepr::Structured {
                perm: (0..n).map(|j| pa[pb[j]]).collect(),
                phases: (0..n).map(|j| fb[j] * fa[pb[j]]).collect(),
            },
            _ => {
                let a = self.matrix();
                let b = rhs.matrix();
                GateRepr::Dense(matmul(&a, &b, n))
            }
        };
        Ok(Gate { dims: self.dims.clone(), repr })
    }

    /// `self^k` for `k ≥ 0`.
    pub fn pow(&self, k: usize) -> Gate {
        let mut out = Gate::identity(self.dims.clone()).expect("dims already validated");
        for _ in 0..k {
            out = out.mul(self).expect("same dims");
        }
        out
    }

    /// Tensor product; `self` acts on the first (more significant) subsystem.
    pub fn kron(&self, rhs: &Gate) -> Result<Gate> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&rhs.dims);
        check_dims(&dims)?;
        let (na, nb) = (self.size(), rhs.size());
        let repr = match (&self.repr, &rhs.repr) {
            (
                GateRepr::Structured { perm: pa, phases: fa },
                GateRepr::Structured { perm: pb, phases: fb },
            ) => {
                let mut perm = Vec::with_capacity(na * nb);
                let mut phases = Vec::with_capacity(na * nb);
                for i in 0..na {
                    for j in 0..nb {
                        perm.push(pa[i] * nb + pb[j]);
                        phases.push(fa[i] * fb[j]);
                    }
                }
                GateRepr::Structured { perm, phases }
            }
            _ => {
                let (a, b) = (self.matrix(), rhs.matrix());
                let n = na * nb;
                let mut m = vec![Complex64::new(0.0, 0.0); n * n];
                for i in 0..na {
                    for j in 0..na {
                        let aij = a[i * na + j];
                        if aij == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        for k in 0..nb {
                            for l in 0..nb {
                                m[(i * nb + k) * n + (j * nb + l)] = aij * b[k * nb + l];
                            }
                        }
                    }
                }
                GateRepr::Dense(m)
            }
        };
        Ok(Gate { dims, repr })
    }

    /// Swap the two subsystems a two-subsystem gate acts on.
    pub fn reversed(&self) -> Gate {
        if self.arity() == 1 {
            return self.clone();
        }
        let (da, db) = (self.dims[0], self.dims[1]);
        let n = da * db;
        let swap_index = |i: usize| (i % db) * da + i / db;
        let m = self.matrix();
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                out[swap_index(i) * n + swap_index(j)] = m[i * n + j];
            }
        }
        Gate { dims: vec![db, da], repr: GateRepr::Dense(out) }
    }

    /// `max_{ij} |(U†U − I)_{ij}|`.
    pub fn unitarity_error(&self) -> f64 {
        match &self.repr {
            GateRepr::Structured { phases, .. } => {
                phases.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max)
            }
            GateRepr::Dense(m) => {
                let n = self.size();
                let mut worst: f64 = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        let mut s = Complex64::new(0.0, 0.0);
                        for k in 0..n {
                            s += m[k * n + i].conj() * m[k * n + j];
                        }
                        if i == j {
                            s -= 1.0;
                        }
                        worst = worst.max(s.norm());
                    }
                }
                worst
            }
        }
    }

    /// Action on a vector of length `size()`.
    pub fn apply_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.size();
        match &self.repr {
            GateRepr::Structured { perm, phases } => {
                let mut out = vec![Complex64::new(0.0, 0.0); n];
                for j in 0..n {
                    out[perm[j]] = phases[j] * v[j];
                }
                out
            }
            GateRepr::Dense(m) => {
                (0..n).map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum()).collect()
            }
        }
    }

    /// Largest entry-wise difference after removing the best global phase.
    pub fn distance_up_to_phase(&self, other: &Gate) -> f64 {
        if self.dims != other.dims {
            return f64::INFINITY;
        }
        let (a, b) = (self.matrix(), other.matrix());
        let overlap: Complex64 = a.iter().zip(&b).map(|(x, y)| x.conj() * y).sum();
        let phase = if overlap.norm() < 1e-300 {
            Complex64::new(1.0, 0.0)
        } else {
            (overlap / overlap.norm()).conj()
        };
        a.iter().zip(&b).map(|(x, y)| (x - y * phase).norm()).fold(0.0, f64::max)
    }

    /// Largest entry-wise difference, phase included.
    pub fn distance(&self, other: &Gate) -> f64 {
        if self.dims != other.dims {
            return f64::INFINITY;
        }
        self.matrix()
            .iter()
            .zip(other.matrix())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Gate, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    pub fn approx_eq_up_to_phase(&self, other: &Gate, tol: f64) -> bool {
        self.distance_up_to_phase(other) <= tol
    }
}

pub(crate) fn matmul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}
