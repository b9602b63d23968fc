//! Symplectic representation of the generalized Pauli group.
//!
//! `p_{ξ,v} = τ^ξ X(v_1)Z(v_{n+1}) ⊗ … ⊗ X(v_n)Z(v_{2n})` with `τ = e^{iπ/d}`,
//! `ξ ∈ Z(2d)` and `v ∈ Z(d)^{2n}` ordered `(x_1..x_n, z_1..z_n)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QvError, Result};
use crate::gate::Gate;
use crate::gates::{pauli_x, pauli_z};
use crate::ring::{reduce, rho, tau_pow};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliElement {
    d: usize,
    xi: usize,
    vec: Vec<usize>,
}

/// Clifford generators that act on Pauli elements by conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliffordOp {
    F(usize),
    Fdag(usize),
    /// `P(p)` on a site.
    P { p: usize, site: usize },
    Cz(usize, usize),
    /// Controlled shift, control first.
    Cx(usize, usize),
    X { q: usize, site: usize },
    Z { q: usize, site: usize },
}

impl PauliElement {
    pub fn new(d: usize, xi: i64, vec: &[i64]) -> Result<Self> {
        if d < 2 {
            return Err(QvError::InvalidDimension(d));
        }
        if !vec.len().is_multiple_of(2) {
            return Err(QvError::InvalidParameter("Pauli vector needs even length".into()));
        }
        Ok(Self {
            d,
            xi: reduce(xi, 2 * d),
            vec: vec.iter().map(|&v| reduce(v, d)).collect(),
        })
    }

    pub fn identity(d: usize, n: usize) -> Self {
        Self { d, xi: 0, vec: vec![0; 2 * n] }
    }

    /// `X(x)Z(z)` on one site of an `n`-QV register.
    pub fn single(d: usize, n: usize, site: usize, x: usize, z: usize) -> Self {
        let mut p = Self::identity(d, n);
        p.vec[site] = x % d;
        p.vec[n + site] = z % d;
        p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.vec.len() / 2
    }

    pub fn xi(&self) -> usize {
        self.xi
    }

    pub fn vec(&self) -> &[usize] {
        &self.vec
    }

    pub fn x(&self, site: usize) -> usize {
        self.vec[site]
    }

    pub fn z(&self, site: usize) -> usize {
        self.vec[self.n() + site]
    }

    fn set(&mut self, site: usize, x: i64, z: i64) {
        let n = self.n();
        self.vec[site] = reduce(x, self.d);
        self.vec[n + site] = reduce(z, self.d);
    }

    fn add_xi(&mut self, k: i64) {
        self.xi = reduce(self.xi as i64 + k, 2 * self.d);
    }

    /// Operator product `self · other`.
    ///
    /// Moving each `Z(a_z)` of `self` past `X(b_x)` of `other` costs
    /// `ω^{a_z b_x}`, so `δ = Σ_k z_k(self) x_k(other)` and the phase gains
    /// `2δ` in units of `τ`.
    pub fn compose(&self, other: &PauliElement) -> Result<PauliElement> {
        if self.d != other.d || self.vec.len() != other.vec.len() {
            return Err(QvError::DimensionMismatch("Pauli elements of different shape".into()));
        }
        let n = self.n();
        let delta: i64 = (0..n).map(|k| (self.z(k) * other.x(k)) as i64).sum();
        let xi = self.xi as i64 + other.xi as i64 + 2 * delta;
        let vec: Vec<i64> = self.vec.iter().zip(&other.vec).map(|(a, b)| (a + b) as i64).collect();
        PauliElement::new(self.d, xi, &vec)
    }

    /// Inverse element.
    pub fn inverse(&self) -> PauliElement {
        // (τ^ξ X(x)Z(z))^{-1} = τ^{-ξ} Z(−z)X(−x) = τ^{-ξ+2xz} X(−x)Z(−z)
        let n = self.n();
        let cross: i64 = (0..n).map(|k| (self.x(k) * self.z(k)) as i64).sum();
        let vec: Vec<i64> = self.vec.iter().map(|&v| -(v as i64)).collect();
        PauliElement::new(self.d, -(self.xi as i64) + 2 * cross, &vec).expect("same shape")
    }

    /// Matrix for one or two sites.
    pub fn to_gate(&self) -> Result<Gate> {
        let n = self.n();
        if n == 0 || n > 2 {
            return Err(QvError::TooLarge(format!("Pauli matrix for {n} sites")));
        }
        let site = |k: usize| pauli_x(self.d, self.x(k)).mul(&pauli_z(self.d, self.z(k)));
        let mut g = site(0)?;
        if n == 2 {
            g = g.kron(&site(1)?)?;
        }
        let phase = tau_pow(self.d, self.xi as i64);
        let m: Vec<Complex64> = g.matrix().into_iter().map(|z| z * phase).collect();
        Gate::dense(g.dims().to_vec(), m)
    }

    /// `U p U†` for a Clifford generator `U`.
    pub fn conjugate(&self, op: CliffordOp) -> Result<PauliElement> {
        let n = self.n();
        let d = self.d;
        let check = |s: usize| {
            if s >= n {
                Err(QvError::NoSuchSubsystem { index: s, len: n })
            } else {
                Ok(())
            }
        };
        let mut out = self.clone();
        match op {
            CliffordOp::F(s) => {
                check(s)?;
                let (x, z) = (self.x(s) as i64, self.z(s) as i64);
                out.set(s, -z, x);
                out.add_xi(-2 * x * z);
            }
            CliffordOp::Fdag(s) => {
                check(s)?;
                out = out
                    .conjugate(CliffordOp::F(s))?
                    .conjugate(CliffordOp::F(s))?
                    .conjugate(CliffordOp::F(s))?;
            }
            CliffordOp::P { p, site } => {
                check(site)?;
                let (x, z) = (self.x(site) as i64, self.z(site) as i64);
                let p = p as i64;
                out.set(site, x, z + p * x);
                out.add_xi(p * x * (x + rho(d) as i64));
            }
            CliffordOp::Cz(a, b) => {
                check(a)?;
                check(b)?;
                if a == b {
                    return Err(QvError::DuplicateTarget(a));
                }
                let (xa, xb) = (self.x(a) as i64, self.x(b) as i64);
                out.set(a, xa, self.z(a) as i64 + xb);
                out.set(b, xb, self.z(b) as i64 + xa);
                out.add_xi(2 * xa * xb);
            }
            CliffordOp::Cx(c, t) => {
                check(c)?;
                check(t)?;
                if c == t {
                    return Err(QvError::DuplicateTarget(c));
                }
                let (xc, zc, xt, zt) =
                    (self.x(c) as i64, self.z(c) as i64, self.x(t) as i64, self.z(t) as i64);
                out.set(c, xc, zc - zt);
                out.set(t, xt + xc, zt);
            }
            CliffordOp::X { q, site } => {
                check(site)?;
                out.add_xi(-2 * (q * self.z(site)) as i64);
            }
            CliffordOp::Z { q, site } => {
                check(site)?;
                out.add_xi(2 * (q * self.x(site)) as i64);
            }
        }
        Ok(out)
    }
}

/// Find the Pauli element equal to `gate` up to global phase, if any.
/// Only single-QV and two-QV gates of uniform dimension are searched.
pub fn as_pauli(gate: &Gate, tol: f64) -> Option<PauliElement> {
    let d = gate.dims()[0];
    if gate.dims().iter().any(|&x| x != d) {
        return None;
    }
    let n = gate.arity();
    let count = d.pow(2 * n as u32);
    for code in 0..count {
        let mut c = code;
        let vec: Vec<i64> = (0..2 * n)
            .map(|_| {
                let v = c % d;
                c /= d;
                v as i64
            })
            .collect();
        let p = PauliElement::new(d, 0, &vec).expect("valid");
        let g = p.to_gate().expect("n <= 2");
        if g.approx_eq_up_to_phase(gate, tol) {
            // fix ξ from the overlap phase when it lands on a 2d-th root
            let m = g.matrix();
            let t = gate.matrix();
            let overlap: Complex64 = m.iter().zip(&t).map(|(a, b)| a.conj() * b).sum();
            let k = (overlap.arg() * d as f64 / std::f64::consts::PI).round() as i64;
            let with_phase = PauliElement::new(d, k, &vec).expect("valid");
            if with_phase.to_gate().expect("n <= 2").approx_eq(gate, tol) {
                return Some(with_phase);
            }
            return Some(p);
        }
    }
    None
}
