//! Dense-matrix oracle built from first principles with nalgebra: explicit
//! matrices, Kronecker embedding by index arithmetic, and projective
//! measurement by slicing. Shares no numerical code with the library.

#![allow(dead_code)]

pub mod algebra;

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qvsim::circuit::{Circuit, LogicalGate, LogicalOp};
use qvsim::gates::{CubicConstant, PhaseFunction};
use qvsim::{DimSpec, QState};

pub type M = DMatrix<C>;
pub type V = DVector<C>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cis(theta: f64) -> C {
    C::from_polar(1.0, theta)
}

/// e^{2πi k/d}
pub fn w(d: usize, k: i64) -> C {
    cis(2.0 * PI * k as f64 / d as f64)
}

/// e^{iπ k/d}
pub fn tau(d: usize, k: i64) -> C {
    cis(PI * k as f64 / d as f64)
}

pub fn eye(n: usize) -> M {
    M::identity(n, n)
}

pub fn f(d: usize) -> M {
    let s = 1.0 / (d as f64).sqrt();
    M::from_fn(d, d, |i, j| w(d, (i * j) as i64) * s)
}

pub fn fd(d: usize) -> M {
    f(d).adjoint()
}

pub fn x(d: usize, q: usize) -> M {
    M::from_fn(d, d, |i, j| if i == (j + q) % d { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) })
}

pub fn z(d: usize, q: usize) -> M {
    M::from_fn(d, d, |i, j| if i == j { w(d, (q * j) as i64) } else { C::new(0.0, 0.0) })
}

pub fn diag(angles: &[f64]) -> M {
    M::from_diagonal(&V::from_iterator(angles.len(), angles.iter().map(|&a| cis(a))))
}

/// P(p)|q⟩ = τ^{p q (q + d mod 2)}|q⟩
pub fn p(d: usize, p: usize) -> M {
    let r = d % 2;
    M::from_fn(d, d, |i, j| if i == j { tau(d, (p * j * (j + r)) as i64) } else { C::new(0.0, 0.0) })
}

/// |a⟩|b⟩ ↦ e^{2πi ab/root}|a⟩|b⟩ on dims (d1, d2).
pub fn cz_root(d1: usize, d2: usize, root: usize) -> M {
    let n = d1 * d2;
    M::from_fn(n, n, |i, j| if i == j { w(root, ((i / d2) * (i % d2)) as i64) } else { C::new(0.0, 0.0) })
}

pub fn cz(d: usize) -> M {
    cz_root(d, d, d)
}

pub fn swap(d: usize) -> M {
    let n = d * d;
    M::from_fn(n, n, |i, j| {
        if i == (j % d) * d + j / d { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) }
    })
}

/// |a⟩|b⟩ ↦ |a⟩|b + a⟩
pub fn cx(d: usize) -> M {
    let n = d * d;
    M::from_fn(n, n, |i, j| {
        let (a, b) = (j / d, j % d);
        if i == a * d + (a + b) % d { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) }
    })
}

pub fn kron(a: &M, b: &M) -> M {
    a.kronecker(b)
}

/// Pauli element τ^ξ X(x)Z(z) on one site.
pub fn pauli1(d: usize, xi: i64, xq: usize, zq: usize) -> M {
    (x(d, xq) * z(d, zq)) * tau(d, xi)
}

/// Full matrix of `op` (acting on `targets` in order) inside a register.
pub fn embed(op: &M, targets: &[usize], dims: &[usize]) -> M {
    let n: usize = dims.iter().product();
    let digits = |mut i: usize| {
        let mut out = vec![0; dims.len()];
        for k in (0..dims.len()).rev() {
            out[k] = i % dims[k];
            i /= dims[k];
        }
        out
    };
    let local = |dg: &[usize]| targets.iter().fold(0, |acc, &t| acc * dims[t] + dg[t]);
    M::from_fn(n, n, |i, j| {
        let (di, dj) = (digits(i), digits(j));
        let same_rest = (0..dims.len()).all(|k| targets.contains(&k) || di[k] == dj[k]);
        if same_rest { op[(local(&di), local(&dj))] } else { C::new(0.0, 0.0) }
    })
}

pub fn apply(op: &M, targets: &[usize], dims: &[usize], v: &V) -> V {
    embed(op, targets, dims) * v
}

pub fn vec_of(s: &QState) -> V {
    V::from_column_slice(s.amplitudes())
}

pub fn qstate(dims: &[usize], v: &V) -> QState {
    QState::from_amplitudes(DimSpec::new(dims.to_vec()).unwrap(), v.iter().cloned().collect()).unwrap()
}

pub fn fid(a: &V, b: &V) -> f64 {
    (a.dotc(b)).norm_sqr() / (a.norm_squared() * b.norm_squared())
}

/// Distance between matrices up to a global phase.
pub fn phase_dist(a: &M, b: &M) -> f64 {
    let ip = a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum::<C>();
    let ph = if ip.norm() > 1e-15 { ip / ip.norm() } else { C::new(1.0, 0.0) };
    (a * ph - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_dist(a: &M, b: &M) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn random_vec(dims: &[usize], rng: &mut ChaCha8Rng) -> V {
    let n: usize = dims.iter().product();
    let v = V::from_fn(n, |_, _| C::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    let nrm = v.norm();
    v / C::new(nrm, 0.0)
}

/// Project position `pos` onto |m⟩, drop it and renormalize. Returns the
/// outcome probability and the remainder.
pub fn project(v: &V, dims: &[usize], pos: usize, m: usize) -> (f64, V, Vec<usize>) {
    let stride: usize = dims[pos + 1..].iter().product();
    let d = dims[pos];
    let rest: Vec<usize> = dims.iter().enumerate().filter(|&(k, _)| k != pos).map(|(_, &x)| x).collect();
    let n: usize = rest.iter().product();
    let out = V::from_fn(n, |j, _| {
        let (hi, lo) = (j / stride, j % stride);
        v[hi * stride * d + m * stride + lo]
    });
    let prob = out.norm_squared();
    let nrm = prob.sqrt();
    (prob, if nrm > 0.0 { out / C::new(nrm, 0.0) } else { out }, rest)
}

pub fn probs(v: &V, dims: &[usize], pos: usize) -> Vec<f64> {
    (0..dims[pos]).map(|m| project(v, dims, pos, m).0).collect()
}

/// Oracle matrix for one logical gate.
pub fn gate_matrix(g: &LogicalGate, d: usize) -> (M, Vec<usize>) {
    match g {
        LogicalGate::F { t } => (f(d), vec![*t]),
        LogicalGate::P { p: pp, t } => (p(d, *pp), vec![*t]),
        LogicalGate::X { q, t } => (x(d, *q), vec![*t]),
        LogicalGate::Z { q, t } => (z(d, *q), vec![*t]),
        LogicalGate::Cz { a, b } => (cz(d), vec![*a, *b]),
        LogicalGate::R { t, theta } => (diag(theta.table()), vec![*t]),
        LogicalGate::D3 { qp, t, c } => {
            let cc = match c {
                CubicConstant::Cube => (d * d * d) as f64,
                CubicConstant::One => 1.0,
            };
            let angles: Vec<f64> =
                (0..d).map(|q| 2.0 * PI * (q * q * q * qp) as f64 / (cc * d as f64)).collect();
            (diag(&angles), vec![*t])
        }
    }
}

/// Run a circuit on `v`, using `outcomes` for its measurements in order.
/// Returns the final vector, the surviving labels and the outcome
/// probabilities met along the way.
pub fn run_circuit(c: &Circuit, v: &V, outcomes: &[usize]) -> (V, Vec<usize>, Vec<f64>) {
    let d = c.d();
    let mut live: Vec<usize> = (0..c.n()).collect();
    let mut v = v.clone();
    let mut used = 0;
    let mut seen = Vec::new();
    for op in c.ops() {
        let dims = vec![d; live.len()];
        match op {
            LogicalOp::Gate(g) => {
                let (m, ts) = gate_matrix(g, d);
                let pos: Vec<usize> = ts.iter().map(|t| live.iter().position(|l| l == t).unwrap()).collect();
                v = apply(&m, &pos, &dims, &v);
            }
            LogicalOp::Measure(t) => {
                let pos = live.iter().position(|l| l == t).unwrap();
                let (pr, rest, _) = project(&v, &dims, pos, outcomes[used]);
                seen.push(pr);
                used += 1;
                v = rest;
                live.remove(pos);
            }
        }
    }
    (v, live, seen)
}

pub fn random_theta(d: usize, rng: &mut ChaCha8Rng) -> PhaseFunction {
    PhaseFunction::new((0..d).map(|_| rng.random::<f64>() * 2.0 * PI).collect()).unwrap()
}

/// Random circuit over {F, P, Z, X, CZ, R, D₃}, or the Clifford part only.
pub fn random_circuit(d: usize, n: usize, len: usize, clifford: bool, rng: &mut ChaCha8Rng) -> Circuit {
    let mut c = Circuit::new(d, n).unwrap();
    let kinds = if clifford { 5 } else { 7 };
    while c.ops().len() < len {
        let t = rng.random_range(0..n);
        let g = match rng.random_range(0..kinds) {
            0 => LogicalGate::F { t },
            1 => LogicalGate::P { p: rng.random_range(0..2 * d), t },
            2 => LogicalGate::Z { q: rng.random_range(0..d), t },
            3 => LogicalGate::X { q: rng.random_range(0..d), t },
            4 => {
                if n < 2 {
                    continue;
                }
                let mut b = rng.random_range(0..n);
                while b == t {
                    b = rng.random_range(0..n);
                }
                LogicalGate::Cz { a: t, b }
            }
            5 => LogicalGate::R { t, theta: random_theta(d, rng) },
            _ => LogicalGate::D3 { qp: rng.random_range(1..d), t, c: CubicConstant::Cube },
        };
        c.push_gate(g).unwrap();
    }
    c
}
