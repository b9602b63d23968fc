//! Exhaustive checks of the Pauli and Clifford algebra against dense and
//! monomial matrix oracles.

use super::*;
use qvsim::gates;
use qvsim::{CliffordOp, Gate, PauliElement};

const TOL: f64 = 1e-10;

fn to_m(g: &Gate) -> M {
    let n = g.size();
    M::from_row_slice(n, n, &g.matrix())
}

/// A Pauli operator as `e_j ↦ c_j e_{π(j)}`.
#[derive(Clone)]
pub struct Monomial {
    pub perm: Vec<usize>,
    pub phase: Vec<C>,
}

impl Monomial {
    /// `τ^ξ ⊗_k X(x_k)Z(z_k)`, first site most significant.
    pub fn pauli(d: usize, xi: usize, xs: &[usize], zs: &[usize]) -> Self {
        let n = xs.len();
        let size = d.pow(n as u32);
        let mut perm = vec![0; size];
        let mut phase = vec![C::new(0.0, 0.0); size];
        for j in 0..size {
            let mut digits = vec![0; n];
            let mut r = j;
            for k in (0..n).rev() {
                digits[k] = r % d;
                r /= d;
            }
            let mut c = tau(d, xi as i64);
            let mut i = 0;
            for k in 0..n {
                c *= w(d, (zs[k] * digits[k]) as i64);
                i = i * d + (digits[k] + xs[k]) % d;
            }
            perm[j] = i;
            phase[j] = c;
        }
        Self { perm, phase }
    }

    pub fn of(e: &PauliElement) -> Self {
        let n = e.n();
        let xs: Vec<usize> = (0..n).map(|k| e.x(k)).collect();
        let zs: Vec<usize> = (0..n).map(|k| e.z(k)).collect();
        Self::pauli(e.d(), e.xi(), &xs, &zs)
    }

    pub fn dense(&self) -> M {
        let n = self.perm.len();
        let mut m = M::zeros(n, n);
        for j in 0..n {
            m[(self.perm[j], j)] = self.phase[j];
        }
        m
    }

    /// `self · other`
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.perm.len();
        let perm = (0..n).map(|j| self.perm[other.perm[j]]).collect();
        let phase = (0..n).map(|j| self.phase[other.perm[j]] * other.phase[j]).collect();
        Monomial { perm, phase }
    }

    pub fn same(&self, other: &Monomial) -> bool {
        self.perm == other.perm && self.phase.iter().zip(&other.phase).all(|(a, b)| (a - b).norm() < TOL)
    }

    /// `max |U·self − other·U|`, so zero iff `U self U† = other`.
    pub fn intertwine_error(&self, u: &M, other: &Monomial) -> f64 {
        let n = self.perm.len();
        let mut inv = vec![0; n];
        for (j, &i) in other.perm.iter().enumerate() {
            inv[i] = j;
        }
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                // (U·P)[i, j] = U[i, π(j)] c_j ; (P'·U)[i, j] = c'_{π'⁻¹(i)} U[π'⁻¹(i), j]
                let lhs = u[(i, self.perm[j])] * self.phase[j];
                let k = inv[i];
                let rhs = other.phase[k] * u[(k, j)];
                worst = worst.max((lhs - rhs).norm());
            }
        }
        worst
    }
}

fn fail(what: String) -> Result<usize, String> {
    Err(what)
}

/// Library single-QV gates equal the oracle matrices; Weyl relation, F⁴ = I,
/// F² is the parity map and P(p) has the stated diagonal and period.
pub fn check_single_qv_gates(d: usize) -> Result<usize, String> {
    let mut n = 0;
    let close = |a: &M, b: &M| max_dist(a, b) < TOL;
    if !close(&to_m(&gates::fourier(d)), &f(d)) {
        return fail(format!("F differs from oracle at d={d}"));
    }
    for q in 0..d {
        if !close(&to_m(&gates::pauli_x(d, q)), &x(d, q)) || !close(&to_m(&gates::pauli_z(d, q)), &z(d, q)) {
            return fail(format!("X({q}) or Z({q}) differs from oracle at d={d}"));
        }
        n += 2;
    }
    let (xl, zl) = (to_m(&gates::pauli_x(d, 1)), to_m(&gates::pauli_z(d, 1)));
    if !close(&(&zl * &xl), &((&xl * &zl) * w(d, 1))) {
        return fail(format!("ZX ≠ ωXZ at d={d}"));
    }
    let fl = to_m(&gates::fourier(d));
    let f2 = &fl * &fl;
    let parity = M::from_fn(d, d, |i, j| if i == (d - j) % d { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) });
    if !close(&f2, &parity) || !close(&(&f2 * &f2), &eye(d)) {
        return fail(format!("F² ≠ parity or F⁴ ≠ I at d={d}"));
    }
    // F X F† = Z and F Z F† = X†
    if !close(&(&fl * &xl * fl.adjoint()), &zl) || !close(&(&fl * &zl * fl.adjoint()), &xl.adjoint()) {
        return fail(format!("Fourier conjugation of X, Z wrong at d={d}"));
    }
    let period = if d % 2 == 1 { d } else { 2 * d };
    let p1 = to_m(&gates::phase_gate(d, 1));
    let mut acc = eye(d);
    for pp in 0..2 * d {
        if !close(&to_m(&gates::phase_gate(d, pp)), &p(d, pp)) || !close(&to_m(&gates::phase_gate(d, pp)), &acc) {
            return fail(format!("P({pp}) differs from oracle at d={d}"));
        }
        acc = &acc * &p1;
        n += 1;
    }
    let mut pk = eye(d);
    for k in 1..=period {
        pk = &pk * &p1;
        if (k < period) == close(&pk, &eye(d)) {
            return fail(format!("P(1) does not have order {period} at d={d}"));
        }
    }
    Ok(n + 5)
}

fn all_vectors(d: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..d.pow(len as u32)).map(move |mut i| {
        let mut v = vec![0; len];
        for k in (0..len).rev() {
            v[k] = i % d;
            i /= d;
        }
        v
    })
}

fn elem(d: usize, xi: usize, v: &[usize]) -> PauliElement {
    PauliElement::new(d, xi as i64, &v.iter().map(|&a| a as i64).collect::<Vec<_>>()).unwrap()
}

/// Symplectic composition equals the matrix product, phase included:
/// exhaustive over single-QV pairs, and over two-QV pairs when `d ≤ 3`
/// (sampled otherwise). Also checks inverses.
pub fn check_composition(d: usize, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut n = 0;
    let mut one = |a: &PauliElement, b: &PauliElement| -> Result<(), String> {
        let got = Monomial::of(&a.compose(b).map_err(|e| e.to_string())?);
        let want = Monomial::of(a).mul(&Monomial::of(b));
        if !got.same(&want) {
            return Err(format!("compose {a:?} ∘ {b:?} wrong at d={d}"));
        }
        let id = Monomial::of(&a.compose(&a.inverse()).map_err(|e| e.to_string())?);
        if !id.same(&Monomial::of(&PauliElement::identity(d, a.n()))) {
            return Err(format!("inverse of {a:?} wrong at d={d}"));
        }
        n += 1;
        Ok(())
    };
    let singles: Vec<PauliElement> =
        [0, 1, 2 * d - 1].iter().flat_map(|&xi| all_vectors(d, 2).map(move |v| elem(d, xi, &v))).collect();
    for a in &singles {
        for b in &singles {
            one(a, b)?;
        }
    }
    if d <= 3 {
        let pairs: Vec<PauliElement> = all_vectors(d, 4).map(|v| elem(d, 0, &v)).collect();
        for a in &pairs {
            for b in &pairs {
                one(a, b)?;
            }
        }
    } else {
        for _ in 0..2000 {
            let a = elem(d, rng.random_range(0..2 * d), &(0..4).map(|_| rng.random_range(0..d)).collect::<Vec<_>>());
            let b = elem(d, rng.random_range(0..2 * d), &(0..4).map(|_| rng.random_range(0..d)).collect::<Vec<_>>());
            one(&a, &b)?;
        }
    }
    Ok(n)
}

fn oracle_clifford(op: CliffordOp, d: usize, sites: usize) -> M {
    let dims = vec![d; sites];
    match op {
        CliffordOp::F(s) => embed(&f(d), &[s], &dims),
        CliffordOp::Fdag(s) => embed(&fd(d), &[s], &dims),
        CliffordOp::P { p: pp, site } => embed(&p(d, pp), &[site], &dims),
        CliffordOp::Cz(a, b) => embed(&cz(d), &[a, b], &dims),
        CliffordOp::Cx(c, t) => embed(&cx(d), &[c, t], &dims),
        CliffordOp::X { q, site } => embed(&x(d, q), &[site], &dims),
        CliffordOp::Z { q, site } => embed(&z(d, q), &[site], &dims),
    }
}

fn check_conjugations(d: usize, sites: usize, ops: &[CliffordOp], xis: &[usize]) -> Result<usize, String> {
    let mut n = 0;
    for &op in ops {
        let u = oracle_clifford(op, d, sites);
        for &xi in xis {
            for v in all_vectors(d, 2 * sites) {
                let e = elem(d, xi, &v);
                let out = e.conjugate(op).map_err(|er| er.to_string())?;
                let err = Monomial::of(&e).intertwine_error(&u, &Monomial::of(&out));
                if err > TOL {
                    return Err(format!("{op:?} p {e:?} {op:?}† gave {out:?} (error {err:.2e}) at d={d}"));
                }
                n += 1;
            }
        }
    }
    Ok(n)
}

/// `U p U†` for F, F†, every P(p), X(q), Z(q) on one QV, exhaustive over
/// single-QV Pauli elements.
pub fn check_single_qv_conjugation(d: usize) -> Result<usize, String> {
    let mut ops = vec![CliffordOp::F(0), CliffordOp::Fdag(0)];
    ops.extend((0..2 * d).map(|p| CliffordOp::P { p, site: 0 }));
    ops.extend((0..d).map(|q| CliffordOp::X { q, site: 0 }));
    ops.extend((0..d).map(|q| CliffordOp::Z { q, site: 0 }));
    check_conjugations(d, 1, &ops, &[0, 1, 2 * d - 1])
}

/// `U p U†` for CZ and CX in both orientations plus embedded single-QV
/// generators, exhaustive over two-QV Pauli elements.
pub fn check_two_qv_conjugation(d: usize) -> Result<usize, String> {
    let ops = [
        CliffordOp::Cz(0, 1),
        CliffordOp::Cz(1, 0),
        CliffordOp::Cx(0, 1),
        CliffordOp::Cx(1, 0),
        CliffordOp::F(1),
        CliffordOp::P { p: 1, site: 1 },
        CliffordOp::Z { q: 1, site: 0 },
    ];
    check_conjugations(d, 2, &ops, &[0, 1])
}

/// The monomial oracle agrees with the dense oracle built from `X`, `Z`.
pub fn check_monomial_oracle(d: usize) -> Result<usize, String> {
    for xi in 0..2 * d {
        for v in all_vectors(d, 2) {
            let dense = pauli1(d, xi as i64, v[0], v[1]);
            if max_dist(&Monomial::pauli(d, xi, &v[..1], &v[1..]).dense(), &dense) > TOL {
                return Err(format!("monomial oracle disagrees at d={d}"));
            }
        }
    }
    Ok(2 * d * d * d)
}
