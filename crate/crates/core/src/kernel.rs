//! Strided gate application.
//!
//! Every output amplitude is computed independently from the input vector:
//! for output index `i`, the target digits of `i` select a matrix row and the
//! remaining digits select the block the gate mixes within. This makes the
//! kernel a pure map over output indices, run by rayon when the `parallel`
//! feature is on and the state is large enough to amortize the fork.

use num_complex::Complex64;

use crate::gate::{Gate, GateRepr};

/// States smaller than this are always processed sequentially.
pub const PARALLEL_THRESHOLD: usize = 1 << 12;

/// Precomputed index arithmetic for one gate placement.
struct Layout {
    /// State stride of each target subsystem.
    strides: Vec<usize>,
    /// Dimension of each target subsystem.
    dims: Vec<usize>,
    /// State offset of each gate-local basis index.
    offsets: Vec<usize>,
}

impl Layout {
    fn new(state_dims: &[usize], targets: &[usize]) -> Self {
        let mut all_strides = vec![1usize; state_dims.len()];
        for k in (0..state_dims.len().saturating_sub(1)).rev() {
            all_strides[k] = all_strides[k + 1] * state_dims[k + 1];
        }
        let strides: Vec<usize> = targets.iter().map(|&t| all_strides[t]).collect();
        let dims: Vec<usize> = targets.iter().map(|&t| state_dims[t]).collect();
        let size: usize = dims.iter().product();
        let offsets = (0..size)
            .map(|mut j| {
                let mut off = 0;
                for k in (0..dims.len()).rev() {
                    off += (j % dims[k]) * strides[k];
                    j /= dims[k];
                }
                off
            })
            .collect();
        Self { strides, dims, offsets }
    }

    /// Split a state index into (gate-local row, block base index).
    #[inline]
    fn split(&self, i: usize) -> (usize, usize) {
        let mut row = 0;
        let mut base = i;
        for k in 0..self.dims.len() {
            let digit = (i / self.strides[k]) % self.dims[k];
            row = row * self.dims[k] + digit;
            base -= digit * self.strides[k];
        }
        (row, base)
    }
}

enum Plan<'a> {
    Dense { m: &'a [Complex64], n: usize },
    Structured { inv: Vec<usize>, phases: &'a [Complex64] },
}

impl Plan<'_> {
    fn new(gate: &Gate) -> Plan<'_> {
        match gate.repr() {
            GateRepr::Dense(m) => Plan::Dense { m, n: gate.size() },
            GateRepr::Structured { perm, phases } => {
                let mut inv = vec![0; perm.len()];
                for (j, &p) in perm.iter().enumerate() {
                    inv[p] = j;
                }
                Plan::Structured { inv, phases }
            }
        }
    }

    #[inline]
    fn amplitude(&self, layout: &Layout, input: &[Complex64], i: usize) -> Complex64 {
        let (row, base) = layout.split(i);
        match self {
            Plan::Dense { m, n } => {
                let r = &m[row * n..(row + 1) * n];
                r.iter().zip(&layout.offsets).map(|(u, &off)| u * input[base + off]).sum()
            }
            Plan::Structured { inv, phases } => {
                let j = inv[row];
                phases[j] * input[base + layout.offsets[j]]
            }
        }
    }
}

/// Apply `gate` to `targets`, single-threaded.
pub fn apply_sequential(
    input: &[Complex64],
    state_dims: &[usize],
    gate: &Gate,
    targets: &[usize],
) -> Vec<Complex64> {
    let layout = Layout::new(state_dims, targets);
    let plan = Plan::new(gate);
    (0..input.len()).map(|i| plan.amplitude(&layout, input, i)).collect()
}

/// Apply `gate` to `targets`, splitting the output across the rayon pool.
#[cfg(feature = "parallel")]
pub fn apply_parallel(
    input: &[Complex64],
    state_dims: &[usize],
    gate: &Gate,
    targets: &[usize],
) -> Vec<Complex64> {
    use rayon::prelude::*;
    let layout = Layout::new(state_dims, targets);
    let plan = Plan::new(gate);
    (0..input.len())
        .into_par_iter()
        .with_min_len(1 << 10)
        .map(|i| plan.amplitude(&layout, input, i))
        .collect()
}

/// Dispatch to the parallel kernel for large states when available.
pub fn apply(
    input: &[Complex64],
    state_dims: &[usize],
    gate: &Gate,
    targets: &[usize],
) -> Vec<Complex64> {
    #[cfg(feature = "parallel")]
    if input.len() >= PARALLEL_THRESHOLD {
        return apply_parallel(input, state_dims, gate, targets);
    }
    apply_sequential(input, state_dims, gate, targets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vec(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
        (0..n).map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect()
    }

    #[test]
    fn single_target_matches_explicit_kron() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let dims = [2, 3, 2];
        let v = random_vec(12, &mut rng);
        let f = gates::fourier(3);
        let got = apply_sequential(&v, &dims, &f, &[1]);
        let full = gates::identity(2)
            .kron(&f)
            .unwrap()
            .to_dense();
        // kron I2 ⊗ F3 then ⊗ I2 by hand
        let mut want = vec![Complex64::new(0.0, 0.0); 12];
        let m = full.matrix();
        for a in 0..6 {
            for c in 0..2 {
                let i = a * 2 + c;
                want[i] = (0..6).map(|b| m[a * 6 + b] * v[b * 2 + c]).sum();
            }
        }
        for (x, y) in got.iter().zip(&want) {
            assert!((x - y).norm() < 1e-13);
        }
    }

    #[test]
    fn reversed_targets_match_reversed_gate() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let dims = [3, 2, 4];
        let v = random_vec(24, &mut rng);
        let g = gates::fourier(4).kron(&gates::pauli_x(3, 1)).unwrap();
        let a = apply_sequential(&v, &dims, &g, &[2, 0]);
        let b = apply_sequential(&v, &dims, &g.reversed(), &[0, 2]);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-13);
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_matches_sequential() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let dims = [3; 9];
        let v = random_vec(3usize.pow(9), &mut rng);
        for (g, t) in [
            (gates::fourier(3), vec![4]),
            (gates::cz(3, 3), vec![7, 1]),
            (gates::fourier(3).kron(&gates::fourier(3)).unwrap(), vec![0, 8]),
        ] {
            let a = apply_sequential(&v, &dims, &g, &t);
            let b = apply_parallel(&v, &dims, &g, &t);
            assert_eq!(a, b);
        }
    }
}
