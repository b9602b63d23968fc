//! Breadth-first word search as a desk-scale witness of approximate
//! universality for a finite single-QV gate set.

use std::collections::HashSet;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{QvError, Result};
use crate::gate::Gate;

type Mat = DMatrix<Complex64>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthesisConfig {
    /// Longest word searched.
    pub max_len: usize,
    /// Success tolerance on the phase-invariant operator distance.
    pub eps: f64,
    /// Cap on distinct words kept; hitting it marks the report partial.
    pub budget: usize,
}

impl Default for SynthesisConfig {
    fn default() -> Self {
        Self { max_len: 12, eps: 0.25, budget: 1 << 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisReport {
    pub d: usize,
    pub max_len: usize,
    pub eps: f64,
    /// Best distance per target, each in `[0, 2]`.
    pub distances: Vec<f64>,
    pub success_fraction: f64,
    /// Distinct words (up to phase) enumerated, including the empty word.
    pub words: usize,
    /// Word length fully explored.
    pub depth_reached: usize,
    pub partial: bool,
}

fn to_mat(g: &Gate) -> Mat {
    let n = g.size();
    Mat::from_row_slice(n, n, &g.matrix())
}

/// Hash key of a matrix modulo global phase.
fn phase_key(m: &Mat) -> Vec<i64> {
    let max = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pivot = m.iter().find(|z| z.norm() > 0.5 * max).copied().unwrap_or(Complex64::new(1.0, 0.0));
    let ph = pivot.conj() / pivot.norm();
    m.iter()
        .flat_map(|z| {
            let w = z * ph;
            [(w.re * 1e7).round() as i64, (w.im * 1e7).round() as i64]
        })
        .collect()
}

/// Eigenphases of a unitary, from the diagonal of its complex Schur form.
fn eigenphases(v: &Mat) -> Vec<f64> {
    if v.nrows() == 1 {
        return vec![v[(0, 0)].arg()];
    }
    let t = v.clone().schur().unpack().1;
    (0..t.nrows()).map(|i| t[(i, i)].arg()).collect()
}

/// `min_θ ‖e^{iθ}W − T‖` in operator norm. With the eigenphases of `W†T`
/// covered by a smallest arc of length α, this is `2 sin(α/4)`.
fn distance_mat(w: &Mat, t: &Mat) -> f64 {
    let mut ph: Vec<f64> = eigenphases(&(w.adjoint() * t)).into_iter().map(|a| a.rem_euclid(2.0 * PI)).collect();
    ph.sort_by(f64::total_cmp);
    let n = ph.len();
    let mut gap = ph[0] + 2.0 * PI - ph[n - 1];
    for k in 1..n {
        gap = gap.max(ph[k] - ph[k - 1]);
    }
    let arc = (2.0 * PI - gap).max(0.0);
    (2.0 * (arc / 4.0).sin()).min(2.0)
}

/// Phase-invariant operator-norm distance between two single-QV gates.
pub fn phase_invariant_distance(a: &Gate, b: &Gate) -> Result<f64> {
    if a.dims() != b.dims() {
        return Err(QvError::DimensionMismatch("gates of different dimension".into()));
    }
    Ok(distance_mat(&to_mat(a), &to_mat(b)))
}

/// Haar-random unitary from the QR decomposition of a complex Ginibre
/// matrix, with the phases of `R`'s diagonal folded into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Gate {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = Mat::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * s, im * s)
    });
    let qr = z.qr();
    let (q, r) = (qr.q(), qr.r());
    let mut u = q;
    for j in 0..d {
        let rj = r[(j, j)];
        let ph = if rj.norm() > 0.0 { rj / rj.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..d {
            u[(i, j)] *= ph;
        }
    }
    let rows: Vec<Complex64> = (0..d * d).map(|k| u[(k / d, k % d)]).collect();
    Gate::dense(vec![d], rows).expect("QR factor is unitary")
}

/// All distinct words (up to phase) of length ≤ `max_len` over `set`.
fn enumerate_words(set: &[Mat], d: usize, cfg: &SynthesisConfig) -> (Vec<Mat>, usize, bool) {
    let id = Mat::identity(d, d);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(phase_key(&id));
    let mut words = vec![id.clone()];
    let mut frontier = vec![id];
    let mut depth = 0;
    for _ in 0..cfg.max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in set {
                let m = g * w;
                if seen.insert(phase_key(&m)) {
                    if words.len() >= cfg.budget {
                        return (words, depth, true);
                    }
                    words.push(m.clone());
                    next.push(m);
                }
            }
        }
        depth += 1;
        if next.is_empty() {
            // closed under the set: longer words add nothing
            depth = cfg.max_len;
            break;
        }
        frontier = next;
    }
    (words, depth, false)
}

fn best_distance(words: &[Mat], target: &Mat) -> f64 {
    words.iter().map(|w| distance_mat(w, target)).fold(f64::INFINITY, f64::min)
}

/// For each target, the best phase-invariant distance reachable by a word
/// of length ≤ `max_len` over `set`, and the fraction within `eps`.
pub fn universality_witness(set: &[Gate], targets: &[Gate], cfg: &SynthesisConfig) -> Result<SynthesisReport> {
    let d = match set.first() {
        Some(g) => g.dims()[0],
        None => return Err(QvError::InvalidParameter("empty gate set".into())),
    };
    if set.iter().chain(targets).any(|g| g.dims() != [d]) {
        return Err(QvError::DimensionMismatch("gate set and targets must be single-QV of one dimension".into()));
    }
    let mats: Vec<Mat> = set.iter().map(to_mat).collect();
    let (words, depth_reached, partial) = enumerate_words(&mats, d, cfg);
    let tmats: Vec<Mat> = targets.iter().map(to_mat).collect();

    #[cfg(feature = "parallel")]
    let distances: Vec<f64> = {
        use rayon::prelude::*;
        tmats.par_iter().map(|t| best_distance(&words, t)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let distances: Vec<f64> = tmats.iter().map(|t| best_distance(&words, t)).collect();

    let hits = distances.iter().filter(|&&x| x <= cfg.eps).count();
    let success_fraction = if targets.is_empty() { 0.0 } else { hits as f64 / targets.len() as f64 };
    Ok(SynthesisReport {
        d,
        max_len: cfg.max_len,
        eps: cfg.eps,
        distances,
        success_fraction,
        words: words.len(),
        depth_reached,
        partial,
    })
}
