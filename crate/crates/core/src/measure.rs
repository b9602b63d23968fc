//! Destructive projective measurements with Born-rule sampling or forced
//! outcomes.

use std::collections::VecDeque;

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{QvError, Result};
use crate::gate::Gate;
use crate::gates::ObservableKind;
use crate::state::QState;

/// Forced outcomes below this probability are rejected.
pub const MIN_FORCED_PROBABILITY: f64 = 1e-12;

/// How a measurement picks its outcome.
pub enum Outcome<'a> {
    Sample(&'a mut dyn RngCore),
    Forced(usize),
}

/// Record of a single ancilla or register measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub target: usize,
    pub observable: ObservableKind,
    pub outcome: usize,
    pub forced: bool,
}

/// Born probabilities of each computational-basis outcome on `target`.
pub fn outcome_probabilities(state: &QState, target: usize) -> Result<Vec<f64>> {
    state.dims().check_index(target)?;
    let d = state.dims().dim(target);
    let stride = state.dims().strides()[target];
    let mut probs = vec![0.0; d];
    for (i, a) in state.amplitudes().iter().enumerate() {
        probs[(i / stride) % d] += a.norm_sqr();
    }
    Ok(probs)
}

/// Pick an outcome index from a probability table.
pub fn choose(probs: &[f64], how: Outcome<'_>) -> Result<(usize, bool)> {
    match how {
        Outcome::Forced(m) => {
            let p = probs.get(m).copied().ok_or(QvError::LabelOutOfRange {
                label: m,
                dim: probs.len(),
            })?;
            if p < MIN_FORCED_PROBABILITY {
                return Err(QvError::ZeroProbability { outcome: m, probability: p });
            }
            Ok((m, true))
        }
        Outcome::Sample(rng) => {
            let total: f64 = probs.iter().sum();
            let r = rng.random::<f64>() * total;
            let mut acc = 0.0;
            let mut last_nonzero = 0;
            for (m, &p) in probs.iter().enumerate() {
                if p > 0.0 {
                    last_nonzero = m;
                }
                acc += p;
                if r < acc && p > 0.0 {
                    return Ok((m, false));
                }
            }
            Ok((last_nonzero, false))
        }
    }
}

/// Measure `x̂` on `target` and discard it. Returns the outcome and the
/// renormalized state of the remaining subsystems.
pub fn measure_x(state: &QState, target: usize, how: Outcome<'_>) -> Result<(usize, QState)> {
    let probs = outcome_probabilities(state, target)?;
    let (m, _) = choose(&probs, how)?;
    let d = state.dims().dim(target);
    let mut e = vec![Complex64::new(0.0, 0.0); d];
    e[m] = Complex64::new(1.0, 0.0);
    let (post, _) = state.contract(target, &e)?;
    post.check_norm()?;
    Ok((m, post))
}

/// Measure `x̂_U = U† x̂ U` on `target`: rotate by `U`, then measure `x̂`.
pub fn measure_observable_xu(
    state: &QState,
    target: usize,
    u: &Gate,
    how: Outcome<'_>,
) -> Result<(usize, QState)> {
    if u.arity() != 1 {
        return Err(QvError::InvalidParameter("x̂_U needs a single-subsystem U".into()));
    }
    let rotated = state.apply(u, &[target])?;
    measure_x(&rotated, target, how)
}

/// Outcome supply for multi-measurement runs: a queue of forced outcomes
/// consumed in order, then samples from a seeded ChaCha8 stream.
///
/// ChaCha8 is used so that a given seed yields the same outcome sequence on
/// every platform.
#[derive(Debug, Clone)]
pub struct OutcomeSource {
    forced: VecDeque<usize>,
    rng: ChaCha8Rng,
}

impl OutcomeSource {
    pub fn seeded(seed: u64) -> Self {
        Self { forced: VecDeque::new(), rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn with_forced(seed: u64, forced: impl IntoIterator<Item = usize>) -> Self {
        Self { forced: forced.into_iter().collect(), rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn remaining_forced(&self) -> usize {
        self.forced.len()
    }

    pub fn next_outcome(&mut self) -> Outcome<'_> {
        match self.forced.pop_front() {
            Some(m) => Outcome::Forced(m),
            None => Outcome::Sample(&mut self.rng),
        }
    }
}
