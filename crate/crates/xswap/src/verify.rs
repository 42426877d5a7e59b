//! Cross-validation of the closed-form swap against the brute-force oracle:
//! seeded random inputs are pushed through both paths and the worst
//! deviations in probabilities, outcome matrices, and concurrences are
//! collected.

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::Tolerance;
use crate::oracle::{concurrence_general, joint_state, measure_bell, OracleError};
use crate::sample::{sample_many, SampleConstraint, SampleError};
use crate::swap::{swap_outcomes, SwapOutcomeSet};
use crate::xstate::{to_matrix, XState, XStateError};

/// Largest deviation tolerated between the closed forms and the oracle.
pub const VERIFY_BOUND: f64 = 1e-9;

/// Probability below which an outcome's conditional state is not compared:
/// the oracle leaves it undefined there and rounding dominates the quotient.
pub const NEGLIGIBLE_PROBABILITY: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    State(#[from] XStateError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Sample(#[from] SampleError),
}

/// Worst deviations between the closed-form swap and the oracle, split by
/// the quantity compared.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PairDeviation {
    pub probability: f64,
    pub matrix: f64,
    pub concurrence: f64,
}

impl PairDeviation {
    /// Largest of the three deviations.
    pub fn max(&self) -> f64 {
        self.probability.max(self.matrix).max(self.concurrence)
    }

    /// Field-wise maximum of two deviation records.
    pub fn merge(self, other: PairDeviation) -> PairDeviation {
        PairDeviation {
            probability: self.probability.max(other.probability),
            matrix: self.matrix.max(other.matrix),
            concurrence: self.concurrence.max(other.concurrence),
        }
    }
}

/// Aggregate result of a verification run over many random cases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyReport {
    /// Number of input cases compared (pairs plus equal-input cases).
    pub cases: usize,
    pub max_probability_deviation: f64,
    pub max_matrix_deviation: f64,
    pub max_concurrence_deviation: f64,
    pub pass: bool,
}

impl VerifyReport {
    pub fn max_deviation(&self) -> f64 {
        self.max_probability_deviation
            .max(self.max_matrix_deviation)
            .max(self.max_concurrence_deviation)
    }
}

/// Runs one input pair through both paths and reports the worst deviations.
pub fn compare_pair(x: &XState, xp: &XState) -> Result<PairDeviation, VerifyError> {
    let closed = swap_outcomes(x, xp)?;
    deviation_from_oracle(&closed, x, xp)
}

/// Deviation of an already-computed closed-form outcome set from the oracle
/// run on the same inputs. Split from [`compare_pair`] so the harness itself
/// can be tested against deliberately corrupted outcome sets.
pub fn deviation_from_oracle(
    closed: &SwapOutcomeSet,
    x: &XState,
    xp: &XState,
) -> Result<PairDeviation, VerifyError> {
    let joint = joint_state(x, xp)?;
    let mut dev = PairDeviation::default();
    for measured in measure_bell(&joint) {
        let outcome = closed.outcome(measured.label);
        dev.probability = dev
            .probability
            .max((outcome.probability - measured.probability).abs());
        if outcome.probability <= NEGLIGIBLE_PROBABILITY {
            continue;
        }
        let (Some(state), Some(concurrence)) = (&outcome.state, outcome.concurrence)
        else {
            continue;
        };
        let Some(oracle_state) = &measured.state else {
            continue;
        };
        dev.matrix = dev
            .matrix
            .max(to_matrix(state).max_abs_diff(oracle_state));
        let oracle_concurrence = concurrence_general(oracle_state, Tolerance::default())?;
        dev.concurrence = dev
            .concurrence
            .max((concurrence - oracle_concurrence).abs());
    }
    Ok(dev)
}

/// Verifies `n` random unequal input pairs and `n` random equal-input cases,
/// all drawn deterministically from `seed`. Passes when every deviation
/// stays within [`VERIFY_BOUND`].
pub fn run_verification(n: usize, seed: u64) -> Result<VerifyReport, VerifyError> {
    assert!(n >= 1, "verification needs at least one case");
    let states = sample_many(3 * n, seed, SampleConstraint::Any)?;
    let deviations = (0..n)
        .into_par_iter()
        .map(|i| {
            let pair = compare_pair(&states[2 * i], &states[2 * i + 1])?;
            let equal = compare_pair(&states[2 * n + i], &states[2 * n + i])?;
            Ok(pair.merge(equal))
        })
        .collect::<Result<Vec<PairDeviation>, VerifyError>>()?;
    let total = deviations
        .into_iter()
        .fold(PairDeviation::default(), PairDeviation::merge);
    Ok(VerifyReport {
        cases: 2 * n,
        max_probability_deviation: total.probability,
        max_matrix_deviation: total.matrix,
        max_concurrence_deviation: total.concurrence,
        pass: total.max() <= VERIFY_BOUND,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xstate::XState;

    #[test]
    fn bell_inputs_deviate_only_by_eigensolver_noise() {
        let x = XState::bell_phi_plus();
        let dev = compare_pair(&x, &x).unwrap();
        assert!(dev.max() < 1e-12, "deviation {:?}", dev);
    }

    #[test]
    fn zero_probability_branches_are_skipped_without_panicking() {
        let pure00 = XState::with_real_coherences(1.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let dev = compare_pair(&pure00, &pure00).unwrap();
        assert!(dev.max() < 1e-12);
    }

    #[test]
    fn random_cases_verify_and_rerun_identically() {
        let a = run_verification(40, 7).unwrap();
        let b = run_verification(40, 7).unwrap();
        assert!(a.pass, "max deviation {}", a.max_deviation());
        assert_eq!(a, b);
        assert_eq!(a.cases, 80);
    }

    #[test]
    fn corrupted_probability_is_detected() {
        let states = sample_many(2, 11, SampleConstraint::Any).unwrap();
        let mut closed = swap_outcomes(&states[0], &states[1]).unwrap();
        closed.outcomes[0].probability += 1e-6;
        let dev = deviation_from_oracle(&closed, &states[0], &states[1]).unwrap();
        assert!(dev.probability > VERIFY_BOUND);
        assert!(dev.max() > VERIFY_BOUND);
    }

    #[test]
    fn corrupted_outcome_state_is_detected() {
        let states = sample_many(2, 12, SampleConstraint::Any).unwrap();
        let mut closed = swap_outcomes(&states[0], &states[1]).unwrap();
        let state = closed.outcomes[1].state.as_mut().unwrap();
        state.o14.re += 1e-6;
        let dev = deviation_from_oracle(&closed, &states[0], &states[1]).unwrap();
        assert!(dev.matrix > VERIFY_BOUND);
    }

    #[test]
    fn corrupted_concurrence_is_detected() {
        let states = sample_many(2, 13, SampleConstraint::Any).unwrap();
        let mut closed = swap_outcomes(&states[0], &states[1]).unwrap();
        for outcome in &mut closed.outcomes {
            if let Some(c) = outcome.concurrence.as_mut() {
                *c = (*c + 0.01).min(1.0);
            }
        }
        let dev = deviation_from_oracle(&closed, &states[0], &states[1]).unwrap();
        assert!(dev.concurrence > VERIFY_BOUND);
    }
}
