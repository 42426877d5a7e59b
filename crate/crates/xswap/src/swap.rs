//! Closed-form entanglement swapping: the four Bell-outcome states of the
//! remote pair, their probabilities and concurrences, and the threshold
//! analysis for equal inputs.
//!
//! Everything is expressed directly in the seven X parameters of each input;
//! no matrix is ever built. The outcome states are again X-states, with the
//! phi outcomes combining like coherence subspaces and the psi outcomes
//! crossing them. The independent matrix route in [`crate::oracle`] checks
//! all of it.

use crate::linalg::Complex64;
use crate::xstate::{concurrence_x, require_valid, XState, XStateError};
use crate::BellLabel;
use thiserror::Error;

/// Entrywise agreement bound for the local-unitary equivalence checks.
pub const LU_TOLERANCE: f64 = 1e-12;

/// How many of the four outcome states stay entangled (for equal inputs,
/// after phase alignment).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeRegime {
    AllSeparable,
    /// Only the two psi outcomes are entangled.
    TwoEntangled,
    FourEntangled,
}

impl std::fmt::Display for OutcomeRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OutcomeRegime::AllSeparable => "all-separable",
            OutcomeRegime::TwoEntangled => "two-entangled",
            OutcomeRegime::FourEntangled => "four-entangled",
        })
    }
}

/// One Bell branch of the swap. `state` and `concurrence` are `None` exactly
/// when the branch has zero probability and no conditional state exists.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwapOutcome {
    pub label: BellLabel,
    pub probability: f64,
    pub state: Option<XState>,
    pub concurrence: Option<f64>,
}

/// All four branches, in [`BellLabel::ALL`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct SwapOutcomeSet {
    pub outcomes: [SwapOutcome; 4],
}

impl SwapOutcomeSet {
    pub fn outcome(&self, label: BellLabel) -> &SwapOutcome {
        &self.outcomes[label.index()]
    }

    /// |sum of probabilities - 1|.
    pub fn probability_sum_defect(&self) -> f64 {
        (self.outcomes.iter().map(|o| o.probability).sum::<f64>() - 1.0).abs()
    }
}

/// Threshold analysis of an equal-input swap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdReport {
    pub c_in: f64,
    pub c_th_min: f64,
    pub c_th_max: f64,
    pub regime: OutcomeRegime,
    /// Set when the corresponding threshold radicand was negative (possible
    /// only within rounding slop of the validity boundary) and clamped to 0.
    pub radicand_clamped_min: bool,
    pub radicand_clamped_max: bool,
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
#[error("outcome {label} has zero probability and no defined state")]
pub struct UndefinedOutcome {
    pub label: BellLabel,
}

/// Result of [`local_unitary_equivalence_check`]: which of the stated
/// single-qubit conjugation identities hold entrywise within
/// [`LU_TOLERANCE`], with the observed defects.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LuEquivalenceReport {
    /// phi- equals (I x sigma_z) phi+ (I x sigma_z).
    pub phi_pair_sigma_z: bool,
    /// psi- equals (I x sigma_z) psi+ (I x sigma_z).
    pub psi_pair_sigma_z: bool,
    /// psi+/- additionally equal (I x sigma_x)-conjugated phi+/-; holds in
    /// the Bell-input transfer case, not in general.
    pub cross_sigma_x: bool,
    pub max_sigma_z_defect: f64,
    pub max_sigma_x_defect: f64,
}

/// Largest parameter difference between two X-states; equals the entrywise
/// max-abs difference of their matrices.
pub fn xstate_max_abs_diff(a: &XState, b: &XState) -> f64 {
    let diag = a
        .diag()
        .iter()
        .zip(b.diag())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    diag.max((a.o14 - b.o14).norm()).max((a.o23 - b.o23).norm())
}

/// Conjugation by I x sigma_z: both coherences flip sign.
fn sigma_z_conjugate(x: &XState) -> XState {
    XState {
        o14: -x.o14,
        o23: -x.o23,
        ..*x
    }
}

/// Conjugation by I x sigma_x: swaps the basis pairs |00>,|01> and
/// |10>,|11>, exchanging the two coherence subspaces.
fn sigma_x_conjugate(x: &XState) -> XState {
    XState {
        d11: x.d22,
        d22: x.d11,
        d33: x.d44,
        d44: x.d33,
        o14: x.o23,
        o23: x.o14,
    }
}

fn outcome(label: BellLabel, norm: f64, diag: [f64; 4], o14: Complex64, o23: Complex64) -> SwapOutcome {
    if norm == 0.0 {
        return SwapOutcome {
            label,
            probability: 0.0,
            state: None,
            concurrence: None,
        };
    }
    let inv = 1.0 / norm;
    let state = XState {
        d11: diag[0] * inv,
        d22: diag[1] * inv,
        d33: diag[2] * inv,
        d44: diag[3] * inv,
        o14: o14 * inv,
        o23: o23 * inv,
    };
    let concurrence =
        concurrence_x(&state).expect("swap outcome states satisfy the X positivity bounds");
    SwapOutcome {
        label,
        probability: norm / 2.0,
        state: Some(state),
        concurrence: Some(concurrence),
    }
}

/// The four outcome states and probabilities of a Bell measurement on the
/// local qubits of two X-state pairs.
///
/// Each phi branch keeps probability N_phi/2 and each psi branch N_psi/2;
/// the plus and minus branches differ only in the sign of both coherences.
/// A branch with zero norm is returned undefined.
pub fn swap_outcomes(x: &XState, xp: &XState) -> Result<SwapOutcomeSet, XStateError> {
    require_valid(x)?;
    require_valid(xp)?;
    let [a1, a2, a3, a4] = x.clamped_diag();
    let [b1, b2, b3, b4] = xp.clamped_diag();

    let n_phi = (a1 + a3) * (b1 + b3) + (a2 + a4) * (b2 + b4);
    let n_psi = (a1 + a3) * (b2 + b4) + (a2 + a4) * (b1 + b3);

    let phi_diag = [
        a1 * b1 + a2 * b2,
        a1 * b3 + a2 * b4,
        a3 * b1 + a4 * b2,
        a3 * b3 + a4 * b4,
    ];
    let phi_o14 = x.o14 * xp.o14 + x.o23 * xp.o23;
    let phi_o23 = x.o14 * xp.o23.conj() + x.o23 * xp.o14.conj();

    let psi_diag = [
        a1 * b2 + a2 * b1,
        a1 * b4 + a2 * b3,
        a3 * b2 + a4 * b1,
        a3 * b4 + a4 * b3,
    ];
    let psi_o14 = x.o14 * xp.o23 + x.o23 * xp.o14;
    let psi_o23 = x.o14 * xp.o14.conj() + x.o23 * xp.o23.conj();

    Ok(SwapOutcomeSet {
        outcomes: [
            outcome(BellLabel::PhiPlus, n_phi, phi_diag, phi_o14, phi_o23),
            outcome(BellLabel::PhiMinus, n_phi, phi_diag, -phi_o14, -phi_o23),
            outcome(BellLabel::PsiPlus, n_psi, psi_diag, psi_o14, psi_o23),
            outcome(BellLabel::PsiMinus, n_psi, psi_diag, -psi_o14, -psi_o23),
        ],
    })
}

/// |m14^2 + m23^2 e^{2i delta}|: the modulus of the phi-outcome coherence
/// built from two equal inputs whose coherence phases differ by `delta`.
/// At delta = 0 it is m14^2 + m23^2; at pi/2 it collapses to |m14^2 - m23^2|.
fn phi_coherence_magnitude(m14: f64, m23: f64, delta: f64) -> f64 {
    let s = m14 * m14 + m23 * m23;
    let cross = 2.0 * m14 * m23 * delta.sin();
    (s * s - cross * cross).max(0.0).sqrt()
}

/// Concurrence of the phi outcomes for equal inputs `x`, as a function of
/// the relative coherence phase `delta` (the state's own phases are ignored;
/// only its moduli and diagonal enter).
pub fn concurrence_phi(x: &XState, delta: f64) -> Result<f64, XStateError> {
    require_valid(x)?;
    let [d11, d22, d33, d44] = x.clamped_diag();
    let (m14, m23) = x.coherence_mods();
    let g = phi_coherence_magnitude(m14, m23, delta);
    let denom = (d11 + d33).powi(2) + (d22 + d44).powi(2);
    Ok(2.0 * (g - (d11 * d33 + d22 * d44)).max(0.0) / denom)
}

/// Concurrence of the psi outcomes for equal inputs `x`; independent of the
/// coherence phases. Returns 0 when the psi branches have zero probability.
pub fn concurrence_psi(x: &XState) -> Result<f64, XStateError> {
    require_valid(x)?;
    let [d11, d22, d33, d44] = x.clamped_diag();
    let (m14, m23) = x.coherence_mods();
    let denom = (d11 + d33) * (d22 + d44);
    if denom == 0.0 {
        return Ok(0.0);
    }
    let g0 = m14 * m14 + m23 * m23;
    Ok((g0 - 2.0 * (d11 * d22 * d33 * d44).sqrt()).max(0.0) / denom)
}

/// (C_phi at delta = 0, C_psi) for equal inputs: the outcome concurrences
/// after phase alignment, where C_phi is maximal.
pub fn concurrences_aligned(x: &XState) -> Result<(f64, f64), XStateError> {
    Ok((concurrence_phi(x, 0.0)?, concurrence_psi(x)?))
}

/// Classifies the equal-input outcome regime by comparing
/// s = |o14|^2 + |o23|^2 against its two bounds:
/// s > d11 d33 + d22 d44 means all four outcomes entangled, and otherwise
/// s > 2 sqrt(d11 d22 d33 d44) means only the two psi outcomes are.
/// Phases never enter; boundaries count downward (strict inequalities).
pub fn outcome_entanglement_conditions(x: &XState) -> Result<OutcomeRegime, XStateError> {
    require_valid(x)?;
    Ok(conditions_unchecked(x))
}

fn conditions_unchecked(x: &XState) -> OutcomeRegime {
    let [d11, d22, d33, d44] = x.clamped_diag();
    let (m14, m23) = x.coherence_mods();
    let s = m14 * m14 + m23 * m23;
    if s > d11 * d33 + d22 * d44 {
        OutcomeRegime::FourEntangled
    } else if s > 2.0 * (d11 * d22 * d33 * d44).sqrt() {
        OutcomeRegime::TwoEntangled
    } else {
        OutcomeRegime::AllSeparable
    }
}

/// Threshold concurrences for equal inputs: the input-entanglement levels
/// below which all outcomes are separable (c_th_min) and above which all
/// four are entangled (c_th_max), both built from min{|o14|^2, |o23|^2} and
/// min{sqrt(d11 d44), sqrt(d22 d33)}.
///
/// The regime is assigned from [`outcome_entanglement_conditions`], the
/// primitive classification; a separable input short-circuits to
/// `AllSeparable`. For valid states the radicands are provably nonnegative
/// up to rounding slop; a clamp at zero is flagged when it fires.
pub fn thresholds(x: &XState) -> Result<ThresholdReport, XStateError> {
    require_valid(x)?;
    let c_in = concurrence_x(x)?;
    let [d11, d22, d33, d44] = x.clamped_diag();
    let (m14, m23) = x.coherence_mods();
    let w = (m14 * m14).min(m23 * m23);
    let v = (d11 * d44).sqrt().min((d22 * d33).sqrt());

    let rad_min = 2.0 * (d11 * d22 * d33 * d44).sqrt() - w;
    let rad_max = (d11 * d33 + d22 * d44) - w;
    let c_th_min = 2.0 * (rad_min.max(0.0).sqrt() - v);
    let c_th_max = 2.0 * (rad_max.max(0.0).sqrt() - v);

    let regime = if c_in == 0.0 {
        OutcomeRegime::AllSeparable
    } else {
        conditions_unchecked(x)
    };
    Ok(ThresholdReport {
        c_in,
        c_th_min,
        c_th_max,
        regime,
        radicand_clamped_min: rad_min < 0.0,
        radicand_clamped_max: rad_max < 0.0,
    })
}

/// Extremal outcome concurrences over all coherence choices for a fixed
/// diagonal, attained at full coherence |o14| = sqrt(d11 d44),
/// |o23| = sqrt(d22 d33): the psi maximum
/// (sqrt(d11 d44) - sqrt(d22 d33))^2 / ((d11+d33)(d22+d44)) and the phi value
/// max{0, 2 (d11-d22)(d44-d33) / ((d11+d33)^2 + (d22+d44)^2)}.
/// The psi value is reported as 0 when its branch has zero probability.
pub fn max_outcome_concurrences(diag: [f64; 4]) -> Result<(f64, f64), XStateError> {
    let [d11, d22, d33, d44] = diag;
    let x = XState {
        d11,
        d22,
        d33,
        d44,
        o14: Complex64::new((d11.max(0.0) * d44.max(0.0)).sqrt(), 0.0),
        o23: Complex64::new((d22.max(0.0) * d33.max(0.0)).sqrt(), 0.0),
    };
    require_valid(&x)?;
    let [d11, d22, d33, d44] = x.clamped_diag();
    let psi_denom = (d11 + d33) * (d22 + d44);
    let c_psi_max = if psi_denom == 0.0 {
        0.0
    } else {
        ((d11 * d44).sqrt() - (d22 * d33).sqrt()).powi(2) / psi_denom
    };
    let phi_denom = (d11 + d33).powi(2) + (d22 + d44).powi(2);
    let c_phi_max = (2.0 * (d11 - d22) * (d44 - d33) / phi_denom).max(0.0);
    Ok((c_psi_max, c_phi_max))
}

/// Verifies the single-qubit conjugation identities among the four outcomes:
/// the minus branches are the sigma_z conjugates of the plus branches, and,
/// when the report says so, the psi branches are additionally the sigma_x
/// conjugates of the phi branches.
pub fn local_unitary_equivalence_check(
    set: &SwapOutcomeSet,
) -> Result<LuEquivalenceReport, UndefinedOutcome> {
    let mut states = [XState::maximally_mixed(); 4];
    for label in BellLabel::ALL {
        states[label.index()] = set
            .outcome(label)
            .state
            .ok_or(UndefinedOutcome { label })?;
    }
    let [phi_p, phi_m, psi_p, psi_m] = states;
    let phi_z = xstate_max_abs_diff(&sigma_z_conjugate(&phi_p), &phi_m);
    let psi_z = xstate_max_abs_diff(&sigma_z_conjugate(&psi_p), &psi_m);
    let cross = xstate_max_abs_diff(&sigma_x_conjugate(&phi_p), &psi_p)
        .max(xstate_max_abs_diff(&sigma_x_conjugate(&phi_m), &psi_m));
    Ok(LuEquivalenceReport {
        phi_pair_sigma_z: phi_z <= LU_TOLERANCE,
        psi_pair_sigma_z: psi_z <= LU_TOLERANCE,
        cross_sigma_x: cross <= LU_TOLERANCE,
        max_sigma_z_defect: phi_z.max(psi_z),
        max_sigma_x_defect: cross,
    })
}
