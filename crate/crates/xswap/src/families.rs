//! Closed-form parameter families: the pure-state baseline and the Werner,
//! alpha, and beta mixed-state examples, each swept against one parameter in
//! [0, 1] and reported with its input, outcome, and threshold quantities.

use std::fmt;

use thiserror::Error;

use crate::swap::{concurrences_aligned, thresholds, OutcomeRegime};
use crate::xstate::XState;

/// Slop accepted on nominal [0, 1] parameters before rejecting; values inside
/// it are clamped onto the interval.
const RANGE_SLOP: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum FamilyError {
    #[error("{name} = {value} is outside [0, 1]")]
    OutOfRange { name: &'static str, value: f64 },
}

fn unit_interval(name: &'static str, value: f64) -> Result<f64, FamilyError> {
    if !value.is_finite() || !(-RANGE_SLOP..=1.0 + RANGE_SLOP).contains(&value) {
        return Err(FamilyError::OutOfRange { name, value });
    }
    Ok(value.clamp(0.0, 1.0))
}

/// Mixed-state family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Werner,
    Alpha,
    Beta,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Werner => "werner",
            Family::Alpha => "alpha",
            Family::Beta => "beta",
        })
    }
}

/// One point of the pure-state baseline: equal inputs a|00> + b|11> with
/// a, b real nonnegative and a^2 + b^2 = 1, swapped through a Bell
/// measurement. Probabilities are per branch, so 2 p_phi + 2 p_psi = 1;
/// entanglement values are entanglement of formation in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureSwapPoint {
    pub a: f64,
    pub p_phi: f64,
    pub p_psi: f64,
    pub e_in: f64,
    pub e_phi_out: f64,
    pub e_psi_out: f64,
    pub e_avg: f64,
}

/// One point of a mixed-state family: the input state, its concurrence, the
/// two equal-input outcome concurrences, and the threshold pair with the
/// regime it implies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyPoint {
    pub family: Family,
    pub param: f64,
    pub input: XState,
    pub c_in: f64,
    pub c_out_phi: f64,
    pub c_out_psi: f64,
    pub c_th_min: f64,
    pub c_th_max: f64,
    pub regime: OutcomeRegime,
}

/// Swap statistics for the pure input a|00> + b|11> with b = sqrt(1 - a^2).
///
/// The phi branches each occur with probability (a^4 + b^4)/2 and leave a
/// state of concurrence 2 a^2 b^2 / (a^4 + b^4); the psi branches each occur
/// with probability a^2 b^2 and leave a maximally entangled state whenever
/// they occur at all. The average e_avg weighs the four branches by their
/// probabilities and never exceeds e_in.
pub fn pure_swap(a_mod: f64) -> Result<PureSwapPoint, FamilyError> {
    let a = unit_interval("a", a_mod)?;
    let a2 = a * a;
    let b2 = 1.0 - a2;
    let p_phi = (a2 * a2 + b2 * b2) / 2.0;
    let p_psi = a2 * b2;
    // p_phi >= 1/4, so the phi outcome concurrence below is well defined.
    let e_in = eof_from_concurrence(2.0 * (a2 * b2).sqrt())?;
    let e_phi_out = eof_from_concurrence(a2 * b2 / p_phi)?;
    let e_psi_out = if p_psi > 0.0 { 1.0 } else { 0.0 };
    let e_avg = 2.0 * p_phi * e_phi_out + 2.0 * p_psi * e_psi_out;
    Ok(PureSwapPoint {
        a,
        p_phi,
        p_psi,
        e_in,
        e_phi_out,
        e_psi_out,
        e_avg,
    })
}

/// Entanglement of formation of a two-qubit state with concurrence `c`:
/// h((1 + sqrt(1 - c^2)) / 2) with h the binary entropy in bits. Monotone
/// in c, with E(0) = 0 and E(1) = 1.
pub fn eof_from_concurrence(c: f64) -> Result<f64, FamilyError> {
    let c = unit_interval("concurrence", c)?;
    let x = (1.0 + (1.0 - c * c).max(0.0).sqrt()) / 2.0;
    Ok(binary_entropy(x))
}

fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// Werner state of visibility `gamma`: the maximally mixed state blended
/// with the Bell psi+ projector at weight gamma. Its concurrence is
/// max{0, (3 gamma - 1)/2} and its two threshold concurrences coincide, so
/// the equal-input outcomes jump straight from all separable to all four
/// entangled (at gamma > 1/sqrt(3)).
pub fn werner(gamma: f64) -> Result<FamilyPoint, FamilyError> {
    let g = unit_interval("gamma", gamma)?;
    let lo = (1.0 - g) / 4.0;
    let hi = (1.0 + g) / 4.0;
    let input = XState::with_real_coherences(lo, hi, hi, lo, 0.0, g / 2.0)
        .expect("werner states are valid for gamma in [0, 1]");
    let c_in = ((3.0 * g - 1.0) / 2.0).max(0.0);
    Ok(mixed_point(Family::Werner, g, input, c_in))
}

/// Alpha state: a Bell phi+ fraction `alpha` against an incoherent 01/10
/// remainder, so d11 = d44 = |o14| = alpha/2 and d22 = d33 = (1 - alpha)/2.
/// Its concurrence is max{0, 2 alpha - 1}; all four equal-input outcomes
/// share the concurrence max{0, alpha (3 alpha - 2)}, positive for
/// alpha > 2/3.
pub fn alpha_state(alpha: f64) -> Result<FamilyPoint, FamilyError> {
    let al = unit_interval("alpha", alpha)?;
    let half = al / 2.0;
    let rest = (1.0 - al) / 2.0;
    let input = XState::with_real_coherences(half, rest, rest, half, half, 0.0)
        .expect("alpha states are valid for alpha in [0, 1]");
    let c_in = (2.0 * al - 1.0).max(0.0);
    Ok(mixed_point(Family::Alpha, al, input, c_in))
}

/// Beta state: the Bell mixture beta phi+ + (1 - beta) psi+, an X-state at
/// full coherence with concurrence |1 - 2 beta|. Equal-input swapping maps
/// the family to itself: every outcome is again a beta state, at parameter
/// beta^2 + (1 - beta)^2 for the phi branches and its complement for the
/// psi branches, with outcome concurrence (1 - 2 beta)^2, the square of the
/// input one. Outcomes are entangled for every beta except 1/2.
pub fn beta_state(beta: f64) -> Result<FamilyPoint, FamilyError> {
    let be = unit_interval("beta", beta)?;
    let half = be / 2.0;
    let rest = (1.0 - be) / 2.0;
    let input = XState::with_real_coherences(half, rest, rest, half, half, rest)
        .expect("beta states are valid for beta in [0, 1]");
    let c_in = (1.0 - 2.0 * be).abs();
    Ok(mixed_point(Family::Beta, be, input, c_in))
}

fn mixed_point(family: Family, param: f64, input: XState, c_in: f64) -> FamilyPoint {
    let (c_out_phi, c_out_psi) =
        concurrences_aligned(&input).expect("family inputs are valid");
    let report = thresholds(&input).expect("family inputs are valid");
    FamilyPoint {
        family,
        param,
        input,
        c_in,
        c_out_phi,
        c_out_psi,
        c_th_min: report.c_th_min,
        c_th_max: report.c_th_max,
        regime: report.regime,
    }
}
