//! Entanglement swapping for two-qubit X-states.
//!
//! Two nodes each hold one qubit of an X-state pair; a Bell-basis measurement
//! on the two co-located qubits leaves the remote pair in one of four outcome
//! states, every one of them again an X-state. This crate computes those
//! outcomes in closed form ([`swap`]), classifies when they stay entangled and
//! what input concurrence that requires ([`swap::thresholds`]), and checks
//! every closed-form quantity against a brute-force 16-dimensional projection
//! oracle ([`oracle`]) that shares no code with the closed-form path.
//!
//! # Quick start
//!
//! ```
//! use xswap::{swap, XState};
//!
//! // Werner state at visibility 0.8.
//! let x = xswap::families::werner(0.8).unwrap().input;
//! let outcomes = swap::swap_outcomes(&x, &x).unwrap();
//! let report = swap::thresholds(&x).unwrap();
//! assert!(outcomes.probability_sum_defect() < 1e-12);
//! assert_eq!(report.regime, swap::OutcomeRegime::FourEntangled);
//! ```
//!
//! The `xswap` binary exposes the same machinery as `swap`, `classify`,
//! `sweep`, `verify`, and `sample` subcommands; see the crate README.

pub mod families;
pub mod linalg;
pub mod oracle;
pub mod sample;
pub mod statefile;
pub mod swap;
pub mod sweep;
pub mod verify;
pub mod xstate;

pub use linalg::{CMatrix, Complex64, Tolerance};
pub use xstate::{EntanglementRegime, XState};

/// Bell-basis measurement outcome labels, in the fixed order used by every
/// four-element outcome array in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellLabel {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellLabel {
    /// All four labels in canonical order.
    pub const ALL: [BellLabel; 4] = [
        BellLabel::PhiPlus,
        BellLabel::PhiMinus,
        BellLabel::PsiPlus,
        BellLabel::PsiMinus,
    ];

    /// Index of this label in [`BellLabel::ALL`].
    pub fn index(self) -> usize {
        match self {
            BellLabel::PhiPlus => 0,
            BellLabel::PhiMinus => 1,
            BellLabel::PsiPlus => 2,
            BellLabel::PsiMinus => 3,
        }
    }

    /// True for the two phi outcomes, which preserve the diagonal pattern of
    /// the inputs; the psi outcomes swap it.
    pub fn is_phi(self) -> bool {
        matches!(self, BellLabel::PhiPlus | BellLabel::PhiMinus)
    }
}

impl std::fmt::Display for BellLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BellLabel::PhiPlus => "phi+",
            BellLabel::PhiMinus => "phi-",
            BellLabel::PsiPlus => "psi+",
            BellLabel::PsiMinus => "psi-",
        };
        f.write_str(s)
    }
}
