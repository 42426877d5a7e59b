//! Two-qubit X-states: seven real parameters, their validity conditions,
//! conversions to and from dense matrices, and the closed-form concurrence.
//!
//! In the product basis {|00>, |01>, |10>, |11>} an X-state is nonzero only
//! on the diagonal (d11..d44) and the anti-diagonal (o14 coupling |00>,|11>
//! and o23 coupling |01>,|10>). Positivity reduces to |o14| <= sqrt(d11 d44)
//! and |o23| <= sqrt(d22 d33), so validity never needs an eigensolver.

use crate::linalg::{CMatrix, Complex64, DensityDiagnostics, Tolerance};
use thiserror::Error;

/// X-state density matrix, stored as its seven free parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    pub d11: f64,
    pub d22: f64,
    pub d33: f64,
    pub d44: f64,
    pub o14: Complex64,
    pub o23: Complex64,
}

/// Which coherence, if either, makes the single-pair state entangled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntanglementRegime {
    Separable,
    /// |o14| > sqrt(d22 d33): the |00>,|11> coherence wins.
    EntangledVia00_11,
    /// |o23| > sqrt(d11 d44): the |01>,|10> coherence wins.
    EntangledVia01_10,
}

/// Validity diagnostics; `pass` requires the trace defect, diagonal floor,
/// and both coherence margins to clear the tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateDiagnostics {
    /// |d11 + d22 + d33 + d44 - 1|.
    pub norm_defect: f64,
    /// Smallest diagonal entry.
    pub min_diag: f64,
    /// sqrt(d11 d44) - |o14|; negative means the coherence is too large.
    pub margin_00_11: f64,
    /// sqrt(d22 d33) - |o23|.
    pub margin_01_10: f64,
    pub pass: bool,
}

impl std::fmt::Display for XStateDiagnostics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "norm defect {:.3e}, min diagonal {:.3e}, coherence margins ({:.3e}, {:.3e})",
            self.norm_defect, self.min_diag, self.margin_00_11, self.margin_01_10
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum XStateError {
    #[error("not a valid X-state: {0}")]
    Invalid(XStateDiagnostics),
    #[error("matrix is not an X-state: largest entry off the X pattern has modulus {defect:.3e}")]
    NonXState { defect: f64 },
    #[error(
        "matrix is not a density matrix: hermiticity defect {:.3e}, trace defect {:.3e}, \
         min eigenvalue {:.3e}",
        .0.hermiticity_defect, .0.trace_defect, .0.min_eigenvalue
    )]
    InvalidDensity(DensityDiagnostics),
    #[error("expected a 4x4 matrix, got dimension {dim}")]
    WrongDimension { dim: usize },
}

impl XState {
    /// Validating constructor at the default tolerance.
    pub fn new(
        d11: f64,
        d22: f64,
        d33: f64,
        d44: f64,
        o14: Complex64,
        o23: Complex64,
    ) -> Result<Self, XStateError> {
        let x = XState {
            d11,
            d22,
            d33,
            d44,
            o14,
            o23,
        };
        let diag = validate(&x, Tolerance::default());
        if diag.pass {
            Ok(x)
        } else {
            Err(XStateError::Invalid(diag))
        }
    }

    /// Constructor for states with real coherences, the common case in the
    /// parameter families.
    pub fn with_real_coherences(
        d11: f64,
        d22: f64,
        d33: f64,
        d44: f64,
        o14: f64,
        o23: f64,
    ) -> Result<Self, XStateError> {
        XState::new(
            d11,
            d22,
            d33,
            d44,
            Complex64::new(o14, 0.0),
            Complex64::new(o23, 0.0),
        )
    }

    pub fn maximally_mixed() -> Self {
        XState {
            d11: 0.25,
            d22: 0.25,
            d33: 0.25,
            d44: 0.25,
            o14: Complex64::new(0.0, 0.0),
            o23: Complex64::new(0.0, 0.0),
        }
    }

    /// (|00> + |11>)/sqrt(2) as a density matrix.
    pub fn bell_phi_plus() -> Self {
        XState {
            d11: 0.5,
            d22: 0.0,
            d33: 0.0,
            d44: 0.5,
            o14: Complex64::new(0.5, 0.0),
            o23: Complex64::new(0.0, 0.0),
        }
    }

    /// (|00> - |11>)/sqrt(2).
    pub fn bell_phi_minus() -> Self {
        XState {
            o14: Complex64::new(-0.5, 0.0),
            ..XState::bell_phi_plus()
        }
    }

    /// (|01> + |10>)/sqrt(2).
    pub fn bell_psi_plus() -> Self {
        XState {
            d11: 0.0,
            d22: 0.5,
            d33: 0.5,
            d44: 0.0,
            o14: Complex64::new(0.0, 0.0),
            o23: Complex64::new(0.5, 0.0),
        }
    }

    /// (|01> - |10>)/sqrt(2).
    pub fn bell_psi_minus() -> Self {
        XState {
            o23: Complex64::new(-0.5, 0.0),
            ..XState::bell_psi_plus()
        }
    }

    pub fn diag(&self) -> [f64; 4] {
        [self.d11, self.d22, self.d33, self.d44]
    }

    /// Diagonal with negative-within-tolerance entries clamped at zero, the
    /// form every square root in this crate consumes.
    pub fn clamped_diag(&self) -> [f64; 4] {
        self.diag().map(|d| d.max(0.0))
    }

    /// Coherence moduli (|o14|, |o23|).
    pub fn coherence_mods(&self) -> (f64, f64) {
        (self.o14.norm(), self.o23.norm())
    }

    /// Relative coherence phase theta14 - theta23, the only phase any
    /// swap quantity depends on. Zero when either coherence vanishes.
    pub fn relative_phase(&self) -> f64 {
        if self.o14.norm() == 0.0 || self.o23.norm() == 0.0 {
            0.0
        } else {
            self.o14.arg() - self.o23.arg()
        }
    }

    /// The state after conjugating one qubit by [`phase_alignment_unitary`]:
    /// same diagonal and coherence moduli, relative phase zero.
    pub fn phase_aligned(&self) -> XState {
        let delta = self.relative_phase();
        if delta == 0.0 {
            return *self;
        }
        let half = Complex64::from_polar(1.0, delta / 2.0);
        XState {
            o14: self.o14 * half.conj(),
            o23: self.o23 * half,
            ..*self
        }
    }
}

/// Checks normalization, diagonal positivity, and both coherence bounds.
pub fn validate(x: &XState, tol: Tolerance) -> XStateDiagnostics {
    let [d11, d22, d33, d44] = x.diag();
    let norm_defect = (d11 + d22 + d33 + d44 - 1.0).abs();
    let min_diag = d11.min(d22).min(d33).min(d44);
    let [c11, c22, c33, c44] = x.clamped_diag();
    let margin_00_11 = (c11 * c44).sqrt() - x.o14.norm();
    let margin_01_10 = (c22 * c33).sqrt() - x.o23.norm();
    let pass = norm_defect <= tol.atol
        && min_diag >= -tol.atol
        && margin_00_11 >= -tol.atol
        && margin_01_10 >= -tol.atol;
    XStateDiagnostics {
        norm_defect,
        min_diag,
        margin_00_11,
        margin_01_10,
        pass,
    }
}

/// Dense 4x4 density matrix for `x`; Hermitian by construction.
pub fn to_matrix(x: &XState) -> CMatrix {
    let mut m = CMatrix::zeros(4);
    m.set(0, 0, Complex64::new(x.d11, 0.0));
    m.set(1, 1, Complex64::new(x.d22, 0.0));
    m.set(2, 2, Complex64::new(x.d33, 0.0));
    m.set(3, 3, Complex64::new(x.d44, 0.0));
    m.set(0, 3, x.o14);
    m.set(3, 0, x.o14.conj());
    m.set(1, 2, x.o23);
    m.set(2, 1, x.o23.conj());
    m
}

/// Reads an X-state back out of a dense matrix.
///
/// The matrix must be a density matrix within `tol` and carry no weight off
/// the X pattern beyond `tol`; off-pattern entries and the tiny imaginary
/// parts rounding leaves on the diagonal are discarded, and Hermitian pairs
/// are averaged.
pub fn from_matrix(m: &CMatrix, tol: Tolerance) -> Result<XState, XStateError> {
    if m.dim != 4 {
        return Err(XStateError::WrongDimension { dim: m.dim });
    }
    let density = crate::linalg::validate_density(m, tol);
    if !density.pass {
        return Err(XStateError::InvalidDensity(density));
    }
    let on_pattern = |i: usize, j: usize| i == j || i + j == 3;
    let mut defect: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if !on_pattern(i, j) {
                defect = defect.max(m.get(i, j).norm());
            }
        }
    }
    if defect > tol.atol {
        return Err(XStateError::NonXState { defect });
    }
    let x = XState {
        d11: m.get(0, 0).re,
        d22: m.get(1, 1).re,
        d33: m.get(2, 2).re,
        d44: m.get(3, 3).re,
        o14: (m.get(0, 3) + m.get(3, 0).conj()) * 0.5,
        o23: (m.get(1, 2) + m.get(2, 1).conj()) * 0.5,
    };
    let diag = validate(&x, tol);
    if diag.pass {
        Ok(x)
    } else {
        Err(XStateError::Invalid(diag))
    }
}

pub(crate) fn require_valid(x: &XState) -> Result<(), XStateError> {
    let diag = validate(x, Tolerance::default());
    if diag.pass {
        Ok(())
    } else {
        Err(XStateError::Invalid(diag))
    }
}

/// Wootters concurrence in closed form:
/// `2 max{0, |o14| - sqrt(d22 d33), |o23| - sqrt(d11 d44)}`.
pub fn concurrence_x(x: &XState) -> Result<f64, XStateError> {
    require_valid(x)?;
    let [d11, d22, d33, d44] = x.clamped_diag();
    let via_00_11 = x.o14.norm() - (d22 * d33).sqrt();
    let via_01_10 = x.o23.norm() - (d11 * d44).sqrt();
    Ok(2.0 * via_00_11.max(via_01_10).max(0.0))
}

/// Classifies which coherence, if either, strictly exceeds its separability
/// bound. Ties on the boundary count as separable, matching the strict
/// inequalities in the concurrence.
pub fn entanglement_regime(x: &XState) -> Result<EntanglementRegime, XStateError> {
    require_valid(x)?;
    let [d11, d22, d33, d44] = x.clamped_diag();
    let via_00_11 = x.o14.norm() - (d22 * d33).sqrt();
    let via_01_10 = x.o23.norm() - (d11 * d44).sqrt();
    // Validity allows both excesses to be positive only within tolerance
    // slop; report the one the concurrence maximum picks.
    Ok(if via_00_11 <= 0.0 && via_01_10 <= 0.0 {
        EntanglementRegime::Separable
    } else if via_00_11 >= via_01_10 {
        EntanglementRegime::EntangledVia00_11
    } else {
        EntanglementRegime::EntangledVia01_10
    })
}

/// Single-qubit unitary diag(1, e^{i delta/2}) with delta = theta14 - theta23.
///
/// Conjugating one qubit of the pair by it zeroes the relative coherence
/// phase while leaving diagonals and coherence moduli untouched. Returns the
/// identity when either coherence vanishes and no alignment is needed.
pub fn phase_alignment_unitary(x: &XState) -> Result<CMatrix, XStateError> {
    require_valid(x)?;
    let delta = x.relative_phase();
    let mut u = CMatrix::identity(2);
    u.set(1, 1, Complex64::from_polar(1.0, delta / 2.0));
    Ok(u)
}
