//! Brute-force verification path: build the full 16-dimensional two-pair
//! state, apply Bell projectors as dense matrices, and compute concurrence
//! from its spectral definition.
//!
//! Nothing here reuses the closed-form swap or concurrence expressions; the
//! only shared code is the dense linear algebra and the X-state-to-matrix
//! conversion. Agreement between this module and [`crate::swap`] is the
//! crate's central correctness claim.

use crate::linalg::{self, CMatrix, Complex64, Tolerance};
use crate::xstate::{to_matrix, validate, XState, XStateError};
use crate::BellLabel;
use thiserror::Error;

/// Probabilities below this are rounding residue of an exactly impossible
/// outcome; the conditional state is reported undefined rather than divided
/// by noise.
pub const PROBABILITY_FLOOR: f64 = 1e-15;

/// Spectral clamp: eigenvalues below this are treated as exact zeros before
/// square roots in [`concurrence_general`].
pub const EIGENVALUE_FLOOR: f64 = 1e-14;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error(
        "not a density matrix: hermiticity defect {:.3e}, trace defect {:.3e}, min eigenvalue {:.3e}",
        .0.hermiticity_defect, .0.trace_defect, .0.min_eigenvalue
    )]
    InvalidDensity(linalg::DensityDiagnostics),
}

/// Full state of both pairs, subsystem order (A, B, C1, C2), where (A, C1)
/// hold the first input pair and (B, C2) the second.
#[derive(Debug, Clone)]
pub struct JointState {
    pub matrix: CMatrix,
}

/// Tensors the two pairs and reorders subsystems from (A, C1, B, C2) to
/// (A, B, C1, C2).
pub fn joint_state(x: &XState, xp: &XState) -> Result<JointState, XStateError> {
    for state in [x, xp] {
        let diag = validate(state, Tolerance::default());
        if !diag.pass {
            return Err(XStateError::Invalid(diag));
        }
    }
    let product = linalg::kron(&to_matrix(x), &to_matrix(xp));
    // Qubit bits of a flat index in the product order, most significant
    // first: (a, c1, b, c2). Target order: (a, b, c1, c2).
    let reorder = |flat: usize| -> usize {
        let a = (flat >> 3) & 1;
        let c1 = (flat >> 2) & 1;
        let b = (flat >> 1) & 1;
        let c2 = flat & 1;
        (a << 3) | (b << 2) | (c1 << 1) | c2
    };
    let mut matrix = CMatrix::zeros(16);
    for row in 0..16 {
        for col in 0..16 {
            matrix.set(reorder(row), reorder(col), product.get(row, col));
        }
    }
    Ok(JointState { matrix })
}

/// Rank-one projectors onto the four Bell states of a qubit pair, in
/// [`BellLabel::ALL`] order.
pub fn bell_projectors() -> [CMatrix; 4] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let p = Complex64::new(s, 0.0);
    let m = Complex64::new(-s, 0.0);
    [
        CMatrix::projector(&[p, z, z, p]),
        CMatrix::projector(&[p, z, z, m]),
        CMatrix::projector(&[z, p, p, z]),
        CMatrix::projector(&[z, p, m, z]),
    ]
}

/// One Bell-measurement branch: outcome probability and, when the
/// probability is nonzero, the conditional state of the remote pair (A, B).
#[derive(Debug, Clone)]
pub struct BellMeasurement {
    pub label: BellLabel,
    pub probability: f64,
    pub state: Option<CMatrix>,
}

/// Projects the (C1, C2) pair onto each Bell state and traces it out.
pub fn measure_bell(joint: &JointState) -> [BellMeasurement; 4] {
    let i4 = CMatrix::identity(4);
    BellLabel::ALL.map(|label| {
        let projector = linalg::kron(&i4, &bell_projectors()[label.index()]);
        let projected = projector.mul(&joint.matrix).mul(&projector);
        // Projector expectation of a density matrix; negative only by
        // rounding, so clamp.
        let probability = projected.trace().re.max(0.0);
        let state = if probability > PROBABILITY_FLOOR {
            Some(
                linalg::partial_trace(&projected, &[2, 2, 2, 2], &[0, 1])
                    .scale(1.0 / probability),
            )
        } else {
            None
        };
        BellMeasurement {
            label,
            probability,
            state,
        }
    })
}

/// Wootters concurrence from its spectral definition, for any two-qubit
/// density matrix.
///
/// Computes sqrt(rho) (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y)
/// sqrt(rho), takes the descending square roots of its eigenvalues, and
/// returns max{0, l1 - l2 - l3 - l4}. Eigenvalues under
/// [`EIGENVALUE_FLOOR`] are clamped to zero before each square root.
pub fn concurrence_general(rho: &CMatrix, tol: Tolerance) -> Result<f64, OracleError> {
    let density = linalg::validate_density(rho, tol);
    if !density.pass {
        return Err(OracleError::InvalidDensity(density));
    }
    let clamp_sqrt = |v: f64| if v < EIGENVALUE_FLOOR { 0.0 } else { v.sqrt() };

    let sy = CMatrix::from_data(
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    );
    let yy = linalg::kron(&sy, &sy);
    let spin_flipped = yy.mul(&rho.conj()).mul(&yy);

    let sqrt_rho = linalg::eigh(rho, tol)
        .expect("density validation bounds the hermiticity defect")
        .reconstruct_with(clamp_sqrt);
    let core = sqrt_rho.mul(&spin_flipped).mul(&sqrt_rho);
    let eigs = linalg::eigh(&core, Tolerance::default())
        .expect("sqrt(rho) R sqrt(rho) is Hermitian up to rounding");
    let lambdas: Vec<f64> = eigs.values.iter().map(|&v| clamp_sqrt(v)).collect();
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(c.clamp(0.0, 1.0))
}
