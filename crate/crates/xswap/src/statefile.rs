//! JSON state files: a document holds one or two X-states, each given either
//! by its seven X parameters (diag plus two coherences) or as a full 4x4
//! matrix that must pass the X-pattern check. Coherences accept both
//! cartesian {re, im} and polar {mod, phase_rad} encodings; emission always
//! uses cartesian. Parsing is strict: unknown keys are rejected.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{CMatrix, Complex64, Tolerance};
use crate::xstate::{from_matrix, XState, XStateError};

#[derive(Debug, Error)]
pub enum StateFileError {
    /// Malformed document: bad JSON, schema mismatch, or unknown keys.
    #[error("state file does not parse: {0}")]
    Parse(#[from] serde_json::Error),
    /// Structurally sound document with the wrong number of states.
    #[error("state file must hold one or two states, found {count}")]
    WrongCount { count: usize },
    /// Well-formed document describing an invalid or non-X state.
    #[error(transparent)]
    State(#[from] XStateError),
}

/// Complex number in cartesian form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReImSpec {
    pub re: f64,
    pub im: f64,
}

/// Complex number in polar form; the angle is in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModPhaseSpec {
    #[serde(rename = "mod")]
    pub modulus: f64,
    pub phase_rad: f64,
}

/// One coherence entry in either encoding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexSpec {
    ReIm(ReImSpec),
    ModPhase(ModPhaseSpec),
}

impl ComplexSpec {
    pub fn to_complex(self) -> Complex64 {
        match self {
            ComplexSpec::ReIm(c) => Complex64::new(c.re, c.im),
            ComplexSpec::ModPhase(c) => Complex64::from_polar(c.modulus, c.phase_rad),
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        ComplexSpec::ReIm(ReImSpec { re: z.re, im: z.im })
    }
}

/// X-state given by its seven parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XParamsSpec {
    pub diag: [f64; 4],
    pub o14: ComplexSpec,
    pub o23: ComplexSpec,
}

/// X-state given as a dense 4x4 matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub matrix: [[ComplexSpec; 4]; 4],
}

/// One state record in either form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    XParams(XParamsSpec),
    Matrix(Box<MatrixSpec>),
}

impl StateSpec {
    /// Converts the record to a validated X-state. Matrix records go through
    /// the X-pattern check, so an off-pattern entry surfaces as a state
    /// error, not a parse error.
    pub fn to_xstate(&self) -> Result<XState, XStateError> {
        match self {
            StateSpec::XParams(p) => XState::new(
                p.diag[0],
                p.diag[1],
                p.diag[2],
                p.diag[3],
                p.o14.to_complex(),
                p.o23.to_complex(),
            ),
            StateSpec::Matrix(m) => {
                let mut matrix = CMatrix::zeros(4);
                for (i, row) in m.matrix.iter().enumerate() {
                    for (j, entry) in row.iter().enumerate() {
                        matrix.set(i, j, entry.to_complex());
                    }
                }
                from_matrix(&matrix, Tolerance::default())
            }
        }
    }

    /// Parameter record for an X-state, coherences in cartesian form.
    pub fn from_xstate(x: &XState) -> Self {
        StateSpec::XParams(XParamsSpec {
            diag: [x.d11, x.d22, x.d33, x.d44],
            o14: ComplexSpec::from_complex(x.o14),
            o23: ComplexSpec::from_complex(x.o23),
        })
    }
}

/// A parsed state-file document holding one or two state records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub states: Vec<StateSpec>,
}

/// Accepted document shapes: the wrapped form or a bare single record.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Document {
    Wrapped(StateFile),
    Single(Box<StateSpec>),
}

impl StateFile {
    /// Document with a single state record.
    pub fn single(x: &XState) -> Self {
        StateFile {
            states: vec![StateSpec::from_xstate(x)],
        }
    }

    /// Document with two state records.
    pub fn pair(x: &XState, xp: &XState) -> Self {
        StateFile {
            states: vec![StateSpec::from_xstate(x), StateSpec::from_xstate(xp)],
        }
    }

    /// Converts every record, rejecting documents without one or two states.
    pub fn to_xstates(&self) -> Result<Vec<XState>, StateFileError> {
        if self.states.is_empty() || self.states.len() > 2 {
            return Err(StateFileError::WrongCount {
                count: self.states.len(),
            });
        }
        Ok(self
            .states
            .iter()
            .map(StateSpec::to_xstate)
            .collect::<Result<Vec<XState>, XStateError>>()?)
    }

    /// Compact single-line JSON encoding.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state files always serialize")
    }
}

/// Parses a state-file document. A bare state record is accepted as a
/// one-state document.
pub fn parse(text: &str) -> Result<StateFile, StateFileError> {
    let document: Document = serde_json::from_str(text)?;
    Ok(match document {
        Document::Wrapped(file) => file,
        Document::Single(spec) => StateFile { states: vec![*spec] },
    })
}

/// Parses a document and converts it to validated X-states in one step.
pub fn parse_states(text: &str) -> Result<Vec<XState>, StateFileError> {
    parse(text)?.to_xstates()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{sample_many, SampleConstraint};
    use crate::swap::xstate_max_abs_diff;
    use crate::xstate::to_matrix;

    #[test]
    fn cartesian_document_round_trips() {
        let text = r#"{"states":[{"diag":[0.5,0.0,0.0,0.5],
            "o14":{"re":0.5,"im":0.0},"o23":{"re":0.0,"im":0.0}}]}"#;
        let states = parse_states(text).unwrap();
        assert_eq!(states.len(), 1);
        assert_eq!(
            xstate_max_abs_diff(&states[0], &XState::bell_phi_plus()),
            0.0
        );
    }

    #[test]
    fn polar_coherences_are_converted_on_read() {
        let text = r#"{"states":[{"diag":[0.25,0.25,0.25,0.25],
            "o14":{"mod":0.1,"phase_rad":1.5707963267948966},
            "o23":{"mod":0.2,"phase_rad":3.141592653589793}}]}"#;
        let states = parse_states(text).unwrap();
        let x = &states[0];
        assert!(x.o14.re.abs() < 1e-15);
        assert!((x.o14.im - 0.1).abs() < 1e-15);
        assert!((x.o23.re + 0.2).abs() < 1e-15);
        assert!(x.o23.im.abs() < 1e-15);
    }

    #[test]
    fn bare_single_record_is_a_one_state_document() {
        let text = r#"{"diag":[0.25,0.25,0.25,0.25],
            "o14":{"re":0.0,"im":0.0},"o23":{"re":0.0,"im":0.0}}"#;
        let states = parse_states(text).unwrap();
        assert_eq!(states.len(), 1);
    }

    #[test]
    fn two_state_documents_parse_and_more_are_rejected() {
        let one = r#"{"diag":[0.25,0.25,0.25,0.25],"o14":{"re":0.0,"im":0.0},"o23":{"re":0.0,"im":0.0}}"#;
        let two = format!(r#"{{"states":[{one},{one}]}}"#);
        assert_eq!(parse_states(&two).unwrap().len(), 2);
        let three = format!(r#"{{"states":[{one},{one},{one}]}}"#);
        assert!(matches!(
            parse_states(&three),
            Err(StateFileError::WrongCount { count: 3 })
        ));
        assert!(matches!(
            parse_states(r#"{"states":[]}"#),
            Err(StateFileError::WrongCount { count: 0 })
        ));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"states":[{"diag":[0.25,0.25,0.25,0.25],
            "o14":{"re":0.0,"im":0.0},"o23":{"re":0.0,"im":0.0},"extra":1}]}"#;
        assert!(matches!(parse_states(text), Err(StateFileError::Parse(_))));
        let bad_complex = r#"{"states":[{"diag":[0.25,0.25,0.25,0.25],
            "o14":{"re":0.0,"im":0.0,"mod":0.0},"o23":{"re":0.0,"im":0.0}}]}"#;
        assert!(matches!(
            parse_states(bad_complex),
            Err(StateFileError::Parse(_))
        ));
        let top_level = r#"{"states":[],"comment":"hi"}"#;
        assert!(matches!(
            parse_states(top_level),
            Err(StateFileError::Parse(_))
        ));
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(parse_states("{"), Err(StateFileError::Parse(_))));
        assert!(matches!(
            parse_states(r#"{"states":"no"}"#),
            Err(StateFileError::Parse(_))
        ));
    }

    #[test]
    fn invalid_states_parse_but_fail_conversion() {
        // Coherence beyond the positivity bound: a parseable document whose
        // state is rejected.
        let text = r#"{"states":[{"diag":[0.25,0.25,0.25,0.25],
            "o14":{"re":0.4,"im":0.0},"o23":{"re":0.0,"im":0.0}}]}"#;
        assert!(matches!(parse_states(text), Err(StateFileError::State(_))));
    }

    #[test]
    fn matrix_records_go_through_the_x_pattern_check() {
        let x = XState::bell_psi_plus();
        let m = to_matrix(&x);
        let zero = ComplexSpec::ReIm(ReImSpec { re: 0.0, im: 0.0 });
        let mut spec = MatrixSpec {
            matrix: [[zero; 4]; 4],
        };
        for i in 0..4 {
            for j in 0..4 {
                spec.matrix[i][j] = ComplexSpec::from_complex(m.get(i, j));
            }
        }
        let good = StateFile {
            states: vec![StateSpec::Matrix(Box::new(spec))],
        };
        let states = parse_states(&good.to_json()).unwrap();
        assert!(xstate_max_abs_diff(&states[0], &x) < 1e-15);

        // A valid density matrix with an off-pattern Hermitian pair is a
        // state error carrying the X defect, not a parse error.
        let mild = to_matrix(
            &XState::with_real_coherences(0.25, 0.25, 0.25, 0.25, 0.0, 0.1).unwrap(),
        );
        let mut off = MatrixSpec {
            matrix: [[zero; 4]; 4],
        };
        for i in 0..4 {
            for j in 0..4 {
                off.matrix[i][j] = ComplexSpec::from_complex(mild.get(i, j));
            }
        }
        off.matrix[0][1] = ComplexSpec::ReIm(ReImSpec { re: 0.05, im: 0.0 });
        off.matrix[1][0] = ComplexSpec::ReIm(ReImSpec { re: 0.05, im: 0.0 });
        let bad = StateFile {
            states: vec![StateSpec::Matrix(Box::new(off))],
        };
        match parse_states(&bad.to_json()) {
            Err(StateFileError::State(XStateError::NonXState { defect })) => {
                assert!((defect - 0.05).abs() < 1e-15);
            }
            other => panic!("expected an X-pattern defect, got {other:?}"),
        }
    }

    #[test]
    fn emitted_documents_reparse_to_the_same_states() {
        let states = sample_many(6, 21, SampleConstraint::Any).unwrap();
        for pair in states.chunks(2) {
            let text = StateFile::pair(&pair[0], &pair[1]).to_json();
            let back = parse_states(&text).unwrap();
            assert_eq!(xstate_max_abs_diff(&back[0], &pair[0]), 0.0);
            assert_eq!(xstate_max_abs_diff(&back[1], &pair[1]), 0.0);
        }
        let single = StateFile::single(&states[0]).to_json();
        assert_eq!(parse_states(&single).unwrap().len(), 1);
    }
}
