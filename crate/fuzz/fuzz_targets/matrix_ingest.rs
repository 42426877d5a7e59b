//! Arbitrary 4x4 complex matrices through the density-matrix decoder: it
//! must reject garbage with an error, never a panic, and anything it accepts
//! must reproduce the matrix it was built from.

#![no_main]

use libfuzzer_sys::fuzz_target;
use xswap::linalg::CMatrix;
use xswap::xstate::{from_matrix, to_matrix};
use xswap::{Complex64, Tolerance};

fn f64_at(data: &[u8], index: usize) -> f64 {
    let start = index * 8;
    match data.get(start..start + 8) {
        Some(bytes) => f64::from_le_bytes(bytes.try_into().unwrap()),
        None => 0.0,
    }
}

fuzz_target!(|data: &[u8]| {
    let mut raw = CMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            let k = 2 * (4 * i + j);
            raw.set(i, j, Complex64::new(f64_at(data, k), f64_at(data, k + 1)));
        }
    }
    ingest(&raw);

    // A Hermitized, trace-normalized copy reaches past the early density
    // checks into the X-pattern and state-validation layers.
    let hermitian = raw.add(&raw.dagger()).scale(0.5);
    let trace = hermitian.trace();
    if trace.re.is_finite() && trace.re > 1e-6 && trace.re < 1e6 {
        ingest(&hermitian.scale(1.0 / trace.re));
    }
});

fn ingest(matrix: &CMatrix) {
    if let Ok(state) = from_matrix(matrix, Tolerance::default()) {
        let rebuilt = to_matrix(&state);
        assert!(
            rebuilt.max_abs_diff(matrix) <= 1e-9,
            "accepted matrix must round trip"
        );
    }
}
