//! Fuzzed parameters through state construction, swap, and thresholds. The
//! closed-form pipeline must never panic, and on every state pair it accepts
//! the structural invariants must hold.

#![no_main]

use libfuzzer_sys::fuzz_target;
use xswap::swap::{swap_outcomes, thresholds};
use xswap::xstate::validate;
use xswap::{Complex64, Tolerance, XState};

fn f64_at(data: &[u8], index: usize) -> f64 {
    let start = index * 8;
    match data.get(start..start + 8) {
        Some(bytes) => f64::from_le_bytes(bytes.try_into().unwrap()),
        None => 0.0,
    }
}

fn unit_at(data: &[u8], index: usize) -> f64 {
    let start = index * 8;
    let raw = match data.get(start..start + 8) {
        Some(bytes) => u64::from_le_bytes(bytes.try_into().unwrap()),
        None => 0,
    };
    (raw >> 11) as f64 / (1u64 << 53) as f64
}

// Normalized construction: always lands inside the valid region, so the
// fuzzer spends its time in the pipeline instead of in rejected inputs.
fn built_state(data: &[u8], offset: usize) -> Option<XState> {
    let raw = [
        unit_at(data, offset) + 1e-6,
        unit_at(data, offset + 1) + 1e-6,
        unit_at(data, offset + 2) + 1e-6,
        unit_at(data, offset + 3) + 1e-6,
    ];
    let sum: f64 = raw.iter().sum();
    let d = raw.map(|r| r / sum);
    let o14 = Complex64::from_polar(
        unit_at(data, offset + 4) * (d[0] * d[3]).sqrt(),
        unit_at(data, offset + 5) * std::f64::consts::TAU,
    );
    let o23 = Complex64::from_polar(
        unit_at(data, offset + 6) * (d[1] * d[2]).sqrt(),
        unit_at(data, offset + 7) * std::f64::consts::TAU,
    );
    XState::new(d[0], d[1], d[2], d[3], o14, o23).ok()
}

// Raw floats: almost always rejected, which exercises the validators.
fn raw_state(data: &[u8], offset: usize) -> Option<XState> {
    XState::new(
        f64_at(data, offset),
        f64_at(data, offset + 1),
        f64_at(data, offset + 2),
        f64_at(data, offset + 3),
        Complex64::new(f64_at(data, offset + 4), f64_at(data, offset + 5)),
        Complex64::new(f64_at(data, offset + 6), f64_at(data, offset + 7)),
    )
    .ok()
}

fuzz_target!(|data: &[u8]| {
    let Some(first) = data.first().copied() else {
        return;
    };
    let body = &data[1..];
    let (x, xp) = if first & 1 == 0 {
        (built_state(body, 0), built_state(body, 8))
    } else {
        (raw_state(body, 0), raw_state(body, 8))
    };
    let (Some(x), Some(xp)) = (x, xp) else {
        return;
    };

    let set = swap_outcomes(&x, &xp).expect("valid states must swap");
    assert!(set.probability_sum_defect() <= 1e-9, "probabilities must sum to 1");
    for outcome in &set.outcomes {
        assert!(outcome.probability >= 0.0);
        if let Some(state) = &outcome.state {
            assert!(
                validate(state, Tolerance::new(1e-8)).pass,
                "outcome states must be valid"
            );
        }
        if let Some(c) = outcome.concurrence {
            assert!((0.0..=1.0 + 1e-12).contains(&c), "concurrence must stay in range");
        }
    }

    let report = thresholds(&x).expect("thresholds must exist for valid states");
    assert!(report.c_th_min.is_finite() && report.c_th_max.is_finite());
});
