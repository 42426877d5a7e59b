//! Arbitrary text through the state-file parser: must never panic, and any
//! document it accepts must survive an emit/reparse round trip exactly.

#![no_main]

use libfuzzer_sys::fuzz_target;
use xswap::statefile::{parse_states, StateFile};
use xswap::swap::xstate_max_abs_diff;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(states) = parse_states(text) else {
        return;
    };
    let file = match states.as_slice() {
        [x] => StateFile::single(x),
        [x, xp] => StateFile::pair(x, xp),
        _ => unreachable!("parse_states only accepts one or two states"),
    };
    let emitted = file.to_json();
    let reparsed = parse_states(&emitted).expect("emitted document must reparse");
    assert_eq!(states.len(), reparsed.len());
    for (a, b) in states.iter().zip(&reparsed) {
        assert_eq!(xstate_max_abs_diff(a, b), 0.0, "round trip must be exact");
    }
});
