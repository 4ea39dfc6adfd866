#![no_main]

//! `p/q` parsing must never panic, and whatever parses must print back to
//! a string that parses to the same value.

use gridcover::Scalar;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = text.parse::<Scalar>() else { return };
    let printed = v.to_string();
    let back: Scalar = printed.parse().expect("printed scalar parses");
    assert_eq!(back, v);
    assert_eq!(back.to_string(), printed);
});
