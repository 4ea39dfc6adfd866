#![no_main]

use gridcover::Grid;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = Grid::from_json_str(text) else { return };
    let back = Grid::from_json_str(&g.to_json_string()).expect("serialized grid reparses");
    assert_eq!(back, g);
    assert_eq!(back.fingerprint(), g.fingerprint());
});
