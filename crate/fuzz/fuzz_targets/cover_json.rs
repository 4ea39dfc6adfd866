#![no_main]

//! Cover files are decoded, canonicalized, and verified against a fixed
//! grid. Decoding may fail; nothing may panic.

use std::sync::OnceLock;

use gridcover::grid::make_simplex;
use gridcover::incidence::{verify_cover, CoverJson};
use gridcover::Grid;
use libfuzzer_sys::fuzz_target;

fn grid() -> &'static Grid {
    static G: OnceLock<Grid> = OnceLock::new();
    G.get_or_init(|| make_simplex(2, 4).expect("valid grid"))
}

fuzz_target!(|data: &[u8]| {
    let Ok(raw) = serde_json::from_slice::<CoverJson>(data) else {
        return;
    };
    // An embedded grid goes through the same validation as a grid file.
    let _ = raw.inline_grid();
    let Ok(cover) = raw.into_cover(None) else { return };
    let g = grid();
    if let Ok(report) = verify_cover(g, &cover, 1, g.vertex()) {
        assert_eq!(report.ok, report.violations.is_empty());
    }
    let again = cover.to_json(g).into_cover(Some(g)).expect("own encoding decodes");
    assert_eq!(again.normalized().size(), cover.normalized().size());
});
