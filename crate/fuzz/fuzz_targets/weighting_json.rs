#![no_main]

use std::sync::OnceLock;

use gridcover::cover::{check_weighting, WeightingJson};
use gridcover::grid::make_simplex;
use gridcover::Grid;
use libfuzzer_sys::fuzz_target;

fn grid() -> &'static Grid {
    static G: OnceLock<Grid> = OnceLock::new();
    G.get_or_init(|| make_simplex(2, 4).expect("valid grid"))
}

fuzz_target!(|data: &[u8]| {
    let Ok(raw) = serde_json::from_slice::<WeightingJson>(data) else {
        return;
    };
    let g = grid();
    let Ok(wt) = raw.into_weighting(g) else { return };
    let back = wt.to_json(g).into_weighting(g).expect("own encoding decodes");
    assert_eq!(back, wt);
    let report = check_weighting(g, &wt, 2, false);
    assert_eq!(report.objective, wt.total());
});
