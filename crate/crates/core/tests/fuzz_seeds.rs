//! Replays the checked-in fuzz corpus through the same checks the fuzz
//! targets make, so the seeds stay valid on a stable toolchain.

use std::fs;
use std::path::PathBuf;

use gridcover::cover::{check_weighting, WeightingJson};
use gridcover::grid::make_simplex;
use gridcover::incidence::{verify_cover, CoverJson};
use gridcover::opt::{farkas_valid, lp_solve, parse_lp, ray_valid, verify, write_lp, Certificate, LpStatus};
use gridcover::{Grid, Scalar};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.display().to_string(), fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn scalar_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("scalar") {
        if let Ok(v) = text.parse::<Scalar>() {
            assert_eq!(v.to_string().parse::<Scalar>().unwrap(), v, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 4);
}

#[test]
fn grid_json_seeds() {
    for (name, text) in seeds("grid_json") {
        let g = Grid::from_json_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(Grid::from_json_str(&g.to_json_string()).unwrap(), g, "{name}");
    }
}

#[test]
fn cover_json_seeds() {
    let g = make_simplex(2, 4).unwrap();
    for (name, text) in seeds("cover_json") {
        let raw: CoverJson = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        if let Some(inline) = raw.inline_grid() {
            inline.unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        let cover = raw.into_cover(None).unwrap();
        let report = verify_cover(&g, &cover, 1, g.vertex()).unwrap();
        assert_eq!(report.ok, report.violations.is_empty());
    }
}

#[test]
fn weighting_json_seeds() {
    let g = make_simplex(2, 4).unwrap();
    for (name, text) in seeds("weighting_json") {
        let raw: WeightingJson = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let wt = raw.into_weighting(&g).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(wt.to_json(&g).into_weighting(&g).unwrap(), wt);
        assert_eq!(check_weighting(&g, &wt, 2, false).objective, wt.total());
    }
}

#[test]
fn lp_text_seeds() {
    for (name, text) in seeds("lp_text") {
        let p = parse_lp(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_lp(&write_lp(&p)).unwrap(), p, "{name}");
        let sol = lp_solve(&p).unwrap();
        match (sol.status, &sol.certificate) {
            (LpStatus::Optimal, _) => verify(&p, &sol).unwrap(),
            (LpStatus::Infeasible, Some(Certificate::Farkas(y))) => assert!(farkas_valid(&p, y)),
            (LpStatus::Unbounded, Some(Certificate::Ray { point, direction })) => {
                assert!(ray_valid(&p, point, direction))
            }
            other => panic!("{name}: {other:?}"),
        }
    }
}
