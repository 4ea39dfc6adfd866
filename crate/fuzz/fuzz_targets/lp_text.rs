#![no_main]

//! Parsed programs must survive a write/parse round trip, and small ones
//! must solve to a verifiable result.

use gridcover::opt::{farkas_valid, lp_solve, parse_lp, ray_valid, verify, write_lp, Certificate, LpStatus};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = parse_lp(text) else { return };
    assert_eq!(parse_lp(&write_lp(&p)).expect("written program parses"), p);
    if p.num_vars() > 8 || p.rows.len() > 8 {
        return;
    }
    let sol = lp_solve(&p).expect("validated program solves");
    match (sol.status, &sol.certificate) {
        (LpStatus::Optimal, _) => verify(&p, &sol).expect("optimum verifies"),
        (LpStatus::Infeasible, Some(Certificate::Farkas(y))) => assert!(farkas_valid(&p, y)),
        (LpStatus::Unbounded, Some(Certificate::Ray { point, direction })) => {
            assert!(ray_valid(&p, point, direction))
        }
        other => panic!("status without certificate: {other:?}"),
    }
});
