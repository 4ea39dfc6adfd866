//! Seeded acceptance suite. Every check becomes one CSV row; the rows of a
//! criterion decide its verdict. Nothing time-dependent reaches the CSV, so
//! two runs with the same options produce identical bytes.

use std::fmt::Display;
use std::time::{Duration, Instant};

use crate::brute::brute_cov;
use crate::certify::{conical_closed_form, lemma_opt_bound, weighting_generic2, weighting_generic3};
use crate::construct::{construct, generic2_cover, generic3_cover, halfrect_cover, halfrect_value, Scheme};
use crate::cover::{check_weighting, cov, SolveOptions};
use crate::error::{Error, Result};
use crate::grid::{
    make_conical, make_fullgrid_random, make_generic2, make_generic3, make_halfrect, make_simplex, Grid, PointId,
};
use crate::incidence::verify_cover;
use crate::opt::{IlpOptions, DEFAULT_NODE_LIMIT};
use crate::scalar::Scalar;

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "full grid corner"),
    (2, "half-rectangular exact value"),
    (3, "simplex baseline"),
    (4, "generic planar sandwich"),
    (5, "generic 3D construction"),
    (6, "generic 3D weighting"),
    (7, "row-profile dominance"),
    (8, "exact solver properties"),
    (9, "determinism"),
];

#[derive(Clone, Debug)]
pub struct AcceptanceOptions {
    /// Criteria to run; 8 always aggregates whatever 1-7 solved.
    pub criteria: Vec<u8>,
    pub node_limit: u64,
}

impl Default for AcceptanceOptions {
    fn default() -> Self {
        AcceptanceOptions {
            criteria: CRITERIA.iter().map(|c| c.0).collect(),
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub criterion: u8,
    pub instance: String,
    pub quantity: String,
    pub value: String,
    pub expected: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub criterion: u8,
    pub name: &'static str,
    pub pass: bool,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    pub elapsed: Duration,
}

impl Verdict {
    /// One human-readable line, e.g. `criterion 3 simplex baseline: PASS (12 checks)`.
    pub fn line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        let mut s = format!(
            "criterion {} {}: {status} ({} checks, {} failed, {:.1}s)",
            self.criterion,
            self.name,
            self.checks,
            self.failures,
            self.elapsed.as_secs_f64()
        );
        if let Some(f) = &self.first_failure {
            s.push_str(&format!("; first failure: {f}"));
        }
        s
    }
}

#[derive(Clone, Debug, Default)]
pub struct Acceptance {
    pub rows: Vec<CheckRow>,
    pub verdicts: Vec<Verdict>,
}

impl Acceptance {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn verdict(&self, criterion: u8) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.criterion == criterion)
    }

    /// Check rows followed by one `verdict` row per criterion.
    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut write = |rec: [&str; 6]| w.write_record(rec).expect("writing to memory");
        write(["criterion", "instance", "quantity", "value", "expected", "pass"]);
        for r in &self.rows {
            let c = r.criterion.to_string();
            write([&c, &r.instance, &r.quantity, &r.value, &r.expected, bool_str(r.pass)]);
        }
        for v in &self.verdicts {
            let c = v.criterion.to_string();
            let checks = v.checks.to_string();
            let failures = v.failures.to_string();
            write([&c, v.name, "verdict", &failures, &checks, bool_str(v.pass)]);
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
    }
}

fn bool_str(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Solver bookkeeping shared by criteria 1-7 and judged by criterion 8.
#[derive(Default)]
struct SolverLedger {
    verified_lps: u64,
    ilp_solves: u64,
    /// Solves whose integer optimum fell below the root relaxation.
    ilp_below_lp: Vec<String>,
    /// Node relaxations that failed verification.
    lp_failures: Vec<String>,
}

struct Runner {
    opts: AcceptanceOptions,
    rows: Vec<CheckRow>,
    ledger: SolverLedger,
}

impl Runner {
    fn check(
        &mut self,
        c: u8,
        instance: &str,
        quantity: &str,
        value: impl Display,
        expected: impl Display,
        pass: bool,
    ) {
        self.rows.push(CheckRow {
            criterion: c,
            instance: instance.to_string(),
            quantity: quantity.to_string(),
            value: value.to_string(),
            expected: expected.to_string(),
            pass,
        });
    }

    fn fail(&mut self, c: u8, instance: &str, quantity: &str, err: &Error) {
        self.check(c, instance, quantity, format!("error: {err}"), "", false);
    }

    /// Exact `cov_k` with every node relaxation verified.
    fn cov(&mut self, c: u8, instance: &str, g: &Grid, k: u64, missing: Option<PointId>) -> Option<u64> {
        let opts = SolveOptions {
            paper_literal: false,
            ilp: IlpOptions {
                node_limit: self.opts.node_limit,
                verify_nodes: true,
                ..Default::default()
            },
            warm_start: true,
        };
        match cov(g, k, missing, &opts) {
            Ok(r) => {
                self.ledger.ilp_solves += 1;
                self.ledger.verified_lps += r.stats.verified_lps;
                if let Some(lp) = &r.root_lp {
                    if Scalar::from(r.value) < *lp {
                        self.ledger.ilp_below_lp.push(format!("{instance}: {} < {lp}", r.value));
                    }
                }
                Some(r.value)
            }
            Err(e) => {
                if let Error::Internal(msg) = &e {
                    self.ledger.lp_failures.push(format!("{instance}: {msg}"));
                }
                self.fail(c, instance, "cov", &e);
                None
            }
        }
    }

    fn criterion1(&mut self) {
        for s1 in 2..=4 {
            for s2 in 2..=4 {
                for seed in 0..3 {
                    let inst = format!("fullgrid {s1}x{s2} seed={seed}");
                    let g = match make_fullgrid_random(s1, s2, seed) {
                        Ok(g) => g,
                        Err(e) => {
                            self.fail(1, &inst, "grid", &e);
                            continue;
                        }
                    };
                    let want = (s1 + s2 - 2) as u64;
                    if let Some(v) = self.cov(1, &inst, &g, 1, g.vertex()) {
                        self.check(1, &inst, "cov", v, want, v == want);
                    }
                }
            }
        }
    }

    fn criterion2(&mut self) {
        for n in 2..=7 {
            for m in 2..=n {
                let g = match make_halfrect(m, n) {
                    Ok(g) => g,
                    Err(e) => {
                        self.fail(2, &format!("halfrect m={m} n={n}"), "grid", &e);
                        continue;
                    }
                };
                for p in 0..g.len() {
                    let idx = &g.point(p).indices;
                    let inst = format!("halfrect m={m} n={n} P=({},{})", idx[0], idx[1]);
                    let want = halfrect_value(m, n, idx[1]) as u64;
                    if let Some(v) = self.cov(2, &inst, &g, 1, Some(p)) {
                        self.check(2, &inst, "cov", v, want, v == want);
                    }
                    match halfrect_cover(&g, p).and_then(|c| Ok((c.size(), verify_cover(&g, &c, 1, Some(p))?))) {
                        Ok((size, rep)) => {
                            self.check(2, &inst, "construction_size", size, want, size == want);
                            self.check(2, &inst, "construction_verified", rep.ok, true, rep.ok);
                        }
                        Err(e) => self.fail(2, &inst, "construction", &e),
                    }
                }
            }
        }
    }

    fn criterion3(&mut self) {
        for n in 3..=6 {
            let g = make_simplex(2, n).expect("valid simplex parameters");
            for k in 1..=3u64 {
                let inst = format!("simplex n={n} k={k}");
                let want = (n as u64 - 1) * k;
                if let Some(v) = self.cov(3, &inst, &g, k, g.vertex()) {
                    self.check(3, &inst, "cov", v, want, v == want);
                }
            }
        }
    }

    fn criterion4(&mut self) {
        for n in 4..=6u64 {
            for k in 1..=2u64 {
                for seed in 0..2 {
                    let inst = format!("generic2 n={n} k={k} seed={seed}");
                    let g = match make_generic2(n as usize, seed) {
                        Ok(g) => g,
                        Err(e) => {
                            self.fail(4, &inst, "grid", &e);
                            continue;
                        }
                    };
                    let lower = Scalar::new((3 * n * k) as i64, 2) - Scalar::from(2 * k);
                    let upper = Scalar::new((3 * n * k + k) as i64, 2);
                    match weighting_generic2(&g, k) {
                        Ok(w) => {
                            let rep = check_weighting(&g, &w, k, false);
                            self.check(4, &inst, "weighting_feasible", rep.ok, true, rep.ok);
                            let obj = rep.objective;
                            self.check(4, &inst, "weighting_objective", &obj, &lower, obj == lower);
                        }
                        Err(e) => self.fail(4, &inst, "weighting", &e),
                    }
                    match generic2_cover(&g, k).and_then(|c| Ok((c.size(), verify_cover(&g, &c, k, g.vertex())?))) {
                        Ok((size, rep)) => {
                            self.check(4, &inst, "construction_verified", rep.ok, true, rep.ok);
                            let fits = Scalar::from(size) <= upper;
                            self.check(4, &inst, "construction_size", size, format!("<= {upper}"), fits);
                        }
                        Err(e) => self.fail(4, &inst, "construction", &e),
                    }
                    if let Some(v) = self.cov(4, &inst, &g, k, g.vertex()) {
                        let (lo, hi) = (lower.ceil(), upper.floor());
                        let inside = Scalar::from(v) >= lo && Scalar::from(v) <= hi;
                        self.check(4, &inst, "cov", v, format!("[{lo}, {hi}]"), inside);
                    }
                }
            }
        }
    }

    fn criterion5(&mut self) {
        for n in [3u64, 6, 9, 12] {
            let inst = format!("generic3 n={n} seed=0");
            let g = match make_generic3(n as usize, 0) {
                Ok(g) => g,
                Err(e) => {
                    self.fail(5, &inst, "grid", &e);
                    continue;
                }
            };
            // With k = n the cover is exactly one copy of the family.
            match generic3_cover(&g, n).and_then(|c| Ok((c.size(), verify_cover(&g, &c, n, g.vertex())?))) {
                Ok((size, rep)) => {
                    self.check(5, &inst, "family_verified", rep.ok, true, rep.ok);
                    let ni = n as i64;
                    let claim = Scalar::new(31 * ni * ni, 18) + Scalar::from(6 * ni);
                    let fits = Scalar::from(size) <= claim;
                    self.check(5, &inst, "family_size", size, format!("<= {claim}"), fits);
                    if n == 6 {
                        self.check(5, &inst, "family_size_exact", size, 59, size == 59);
                    }
                }
                Err(e) => self.fail(5, &inst, "family", &e),
            }
            if n == 3 {
                let inst = "generic3 n=3 seed=0 k=7";
                match construct(&g, Scheme::Generic3, 7, None) {
                    Ok(r) => {
                        self.check(5, inst, "decomposition_verified", r.verified, true, r.verified);
                        let fits = Scalar::from(r.size) <= r.claimed_bound;
                        self.check(
                            5,
                            inst,
                            "decomposition_size",
                            r.size,
                            format!("<= {}", r.claimed_bound),
                            fits,
                        );
                    }
                    Err(e) => self.fail(5, inst, "decomposition", &e),
                }
            }
        }
    }

    fn criterion6(&mut self) {
        let target = Scalar::new(31, 18);
        for n in [3u64, 6, 9] {
            let k = n;
            let inst = format!("generic3 n={n} k={k} seed=0");
            let g = match make_generic3(n as usize, 0) {
                Ok(g) => g,
                Err(e) => {
                    self.fail(6, &inst, "grid", &e);
                    continue;
                }
            };
            let w = match weighting_generic3(&g, k, false) {
                Ok(w) => w,
                Err(e) => {
                    self.fail(6, &inst, "weighting", &e);
                    continue;
                }
            };
            let rep = check_weighting(&g, &w.weighting, k, false);
            let witness = rep
                .violations
                .first()
                .map(|v| format!("{} on {:?}", v.sum, v.members))
                .unwrap_or_else(|| "none".into());
            self.check(
                6,
                &inst,
                "weighting_feasible",
                format!("{} (max {}; {witness})", rep.ok, rep.max_sum),
                true,
                rep.ok,
            );
            let nk = Scalar::from(n * k);
            self.check(6, &inst, "axes_total", &w.axes, &nk, w.axes == nk);
            let faces = Scalar::new((3 * (n - 1) * k) as i64, 6);
            self.check(6, &inst, "face_total", &w.faces, &faces, w.faces == faces);
            let sum = &w.axes + &w.faces + &w.interior;
            self.check(6, &inst, "decomposition", &rep.objective, &sum, rep.objective == sum);
            if n == 9 {
                let ratio = &rep.objective / &nk;
                let lo = &target - Scalar::new(1, 4);
                let inside = ratio >= lo && ratio <= target;
                let shown = format!("{ratio} ({:.6})", ratio.to_f64());
                self.check(
                    6,
                    &inst,
                    "objective_over_nk",
                    shown,
                    format!("[{lo}, {target}]"),
                    inside,
                );
            }
            match weighting_generic3(&g, k, true) {
                Ok(lit) => {
                    let rep = check_weighting(&g, &lit.weighting, k, false);
                    let found = rep
                        .violations
                        .first()
                        .map(|v| format!("{} on {} points", v.sum, v.members.len()));
                    let shown = found.clone().unwrap_or_else(|| "none".into());
                    self.check(6, &inst, "literal_violation", shown, "a violation", found.is_some());
                }
                Err(e) => self.fail(6, &inst, "literal_weighting", &e),
            }
        }
    }

    fn criterion7(&mut self) {
        for seed in 0..20u64 {
            let n = 2 + seed % 5;
            let k = 1 + seed % 3;
            let inst = format!("conical n={n} k={k} seed={seed}");
            let g = match make_conical(n as usize, seed) {
                Ok(g) => g,
                Err(e) => {
                    self.fail(7, &inst, "grid", &e);
                    continue;
                }
            };
            let Some(v) = self.cov(7, &inst, &g, k, None) else {
                continue;
            };
            let lemma = lemma_opt_bound(&g.row_profile(None), k);
            self.check(7, &inst, "lemma_opt_bound", lemma, format!("<= {v}"), lemma <= v);
            match conical_closed_form(n, k) {
                Ok(b) => {
                    let f = b.as_f64();
                    let ok = f <= v as f64 + 1e-9;
                    self.check(7, &inst, "closed_form", format!("{f:.9}"), format!("<= {v}"), ok);
                }
                Err(e) => self.fail(7, &inst, "closed_form", &e),
            }
        }
        let n = 1_000_000u64;
        let inst = format!("conical n={n} k=1");
        match conical_closed_form(n, 1) {
            Ok(b) => {
                let gap = (b.as_f64() / n as f64 - (1.0 - (-1.0f64).exp())).abs();
                self.check(
                    7,
                    &inst,
                    "closed_form_limit_gap",
                    format!("{gap:.3e}"),
                    "< 1e-3",
                    gap < 1e-3,
                );
            }
            Err(e) => self.fail(7, &inst, "closed_form", &e),
        }
    }

    /// Brute force agrees with the solver on every small instance below.
    fn criterion8(&mut self) {
        let mut grids: Vec<(String, Grid)> = Vec::new();
        for (s1, s2) in [(1, 2), (2, 2), (2, 3), (3, 2), (2, 4), (4, 2)] {
            for seed in 0..2 {
                if let Ok(g) = make_fullgrid_random(s1, s2, seed) {
                    grids.push((format!("fullgrid {s1}x{s2} seed={seed}"), g));
                }
            }
        }
        for n in 1..=3 {
            grids.push((format!("simplex2 n={n}"), make_simplex(2, n).expect("valid")));
        }
        grids.push(("simplex3 n=2".into(), make_simplex(3, 2).expect("valid")));
        for (m, n) in [(2, 2), (2, 3), (2, 4), (3, 3), (2, 5)] {
            grids.push((format!("halfrect m={m} n={n}"), make_halfrect(m, n).expect("valid")));
        }
        for seed in 0..3 {
            for n in 1..=3 {
                if let Ok(g) = make_conical(n, seed) {
                    grids.push((format!("conical n={n} seed={seed}"), g));
                }
            }
            for n in 2..=3 {
                if let Ok(g) = make_generic2(n, seed) {
                    grids.push((format!("generic2 n={n} seed={seed}"), g));
                }
            }
            if let Ok(g) = make_generic3(1, seed) {
                grids.push((format!("generic3 n=1 seed={seed}"), g));
            }
        }
        for (name, g) in grids.iter().filter(|(_, g)| g.len() <= 8) {
            let mut missings = vec![None];
            if g.vertex().is_some() {
                missings.push(g.vertex());
            }
            for missing in missings {
                for k in 1..=2 {
                    let tag = if missing.is_some() { "vertex" } else { "none" };
                    let inst = format!("{name} k={k} missing={tag}");
                    let Some(v) = self.cov(8, &inst, g, k, missing) else {
                        continue;
                    };
                    match brute_cov(g, k, missing) {
                        Ok(b) => self.check(8, &inst, "brute_equals_cov", b, v, b == v),
                        Err(e) => self.fail(8, &inst, "brute", &e),
                    }
                }
            }
        }
        let lp_ok = self.ledger.lp_failures.is_empty() && self.ledger.verified_lps > 0;
        let lp_shown = match self.ledger.lp_failures.first() {
            Some(f) => format!("{} failed; {f}", self.ledger.lp_failures.len()),
            None => format!("{} verified", self.ledger.verified_lps),
        };
        self.check(8, "all solves", "lp_zero_gap", lp_shown, "all verified", lp_ok);
        let below = &self.ledger.ilp_below_lp;
        let shown = match below.first() {
            Some(f) => format!("{} of {}; {f}", below.len(), self.ledger.ilp_solves),
            None => format!("0 of {}", self.ledger.ilp_solves),
        };
        self.check(8, "all solves", "ilp_below_lp", shown, "0", below.is_empty());
    }
}

/// Runs criteria 1-8 (those selected in `opts`).
pub fn run_criteria(opts: &AcceptanceOptions) -> Acceptance {
    let mut runner = Runner {
        opts: opts.clone(),
        rows: Vec::new(),
        ledger: SolverLedger::default(),
    };
    let mut verdicts = Vec::new();
    for &(c, name) in &CRITERIA {
        if c == 9 || !opts.criteria.contains(&c) {
            continue;
        }
        let start = Instant::now();
        let before = runner.rows.len();
        match c {
            1 => runner.criterion1(),
            2 => runner.criterion2(),
            3 => runner.criterion3(),
            4 => runner.criterion4(),
            5 => runner.criterion5(),
            6 => runner.criterion6(),
            7 => runner.criterion7(),
            8 => runner.criterion8(),
            _ => unreachable!("criterion ids are fixed"),
        }
        verdicts.push(verdict(c, name, &runner.rows[before..], start.elapsed()));
    }
    Acceptance {
        rows: runner.rows,
        verdicts,
    }
}

fn verdict(criterion: u8, name: &'static str, rows: &[CheckRow], elapsed: Duration) -> Verdict {
    let failed: Vec<&CheckRow> = rows.iter().filter(|r| !r.pass).collect();
    Verdict {
        criterion,
        name,
        pass: !rows.is_empty() && failed.is_empty(),
        checks: rows.len(),
        failures: failed.len(),
        first_failure: failed
            .first()
            .map(|r| format!("{} {} = {} (expected {})", r.instance, r.quantity, r.value, r.expected)),
        elapsed,
    }
}

/// Runs the selected criteria; when 9 is selected the whole run is repeated
/// and the two CSVs must match byte for byte.
pub fn run_acceptance(opts: &AcceptanceOptions) -> Result<Acceptance> {
    if let Some(c) = opts.criteria.iter().find(|c| !(1..=9).contains(*c)) {
        return Err(Error::BadInput(format!("no criterion {c}; expected 1..=9")));
    }
    let mut first = run_criteria(opts);
    if opts.criteria.contains(&9) {
        let start = Instant::now();
        let second = run_criteria(opts);
        let (a, b) = (first.csv(), second.csv());
        let pass = a == b;
        let row = CheckRow {
            criterion: 9,
            instance: "two runs".into(),
            quantity: "csv_identical".into(),
            value: pass.to_string(),
            expected: "true".into(),
            pass,
        };
        first
            .verdicts
            .push(verdict(9, CRITERIA[8].1, std::slice::from_ref(&row), start.elapsed()));
        first.rows.push(row);
    }
    Ok(first)
}
