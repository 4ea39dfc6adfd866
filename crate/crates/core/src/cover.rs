//! The covering program: one column per candidate covering set, one row per
//! point that must be covered `k` times.

use serde::{Deserialize, Serialize};

use crate::error::{bad, Error, Result};
use crate::grid::{Grid, PointId};
use crate::incidence::{
    enumerate_candidates, enumerate_on, materialize, Cover, CoverShape, CoveringSet, EnumerateOptions, Realization,
};
use crate::opt::{ilp_solve, lp_solve, IlpOptions, IlpStatus, LinearProgram, LpSolution, LpStatus, ObjSense, RowSense};
use crate::scalar::Scalar;

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Drop singleton columns, keeping only sets of two or more points.
    pub paper_literal: bool,
    pub ilp: IlpOptions,
    /// Seed the search with a known construction when one applies.
    pub warm_start: bool,
}

pub struct CoverProblem<'g> {
    pub grid: &'g Grid,
    pub k: u64,
    pub missing: Option<PointId>,
    pub candidates: Vec<CoveringSet>,
    /// Point covered by each row.
    pub row_points: Vec<PointId>,
    pub program: LinearProgram,
}

impl<'g> CoverProblem<'g> {
    pub fn new(grid: &'g Grid, k: u64, missing: Option<PointId>, paper_literal: bool) -> Result<CoverProblem<'g>> {
        if k == 0 {
            return bad("k must be at least 1");
        }
        if missing.is_some_and(|m| m >= grid.len()) {
            return bad("missing point is not in the grid");
        }
        let mut candidates = enumerate_candidates(grid, missing);
        if paper_literal {
            candidates.retain(|c| c.members.len() >= 2);
        }
        let row_points: Vec<PointId> = (0..grid.len()).filter(|&p| Some(p) != missing).collect();
        let mut row_of = vec![usize::MAX; grid.len()];
        for (i, &p) in row_points.iter().enumerate() {
            row_of[p] = i;
        }
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); row_points.len()];
        for (j, c) in candidates.iter().enumerate() {
            for &p in &c.members {
                rows[row_of[p]].push((j, Scalar::one()));
            }
        }
        let mut program = LinearProgram::new(ObjSense::Minimize, vec![Scalar::one(); candidates.len()]);
        for (i, coeffs) in rows.into_iter().enumerate() {
            let idx = &grid.point(row_points[i]).indices;
            program.add_row(format!("p{}", join(idx)), coeffs, RowSense::Ge, Scalar::from(k));
        }
        Ok(CoverProblem {
            grid,
            k,
            missing,
            candidates,
            row_points,
            program,
        })
    }

    /// Column vector of a cover whose entries all match candidates.
    pub fn column_vector(&self, cover: &Cover) -> Option<Vec<Scalar>> {
        let mut x = vec![0u64; self.candidates.len()];
        for e in &cover.entries {
            let members: Vec<PointId> = match &e.shape {
                CoverShape::Plane(h) => {
                    if h.dim() != self.grid.dim() {
                        return None;
                    }
                    (0..self.grid.len())
                        .filter(|&p| h.contains(&self.grid.point(p).coords))
                        .collect()
                }
                CoverShape::Singleton(idx) => vec![self.grid.find(idx)?],
            };
            if members.is_empty() {
                continue;
            }
            let j = self.candidates.iter().position(|c| c.members == members)?;
            x[j] += e.mult;
        }
        Some(x.into_iter().map(Scalar::from).collect())
    }

    /// Cover from a column vector, with every column realized by a
    /// concrete hyperplane.
    pub fn cover_from(&self, x: &[Scalar]) -> Result<Cover> {
        let mut cover = Cover::new();
        for (c, v) in self.candidates.iter().zip(x) {
            if v.is_zero() {
                continue;
            }
            let mult = v
                .to_i64()
                .filter(|&m| m > 0)
                .ok_or_else(|| Error::Internal(format!("non-integral multiplicity {v}")))?;
            let h = match &c.realization {
                Realization::Plane(h) => h.clone(),
                _ => materialize(self.grid, c, self.missing),
            };
            cover.push(h, mult as u64);
        }
        Ok(cover.normalized())
    }
}

fn join(idx: &[usize]) -> String {
    idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("_")
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub pivots: u64,
    pub candidates: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warm_start: Option<u64>,
    /// Node relaxations independently verified (only with `verify_nodes`).
    pub verified_lps: u64,
}

#[derive(Clone, Debug)]
pub struct CovResult {
    pub value: u64,
    pub cover: Cover,
    pub root_lp: Option<Scalar>,
    pub stats: SolveStats,
}

/// Exact `cov_k(g, missing)` with an optimal cover.
pub fn cov(g: &Grid, k: u64, missing: Option<PointId>, opts: &SolveOptions) -> Result<CovResult> {
    let problem = CoverProblem::new(g, k, missing, opts.paper_literal)?;
    let mut ilp = opts.ilp.clone();
    let mut warm = None;
    if opts.warm_start && ilp.incumbent.is_none() {
        if let Some(c) = crate::construct::default_cover(g, k, missing) {
            if let Some(x) = problem.column_vector(&c) {
                warm = Some(c.size());
                ilp.incumbent = Some(x);
            }
        }
    }
    let sol = ilp_solve(&problem.program, &ilp)?;
    if sol.status == IlpStatus::Infeasible {
        return Err(Error::Infeasible(
            "some point lies on no admissible candidate (paper-literal column set)".into(),
        ));
    }
    let cover = problem.cover_from(&sol.x)?;
    let value = sol
        .objective
        .to_i64()
        .ok_or_else(|| Error::Internal("non-integral optimum".into()))? as u64;
    Ok(CovResult {
        value,
        cover,
        root_lp: sol.stats.root_bound.clone(),
        stats: SolveStats {
            nodes: sol.stats.nodes,
            pivots: sol.stats.pivots,
            candidates: problem.candidates.len(),
            warm_start: warm,
            verified_lps: sol.stats.verified_lps,
        },
    })
}

#[derive(Clone, Debug)]
pub struct CovLpResult {
    pub value: Scalar,
    pub weighting: Weighting,
    pub solution: LpSolution,
    pub program: LinearProgram,
    pub candidates: usize,
}

/// LP relaxation of the covering program and an optimal dual weighting,
/// scaled so that admissible hyperplanes carry weight at most `k`.
pub fn cov_lp(g: &Grid, k: u64, missing: Option<PointId>, paper_literal: bool) -> Result<CovLpResult> {
    let problem = CoverProblem::new(g, k, missing, paper_literal)?;
    let solution = lp_solve(&problem.program)?;
    if solution.status != LpStatus::Optimal {
        return Err(Error::Infeasible(
            "some point lies on no admissible candidate (paper-literal column set)".into(),
        ));
    }
    let mut weights = vec![Scalar::zero(); g.len()];
    let kk = Scalar::from(k);
    for (i, y) in solution.y.iter().enumerate() {
        weights[problem.row_points[i]] = y * &kk;
    }
    Ok(CovLpResult {
        value: solution.objective.clone(),
        weighting: Weighting { missing, weights },
        candidates: problem.candidates.len(),
        program: problem.program,
        solution,
    })
}

/// Nonnegative weights on grid points, indexed by [`PointId`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weighting {
    pub missing: Option<PointId>,
    pub weights: Vec<Scalar>,
}

impl Weighting {
    pub fn zero(g: &Grid, missing: Option<PointId>) -> Weighting {
        Weighting {
            missing,
            weights: vec![Scalar::zero(); g.len()],
        }
    }

    pub fn total(&self) -> Scalar {
        self.weights.iter().sum()
    }

    pub fn support(&self) -> Vec<PointId> {
        (0..self.weights.len())
            .filter(|&p| !self.weights[p].is_zero())
            .collect()
    }

    pub fn to_json(&self, g: &Grid) -> WeightingJson {
        WeightingJson {
            missing: self.missing.map(|m| g.point(m).indices.clone()),
            weights: self
                .support()
                .into_iter()
                .map(|p| PointWeight {
                    point: g.point(p).indices.clone(),
                    w: self.weights[p].clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointWeight {
    pub point: Vec<usize>,
    pub w: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightingJson {
    pub missing: Option<Vec<usize>>,
    pub weights: Vec<PointWeight>,
}

impl WeightingJson {
    pub fn into_weighting(self, g: &Grid) -> Result<Weighting> {
        let missing = match &self.missing {
            Some(idx) => Some(
                g.find(idx)
                    .ok_or_else(|| Error::BadInput(format!("missing point {idx:?} is not in the grid")))?,
            ),
            None => None,
        };
        let mut wt = Weighting::zero(g, missing);
        let mut seen = vec![false; g.len()];
        for pw in self.weights {
            let p = g
                .find(&pw.point)
                .ok_or_else(|| Error::BadInput(format!("weighted point {:?} is not in the grid", pw.point)))?;
            if std::mem::replace(&mut seen[p], true) {
                return bad(format!("point {:?} is weighted twice", pw.point));
            }
            wt.weights[p] = pw.w;
        }
        Ok(wt)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightViolation {
    /// Index tuples of the candidate's weighted members.
    pub members: Vec<Vec<usize>>,
    pub sum: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightingReport {
    pub ok: bool,
    pub objective: Scalar,
    /// Largest weight carried by an admissible hyperplane.
    pub max_sum: Scalar,
    /// Negative weights or weight on the missing point.
    pub invalid: Vec<String>,
    pub violations: Vec<WeightViolation>,
    pub candidates_checked: usize,
}

/// Checks that every admissible hyperplane carries total weight at most `k`.
/// Only intersections with the weighted points matter, so the scan runs
/// over the candidate sets of the support.
pub fn check_weighting(g: &Grid, wt: &Weighting, k: u64, paper_literal: bool) -> WeightingReport {
    let mut invalid = Vec::new();
    for (p, w) in wt.weights.iter().enumerate() {
        if w.is_negative() {
            invalid.push(format!("negative weight {w} on {:?}", g.point(p).indices));
        }
    }
    if let Some(m) = wt.missing {
        if !wt.weights[m].is_zero() {
            invalid.push(format!(
                "missing point {:?} has weight {}",
                g.point(m).indices,
                wt.weights[m]
            ));
        }
    }
    let support = wt.support();
    let opts = EnumerateOptions {
        singletons: !paper_literal,
        lines: true,
    };
    let sets = enumerate_on(g, &support, wt.missing, opts);
    let kk = Scalar::from(k);
    let mut max_sum = Scalar::zero();
    let mut violations = Vec::new();
    for set in &sets {
        let sum: Scalar = set.members.iter().map(|&p| &wt.weights[p]).sum();
        if sum > kk {
            violations.push(WeightViolation {
                members: set.members.iter().map(|&p| g.point(p).indices.clone()).collect(),
                sum: sum.clone(),
            });
        }
        if sum > max_sum {
            max_sum = sum;
        }
    }
    violations.sort_by(|a, b| b.sum.cmp(&a.sum).then_with(|| a.members.cmp(&b.members)));
    WeightingReport {
        ok: invalid.is_empty() && violations.is_empty(),
        objective: wt.total(),
        max_sum,
        invalid,
        violations,
        candidates_checked: sets.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_fullgrid, make_halfrect, make_simplex};
    use crate::incidence::verify_cover;
    use crate::opt::verify;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from(x)).collect()
    }

    #[test]
    fn two_by_two_missing_corner() {
        let g = make_fullgrid(ints(&[0, 1]), ints(&[0, 1])).unwrap();
        let m = g.vertex();
        let r = cov(&g, 1, m, &SolveOptions::default()).unwrap();
        assert_eq!(r.value, 2);
        assert!(verify_cover(&g, &r.cover, 1, m).unwrap().ok);
        let r2 = cov(&g, 2, m, &SolveOptions::default()).unwrap();
        assert_eq!(r2.value, 3);
        let lp = cov_lp(&g, 1, m, false).unwrap();
        assert_eq!(lp.value, Scalar::new(3, 2));
        verify(&lp.program, &lp.solution).unwrap();
        let rep = check_weighting(&g, &lp.weighting, 1, false);
        assert!(rep.ok, "{rep:?}");
        assert_eq!(rep.objective, lp.value);
    }

    #[test]
    fn simplex_and_halfrect_examples() {
        let g = make_simplex(2, 4).unwrap();
        assert_eq!(cov(&g, 2, g.vertex(), &SolveOptions::default()).unwrap().value, 6);
        let g = make_halfrect(2, 3).unwrap();
        assert_eq!(cov(&g, 1, g.vertex(), &SolveOptions::default()).unwrap().value, 2);
    }

    #[test]
    fn weighting_checks() {
        let g = make_simplex(2, 3).unwrap();
        let zero = Weighting::zero(&g, g.vertex());
        let rep = check_weighting(&g, &zero, 1, false);
        assert!(rep.ok);
        assert_eq!(rep.objective, Scalar::zero());

        let mut wt = Weighting::zero(&g, g.vertex());
        let a = g.find(&[1, 0]).unwrap();
        let b = g.find(&[0, 1]).unwrap();
        wt.weights[a] = Scalar::from(2);
        wt.weights[b] = Scalar::from(2);
        let rep = check_weighting(&g, &wt, 2, false);
        assert!(!rep.ok);
        assert_eq!(rep.violations[0].sum, Scalar::from(4));
        assert_eq!(rep.violations[0].members, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn paper_literal_columns_can_be_infeasible() {
        // On a 2-point line through the missing point, the far point has no
        // admissible partner.
        let g = make_simplex(2, 2).unwrap();
        let m = g.vertex();
        assert_eq!(cov(&g, 1, m, &SolveOptions::default()).unwrap().value, 1);
        let lit = SolveOptions {
            paper_literal: true,
            ..Default::default()
        };
        assert_eq!(cov(&g, 1, m, &lit).unwrap().value, 1);
        let pts = Grid::from_parts(
            crate::grid::GridKind::Fullgrid,
            2,
            Some(1),
            vec![ints(&[0, 1]), ints(&[0])],
            vec![vec![0, 0], vec![1, 0]],
            None,
        )
        .unwrap();
        assert!(matches!(cov(&pts, 1, pts.vertex(), &lit), Err(Error::Infeasible(_))));
        assert_eq!(cov(&pts, 1, pts.vertex(), &SolveOptions::default()).unwrap().value, 1);
    }

    #[test]
    fn weighting_json_round_trip() {
        let g = make_simplex(2, 3).unwrap();
        let lp = cov_lp(&g, 2, g.vertex(), false).unwrap();
        let json = serde_json::to_string(&lp.weighting.to_json(&g)).unwrap();
        let back: WeightingJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_weighting(&g).unwrap(), lp.weighting);
    }
}
