//! Depth-first branch and bound over the exact simplex, with dual simplex
//! warm starts from the parent basis.

use std::rc::Rc;

use serde::{Deserialize, Serialize};

use super::simplex::{solution_from, solve_bounded, Outcome, PivotRule, Tableau};
use super::LinearProgram;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_NODE_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct IlpOptions {
    pub node_limit: u64,
    pub rule: PivotRule,
    /// A known integral feasible point; ignored unless it checks out.
    pub incumbent: Option<Vec<Scalar>>,
    /// Re-check every node relaxation with [`verify`](super::verify);
    /// a failed check is an internal error.
    pub verify_nodes: bool,
}

impl Default for IlpOptions {
    fn default() -> Self {
        IlpOptions {
            node_limit: DEFAULT_NODE_LIMIT,
            rule: PivotRule::Bland,
            incumbent: None,
            verify_nodes: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IlpStatus {
    Optimal,
    Infeasible,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BbStats {
    pub nodes: u64,
    pub pivots: u64,
    /// Optimum of the root relaxation (in the program's own sense).
    pub root_bound: Option<Scalar>,
    /// Best proven bound on the integer optimum.
    pub best_bound: Option<Scalar>,
    /// Whether the supplied incumbent was accepted.
    pub warm_start: bool,
    /// Node relaxations that passed an independent optimality check.
    pub verified_lps: u64,
}

#[derive(Clone, Debug)]
pub struct IlpSolution {
    pub status: IlpStatus,
    pub x: Vec<Scalar>,
    pub objective: Scalar,
    pub stats: BbStats,
}

struct Node {
    parent: Rc<Tableau>,
    column: usize,
    lower: Option<Scalar>,
    upper: Option<Scalar>,
    /// Parent relaxation value (minimization form); a bound for the subtree.
    bound: Scalar,
}

fn is_integral(x: &[Scalar]) -> bool {
    x.iter().all(Scalar::is_integer)
}

/// Solves `p` with every variable required to be integral.
pub fn ilp_solve(p: &LinearProgram, opts: &IlpOptions) -> Result<IlpSolution> {
    p.validate()?;
    let flip = p.sense == super::ObjSense::Maximize;
    let to_min = |v: Scalar| if flip { -v } else { v };
    let integral_costs = p.cost.iter().all(Scalar::is_integer);
    // A subtree with relaxation value `b` can only improve on `inc` if this holds.
    let promising = |b: &Scalar, inc: &Scalar| {
        if integral_costs {
            &b.ceil() < inc
        } else {
            b < inc
        }
    };

    let mut stats = BbStats::default();
    let mut best: Option<(Scalar, Vec<Scalar>)> = None;
    if let Some(x) = &opts.incumbent {
        if is_integral(x) && p.is_feasible(x) {
            best = Some((to_min(p.objective_at(x)), x.clone()));
            stats.warm_start = true;
        }
    }

    let mut root = Tableau::new(p, opts.rule);
    if solve_bounded(&mut root)?.is_none() {
        stats.pivots = root.pivots;
        stats.nodes = 1;
        return match best {
            Some(_) => Err(Error::Internal(
                "incumbent is feasible but the relaxation is not".into(),
            )),
            None => Ok(IlpSolution {
                status: IlpStatus::Infeasible,
                x: Vec::new(),
                objective: Scalar::zero(),
                stats,
            }),
        };
    }
    stats.nodes = 1;
    if opts.verify_nodes {
        check_node(p, &root, &mut stats)?;
    }
    let root_value = root.objective();
    stats.root_bound = Some(to_min(root_value.clone()));

    let mut pivots = root.pivots;
    let mut stack: Vec<Node> = Vec::new();
    let mut current = Some(root);
    loop {
        if let Some(t) = current.take() {
            let value = t.objective();
            let x = t.structural_values();
            if best.as_ref().is_some_and(|(inc, _)| !promising(&value, inc)) {
                // pruned by bound
            } else if is_integral(&x) {
                best = Some((value, x));
            } else {
                round_up_heuristic(p, &x, &mut best, &to_min);
                if best.as_ref().is_none_or(|(inc, _)| promising(&value, inc)) {
                    let j = branch_column(&x);
                    let v = &x[j];
                    let parent = Rc::new(t);
                    let lo = parent.lower[j].clone();
                    let hi = parent.upper[j].clone();
                    // Down branch is explored after the up branch.
                    stack.push(Node {
                        parent: parent.clone(),
                        column: j,
                        lower: lo,
                        upper: Some(v.floor()),
                        bound: value.clone(),
                    });
                    stack.push(Node {
                        parent,
                        column: j,
                        lower: Some(v.ceil()),
                        upper: hi,
                        bound: value,
                    });
                }
            }
        }
        let Some(node) = stack.pop() else { break };
        if best.as_ref().is_some_and(|(inc, _)| !promising(&node.bound, inc)) {
            continue;
        }
        if stats.nodes >= opts.node_limit {
            let open = stack
                .iter()
                .map(|n| &n.bound)
                .chain(std::iter::once(&node.bound))
                .min()
                .cloned();
            let best_bound = match (&best, open) {
                (Some((inc, _)), Some(o)) => o.min(inc.clone()),
                (Some((inc, _)), None) => inc.clone(),
                (None, Some(o)) => o,
                (None, None) => root_value.clone(),
            };
            return Err(Error::Budget {
                limit: opts.node_limit,
                incumbent: best.map(|(v, _)| to_min(v).to_string()),
                best_bound: to_min(best_bound).to_string(),
            });
        }
        stats.nodes += 1;
        let mut t = (*node.parent).clone();
        let before = t.pivots;
        if !t.set_bounds(node.column, node.lower, node.upper) {
            continue;
        }
        let solved = solve_bounded(&mut t)?;
        pivots += t.pivots - before;
        if solved.is_some() {
            if opts.verify_nodes {
                check_node(p, &t, &mut stats)?;
            }
            current = Some(t);
        }
    }
    stats.pivots = pivots;
    match best {
        Some((value, x)) => {
            stats.best_bound = Some(to_min(value.clone()));
            Ok(IlpSolution {
                status: IlpStatus::Optimal,
                x,
                objective: to_min(value),
                stats,
            })
        }
        None => Ok(IlpSolution {
            status: IlpStatus::Infeasible,
            x: Vec::new(),
            objective: Scalar::zero(),
            stats,
        }),
    }
}

/// Verifies the optimal relaxation held by `t` against `p` with the node's
/// variable bounds.
fn check_node(p: &LinearProgram, t: &Tableau, stats: &mut BbStats) -> Result<()> {
    let mut node = p.clone();
    let n = p.num_vars();
    node.lower = t.lower[..n].to_vec();
    node.upper = t.upper[..n].to_vec();
    let sol = solution_from(&node, t, Outcome::Optimal);
    super::verify(&node, &sol).map_err(|e| Error::Internal(format!("node relaxation failed verification: {e}")))?;
    stats.verified_lps += 1;
    Ok(())
}

/// Most fractional column; ties go to the lowest index.
fn branch_column(x: &[Scalar]) -> usize {
    let half = Scalar::new(1, 2);
    let mut best: Option<(usize, Scalar)> = None;
    for (j, v) in x.iter().enumerate() {
        if v.is_integer() {
            continue;
        }
        let dist = (v.fract() - &half).abs();
        if best.as_ref().is_none_or(|(_, d)| dist < *d) {
            best = Some((j, dist));
        }
    }
    best.expect("fractional column exists").0
}

fn round_up_heuristic(
    p: &LinearProgram,
    x: &[Scalar],
    best: &mut Option<(Scalar, Vec<Scalar>)>,
    to_min: &impl Fn(Scalar) -> Scalar,
) {
    let rounded: Vec<Scalar> = x.iter().map(Scalar::ceil).collect();
    if !p.is_feasible(&rounded) {
        return;
    }
    let value = to_min(p.objective_at(&rounded));
    if best.as_ref().is_none_or(|(inc, _)| value < *inc) {
        *best = Some((value, rounded));
    }
}

#[cfg(test)]
mod tests {
    use super::super::{lp_solve, ObjSense, RowSense};
    use super::*;
    use proptest::prelude::*;

    fn int(v: i64) -> Scalar {
        Scalar::from(v)
    }

    #[test]
    fn rounds_up_single_variable() {
        let mut p = LinearProgram::new(ObjSense::Minimize, vec![int(1)]);
        p.add_row("r", vec![(0, int(1))], RowSense::Ge, Scalar::new(5, 2));
        let sol = ilp_solve(&p, &IlpOptions::default()).unwrap();
        assert_eq!(sol.objective, int(3));
    }

    #[test]
    fn knapsack_maximization() {
        // max 5a + 4b + 3c, 2a + 3b + c <= 5, 4a + b + 2c <= 11, 3a + 4b + 2c <= 8.
        let mut p = LinearProgram::new(ObjSense::Maximize, vec![int(5), int(4), int(3)]);
        p.add_row("a", vec![(0, int(2)), (1, int(3)), (2, int(1))], RowSense::Le, int(5));
        p.add_row("b", vec![(0, int(4)), (1, int(1)), (2, int(2))], RowSense::Le, int(11));
        p.add_row("c", vec![(0, int(3)), (1, int(4)), (2, int(2))], RowSense::Le, int(8));
        let sol = ilp_solve(&p, &IlpOptions::default()).unwrap();
        assert_eq!(sol.objective, int(13));
        assert!(p.is_feasible(&sol.x));
    }

    #[test]
    fn infeasible_integer_program() {
        // 2x = 1 has a fractional but no integral solution.
        let mut p = LinearProgram::new(ObjSense::Minimize, vec![int(1)]);
        p.add_row("r", vec![(0, int(2))], RowSense::Eq, int(1));
        let sol = ilp_solve(&p, &IlpOptions::default()).unwrap();
        assert_eq!(sol.status, IlpStatus::Infeasible);
    }

    #[test]
    fn budget_reports_bounds() {
        // Odd cycle cover: LP 5/2, ILP 3.
        let mut p = LinearProgram::new(ObjSense::Minimize, vec![int(1); 5]);
        for i in 0..5 {
            p.add_row(
                format!("e{i}"),
                vec![(i, int(1)), ((i + 1) % 5, int(1))],
                RowSense::Ge,
                int(1),
            );
        }
        let opts = IlpOptions {
            node_limit: 1,
            ..Default::default()
        };
        match ilp_solve(&p, &opts) {
            Err(Error::Budget { limit, .. }) => assert_eq!(limit, 1),
            other => {
                // The rounding heuristic may already prove optimality at the root.
                let sol = other.unwrap();
                assert_eq!(sol.objective, int(3));
            }
        }
        let sol = ilp_solve(&p, &IlpOptions::default()).unwrap();
        assert_eq!(sol.objective, int(3));
        assert_eq!(sol.stats.root_bound, Some(Scalar::new(5, 2)));
    }

    #[test]
    fn bad_incumbent_is_ignored() {
        let mut p = LinearProgram::new(ObjSense::Minimize, vec![int(1), int(1)]);
        p.add_row("r", vec![(0, int(1)), (1, int(1))], RowSense::Ge, int(2));
        let opts = IlpOptions {
            incumbent: Some(vec![int(0), int(1)]),
            ..Default::default()
        };
        let sol = ilp_solve(&p, &opts).unwrap();
        assert_eq!(sol.objective, int(2));
        assert!(!sol.stats.warm_start);
    }

    fn brute_min(p: &LinearProgram, cap: i64) -> Option<Scalar> {
        let n = p.num_vars();
        let mut best: Option<Scalar> = None;
        let mut x = vec![0i64; n];
        loop {
            let xs: Vec<Scalar> = x.iter().map(|&v| Scalar::from(v)).collect();
            if p.is_feasible(&xs) {
                let v = p.objective_at(&xs);
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
            let mut i = 0;
            while i < n && x[i] == cap {
                x[i] = 0;
                i += 1;
            }
            if i == n {
                return best;
            }
            x[i] += 1;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn matches_enumeration(
            rows in proptest::collection::vec((proptest::collection::vec(0i64..3, 3), 1i64..4), 1..4),
            cost in proptest::collection::vec(1i64..4, 3),
        ) {
            let mut p = LinearProgram::new(ObjSense::Minimize, cost.into_iter().map(Scalar::from).collect());
            for (i, (a, b)) in rows.into_iter().enumerate() {
                let mut coeffs: Vec<(usize, Scalar)> =
                    a.into_iter().enumerate().filter(|(_, v)| *v != 0).map(|(j, v)| (j, Scalar::from(v))).collect();
                if coeffs.is_empty() {
                    coeffs.push((0, int(1)));
                }
                p.add_row(format!("r{i}"), coeffs, RowSense::Ge, Scalar::from(b));
            }
            let opts = IlpOptions { verify_nodes: true, ..Default::default() };
            let sol = ilp_solve(&p, &opts).unwrap();
            prop_assert!(sol.stats.verified_lps >= 1);
            // Every row is met by setting one positive-coefficient column to 3.
            prop_assert_eq!(Some(sol.objective.clone()), brute_min(&p, 4));
            let lp = lp_solve(&p).unwrap();
            prop_assert!(sol.objective >= lp.objective);
            if is_integral(&lp.x) {
                prop_assert_eq!(&sol.objective, &lp.objective);
            }
        }
    }
}
