//! Dense bounded-variable simplex over exact rationals.
//!
//! The tableau stores one equation `sum_j M[i][j] x_j = 0` per row with
//! `M[i][basis[i]] = 1`. Columns `0..n` are the structural variables and
//! `n..n+m` the row slacks, so the initial matrix is `[-A | I]` with the
//! slacks basic. Nonbasic variables sit at a finite bound, or at zero when
//! free; basic values are recomputed from them after every step.

use serde::{Deserialize, Serialize};

use super::{Certificate, LinearProgram, LpSolution, LpStatus, ObjSense, RowSense};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PivotRule {
    /// Smallest eligible index; never cycles.
    #[default]
    Bland,
    /// Largest reduced cost or infeasibility, switching to Bland's rule
    /// after a run of degenerate pivots.
    Dantzig,
}

/// Consecutive degenerate pivots tolerated under [`PivotRule::Dantzig`].
const DEGENERATE_RUN: u32 = 50;

pub(crate) enum Outcome {
    Optimal,
    /// Row whose basic variable cannot be brought within its bounds.
    Infeasible(usize),
    /// Entering column and direction (+1 or -1) of an improving ray.
    Unbounded(usize, i8),
}

#[derive(Clone)]
pub(crate) struct Tableau {
    n: usize,
    rows: Vec<Vec<Scalar>>,
    basis: Vec<usize>,
    /// Row index of each basic column.
    pos: Vec<Option<usize>>,
    pub(crate) lower: Vec<Option<Scalar>>,
    pub(crate) upper: Vec<Option<Scalar>>,
    pub(crate) value: Vec<Scalar>,
    /// Minimization costs over all columns (slacks cost nothing).
    cost: Vec<Scalar>,
    reduced: Vec<Scalar>,
    pub(crate) pivots: u64,
    rule: PivotRule,
}

impl Tableau {
    pub(crate) fn new(p: &LinearProgram, rule: PivotRule) -> Tableau {
        let n = p.num_vars();
        let m = p.rows.len();
        let total = n + m;
        let mut rows = vec![vec![Scalar::zero(); total]; m];
        for (i, row) in p.rows.iter().enumerate() {
            for (j, a) in &row.coeffs {
                rows[i][*j] = -a;
            }
            rows[i][n + i] = Scalar::one();
        }
        let mut lower = p.lower.clone();
        let mut upper = p.upper.clone();
        for row in &p.rows {
            let b = Some(row.rhs.clone());
            let (l, u) = match row.sense {
                RowSense::Ge => (b, None),
                RowSense::Le => (None, b),
                RowSense::Eq => (b.clone(), b),
            };
            lower.push(l);
            upper.push(u);
        }
        let value = (0..total)
            .map(|j| lower[j].clone().or_else(|| upper[j].clone()).unwrap_or_default())
            .collect();
        let flip = p.sense == ObjSense::Maximize;
        let mut cost: Vec<Scalar> = p.cost.iter().map(|c| if flip { -c } else { c.clone() }).collect();
        cost.resize(total, Scalar::zero());
        let mut pos = vec![None; total];
        for i in 0..m {
            pos[n + i] = Some(i);
        }
        let mut t = Tableau {
            n,
            rows,
            basis: (n..total).collect(),
            pos,
            lower,
            upper,
            value,
            reduced: cost.clone(),
            cost,
            pivots: 0,
            rule,
        };
        t.recompute_basics();
        t
    }

    fn total(&self) -> usize {
        self.value.len()
    }

    pub(crate) fn is_basic(&self, j: usize) -> bool {
        self.pos[j].is_some()
    }

    pub(crate) fn structural_values(&self) -> Vec<Scalar> {
        self.value[..self.n].to_vec()
    }

    /// Minimization objective of the current point.
    pub(crate) fn objective(&self) -> Scalar {
        self.cost
            .iter()
            .zip(&self.value)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c * v)
            .sum()
    }

    fn recompute_basics(&mut self) {
        let nonbasic: Vec<usize> = (0..self.total())
            .filter(|&j| self.pos[j].is_none() && !self.value[j].is_zero())
            .collect();
        for (i, row) in self.rows.iter().enumerate() {
            let mut v = Scalar::zero();
            for &j in &nonbasic {
                if !row[j].is_zero() {
                    v -= &row[j] * &self.value[j];
                }
            }
            self.value[self.basis[i]] = v;
        }
    }

    fn recompute_reduced(&mut self) {
        let mut d = self.cost.clone();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &self.cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    d[j] -= cb * a;
                }
            }
        }
        self.reduced = d;
    }

    fn can_increase(&self, j: usize) -> bool {
        self.upper[j].as_ref().is_none_or(|u| &self.value[j] < u)
    }

    fn can_decrease(&self, j: usize) -> bool {
        self.lower[j].as_ref().is_none_or(|l| &self.value[j] > l)
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let piv = self.rows[r][q].clone();
        if piv != Scalar::one() {
            let inv = piv.recip();
            for v in self.rows[r].iter_mut().filter(|v| !v.is_zero()) {
                *v *= &inv;
            }
        }
        let prow: Vec<(usize, Scalar)> = self.rows[r]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[q].is_zero() {
                continue;
            }
            let f = row[q].clone();
            for (j, v) in &prow {
                row[*j] -= &f * v;
            }
        }
        let f = self.reduced[q].clone();
        if !f.is_zero() {
            for (j, v) in &prow {
                self.reduced[*j] -= &f * v;
            }
        }
        let leaving = self.basis[r];
        self.pos[leaving] = None;
        self.pos[q] = Some(r);
        self.basis[r] = q;
        self.pivots += 1;
    }

    /// Whether the current reduced costs are optimal for the current bounds
    /// (ignoring primal feasibility).
    fn dual_feasible(&self) -> bool {
        (0..self.total()).all(|j| {
            self.is_basic(j)
                || !((self.reduced[j].is_negative() && self.can_increase(j))
                    || (self.reduced[j].is_positive() && self.can_decrease(j)))
        })
    }

    /// Primal infeasibility of basic column `j`: positive amount below the
    /// lower bound or above the upper bound.
    fn violation(&self, j: usize) -> Option<(Scalar, bool)> {
        let v = &self.value[j];
        if let Some(l) = &self.lower[j] {
            if v < l {
                return Some((l - v, true));
            }
        }
        if let Some(u) = &self.upper[j] {
            if v > u {
                return Some((v - u, false));
            }
        }
        None
    }

    /// Dual simplex from a dual feasible basis.
    fn dual_simplex(&mut self) -> Outcome {
        let mut degenerate = 0u32;
        loop {
            let bland = self.rule == PivotRule::Bland || degenerate >= DEGENERATE_RUN;
            let mut leave: Option<(usize, Scalar, bool)> = None;
            for (i, &b) in self.basis.iter().enumerate() {
                if let Some((amount, below)) = self.violation(b) {
                    let better = match &leave {
                        None => true,
                        Some((li, la, _)) => {
                            if bland {
                                b < self.basis[*li]
                            } else {
                                amount > *la || (amount == *la && b < self.basis[*li])
                            }
                        }
                    };
                    if better {
                        leave = Some((i, amount, below));
                    }
                }
            }
            let Some((r, _, below)) = leave else {
                return Outcome::Optimal;
            };
            // Raising x_B (below its lower bound) means moving x_j against
            // the sign of M[r][j]; lowering it means moving with it.
            let mut enter: Option<(usize, Scalar)> = None;
            for j in 0..self.total() {
                let a = &self.rows[r][j];
                if self.is_basic(j) || a.is_zero() {
                    continue;
                }
                let up_moves = if below { a.is_negative() } else { a.is_positive() };
                let ok = if up_moves {
                    self.can_increase(j)
                } else {
                    self.can_decrease(j)
                };
                if !ok {
                    continue;
                }
                let ratio = (&self.reduced[j] / a).abs();
                if enter.as_ref().is_none_or(|(_, best)| ratio < *best) {
                    enter = Some((j, ratio));
                }
            }
            let Some((q, ratio)) = enter else {
                return Outcome::Infeasible(r);
            };
            degenerate = if ratio.is_zero() { degenerate + 1 } else { 0 };
            let leaving = self.basis[r];
            self.pivot(r, q);
            self.value[leaving] = if below {
                self.lower[leaving].clone().expect("violated lower bound exists")
            } else {
                self.upper[leaving].clone().expect("violated upper bound exists")
            };
            self.recompute_basics();
        }
    }

    /// Primal simplex from a primal feasible basis.
    fn primal_simplex(&mut self) -> Outcome {
        let mut degenerate = 0u32;
        loop {
            let bland = self.rule == PivotRule::Bland || degenerate >= DEGENERATE_RUN;
            let mut enter: Option<(usize, i8)> = None;
            for j in 0..self.total() {
                if self.is_basic(j) {
                    continue;
                }
                let d = &self.reduced[j];
                let dir = if d.is_negative() && self.can_increase(j) {
                    1
                } else if d.is_positive() && self.can_decrease(j) {
                    -1
                } else {
                    continue;
                };
                match enter {
                    None => enter = Some((j, dir)),
                    Some((best, _)) if !bland && d.abs() > self.reduced[best].abs() => enter = Some((j, dir)),
                    _ => {}
                }
                if bland {
                    break;
                }
            }
            let Some((q, dir)) = enter else {
                return Outcome::Optimal;
            };
            // Step length limited by the entering column's own range and by
            // each basic variable reaching a bound. Ties go to the smallest
            // column index.
            let mut step: Option<(Scalar, usize, Option<usize>)> = None;
            let consider =
                |t: Scalar, col: usize, row: Option<usize>, step: &mut Option<(Scalar, usize, Option<usize>)>| {
                    let better = match step {
                        None => true,
                        Some((bt, bc, _)) => t < *bt || (t == *bt && col < *bc),
                    };
                    if better {
                        *step = Some((t, col, row));
                    }
                };
            if let (Some(l), Some(u)) = (&self.lower[q], &self.upper[q]) {
                consider(u - l, q, None, &mut step);
            }
            for (i, &b) in self.basis.iter().enumerate() {
                let a = &self.rows[i][q];
                if a.is_zero() {
                    continue;
                }
                // x_B changes at rate g per unit step.
                let g = if dir > 0 { -a } else { a.clone() };
                let limit = if g.is_positive() {
                    &self.upper[b]
                } else {
                    &self.lower[b]
                };
                if let Some(bound) = limit {
                    let t = (bound - &self.value[b]) / &g;
                    consider(t.max(Scalar::zero()), b, Some(i), &mut step);
                }
            }
            let Some((t, _, row)) = step else {
                return Outcome::Unbounded(q, dir);
            };
            degenerate = if t.is_zero() { degenerate + 1 } else { 0 };
            let delta = if dir > 0 { t } else { -t };
            match row {
                None => {
                    self.value[q] += &delta;
                }
                Some(r) => {
                    let leaving = self.basis[r];
                    let a = self.rows[r][q].clone();
                    let g = if dir > 0 { -a } else { a };
                    let bound = if g.is_positive() {
                        &self.upper[leaving]
                    } else {
                        &self.lower[leaving]
                    };
                    let bound = bound.clone().expect("limiting bound exists");
                    self.pivot(r, q);
                    self.value[q] += &delta;
                    self.value[leaving] = bound;
                }
            }
            self.recompute_basics();
        }
    }

    /// Solves from the current basis: a dual phase (with costs temporarily
    /// shifted so the basis is dual feasible) reaches primal feasibility,
    /// then the primal simplex optimizes the true costs.
    pub(crate) fn solve(&mut self) -> Outcome {
        if !self.dual_feasible() {
            let true_cost = self.cost.clone();
            for j in 0..self.total() {
                if self.is_basic(j) {
                    continue;
                }
                let d = &self.reduced[j];
                if (d.is_negative() && self.can_increase(j)) || (d.is_positive() && self.can_decrease(j)) {
                    self.cost[j] = &self.cost[j] - d;
                }
            }
            self.recompute_reduced();
            let outcome = self.dual_simplex();
            self.cost = true_cost;
            self.recompute_reduced();
            if let Outcome::Infeasible(r) = outcome {
                return Outcome::Infeasible(r);
            }
        } else if let Outcome::Infeasible(r) = self.dual_simplex() {
            return Outcome::Infeasible(r);
        }
        self.primal_simplex()
    }

    /// Tightens the bounds of column `j`, moving it if it is nonbasic.
    /// Returns false if the bounds cross.
    pub(crate) fn set_bounds(&mut self, j: usize, lower: Option<Scalar>, upper: Option<Scalar>) -> bool {
        if let (Some(l), Some(u)) = (&lower, &upper) {
            if l > u {
                return false;
            }
        }
        self.lower[j] = lower;
        self.upper[j] = upper;
        if !self.is_basic(j) {
            let v = &self.value[j];
            let moved = match (&self.lower[j], &self.upper[j]) {
                (Some(l), _) if v < l => Some(l.clone()),
                (_, Some(u)) if v > u => Some(u.clone()),
                _ => None,
            };
            if let Some(v) = moved {
                self.value[j] = v;
                self.recompute_basics();
            }
        }
        true
    }

    /// Dual values of the rows in minimization form.
    pub(crate) fn row_duals(&self) -> Vec<Scalar> {
        self.reduced[self.n..].to_vec()
    }

    /// Multipliers on `A x - s` read off the tableau row `r`.
    fn farkas_row(&self, r: usize) -> Vec<Scalar> {
        self.rows[r][self.n..].iter().map(|v| -v).collect()
    }

    fn ray(&self, q: usize, dir: i8) -> Vec<Scalar> {
        let mut d = vec![Scalar::zero(); self.n];
        let step = if dir > 0 { Scalar::one() } else { -Scalar::one() };
        if q < self.n {
            d[q] = step.clone();
        }
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                d[b] = -(&self.rows[i][q] * &step);
            }
        }
        d
    }
}

pub fn lp_solve(p: &LinearProgram) -> Result<LpSolution> {
    lp_solve_with(p, PivotRule::Bland)
}

pub fn lp_solve_with(p: &LinearProgram, rule: PivotRule) -> Result<LpSolution> {
    p.validate()?;
    let mut t = Tableau::new(p, rule);
    let outcome = t.solve();
    Ok(solution_from(p, &t, outcome))
}

pub(crate) fn solution_from(p: &LinearProgram, t: &Tableau, outcome: Outcome) -> LpSolution {
    let flip = p.sense == ObjSense::Maximize;
    let x = t.structural_values();
    match outcome {
        Outcome::Optimal => LpSolution {
            status: LpStatus::Optimal,
            objective: p.objective_at(&x),
            y: t.row_duals().into_iter().map(|v| if flip { -v } else { v }).collect(),
            x,
            certificate: None,
            pivots: t.pivots,
        },
        Outcome::Infeasible(r) => LpSolution {
            status: LpStatus::Infeasible,
            objective: Scalar::zero(),
            y: Vec::new(),
            x,
            certificate: Some(Certificate::Farkas(t.farkas_row(r))),
            pivots: t.pivots,
        },
        Outcome::Unbounded(q, dir) => LpSolution {
            status: LpStatus::Unbounded,
            objective: p.objective_at(&x),
            y: Vec::new(),
            certificate: Some(Certificate::Ray {
                point: x.clone(),
                direction: t.ray(q, dir),
            }),
            x,
            pivots: t.pivots,
        },
    }
}

/// Runs [`Tableau::solve`] and maps an unbounded outcome to an error, for
/// callers that require a finite optimum.
pub(crate) fn solve_bounded(t: &mut Tableau) -> Result<Option<()>> {
    match t.solve() {
        Outcome::Optimal => Ok(Some(())),
        Outcome::Infeasible(_) => Ok(None),
        Outcome::Unbounded(..) => Err(Error::BadInput("linear relaxation is unbounded".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{dual_of, farkas_valid, ray_valid, verify};
    use super::*;
    use proptest::prelude::*;

    fn s(v: &str) -> Scalar {
        v.parse().unwrap()
    }

    fn int(v: i64) -> Scalar {
        Scalar::from(v)
    }

    #[test]
    fn single_bound_row() {
        let mut p = LinearProgram::new(ObjSense::Minimize, vec![int(1)]);
        p.add_row("r", vec![(0, int(1))], RowSense::Ge, int(5));
        let sol = lp_solve(&p).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.objective, int(5));
        assert_eq!(sol.y, vec![int(1)]);
        verify(&p, &sol).unwrap();
    }

    #[test]
    fn two_variable_single_row() {
        let mut p = LinearProgram::new(ObjSense::Minimize, vec![int(1), int(1)]);
        p.add_row("r", vec![(0, int(1)), (1, int(1))], RowSense::Ge, int(3));
        let sol = lp_solve(&p).unwrap();
        assert_eq!(sol.objective, int(3));
        assert_eq!(sol.y, vec![int(1)]);
        verify(&p, &sol).unwrap();
    }

    #[test]
    fn maximize_with_mixed_rows() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3 -> (3, 1), value 11.
        let mut p = LinearProgram::new(ObjSense::Maximize, vec![int(3), int(2)]);
        p.add_row("a", vec![(0, int(1)), (1, int(1))], RowSense::Le, int(4));
        p.add_row("b", vec![(0, int(1)), (1, int(3))], RowSense::Le, int(6));
        p.set_bounds(0, Some(int(0)), Some(int(3)));
        for rule in [PivotRule::Bland, PivotRule::Dantzig] {
            let sol = lp_solve_with(&p, rule).unwrap();
            assert_eq!(sol.objective, int(11));
            assert_eq!(sol.x, vec![int(3), int(1)]);
            verify(&p, &sol).unwrap();
        }
    }

    #[test]
    fn equality_rows_and_free_variables() {
        // min x - y, x + y = 1, x - y >= -3/2, y free, x in [-1, 1].
        let mut p = LinearProgram::new(ObjSense::Minimize, vec![int(1), int(-1)]);
        p.add_row("e", vec![(0, int(1)), (1, int(1))], RowSense::Eq, int(1));
        p.add_row("g", vec![(0, int(1)), (1, int(-1))], RowSense::Ge, s("-3/2"));
        p.set_bounds(0, Some(int(-1)), Some(int(1)));
        p.set_bounds(1, None, None);
        let sol = lp_solve(&p).unwrap();
        assert_eq!(sol.objective, s("-3/2"));
        verify(&p, &sol).unwrap();
    }

    #[test]
    fn infeasible_program_has_farkas_row() {
        let mut p = LinearProgram::new(ObjSense::Minimize, vec![int(1), int(1)]);
        p.add_row("a", vec![(0, int(1)), (1, int(1))], RowSense::Le, int(1));
        p.add_row("b", vec![(0, int(1)), (1, int(1))], RowSense::Ge, int(2));
        let sol = lp_solve(&p).unwrap();
        assert_eq!(sol.status, LpStatus::Infeasible);
        let Some(Certificate::Farkas(y)) = sol.certificate else {
            panic!()
        };
        assert!(farkas_valid(&p, &y));
    }

    #[test]
    fn unbounded_program_has_ray() {
        let mut p = LinearProgram::new(ObjSense::Maximize, vec![int(1), int(0)]);
        p.add_row("a", vec![(0, int(1)), (1, int(-1))], RowSense::Le, int(1));
        let sol = lp_solve(&p).unwrap();
        assert_eq!(sol.status, LpStatus::Unbounded);
        let Some(Certificate::Ray { point, direction }) = sol.certificate else {
            panic!()
        };
        assert!(ray_valid(&p, &point, &direction));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the textbook largest-coefficient rule
        // without anti-cycling.
        let mut p = LinearProgram::new(ObjSense::Minimize, vec![s("-3/4"), int(150), s("-1/50"), int(6)]);
        p.add_row(
            "a",
            vec![(0, s("1/4")), (1, int(-60)), (2, s("-1/25")), (3, int(9))],
            RowSense::Le,
            int(0),
        );
        p.add_row(
            "b",
            vec![(0, s("1/2")), (1, int(-90)), (2, s("-1/50")), (3, int(3))],
            RowSense::Le,
            int(0),
        );
        p.add_row("c", vec![(2, int(1))], RowSense::Le, int(1));
        for rule in [PivotRule::Bland, PivotRule::Dantzig] {
            let sol = lp_solve_with(&p, rule).unwrap();
            assert_eq!(sol.objective, s("-1/20"));
            verify(&p, &sol).unwrap();
        }
    }

    #[test]
    fn dual_of_shapes() {
        let mut p = LinearProgram::new(ObjSense::Minimize, vec![int(1)]);
        p.add_row("r", vec![(0, int(1))], RowSense::Ge, int(4));
        let d = dual_of(&p).unwrap();
        assert_eq!(d.sense, ObjSense::Maximize);
        assert_eq!(d.cost, vec![int(4)]);
        assert_eq!(d.rows.len(), 1);
        assert_eq!(d.rows[0].sense, RowSense::Le);
        assert_eq!(d.rows[0].rhs, int(1));
        let mut q = p.clone();
        q.sense = ObjSense::Maximize;
        assert!(dual_of(&q).is_err());
    }

    fn arb_covering() -> impl Strategy<Value = LinearProgram> {
        (1usize..6, 1usize..7).prop_flat_map(|(m, n)| {
            (
                proptest::collection::vec(proptest::collection::vec(0i64..3, n), m),
                proptest::collection::vec(1i64..5, n),
                proptest::collection::vec(1i64..4, m),
            )
                .prop_map(move |(a, c, b)| {
                    let mut p = LinearProgram::new(ObjSense::Minimize, c.into_iter().map(Scalar::from).collect());
                    for (i, row) in a.into_iter().enumerate() {
                        let mut coeffs: Vec<(usize, Scalar)> = row
                            .into_iter()
                            .enumerate()
                            .filter(|(_, v)| *v != 0)
                            .map(|(j, v)| (j, Scalar::from(v)))
                            .collect();
                        if coeffs.is_empty() {
                            coeffs.push((i % n, Scalar::one()));
                        }
                        p.add_row(format!("r{i}"), coeffs, RowSense::Ge, Scalar::from(b[i]));
                    }
                    p
                })
        })
    }

    fn arb_general() -> impl Strategy<Value = LinearProgram> {
        (1usize..5, 1usize..5).prop_flat_map(|(m, n)| {
            (
                proptest::collection::vec(proptest::collection::vec(-3i64..4, n), m),
                proptest::collection::vec(-3i64..4, n),
                proptest::collection::vec(-4i64..5, m),
                proptest::collection::vec(0u8..3, m),
                proptest::collection::vec((0u8..3, -2i64..3), n),
                any::<bool>(),
            )
                .prop_map(move |(a, c, b, senses, bounds, maximize)| {
                    let sense = if maximize {
                        ObjSense::Maximize
                    } else {
                        ObjSense::Minimize
                    };
                    let mut p = LinearProgram::new(sense, c.into_iter().map(Scalar::from).collect());
                    for (i, row) in a.into_iter().enumerate() {
                        let coeffs = row
                            .into_iter()
                            .enumerate()
                            .filter(|(_, v)| *v != 0)
                            .map(|(j, v)| (j, Scalar::from(v)))
                            .collect();
                        let rs = [RowSense::Ge, RowSense::Le, RowSense::Eq][senses[i] as usize];
                        p.add_row(format!("r{i}"), coeffs, rs, Scalar::from(b[i]));
                    }
                    for (j, (kind, lo)) in bounds.into_iter().enumerate() {
                        let lo = Scalar::from(lo);
                        match kind {
                            0 => p.set_bounds(j, Some(lo.clone()), Some(lo + Scalar::from(3))),
                            1 => p.set_bounds(j, None, None),
                            _ => p.set_bounds(j, Some(lo), None),
                        }
                    }
                    p
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn covering_optimum_is_certified(p in arb_covering()) {
            let sol = lp_solve(&p).unwrap();
            prop_assert_eq!(sol.status, LpStatus::Optimal);
            prop_assert!(verify(&p, &sol).is_ok(), "{:?}", verify(&p, &sol));
            let d = lp_solve(&dual_of(&p).unwrap()).unwrap();
            prop_assert_eq!(d.objective, sol.objective);
        }

        #[test]
        fn general_outcomes_are_certified(p in arb_general()) {
            for rule in [PivotRule::Bland, PivotRule::Dantzig] {
                let sol = lp_solve_with(&p, rule).unwrap();
                match (&sol.status, &sol.certificate) {
                    (LpStatus::Optimal, _) => prop_assert!(verify(&p, &sol).is_ok(), "{:?}", verify(&p, &sol)),
                    (LpStatus::Infeasible, Some(Certificate::Farkas(y))) => prop_assert!(farkas_valid(&p, y)),
                    (LpStatus::Unbounded, Some(Certificate::Ray { point, direction })) => {
                        prop_assert!(ray_valid(&p, point, direction))
                    }
                    _ => prop_assert!(false, "missing certificate"),
                }
            }
        }

        #[test]
        fn column_order_does_not_change_optimum(p in arb_covering(), rot in 0usize..7) {
            let n = p.num_vars();
            let perm = |j: usize| (j + rot) % n;
            let mut q = LinearProgram::new(ObjSense::Minimize, vec![Scalar::zero(); n]);
            for j in 0..n {
                q.cost[perm(j)] = p.cost[j].clone();
            }
            for r in &p.rows {
                q.add_row(r.name.clone(), r.coeffs.iter().map(|(j, a)| (perm(*j), a.clone())).collect(), r.sense, r.rhs.clone());
            }
            prop_assert_eq!(lp_solve(&p).unwrap().objective, lp_solve(&q).unwrap().objective);
        }
    }
}
