//! Exact rational linear and integer programming.
//!
//! Programs are solved in the bounded form `A x - s = 0` where every row
//! gets a slack `s_i` whose bounds encode the row sense and right-hand side.
//! All arithmetic is exact; optimal solutions come with dual values that
//! [`verify`] checks against the original data.

mod bb;
mod simplex;
mod text;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{bad, Result};
use crate::scalar::Scalar;

pub use bb::{ilp_solve, BbStats, IlpOptions, IlpSolution, IlpStatus, DEFAULT_NODE_LIMIT};
pub use simplex::{lp_solve, lp_solve_with, PivotRule};
pub use text::{parse_lp, write_lp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjSense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RowSense {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for RowSense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowSense::Ge => ">=",
            RowSense::Le => "<=",
            RowSense::Eq => "=",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub name: String,
    /// Sparse coefficients `(column, value)`.
    pub coeffs: Vec<(usize, Scalar)>,
    pub sense: RowSense,
    pub rhs: Scalar,
}

impl Row {
    pub fn activity(&self, x: &[Scalar]) -> Scalar {
        self.coeffs.iter().map(|(j, a)| a * &x[*j]).sum()
    }

    pub fn satisfied_by(&self, x: &[Scalar]) -> bool {
        let v = self.activity(x);
        match self.sense {
            RowSense::Ge => v >= self.rhs,
            RowSense::Le => v <= self.rhs,
            RowSense::Eq => v == self.rhs,
        }
    }
}

/// A linear program over `n` variables. Bounds of `None` are infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub sense: ObjSense,
    pub cost: Vec<Scalar>,
    pub rows: Vec<Row>,
    pub lower: Vec<Option<Scalar>>,
    pub upper: Vec<Option<Scalar>>,
}

impl LinearProgram {
    /// Program with the given costs, no rows, and all variables in `[0, inf)`.
    pub fn new(sense: ObjSense, cost: Vec<Scalar>) -> LinearProgram {
        let n = cost.len();
        LinearProgram {
            sense,
            cost,
            rows: Vec::new(),
            lower: vec![Some(Scalar::zero()); n],
            upper: vec![None; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.cost.len()
    }

    pub fn add_row(&mut self, name: impl Into<String>, coeffs: Vec<(usize, Scalar)>, sense: RowSense, rhs: Scalar) {
        self.rows.push(Row {
            name: name.into(),
            coeffs,
            sense,
            rhs,
        });
    }

    pub fn set_bounds(&mut self, j: usize, lower: Option<Scalar>, upper: Option<Scalar>) {
        self.lower[j] = lower;
        self.upper[j] = upper;
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.lower.len() != n || self.upper.len() != n {
            return bad("bound vectors do not match the number of variables");
        }
        for (j, (l, u)) in self.lower.iter().zip(&self.upper).enumerate() {
            if let (Some(l), Some(u)) = (l, u) {
                if l > u {
                    return bad(format!("variable x{j} has lower bound {l} above upper bound {u}"));
                }
            }
        }
        for row in &self.rows {
            let mut seen = std::collections::HashSet::new();
            for (j, _) in &row.coeffs {
                if *j >= n {
                    return bad(format!("row {} references x{j} but there are {n} variables", row.name));
                }
                if !seen.insert(*j) {
                    return bad(format!("row {} lists x{j} twice", row.name));
                }
            }
        }
        Ok(())
    }

    /// `cost . x`.
    pub fn objective_at(&self, x: &[Scalar]) -> Scalar {
        self.cost
            .iter()
            .zip(x)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c * v)
            .sum()
    }

    /// Whether `x` satisfies every row and bound.
    pub fn is_feasible(&self, x: &[Scalar]) -> bool {
        x.len() == self.num_vars()
            && x.iter().enumerate().all(|(j, v)| {
                self.lower[j].as_ref().is_none_or(|l| v >= l) && self.upper[j].as_ref().is_none_or(|u| v <= u)
            })
            && self.rows.iter().all(|r| r.satisfied_by(x))
    }

    /// Whether the program is `min c.x, A x >= b, x >= 0` with no upper bounds.
    pub fn is_covering_form(&self) -> bool {
        self.sense == ObjSense::Minimize
            && self.rows.iter().all(|r| r.sense == RowSense::Ge)
            && self.lower.iter().all(|l| l.as_ref().is_some_and(Scalar::is_zero))
            && self.upper.iter().all(Option::is_none)
    }
}

/// The LP dual of a covering-form program:
/// `max b.w` subject to `A^T w <= c`, `w >= 0`.
pub fn dual_of(p: &LinearProgram) -> Result<LinearProgram> {
    if !p.is_covering_form() {
        return bad("dual_of needs a program of the form min c.x, A x >= b, x >= 0");
    }
    let mut d = LinearProgram::new(ObjSense::Maximize, p.rows.iter().map(|r| r.rhs.clone()).collect());
    let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); p.num_vars()];
    for (i, row) in p.rows.iter().enumerate() {
        for (j, a) in &row.coeffs {
            cols[*j].push((i, a.clone()));
        }
    }
    for (j, col) in cols.into_iter().enumerate() {
        d.add_row(format!("x{j}"), col, RowSense::Le, p.cost[j].clone());
    }
    Ok(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Row multipliers `y` such that `y^T (A x - s)` cannot vanish inside
    /// the variable and slack bounds.
    Farkas(Vec<Scalar>),
    /// A feasible point and a direction along which the objective improves
    /// without bound.
    Ray { point: Vec<Scalar>, direction: Vec<Scalar> },
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<Scalar>,
    /// One dual value per row, in the program's own objective sense.
    pub y: Vec<Scalar>,
    pub objective: Scalar,
    pub certificate: Option<Certificate>,
    pub pivots: u64,
}

/// Bounds of every variable followed by every slack, as implied by `p`.
fn extended_bounds(p: &LinearProgram) -> Vec<(Option<Scalar>, Option<Scalar>)> {
    let mut out: Vec<_> = p.lower.iter().cloned().zip(p.upper.iter().cloned()).collect();
    for row in &p.rows {
        let b = Some(row.rhs.clone());
        out.push(match row.sense {
            RowSense::Ge => (b, None),
            RowSense::Le => (None, b),
            RowSense::Eq => (b.clone(), b),
        });
    }
    out
}

/// Checks an optimal solution from scratch: primal feasibility, dual
/// feasibility of the reduced costs implied by `y`, and a zero gap between
/// the primal objective and the dual objective.
pub fn verify(p: &LinearProgram, sol: &LpSolution) -> Result<(), String> {
    if sol.status != LpStatus::Optimal {
        return Err(format!("status is {:?}, not optimal", sol.status));
    }
    if !p.is_feasible(&sol.x) {
        return Err("primal point violates a row or bound".into());
    }
    let primal = p.objective_at(&sol.x);
    if primal != sol.objective {
        return Err(format!("reported objective {} but c.x = {primal}", sol.objective));
    }
    // Work in minimization form.
    let flip = p.sense == ObjSense::Maximize;
    let sign = |v: &Scalar| if flip { -v } else { v.clone() };
    let y: Vec<Scalar> = sol.y.iter().map(sign).collect();
    let mut reduced: Vec<Scalar> = p.cost.iter().map(sign).collect();
    for (i, row) in p.rows.iter().enumerate() {
        for (j, a) in &row.coeffs {
            reduced[*j] -= &y[i] * a;
        }
    }
    reduced.extend(y.iter().cloned());
    let mut dual = Scalar::zero();
    for (v, (d, (l, u))) in reduced.iter().zip(extended_bounds(p)).enumerate() {
        if d.is_positive() {
            match l {
                Some(l) => dual += d * &l,
                None => {
                    return Err(format!(
                        "reduced cost {d} of column {v} is positive but it has no lower bound"
                    ))
                }
            }
        } else if d.is_negative() {
            match u {
                Some(u) => dual += d * &u,
                None => {
                    return Err(format!(
                        "reduced cost {d} of column {v} is negative but it has no upper bound"
                    ))
                }
            }
        }
    }
    let primal_min = sign(&primal);
    if dual != primal_min {
        return Err(format!("duality gap: primal {primal_min}, dual {dual}"));
    }
    Ok(())
}

/// Whether `y` proves infeasibility: the range of `y^T (A x - s)` over the
/// bound box excludes zero.
pub fn farkas_valid(p: &LinearProgram, y: &[Scalar]) -> bool {
    if y.len() != p.rows.len() {
        return false;
    }
    let mut coef = vec![Scalar::zero(); p.num_vars()];
    for (i, row) in p.rows.iter().enumerate() {
        for (j, a) in &row.coeffs {
            coef[*j] += &y[i] * a;
        }
    }
    coef.extend(y.iter().map(|v| -v));
    // lo/hi of the form; None = unbounded in that direction.
    let mut lo = Some(Scalar::zero());
    let mut hi = Some(Scalar::zero());
    for (c, (l, u)) in coef.iter().zip(extended_bounds(p)) {
        if c.is_zero() {
            continue;
        }
        let (at_min, at_max) = if c.is_positive() { (l, u) } else { (u, l) };
        lo = match (lo, at_min) {
            (Some(acc), Some(b)) => Some(acc + c * &b),
            _ => None,
        };
        hi = match (hi, at_max) {
            (Some(acc), Some(b)) => Some(acc + c * &b),
            _ => None,
        };
    }
    lo.is_some_and(|l| l.is_positive()) || hi.is_some_and(|h| h.is_negative())
}

/// Whether a ray certificate proves unboundedness of `p`.
pub fn ray_valid(p: &LinearProgram, point: &[Scalar], direction: &[Scalar]) -> bool {
    if !p.is_feasible(point) || direction.len() != p.num_vars() {
        return false;
    }
    let improving = {
        let c = p.objective_at(direction);
        match p.sense {
            ObjSense::Minimize => c.is_negative(),
            ObjSense::Maximize => c.is_positive(),
        }
    };
    let bounds_ok = direction
        .iter()
        .enumerate()
        .all(|(j, d)| (!d.is_negative() || p.lower[j].is_none()) && (!d.is_positive() || p.upper[j].is_none()));
    let rows_ok = p.rows.iter().all(|r| {
        let a = r.activity(direction);
        match r.sense {
            RowSense::Ge => !a.is_negative(),
            RowSense::Le => !a.is_positive(),
            RowSense::Eq => a.is_zero(),
        }
    });
    improving && bounds_ok && rows_ok
}
