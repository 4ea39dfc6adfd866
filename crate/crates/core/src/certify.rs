//! Lower bounds: row-profile bounds, closed forms, and explicit dual
//! weightings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::construct::default_cover;
use crate::cover::{cov, cov_lp, SolveOptions, Weighting};
use crate::error::{bad, Result};
use crate::grid::{Grid, GridKind, PointId};
use crate::scalar::Scalar;

/// `(n - t + 1) k + l0 (1 - sum_{i=t}^{n} 1/beta_i)` for a nondecreasing
/// profile `beta_1 <= ... <= beta_n` and 1-based `t`.
pub fn lemma_bound(betas: &[u64], k: u64, l0: u64, t: usize) -> Result<Scalar> {
    let n = betas.len();
    if t == 0 || t > n {
        return bad(format!("t must lie in 1..={n}"));
    }
    if betas.contains(&0) || betas.windows(2).any(|w| w[0] > w[1]) {
        return bad("betas must be positive and nondecreasing");
    }
    if betas[t - 1] * k < l0 {
        return bad(format!("beta_t = {} is below l0 / k = {l0}/{k}", betas[t - 1]));
    }
    let tail: Scalar = betas[t - 1..].iter().map(|&b| Scalar::new(1, b as i64)).sum();
    Ok(Scalar::from(((n - t + 1) as u64) * k) + Scalar::from(l0) * (Scalar::one() - tail))
}

/// `min over l0 of l0 + sum_i max(0, ceil(k - l0 / beta_i))`: with `l0`
/// non-row hyperplanes, row `i` still needs that many row lines.
pub fn lemma_opt_bound(betas: &[u64], k: u64) -> u64 {
    let max_beta = betas.iter().copied().max().unwrap_or(0);
    (0..=k * max_beta)
        .map(|l0| {
            l0 + betas
                .iter()
                .map(|&b| {
                    // ceil(k - l0 / b) = k - floor(l0 / b), clipped at zero
                    k.saturating_sub(l0 / b)
                })
                .sum::<u64>()
        })
        .min()
        .unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoundValue {
    Exact(Scalar),
    Float(f64),
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(s) => write!(f, "{s}"),
            BoundValue::Float(v) => write!(f, "{v:.12}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub method: String,
    pub value: BoundValue,
    pub params: String,
    pub note: String,
}

impl BoundResult {
    pub fn is_exact(&self) -> bool {
        matches!(self.value, BoundValue::Exact(_))
    }

    pub fn as_f64(&self) -> f64 {
        match &self.value {
            BoundValue::Exact(s) => s.to_f64(),
            BoundValue::Float(v) => *v,
        }
    }
}

/// `n k (1 - e^{1/(2n) - 1} - 1/n)`, a lower bound for conical grids.
pub fn conical_closed_form(n: u64, k: u64) -> Result<BoundResult> {
    if n < 2 {
        return bad("conical closed form needs n >= 2");
    }
    let nf = n as f64;
    let value = nf * k as f64 * (1.0 - (1.0 / (2.0 * nf) - 1.0).exp() - 1.0 / nf);
    Ok(BoundResult {
        method: "conical_closed_form".into(),
        value: BoundValue::Float(value),
        params: format!("n={n};k={k}"),
        note: "float, asymptotic".into(),
    })
}

/// Row profile `beta_i = 1 + floor((i-1)(n-1)/(m-1))` of the m x n half-grid.
pub fn halfgrid_profile(m: u64, n: u64) -> Result<Vec<u64>> {
    if m < 2 || m > n {
        return bad(format!("half-grid profile needs 2 <= m <= n, got m={m}, n={n}"));
    }
    Ok((1..=m).map(|i| 1 + (i - 1) * (n - 1) / (m - 1)).collect())
}

/// Leading term `m k (1 - e^{-n/m})` of the half-grid bound.
pub fn halfgrid_closed_form(m: u64, n: u64, k: u64) -> Result<BoundResult> {
    if m < 2 || m > n {
        return bad(format!("half-grid closed form needs 2 <= m <= n, got m={m}, n={n}"));
    }
    let value = m as f64 * k as f64 * (1.0 - (-(n as f64) / m as f64).exp());
    Ok(BoundResult {
        method: "halfgrid_closed_form".into(),
        value: BoundValue::Float(value),
        params: format!("m={m};n={n};k={k}"),
        note: "float, leading term only".into(),
    })
}

/// Weight `k/2` on the non-vertex points of the two boundary lines and on
/// the points `(a_i, b_{n-1-i})`, `1 <= i <= n-2`.
pub fn weighting_generic2(g: &Grid, k: u64) -> Result<Weighting> {
    if g.kind() != GridKind::Generic2 {
        return bad(format!("generic2 weighting needs a generic2 grid, got {}", g.kind()));
    }
    let n = g.order();
    if n < 4 {
        return bad("generic2 weighting needs n >= 4");
    }
    let vertex = g.vertex();
    let mut wt = Weighting::zero(g, vertex);
    let half = Scalar::new(k as i64, 2);
    for (id, p) in g.points().iter().enumerate() {
        let (i, j) = (p.indices[0], p.indices[1]);
        let boundary = (i == 0) != (j == 0);
        let anti = i >= 1 && i <= n - 2 && j == n - 1 - i;
        if boundary || anti {
            wt.weights[id] = half.clone();
        }
    }
    Ok(wt)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generic3Weighting {
    pub weighting: Weighting,
    /// Total on the nonzero axis points.
    pub axes: Scalar,
    /// Total on points with exactly one zero index.
    pub faces: Scalar,
    /// Total on points with no zero index.
    pub interior: Scalar,
}

/// Weight `k/3` on nonzero axis points, `k/6` on points with exactly one
/// zero index and index sum `n` (every such point when `literal`), and
/// `(3k/n^2)(|r - n/3| + |s - n/3| + |t - n/3|)` on points with no zero
/// index, index sum `n`, and every index at most `2n/3`.
pub fn weighting_generic3(g: &Grid, k: u64, literal: bool) -> Result<Generic3Weighting> {
    if g.kind() != GridKind::Generic3 {
        return bad(format!("generic3 weighting needs a generic3 grid, got {}", g.kind()));
    }
    let n = g.order();
    if n < 3 {
        return bad("generic3 weighting needs n >= 3");
    }
    let ni = n as i64;
    let kk = Scalar::from(k);
    let third = Scalar::new(ni, 3);
    let scale = Scalar::new(3 * k as i64, ni * ni);
    let mut wt = Weighting::zero(g, g.vertex());
    let (mut axes, mut faces, mut interior) = (Scalar::zero(), Scalar::zero(), Scalar::zero());
    for (id, p) in g.points().iter().enumerate() {
        let idx = &p.indices;
        let zeros = idx.iter().filter(|&&v| v == 0).count();
        let sum: usize = idx.iter().sum();
        let w = match zeros {
            2 => {
                let w = &kk / Scalar::from(3);
                axes += &w;
                w
            }
            1 if literal || sum == n => {
                let w = &kk / Scalar::from(6);
                faces += &w;
                w
            }
            0 if sum == n && idx.iter().all(|&v| 3 * v <= 2 * n) => {
                let dev: Scalar = idx.iter().map(|&v| (Scalar::from(v) - &third).abs()).sum();
                let w = &scale * dev;
                interior += &w;
                w
            }
            _ => continue,
        };
        wt.weights[id] = w;
    }
    Ok(Generic3Weighting {
        weighting: wt,
        axes,
        faces,
        interior,
    })
}

#[derive(Clone, Debug, Default)]
pub struct BoundOptions {
    /// Also solve the LP relaxation.
    pub lp: bool,
    /// Also solve the integer program.
    pub ilp: bool,
    pub solve: SolveOptions,
}

/// Every bound that applies to `g`, in a fixed order.
pub fn bound_report(g: &Grid, k: u64, missing: Option<PointId>, opts: &BoundOptions) -> Result<Vec<BoundResult>> {
    let mut out = Vec::new();
    let exact = |method: &str, value: Scalar, params: String, note: &str| BoundResult {
        method: method.into(),
        value: BoundValue::Exact(value),
        params,
        note: note.into(),
    };
    let n = g.order() as u64;
    if g.dim() == 2 {
        let profile = g.row_profile(missing);
        let params = format!(
            "profile={};k={k}",
            profile.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
        );
        out.push(exact(
            "lemma_opt_bound",
            Scalar::from(lemma_opt_bound(&profile, k)),
            params,
            "lower",
        ));
    }
    match g.kind() {
        GridKind::Conical if missing.is_none() && n >= 2 => out.push(conical_closed_form(n, k)?),
        GridKind::Halfgrid | GridKind::Halfrect if missing.is_none() => {
            out.push(halfgrid_closed_form(g.m().unwrap_or(2) as u64, n, k)?)
        }
        GridKind::Generic2 if missing == g.vertex() && n >= 4 => {
            let w = weighting_generic2(g, k)?;
            out.push(exact("weighting_generic2", w.total(), format!("n={n};k={k}"), "lower"));
        }
        GridKind::Generic3 if missing == g.vertex() && n >= 3 => {
            let w = weighting_generic3(g, k, false)?;
            out.push(exact(
                "weighting_generic3",
                w.weighting.total(),
                format!("n={n};k={k}"),
                "lower",
            ));
        }
        _ => {}
    }
    if opts.lp {
        let lp = cov_lp(g, k, missing, opts.solve.paper_literal)?;
        out.push(exact("cov_lp", lp.value, format!("k={k}"), "lower"));
    }
    if opts.ilp {
        let r = cov(g, k, missing, &opts.solve)?;
        out.push(exact("cov", Scalar::from(r.value), format!("k={k}"), "exact"));
    }
    if let Some(c) = default_cover(g, k, missing) {
        out.push(exact("construction", Scalar::from(c.size()), format!("k={k}"), "upper"));
    }
    Ok(out)
}

/// Bound table as CSV with columns `method,value,exact,params`.
pub fn bounds_csv(rows: &[BoundResult]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["method", "value", "exact", "params"])
        .map_err(|e| crate::error::Error::Internal(e.to_string()))?;
    for r in rows {
        w.write_record([
            r.method.clone(),
            r.value.to_string(),
            r.is_exact().to_string(),
            r.params.clone(),
        ])
        .map_err(|e| crate::error::Error::Internal(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| crate::error::Error::Internal(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
