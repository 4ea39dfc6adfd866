//! Exhaustive reference computation of `cov_k` for tiny grids. It shares no
//! code with the candidate enumeration or the LP engine: realizable point
//! sets come from determinant tests, and the minimum is found by memoized
//! search over residual demand vectors.

use std::collections::{BTreeSet, HashMap};

use crate::error::{bad, Result};
use crate::grid::{Grid, PointId};
use crate::scalar::Scalar;

/// Grids larger than this are rejected.
pub const MAX_POINTS: usize = 10;

fn diff(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn det2(u: &[Scalar], v: &[Scalar]) -> Scalar {
    &u[0] * &v[1] - &u[1] * &v[0]
}

fn det3(u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Scalar {
    &u[0] * &(&v[1] * &w[2] - &v[2] * &w[1]) - &u[1] * &(&v[0] * &w[2] - &v[2] * &w[0])
        + &u[2] * &(&v[0] * &w[1] - &v[1] * &w[0])
}

fn collinear(p: &[Scalar], q: &[Scalar], r: &[Scalar]) -> bool {
    let (u, v) = (diff(q, p), diff(r, p));
    if p.len() == 2 {
        det2(&u, &v).is_zero()
    } else {
        (0..3).all(|t| {
            let (a, b) = ((t + 1) % 3, (t + 2) % 3);
            (&u[a] * &v[b] - &u[b] * &v[a]).is_zero()
        })
    }
}

fn coplanar(p: &[Scalar], q: &[Scalar], r: &[Scalar], s: &[Scalar]) -> bool {
    det3(&diff(q, p), &diff(r, p), &diff(s, p)).is_zero()
}

/// Point sets cut out by some hyperplane that avoids `missing`.
pub fn realizable_sets(g: &Grid, missing: Option<PointId>) -> Vec<Vec<PointId>> {
    let c: Vec<&[Scalar]> = g.points().iter().map(|p| p.coords.as_slice()).collect();
    let pts: Vec<PointId> = (0..g.len()).filter(|&p| Some(p) != missing).collect();
    let mut sets: BTreeSet<Vec<PointId>> = pts.iter().map(|&p| vec![p]).collect();
    for (a, &p) in pts.iter().enumerate() {
        for &q in &pts[a + 1..] {
            if missing.is_some_and(|m| collinear(c[p], c[q], c[m])) {
                continue;
            }
            // In 2D the line is the hyperplane; in 3D a generic plane
            // through the line meets the grid in exactly the line.
            let line: Vec<PointId> = (0..g.len())
                .filter(|&r| r == p || r == q || collinear(c[p], c[q], c[r]))
                .collect();
            sets.insert(line);
            if g.dim() == 3 {
                for &r in &pts {
                    if collinear(c[p], c[q], c[r]) {
                        continue;
                    }
                    if missing.is_some_and(|m| coplanar(c[p], c[q], c[r], c[m])) {
                        continue;
                    }
                    let plane: Vec<PointId> = (0..g.len()).filter(|&s| coplanar(c[p], c[q], c[r], c[s])).collect();
                    sets.insert(plane);
                }
            }
        }
    }
    sets.into_iter().collect()
}

/// Minimum number of admissible hyperplanes covering every point except
/// `missing` at least `k` times.
pub fn brute_cov(g: &Grid, k: u64, missing: Option<PointId>) -> Result<u64> {
    if g.len() > MAX_POINTS {
        return bad(format!("brute force is limited to {MAX_POINTS} points"));
    }
    let sets = realizable_sets(g, missing);
    let demand: Vec<u8> = (0..g.len())
        .map(|p| if Some(p) == missing { 0 } else { k as u8 })
        .collect();
    let mut memo = HashMap::new();
    Ok(solve(&demand, &sets, &mut memo))
}

fn solve(demand: &[u8], sets: &[Vec<PointId>], memo: &mut HashMap<Vec<u8>, u64>) -> u64 {
    let Some(first) = demand.iter().position(|&d| d > 0) else {
        return 0;
    };
    if let Some(&v) = memo.get(demand) {
        return v;
    }
    let mut best = u64::MAX;
    for set in sets.iter().filter(|s| s.contains(&first)) {
        let mut next = demand.to_vec();
        for &p in set {
            next[p] = next[p].saturating_sub(1);
        }
        best = best.min(1 + solve(&next, sets, memo));
    }
    memo.insert(demand.to_vec(), best);
    best
}
