//! Grid point sets and their generators.
//!
//! A [`Grid`] is a finite point set in dimension 2 or 3 whose points are
//! addressed by integer index tuples into sorted per-axis value lists. Every
//! generator in this module is deterministic in its inputs (and seed).

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{bad, Error, Result};
use crate::generic::{check_generic2, check_generic3};
use crate::scalar::Scalar;

/// Sampled axis values are `u / SAMPLER_DENOM` with `u` uniform in
/// `1..=SAMPLER_DENOM * SAMPLER_RANGE`.
pub const SAMPLER_DENOM: i64 = 1 << 20;
pub const SAMPLER_RANGE: i64 = 16;
/// Resamples allowed after the first draw when a generic instance is requested.
pub const GENERIC_RETRIES: usize = 16;

/// Position of a point inside [`Grid::points`].
pub type PointId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    Conical,
    Halfgrid,
    Halfrect,
    Simplex,
    Generic2,
    Generic3,
    Fullgrid,
}

impl GridKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GridKind::Conical => "conical",
            GridKind::Halfgrid => "halfgrid",
            GridKind::Halfrect => "halfrect",
            GridKind::Simplex => "simplex",
            GridKind::Generic2 => "generic2",
            GridKind::Generic3 => "generic3",
            GridKind::Fullgrid => "fullgrid",
        }
    }
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for GridKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "conical" => GridKind::Conical,
            "halfgrid" => GridKind::Halfgrid,
            "halfrect" => GridKind::Halfrect,
            "simplex" => GridKind::Simplex,
            "generic2" => GridKind::Generic2,
            "generic3" => GridKind::Generic3,
            "fullgrid" => GridKind::Fullgrid,
            other => return bad(format!("unknown grid kind {other:?}")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridPoint {
    pub indices: Vec<usize>,
    pub coords: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct Grid {
    kind: GridKind,
    order: usize,
    m: Option<usize>,
    seed: Option<u64>,
    axes: Vec<Vec<Scalar>>,
    points: Vec<GridPoint>,
    lookup: HashMap<Vec<usize>, PointId>,
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.order == other.order
            && self.m == other.m
            && self.seed == other.seed
            && self.axes == other.axes
            && self.points == other.points
    }
}

impl Eq for Grid {}

impl Grid {
    /// Assembles a grid from axis lists and index tuples, checking the
    /// structural invariants (not the kind-specific ones, see
    /// [`Grid::check_kind`]). Points are stored sorted by index tuple.
    pub fn from_parts(
        kind: GridKind,
        order: usize,
        m: Option<usize>,
        axes: Vec<Vec<Scalar>>,
        mut indices: Vec<Vec<usize>>,
        seed: Option<u64>,
    ) -> Result<Grid> {
        let dim = axes.len();
        if dim != 2 && dim != 3 {
            return bad(format!("grid dimension must be 2 or 3, got {dim}"));
        }
        for (t, axis) in axes.iter().enumerate() {
            if axis.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("axis {t} is not strictly increasing"));
            }
        }
        indices.sort();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return bad("duplicate point indices");
        }
        let mut points = Vec::with_capacity(indices.len());
        let mut lookup = HashMap::with_capacity(indices.len());
        for idx in indices {
            if idx.len() != dim {
                return bad(format!("point {idx:?} does not have {dim} indices"));
            }
            let mut coords = Vec::with_capacity(dim);
            for (t, &i) in idx.iter().enumerate() {
                match axes[t].get(i) {
                    Some(v) => coords.push(v.clone()),
                    None => return bad(format!("index {i} out of range on axis {t}")),
                }
            }
            lookup.insert(idx.clone(), points.len());
            points.push(GridPoint { indices: idx, coords });
        }
        Ok(Grid {
            kind,
            order,
            m,
            seed,
            axes,
            points,
            lookup,
        })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn m(&self) -> Option<usize> {
        self.m
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn axes(&self) -> &[Vec<Scalar>] {
        &self.axes
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, id: PointId) -> &GridPoint {
        &self.points[id]
    }

    pub fn find(&self, indices: &[usize]) -> Option<PointId> {
        self.lookup.get(indices).copied()
    }

    /// The point with all indices zero, if present.
    pub fn vertex(&self) -> Option<PointId> {
        self.find(&vec![0; self.dim()])
    }

    /// Sorted distinct last-coordinate values with the number of points on
    /// each (2D: the horizontal rows).
    pub fn row_profile(&self, exclude: Option<PointId>) -> Vec<u64> {
        let last = self.dim() - 1;
        let mut counts: HashMap<usize, u64> = HashMap::new();
        for (id, p) in self.points.iter().enumerate() {
            if Some(id) != exclude {
                *counts.entry(p.indices[last]).or_default() += 1;
            }
        }
        let mut profile: Vec<u64> = counts.into_values().collect();
        profile.sort_unstable();
        profile
    }

    /// Verifies the defining membership rule of `self.kind()`.
    pub fn check_kind(&self) -> Result<()> {
        let n = self.order;
        let dim = self.dim();
        let fail = |msg: String| bad::<()>(format!("{} grid: {msg}", self.kind));
        let expect_dim = |d: usize| {
            if dim != d {
                fail(format!("expected dimension {d}, got {dim}"))
            } else {
                Ok(())
            }
        };
        let all_indices = |lens: &[usize]| -> Vec<Vec<usize>> {
            let mut out = vec![vec![]];
            for &len in lens {
                out = out
                    .into_iter()
                    .flat_map(|p| {
                        (0..len).map(move |i| {
                            let mut q = p.clone();
                            q.push(i);
                            q
                        })
                    })
                    .collect();
            }
            out
        };
        let lens: Vec<usize> = self.axes.iter().map(Vec::len).collect();
        let by_rule = |rule: &dyn Fn(&[usize]) -> bool| -> Result<()> {
            for idx in all_indices(&lens) {
                if rule(&idx) != self.find(&idx).is_some() {
                    return fail(format!("membership of {idx:?} disagrees with the defining rule"));
                }
            }
            Ok(())
        };
        match self.kind {
            GridKind::Conical => {
                expect_dim(2)?;
                if lens[1] != n {
                    return fail(format!("expected {n} rows, got {}", lens[1]));
                }
                let mut rows = vec![0usize; n];
                for p in &self.points {
                    rows[p.indices[1]] += 1;
                }
                for (i, &c) in rows.iter().enumerate() {
                    if c != n - i {
                        return fail(format!("row {i} has {c} points, expected {}", n - i));
                    }
                }
                Ok(())
            }
            GridKind::Halfgrid | GridKind::Halfrect | GridKind::Generic2 => {
                expect_dim(2)?;
                let m = if self.kind == GridKind::Generic2 {
                    n
                } else {
                    self.m.unwrap_or(0)
                };
                if lens[0] != n || lens[1] != m || m < 2 || m > n {
                    return fail(format!("axis lengths {lens:?} do not match order {n} x {m}"));
                }
                if self.kind == GridKind::Halfrect
                    && !self
                        .axes
                        .iter()
                        .all(|a| a.iter().enumerate().all(|(i, v)| *v == Scalar::from(i)))
                {
                    return fail("axes must be 0..n-1 and 0..m-1".into());
                }
                by_rule(&|idx| (m - 1) * idx[0] + (n - 1) * idx[1] <= (m - 1) * (n - 1))
            }
            GridKind::Simplex => {
                if n == 0 || lens.iter().any(|&l| l != n) {
                    return fail("axes must all have length n".into());
                }
                if !self
                    .axes
                    .iter()
                    .all(|a| a.iter().enumerate().all(|(i, v)| *v == Scalar::from(i)))
                {
                    return fail("axes must be 0..n-1".into());
                }
                by_rule(&|idx| idx.iter().sum::<usize>() < n)
            }
            GridKind::Generic3 => {
                expect_dim(3)?;
                if lens.iter().any(|&l| l != n + 1) {
                    return fail("axes must have n+1 entries".into());
                }
                if self.axes.iter().any(|a| !a[0].is_zero()) {
                    return fail("axes must start at 0".into());
                }
                by_rule(&|idx| idx.iter().sum::<usize>() <= n)
            }
            GridKind::Fullgrid => {
                expect_dim(2)?;
                by_rule(&|_| true)
            }
        }
    }

    pub fn to_json(&self) -> GridJson {
        GridJson {
            dim: self.dim(),
            kind: self.kind,
            order: self.order,
            m: self.m,
            axes: self.axes.clone(),
            points: self.points.iter().map(|p| p.indices.clone()).collect(),
            seed: self.seed,
        }
    }

    /// Parses and validates grid JSON, including the kind invariants.
    pub fn from_json_str(s: &str) -> Result<Grid> {
        let raw: GridJson = serde_json::from_str(s)?;
        Grid::try_from(raw)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("grid serializes")
    }

    /// Hex SHA-256 of the compact JSON encoding; used to tie covers and
    /// weightings to the grid they were computed for.
    pub fn fingerprint(&self) -> String {
        hex::encode(Sha256::digest(self.to_json_string().as_bytes()))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridJson {
    pub dim: usize,
    pub kind: GridKind,
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub axes: Vec<Vec<Scalar>>,
    pub points: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl TryFrom<GridJson> for Grid {
    type Error = Error;

    fn try_from(raw: GridJson) -> Result<Grid> {
        if raw.dim != raw.axes.len() {
            return bad(format!("dim {} but {} axes", raw.dim, raw.axes.len()));
        }
        let g = Grid::from_parts(raw.kind, raw.order, raw.m, raw.axes, raw.points, raw.seed)?;
        g.check_kind()?;
        Ok(g)
    }
}

/// Seeded sampler for rational axis values.
struct AxisSampler {
    rng: ChaCha8Rng,
}

impl AxisSampler {
    fn new(seed: u64) -> Self {
        AxisSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// `len` distinct sorted values `u / D`.
    fn axis(&mut self, len: usize) -> Vec<Scalar> {
        let mut us: Vec<i64> = Vec::with_capacity(len);
        while us.len() < len {
            while us.len() < len {
                us.push(self.rng.gen_range(1..=SAMPLER_DENOM * SAMPLER_RANGE));
            }
            us.sort_unstable();
            us.dedup();
        }
        us.into_iter().map(|u| Scalar::new(u, SAMPLER_DENOM)).collect()
    }

    /// Like [`AxisSampler::axis`] but translated so the first value is 0.
    fn axis_from_zero(&mut self, len: usize) -> Vec<Scalar> {
        let vals = self.axis(len);
        let base = vals[0].clone();
        vals.into_iter().map(|v| v - &base).collect()
    }
}

fn integer_axis(len: usize) -> Vec<Scalar> {
    (0..len).map(Scalar::from).collect()
}

fn halfgrid_indices(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..m {
            if (m - 1) * i + (n - 1) * j <= (m - 1) * (n - 1) {
                out.push(vec![i, j]);
            }
        }
    }
    out
}

fn check_axis(values: &[Scalar], name: &str) -> Result<()> {
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return bad(format!("{name} must be strictly increasing without duplicates"));
    }
    Ok(())
}

/// Conical grid of order `n`: row `i` (second index `i`) holds `n - i`
/// points. Row heights and each row's x-positions are sampled independently.
pub fn make_conical(n: usize, seed: u64) -> Result<Grid> {
    if n == 0 {
        return bad("conical grid order must be at least 1");
    }
    let mut sampler = AxisSampler::new(seed);
    let rows = sampler.axis(n);
    let row_xs: Vec<Vec<Scalar>> = (0..n).map(|i| sampler.axis(n - i)).collect();
    let mut xs: Vec<Scalar> = row_xs.iter().flatten().cloned().collect();
    xs.sort();
    xs.dedup();
    let mut indices = Vec::with_capacity(n * (n + 1) / 2);
    for (i, row) in row_xs.iter().enumerate() {
        for x in row {
            let xi = xs.binary_search(x).expect("x value present");
            indices.push(vec![xi, i]);
        }
    }
    Grid::from_parts(GridKind::Conical, n, None, vec![xs, rows], indices, Some(seed))
}

/// Half-grid on `s1` (size n) and `s2` (size m <= n): points `(a_i, b_j)` with
/// `(m-1) i + (n-1) j <= (m-1)(n-1)`.
pub fn make_halfgrid(s1: Vec<Scalar>, s2: Vec<Scalar>) -> Result<Grid> {
    check_axis(&s1, "S1")?;
    check_axis(&s2, "S2")?;
    let (n, m) = (s1.len(), s2.len());
    if m < 2 || m > n {
        return bad(format!("half-grid needs 2 <= |S2| <= |S1|, got |S1|={n}, |S2|={m}"));
    }
    Grid::from_parts(
        GridKind::Halfgrid,
        n,
        Some(m),
        vec![s1, s2],
        halfgrid_indices(n, m),
        None,
    )
}

/// Integer half-rectangular grid: `0 <= x <= n-1`, `0 <= y <= m-1`,
/// `(m-1) x + (n-1) y <= (m-1)(n-1)`.
pub fn make_halfrect(m: usize, n: usize) -> Result<Grid> {
    if m < 2 || m > n {
        return bad(format!("half-rectangular grid needs 2 <= m <= n, got m={m}, n={n}"));
    }
    Grid::from_parts(
        GridKind::Halfrect,
        n,
        Some(m),
        vec![integer_axis(n), integer_axis(m)],
        halfgrid_indices(n, m),
        None,
    )
}

/// Equally spaced simplex grid `{x in Z^dim_{>=0} : sum x <= n-1}`.
pub fn make_simplex(dim: usize, n: usize) -> Result<Grid> {
    if n == 0 || !(2..=3).contains(&dim) {
        return bad(format!(
            "simplex grid needs n >= 1 and dim in {{2,3}}, got n={n}, dim={dim}"
        ));
    }
    let mut indices = Vec::new();
    for i in 0..n {
        for j in 0..n - i {
            if dim == 2 {
                indices.push(vec![i, j]);
            } else {
                for k in 0..n - i - j {
                    indices.push(vec![i, j, k]);
                }
            }
        }
    }
    Grid::from_parts(GridKind::Simplex, n, None, vec![integer_axis(n); dim], indices, None)
}

/// Full product grid `s1 x s2`.
pub fn make_fullgrid(s1: Vec<Scalar>, s2: Vec<Scalar>) -> Result<Grid> {
    check_axis(&s1, "S1")?;
    check_axis(&s2, "S2")?;
    if s1.is_empty() || s2.is_empty() {
        return bad("full grid axes must be nonempty");
    }
    let (n, m) = (s1.len(), s2.len());
    let indices = (0..n).flat_map(|i| (0..m).map(move |j| vec![i, j])).collect();
    Grid::from_parts(GridKind::Fullgrid, n, Some(m), vec![s1, s2], indices, None)
}

/// Full product grid with sampled axes of the given sizes.
pub fn make_fullgrid_random(n: usize, m: usize, seed: u64) -> Result<Grid> {
    let mut sampler = AxisSampler::new(seed);
    let s1 = sampler.axis(n);
    let s2 = sampler.axis(m);
    let mut g = make_fullgrid(s1, s2)?;
    g.seed = Some(seed);
    Ok(g)
}

/// Generic n x n half-grid with vertex at the origin.
pub fn make_generic2(n: usize, seed: u64) -> Result<Grid> {
    if n < 2 {
        return bad("generic half-grid order must be at least 2");
    }
    let mut sampler = AxisSampler::new(seed);
    for _ in 0..=GENERIC_RETRIES {
        let s1 = sampler.axis_from_zero(n);
        let s2 = sampler.axis_from_zero(n);
        let g = Grid::from_parts(
            GridKind::Generic2,
            n,
            None,
            vec![s1, s2],
            halfgrid_indices(n, n),
            Some(seed),
        )?;
        if check_generic2(&g).is_generic() {
            return Ok(g);
        }
    }
    Err(Error::Internal(format!(
        "no generic 2D half-grid of order {n} after {GENERIC_RETRIES} resamples (seed {seed})"
    )))
}

/// Generic 3D half-grid of order n: axes `0 = a_0 < ... < a_n`, points with
/// index sum at most n.
pub fn make_generic3(n: usize, seed: u64) -> Result<Grid> {
    if n == 0 {
        return bad("generic 3D half-grid order must be at least 1");
    }
    let mut indices = Vec::new();
    for i in 0..=n {
        for j in 0..=n - i {
            for k in 0..=n - i - j {
                indices.push(vec![i, j, k]);
            }
        }
    }
    let mut sampler = AxisSampler::new(seed);
    for _ in 0..=GENERIC_RETRIES {
        let axes = vec![
            sampler.axis_from_zero(n + 1),
            sampler.axis_from_zero(n + 1),
            sampler.axis_from_zero(n + 1),
        ];
        let g = Grid::from_parts(GridKind::Generic3, n, None, axes, indices.clone(), Some(seed))?;
        if check_generic3(&g).is_generic() {
            return Ok(g);
        }
    }
    Err(Error::Internal(format!(
        "no generic 3D half-grid of order {n} after {GENERIC_RETRIES} resamples (seed {seed})"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from(x)).collect()
    }

    fn index_set(g: &Grid) -> Vec<Vec<usize>> {
        g.points().iter().map(|p| p.indices.clone()).collect()
    }

    #[test]
    fn conical_row_counts() {
        let g = make_conical(1, 99).unwrap();
        assert_eq!(g.len(), 1);
        let g = make_conical(3, 7).unwrap();
        assert_eq!(g.len(), 6);
        let rows: Vec<usize> = (0..3)
            .map(|i| g.points().iter().filter(|p| p.indices[1] == i).count())
            .collect();
        assert_eq!(rows, vec![3, 2, 1]);
        g.check_kind().unwrap();
        assert_eq!(make_conical(4, 7).unwrap(), make_conical(4, 7).unwrap());
        assert_ne!(make_conical(4, 7).unwrap(), make_conical(4, 8).unwrap());
        assert!(make_conical(0, 1).is_err());
    }

    #[test]
    fn halfgrid_membership() {
        let g = make_halfgrid(ints(&[0, 1, 2]), ints(&[0, 1])).unwrap();
        assert_eq!(index_set(&g), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![2, 0]]);
        assert_eq!(g.vertex(), g.find(&[0, 0]));
        let g = make_halfgrid(ints(&[0, 1]), ints(&[0, 1])).unwrap();
        assert_eq!(g.len(), 3);
        assert!(make_halfgrid(ints(&[0, 2, 1]), ints(&[0, 1])).is_err());
        assert!(make_halfgrid(ints(&[0, 1, 1]), ints(&[0, 1])).is_err());
        assert!(make_halfgrid(ints(&[0, 1]), ints(&[0, 1, 2])).is_err());
    }

    #[test]
    fn equispaced_halfgrid_is_simplex() {
        for n in 2..7 {
            let axis: Vec<Scalar> = (0..n as i64).map(Scalar::from).collect();
            let h = make_halfgrid(axis.clone(), axis).unwrap();
            assert_eq!(index_set(&h), index_set(&make_simplex(2, n).unwrap()));
        }
    }

    #[test]
    fn halfrect_examples() {
        let g = make_halfrect(2, 3).unwrap();
        assert_eq!(index_set(&g), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![2, 0]]);
        assert_eq!(make_halfrect(3, 3).unwrap().len(), 6);
        let g = make_halfrect(3, 5).unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g.row_profile(None), vec![1, 3, 5]);
        assert!(make_halfrect(1, 4).is_err());
        assert!(make_halfrect(5, 4).is_err());
    }

    #[test]
    fn generic_generators() {
        let g = make_generic2(2, 3).unwrap();
        assert_eq!(g.len(), 3);
        let g = make_generic2(6, 1).unwrap();
        assert_eq!(g.len(), 21);
        assert!(g.point(g.vertex().unwrap()).coords.iter().all(Scalar::is_zero));
        assert_eq!(g, make_generic2(6, 1).unwrap());
        g.check_kind().unwrap();

        assert_eq!(make_generic3(1, 0).unwrap().len(), 4);
        let g = make_generic3(3, 5).unwrap();
        assert_eq!(g.len(), 20);
        g.check_kind().unwrap();
    }

    #[test]
    fn point_counts() {
        for n in 1..6 {
            assert_eq!(make_conical(n, n as u64).unwrap().len(), n * (n + 1) / 2);
            assert_eq!(make_generic3(n, 2).unwrap().len(), (n + 1) * (n + 2) * (n + 3) / 6);
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let g = make_generic2(4, 11).unwrap();
        let back = Grid::from_json_str(&g.to_json_string()).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.fingerprint(), g.fingerprint());

        let mut raw = make_halfrect(3, 5).unwrap().to_json();
        raw.points.pop();
        assert!(Grid::try_from(raw).is_err());
        assert!(Grid::from_json_str(
            r#"{"dim":2,"kind":"simplex","order":2,"axes":[["0","1"],["0","1"]],"points":[[0,0],[0,1],[1,0],[5,0]]}"#
        )
        .is_err());
    }

    #[test]
    fn scalar_json_format() {
        let g = make_halfgrid(vec![Scalar::zero(), Scalar::new(1, 2), Scalar::from(3)], ints(&[0, 1])).unwrap();
        let js = g.to_json_string();
        assert!(js.contains(r#"["0","1/2","3"]"#), "{js}");
    }
}
