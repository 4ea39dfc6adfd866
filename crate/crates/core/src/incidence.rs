//! Hyperplanes, exact incidence, and the candidate covering sets that form
//! the columns of the covering program.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{bad, Result};
use crate::grid::{Grid, GridJson, GridPoint, PointId};
use crate::scalar::{int_gcd, int_lcm, Scalar};

/// An affine hyperplane `coeffs . x = rhs` in canonical form: integer
/// entries with overall gcd 1 and the first nonzero coefficient positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    coeffs: Vec<Scalar>,
    rhs: Scalar,
}

impl Hyperplane {
    /// Canonicalizes an arbitrary rational equation.
    pub fn new(coeffs: Vec<Scalar>, rhs: Scalar) -> Result<Hyperplane> {
        if coeffs.iter().all(Scalar::is_zero) {
            return bad("hyperplane coefficients are all zero");
        }
        let mut lcm = Scalar::one();
        for v in coeffs.iter().chain(std::iter::once(&rhs)) {
            lcm = int_lcm(&lcm, &Scalar::from(v.denom()));
        }
        let mut ints: Vec<Scalar> = coeffs.iter().chain(std::iter::once(&rhs)).map(|v| v * &lcm).collect();
        let mut g = Scalar::zero();
        for v in &ints {
            g = int_gcd(&g, v);
        }
        let first = ints.iter().find(|v| !v.is_zero()).expect("nonzero coefficient");
        if first.is_negative() {
            g = -g;
        }
        for v in &mut ints {
            *v /= &g;
        }
        let rhs = ints.pop().expect("rhs present");
        Ok(Hyperplane { coeffs: ints, rhs })
    }

    pub fn from_ints(coeffs: &[i64], rhs: i64) -> Result<Hyperplane> {
        Hyperplane::new(coeffs.iter().map(|&c| Scalar::from(c)).collect(), Scalar::from(rhs))
    }

    /// Axis-parallel hyperplane `x_axis = value`.
    pub fn axis(dim: usize, axis: usize, value: &Scalar) -> Hyperplane {
        let mut coeffs = vec![Scalar::zero(); dim];
        coeffs[axis] = Scalar::one();
        Hyperplane::new(coeffs, value.clone()).expect("nonzero normal")
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn rhs(&self) -> &Scalar {
        &self.rhs
    }

    /// `coeffs . x - rhs`.
    pub fn residual(&self, coords: &[Scalar]) -> Scalar {
        let mut acc = -&self.rhs;
        for (c, x) in self.coeffs.iter().zip(coords) {
            if !c.is_zero() {
                acc += c * x;
            }
        }
        acc
    }

    pub fn contains(&self, coords: &[Scalar]) -> bool {
        self.residual(coords).is_zero()
    }

    /// Number of nonzero coefficients.
    pub fn support(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const VARS: [&str; 3] = ["x", "y", "z"];
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = VARS.get(i).copied().unwrap_or("w");
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let a = c.abs();
            if a == Scalar::one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{a}{var}")?;
            }
            first = false;
        }
        write!(f, " = {}", self.rhs)
    }
}

pub fn incident(p: &GridPoint, h: &Hyperplane) -> bool {
    p.coords.len() == h.dim() && h.contains(&p.coords)
}

fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn cross(u: &[Scalar], v: &[Scalar]) -> [Scalar; 3] {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// The canonical line through two distinct planar points.
pub fn line_through_coords(p: &[Scalar], q: &[Scalar]) -> Result<Hyperplane> {
    if p.len() != 2 || q.len() != 2 {
        return bad("line_through needs planar points");
    }
    if p == q {
        return bad("line_through needs two distinct points");
    }
    let a = &q[1] - &p[1];
    let b = &p[0] - &q[0];
    let rhs = &a * &p[0] + &b * &p[1];
    Hyperplane::new(vec![a, b], rhs)
}

pub fn line_through(p: &GridPoint, q: &GridPoint) -> Result<Hyperplane> {
    line_through_coords(&p.coords, &q.coords)
}

/// Canonical plane through three points, or `None` if they are collinear.
pub fn plane_through_coords(p: &[Scalar], q: &[Scalar], r: &[Scalar]) -> Option<Hyperplane> {
    let normal = cross(&sub(q, p), &sub(r, p));
    if normal.iter().all(Scalar::is_zero) {
        return None;
    }
    let rhs = dot(&normal, p);
    Hyperplane::new(normal.to_vec(), rhs).ok()
}

/// Canonical key of the 3D line through two distinct points: a primitive
/// integer direction plus its moment `p x d`.
fn line_key3(p: &[Scalar], q: &[Scalar]) -> Vec<Scalar> {
    let d = Hyperplane::new(sub(q, p), Scalar::zero())
        .expect("distinct points")
        .coeffs
        .clone();
    let moment = cross(p, &d);
    d.into_iter().chain(moment).collect()
}

fn on_line3(p: &[Scalar], dir: &[Scalar], x: &[Scalar]) -> bool {
    cross(&sub(x, p), dir).iter().all(Scalar::is_zero)
}

/// How a candidate covering set is realized by an actual hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Realization {
    /// Spanned by its members; the plane is unique.
    Plane(Hyperplane),
    /// A single point; realized on demand by [`materialize`].
    Singleton,
    /// A maximal collinear set in 3D; realized on demand by [`materialize`].
    Line,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoveringSet {
    pub members: Vec<PointId>,
    pub realization: Realization,
}

impl CoveringSet {
    pub fn is_synthetic(&self) -> bool {
        !matches!(self.realization, Realization::Plane(_))
    }
}

/// Options for [`enumerate_on`].
#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    /// Add a singleton candidate for every point.
    pub singletons: bool,
    /// In 3D, add maximal collinear sets as candidates.
    pub lines: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            singletons: true,
            lines: true,
        }
    }
}

/// Candidate covering sets for a planar grid: every maximal collinear set of
/// at least two points whose line avoids `missing`, and a singleton for every
/// point other than `missing`.
pub fn enumerate_candidates2(g: &Grid, missing: Option<PointId>) -> Result<Vec<CoveringSet>> {
    if g.dim() != 2 {
        return bad("enumerate_candidates2 needs a planar grid");
    }
    Ok(enumerate_candidates(g, missing))
}

/// Candidate covering sets for a 3D grid: planes spanned by three affinely
/// independent points, maximal collinear sets, and singletons, all avoiding
/// `missing`.
pub fn enumerate_candidates3(g: &Grid, missing: Option<PointId>) -> Result<Vec<CoveringSet>> {
    if g.dim() != 3 {
        return bad("enumerate_candidates3 needs a 3D grid");
    }
    Ok(enumerate_candidates(g, missing))
}

pub fn enumerate_candidates(g: &Grid, missing: Option<PointId>) -> Vec<CoveringSet> {
    let all: Vec<PointId> = (0..g.len()).collect();
    enumerate_on(g, &all, missing, EnumerateOptions::default())
}

/// Enumerates the distinct intersections of admissible hyperplanes with
/// `subset`. A hyperplane is admissible when it does not contain `missing`.
/// Members are always restricted to `subset` and never include `missing`.
pub fn enumerate_on(
    g: &Grid,
    subset: &[PointId],
    missing: Option<PointId>,
    opts: EnumerateOptions,
) -> Vec<CoveringSet> {
    let missing_coords = missing.map(|m| g.point(m).coords.as_slice());
    let pts: Vec<PointId> = subset.iter().copied().filter(|&p| Some(p) != missing).collect();
    let coords = |p: PointId| g.point(p).coords.as_slice();
    let avoids = |h: &Hyperplane| missing_coords.is_none_or(|m| !h.contains(m));
    let mut out = Vec::new();

    if g.dim() == 2 {
        let mut lines: HashMap<Hyperplane, BTreeSet<PointId>> = HashMap::new();
        for (a, &p) in pts.iter().enumerate() {
            for &q in &pts[a + 1..] {
                let h = line_through_coords(coords(p), coords(q)).expect("distinct grid points");
                let set = lines.entry(h).or_default();
                set.insert(p);
                set.insert(q);
            }
        }
        for (h, members) in lines {
            if avoids(&h) {
                out.push(CoveringSet {
                    members: members.into_iter().collect(),
                    realization: Realization::Plane(h),
                });
            }
        }
    } else {
        let mut planes: HashMap<Hyperplane, BTreeSet<PointId>> = HashMap::new();
        let mut lines: HashMap<Vec<Scalar>, BTreeSet<PointId>> = HashMap::new();
        for (a, &p) in pts.iter().enumerate() {
            for (b, &q) in pts.iter().enumerate().skip(a + 1) {
                if opts.lines {
                    let set = lines.entry(line_key3(coords(p), coords(q))).or_default();
                    set.insert(p);
                    set.insert(q);
                }
                for &r in &pts[b + 1..] {
                    if let Some(h) = plane_through_coords(coords(p), coords(q), coords(r)) {
                        let set = planes.entry(h).or_default();
                        set.insert(p);
                        set.insert(q);
                        set.insert(r);
                    }
                }
            }
        }
        for (h, members) in planes {
            if avoids(&h) {
                out.push(CoveringSet {
                    members: members.into_iter().collect(),
                    realization: Realization::Plane(h),
                });
            }
        }
        for (key, members) in lines {
            let members: Vec<PointId> = members.into_iter().collect();
            let base = coords(members[0]);
            let on_missing = missing_coords.is_some_and(|m| on_line3(base, &key[..3], m));
            if !on_missing {
                out.push(CoveringSet {
                    members,
                    realization: Realization::Line,
                });
            }
        }
    }
    if opts.singletons {
        out.extend(pts.iter().map(|&p| CoveringSet {
            members: vec![p],
            realization: Realization::Singleton,
        }));
    }
    out.sort();
    out.dedup_by(|a, b| a.members == b.members && a.is_synthetic() && b.is_synthetic());
    out
}

/// Primitive integer vectors of the given dimension in a fixed order: by
/// max-norm, then lexicographically; first nonzero entry positive.
fn small_directions(dim: usize) -> impl Iterator<Item = Vec<i64>> {
    (1i64..).flat_map(move |r| {
        let side = (2 * r + 1) as usize;
        let total = side.pow(dim as u32);
        (0..total).filter_map(move |mut code| {
            let mut v = Vec::with_capacity(dim);
            for _ in 0..dim {
                v.push((code % side) as i64 - r);
                code /= side;
            }
            v.reverse();
            let max = v.iter().map(|x| x.abs()).max().unwrap_or(0);
            let first = v.iter().find(|&&x| x != 0).copied().unwrap_or(0);
            let g = v.iter().fold(0u64, |g, &x| num_integer::gcd(g, x.unsigned_abs()));
            (max == r && first > 0 && g == 1).then_some(v)
        })
    })
}

/// A concrete admissible hyperplane whose grid incidence is exactly
/// `set.members` (and which avoids `missing`).
pub fn materialize(g: &Grid, set: &CoveringSet, missing: Option<PointId>) -> Hyperplane {
    let members_ok = |h: &Hyperplane| -> bool {
        let on: Vec<PointId> = (0..g.len()).filter(|&i| h.contains(&g.point(i).coords)).collect();
        on == set.members
    };
    match &set.realization {
        Realization::Plane(h) => h.clone(),
        Realization::Singleton => {
            let p = &g.point(set.members[0]).coords;
            small_directions(g.dim())
                .map(|n| {
                    let n: Vec<Scalar> = n.into_iter().map(Scalar::from).collect();
                    let rhs = dot(&n, p);
                    Hyperplane::new(n, rhs).expect("nonzero normal")
                })
                .find(|h| members_ok(h) && missing.is_none_or(|m| !h.contains(&g.point(m).coords)))
                .expect("finitely many directions are blocked")
        }
        Realization::Line => {
            let p = &g.point(set.members[0]).coords;
            let q = &g.point(set.members[1]).coords;
            let d = sub(q, p);
            small_directions(3)
                .filter_map(|w| {
                    let w: Vec<Scalar> = w.into_iter().map(Scalar::from).collect();
                    let n = cross(&d, &w);
                    if n.iter().all(Scalar::is_zero) {
                        return None;
                    }
                    let rhs = dot(&n, p);
                    Hyperplane::new(n.to_vec(), rhs).ok()
                })
                .find(|h| members_ok(h) && missing.is_none_or(|m| !h.contains(&g.point(m).coords)))
                .expect("finitely many planes of the pencil are blocked")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverShape {
    Plane(Hyperplane),
    /// A hyperplane through this point only (given by its indices).
    Singleton(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverEntry {
    pub shape: CoverShape,
    pub mult: u64,
}

/// A multiset of hyperplanes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cover {
    pub entries: Vec<CoverEntry>,
}

impl Cover {
    pub fn new() -> Cover {
        Cover::default()
    }

    pub fn push(&mut self, h: Hyperplane, mult: u64) {
        if mult > 0 {
            self.entries.push(CoverEntry {
                shape: CoverShape::Plane(h),
                mult,
            });
        }
    }

    /// Total number of hyperplanes counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.entries.iter().map(|e| e.mult).sum()
    }

    /// Merges equal shapes and sorts entries.
    pub fn normalized(&self) -> Cover {
        let mut planes: std::collections::BTreeMap<Hyperplane, u64> = Default::default();
        let mut singles: std::collections::BTreeMap<Vec<usize>, u64> = Default::default();
        for e in &self.entries {
            match &e.shape {
                CoverShape::Plane(h) => *planes.entry(h.clone()).or_default() += e.mult,
                CoverShape::Singleton(p) => *singles.entry(p.clone()).or_default() += e.mult,
            }
        }
        let mut out = Cover::new();
        for (h, m) in planes {
            out.push(h, m);
        }
        for (p, m) in singles {
            if m > 0 {
                out.entries.push(CoverEntry {
                    shape: CoverShape::Singleton(p),
                    mult: m,
                });
            }
        }
        out
    }

    /// Multiplies every multiplicity by `factor`.
    pub fn repeated(&self, factor: u64) -> Cover {
        Cover {
            entries: self
                .entries
                .iter()
                .filter(|_| factor > 0)
                .map(|e| CoverEntry {
                    shape: e.shape.clone(),
                    mult: e.mult * factor,
                })
                .collect(),
        }
    }

    pub fn extend(&mut self, other: &Cover) {
        self.entries.extend(other.entries.iter().cloned());
    }

    pub fn to_json(&self, grid: &Grid) -> CoverJson {
        CoverJson {
            grid: GridRef::Hash(grid.fingerprint()),
            entries: self
                .entries
                .iter()
                .map(|e| match &e.shape {
                    CoverShape::Plane(h) => CoverEntryJson::Plane {
                        coeffs: h.coeffs().to_vec(),
                        rhs: h.rhs().clone(),
                        mult: e.mult,
                    },
                    CoverShape::Singleton(p) => CoverEntryJson::Synthetic {
                        synthetic: SyntheticTag::Singleton,
                        point: p.clone(),
                        mult: e.mult,
                    },
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridRef {
    Hash(String),
    Inline(Box<GridJson>),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum SyntheticTag {
    Singleton,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum CoverEntryJson {
    Plane {
        coeffs: Vec<Scalar>,
        rhs: Scalar,
        mult: u64,
    },
    Synthetic {
        synthetic: SyntheticTag,
        point: Vec<usize>,
        mult: u64,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverJson {
    pub grid: GridRef,
    pub entries: Vec<CoverEntryJson>,
}

impl CoverJson {
    /// Converts to a [`Cover`], canonicalizing hyperplanes. When `grid` is
    /// given, a hash reference must match its fingerprint.
    pub fn into_cover(self, grid: Option<&Grid>) -> Result<Cover> {
        if let (GridRef::Hash(h), Some(g)) = (&self.grid, grid) {
            if *h != g.fingerprint() {
                return bad("cover was computed for a different grid (fingerprint mismatch)");
            }
        }
        let mut cover = Cover::new();
        for e in self.entries {
            match e {
                CoverEntryJson::Plane { coeffs, rhs, mult } => cover.entries.push(CoverEntry {
                    shape: CoverShape::Plane(Hyperplane::new(coeffs, rhs)?),
                    mult,
                }),
                CoverEntryJson::Synthetic { point, mult, .. } => cover.entries.push(CoverEntry {
                    shape: CoverShape::Singleton(point),
                    mult,
                }),
            }
        }
        Ok(cover)
    }

    pub fn inline_grid(&self) -> Option<Result<Grid>> {
        match &self.grid {
            GridRef::Inline(g) => Some(Grid::try_from((**g).clone())),
            GridRef::Hash(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Undercovered,
    MissingCovered,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub point: Vec<usize>,
    pub coverage: u64,
    pub required: u64,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    /// Minimum coverage over the points that must be covered.
    pub min_coverage: u64,
    pub violations: Vec<Violation>,
    #[serde(skip)]
    pub coverage: Vec<u64>,
}

/// Checks that `cover` hits every point other than `missing` at least `k`
/// times and never hits `missing`.
pub fn verify_cover(g: &Grid, cover: &Cover, k: u64, missing: Option<PointId>) -> Result<VerifyReport> {
    let mut coverage = vec![0u64; g.len()];
    for e in &cover.entries {
        match &e.shape {
            CoverShape::Plane(h) => {
                if h.dim() != g.dim() {
                    return bad(format!(
                        "hyperplane {h} has dimension {}, grid has {}",
                        h.dim(),
                        g.dim()
                    ));
                }
                for (id, p) in g.points().iter().enumerate() {
                    if h.contains(&p.coords) {
                        coverage[id] += e.mult;
                    }
                }
            }
            CoverShape::Singleton(idx) => match g.find(idx) {
                Some(id) => coverage[id] += e.mult,
                None => return bad(format!("singleton entry {idx:?} is not a grid point")),
            },
        }
    }
    let mut violations = Vec::new();
    let mut min_coverage = u64::MAX;
    for (id, &c) in coverage.iter().enumerate() {
        let point = g.point(id).indices.clone();
        if Some(id) == missing {
            if c > 0 {
                violations.push(Violation {
                    point,
                    coverage: c,
                    required: 0,
                    kind: ViolationKind::MissingCovered,
                });
            }
            continue;
        }
        min_coverage = min_coverage.min(c);
        if c < k {
            violations.push(Violation {
                point,
                coverage: c,
                required: k,
                kind: ViolationKind::Undercovered,
            });
        }
    }
    if min_coverage == u64::MAX {
        min_coverage = 0;
    }
    Ok(VerifyReport {
        ok: violations.is_empty(),
        min_coverage,
        violations,
        coverage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_fullgrid, make_generic3, make_halfgrid, make_simplex};

    fn s(v: &str) -> Scalar {
        v.parse().unwrap()
    }

    fn pt(c: &[&str]) -> GridPoint {
        GridPoint {
            indices: vec![0; c.len()],
            coords: c.iter().map(|v| s(v)).collect(),
        }
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from(x)).collect()
    }

    #[test]
    fn incidence_examples() {
        let h = Hyperplane::from_ints(&[1, 1], 0).unwrap();
        assert!(incident(&pt(&["0", "0"]), &h));
        let h = Hyperplane::from_ints(&[1, 1], 1).unwrap();
        assert!(!incident(&pt(&["1", "2"]), &h));
        assert!(incident(&pt(&["1/2", "1/2"]), &h));
    }

    #[test]
    fn line_through_examples() {
        let h = line_through(&pt(&["0", "0"]), &pt(&["1", "1"])).unwrap();
        assert_eq!(h, Hyperplane::from_ints(&[1, -1], 0).unwrap());
        assert_eq!(h.coeffs(), &ints(&[1, -1])[..]);
        let h = line_through(&pt(&["0", "1"]), &pt(&["1", "0"])).unwrap();
        assert_eq!((h.coeffs().to_vec(), h.rhs().clone()), (ints(&[1, 1]), Scalar::from(1)));
        let h = line_through(&pt(&["0", "1/2"]), &pt(&["1", "1/2"])).unwrap();
        assert_eq!((h.coeffs().to_vec(), h.rhs().clone()), (ints(&[0, 2]), Scalar::from(1)));
        assert!(line_through(&pt(&["1", "1"]), &pt(&["1", "1"])).is_err());
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = Hyperplane::new(vec![s("-2/3"), s("4/3")], s("-2")).unwrap();
        let b = Hyperplane::from_ints(&[1, -2], 3).unwrap();
        assert_eq!(a, b);
        assert!(Hyperplane::from_ints(&[0, 0], 1).is_err());
        assert_eq!(
            Hyperplane::from_ints(&[0, -3], 6).unwrap(),
            Hyperplane::from_ints(&[0, 1], -2).unwrap()
        );
    }

    fn member_sets(c: &[CoveringSet], g: &Grid) -> Vec<Vec<Vec<usize>>> {
        c.iter()
            .map(|cs| cs.members.iter().map(|&m| g.point(m).indices.clone()).collect())
            .collect()
    }

    #[test]
    fn candidates_2x2_missing_corner() {
        let g = make_fullgrid(ints(&[0, 1]), ints(&[0, 1])).unwrap();
        let c = enumerate_candidates2(&g, g.vertex()).unwrap();
        let planes: Vec<Hyperplane> = c
            .iter()
            .filter_map(|cs| match &cs.realization {
                Realization::Plane(h) => Some(h.clone()),
                _ => None,
            })
            .collect();
        let mut expect = vec![
            Hyperplane::from_ints(&[1, 0], 1).unwrap(),
            Hyperplane::from_ints(&[0, 1], 1).unwrap(),
            Hyperplane::from_ints(&[1, 1], 1).unwrap(),
        ];
        let mut got = planes.clone();
        got.sort();
        expect.sort();
        assert_eq!(got, expect);
        assert_eq!(c.iter().filter(|cs| cs.is_synthetic()).count(), 3);
        assert!(c.iter().all(|cs| !cs.members.contains(&g.vertex().unwrap())));
    }

    #[test]
    fn candidates_three_point_grid() {
        let g = make_halfgrid(ints(&[0, 5]), ints(&[0, 7])).unwrap();
        let c = enumerate_candidates2(&g, None).unwrap();
        let sets = member_sets(&c, &g);
        assert_eq!(c.len(), 6);
        assert_eq!(sets.iter().filter(|s| s.len() == 2).count(), 3);
        assert_eq!(sets.iter().filter(|s| s.len() == 1).count(), 3);
    }

    #[test]
    fn candidates_single_point() {
        let g = make_simplex(2, 1).unwrap();
        let c = enumerate_candidates2(&g, None).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].is_synthetic());
    }

    #[test]
    fn candidates3_tetrahedron_and_collinear() {
        let g = make_generic3(1, 4).unwrap();
        let c = enumerate_candidates3(&g, None).unwrap();
        let by_size = |n: usize| c.iter().filter(|cs| cs.members.len() == n).count();
        assert_eq!((by_size(3), by_size(2), by_size(1)), (4, 6, 4));

        let c = enumerate_candidates3(&g, g.vertex()).unwrap();
        let axis_plane = c.iter().find(|cs| cs.members.len() == 3).expect("axis-point plane");
        assert!(matches!(axis_plane.realization, Realization::Plane(_)));
        assert!(c.iter().all(|cs| cs.members.len() <= 3));
        // Pairs including the origin direction are not candidates; only the
        // three axis-point pairs remain.
        assert_eq!(c.iter().filter(|cs| cs.members.len() == 2).count(), 3);

        let line = Grid::from_parts(
            crate::grid::GridKind::Simplex,
            3,
            None,
            vec![ints(&[0, 1, 2]), ints(&[0, 1, 2]), ints(&[0, 1, 2])],
            vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]],
            None,
        )
        .unwrap();
        let c = enumerate_candidates3(&line, None).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c
            .iter()
            .any(|cs| cs.members.len() == 3 && cs.realization == Realization::Line));
    }

    #[test]
    fn materialized_sets_have_exact_incidence() {
        for g in [
            make_simplex(2, 4).unwrap(),
            make_simplex(3, 3).unwrap(),
            make_generic3(2, 9).unwrap(),
        ] {
            let missing = g.vertex();
            for cs in enumerate_candidates(&g, missing) {
                let h = materialize(&g, &cs, missing);
                let on: Vec<PointId> = (0..g.len()).filter(|&i| h.contains(&g.point(i).coords)).collect();
                assert_eq!(on, cs.members, "{h}");
            }
        }
    }

    #[test]
    fn verify_reports() {
        let g = make_simplex(2, 3).unwrap();
        let r = verify_cover(&g, &Cover::new(), 1, None).unwrap();
        assert!(!r.ok);
        assert_eq!(r.violations.len(), g.len());
        let mut c = Cover::new();
        c.push(Hyperplane::from_ints(&[1, 1], 0).unwrap(), 1);
        let r = verify_cover(&g, &c, 0, g.vertex()).unwrap();
        assert!(!r.ok);
        assert_eq!(r.violations[0].kind, ViolationKind::MissingCovered);
        let mut bad_dim = Cover::new();
        bad_dim.push(Hyperplane::from_ints(&[1, 1, 1], 0).unwrap(), 1);
        assert!(verify_cover(&g, &bad_dim, 1, None).is_err());
    }

    #[test]
    fn small_direction_order() {
        let first: Vec<Vec<i64>> = small_directions(2).take(4).collect();
        assert_eq!(first, vec![vec![0, 1], vec![1, -1], vec![1, 0], vec![1, 1]]);
    }
}
