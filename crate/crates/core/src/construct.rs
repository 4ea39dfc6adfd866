//! Explicit covers for the grid families, used for verification and as
//! branch-and-bound incumbents.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{bad, Result};
use crate::grid::{Grid, GridKind, PointId};
use crate::incidence::{materialize, verify_cover, Cover, CoverJson, CoveringSet, Hyperplane, Realization};
use crate::scalar::Scalar;

fn require(g: &Grid, kind: GridKind, scheme: &str) -> Result<()> {
    if g.kind() != kind {
        return bad(format!("{scheme} cover needs a {kind} grid, got {}", g.kind()));
    }
    Ok(())
}

/// Each row line `y = b_i` with multiplicity `k`.
pub fn rows_cover(g: &Grid, k: u64) -> Result<Cover> {
    require(g, GridKind::Conical, "rows")?;
    let mut c = Cover::new();
    for b in &g.axes()[1] {
        c.push(Hyperplane::axis(2, 1, b), k);
    }
    Ok(c)
}

/// Lines `x = a_i` and `y = b_i` for `1 <= i <= ceil(n/2)`, plus the line
/// through `(a_i, b_0)` and `(a_0, b_i)` for each larger `i`; all `k` times.
pub fn generic2_cover(g: &Grid, k: u64) -> Result<Cover> {
    require(g, GridKind::Generic2, "generic2")?;
    let n = g.order();
    if n < 4 {
        return bad("generic2 cover needs n >= 4");
    }
    let (a, b) = (&g.axes()[0], &g.axes()[1]);
    let half = n.div_ceil(2);
    let mut c = Cover::new();
    for i in 1..=half {
        c.push(Hyperplane::axis(2, 0, &a[i]), k);
        c.push(Hyperplane::axis(2, 1, &b[i]), k);
    }
    let vertex = g.vertex();
    for i in (half + 1..n).rev() {
        let p = g.find(&[i, 0]).expect("boundary point");
        let q = g.find(&[0, i]).expect("boundary point");
        let h = crate::incidence::line_through(g.point(p), g.point(q))?;
        let on = (0..g.len()).filter(|&t| h.contains(&g.point(t).coords)).count();
        if on == 2 {
            c.push(h, k);
        } else {
            // A third point on the pairing line: the input is not generic.
            for r in [p, q] {
                c.push(singleton_plane(g, r, vertex), k);
            }
        }
    }
    Ok(c)
}

fn singleton_plane(g: &Grid, p: PointId, missing: Option<PointId>) -> Hyperplane {
    let set = CoveringSet {
        members: vec![p],
        realization: Realization::Singleton,
    };
    materialize(g, &set, missing)
}

/// Plane through the given intercepts on the listed axes, parallel to the
/// others: `sum_t x_t / v_t = 1`.
fn intercept_plane(values: [Option<&Scalar>; 3]) -> Hyperplane {
    let coeffs = values
        .iter()
        .map(|v| v.map_or_else(Scalar::zero, Scalar::recip))
        .collect();
    Hyperplane::new(coeffs, Scalar::one()).expect("at least one intercept")
}

/// One plane family of the 3D construction.
#[derive(Clone, Debug)]
pub struct Generic3Part {
    pub plane_type: u8,
    pub index: usize,
    pub plane: Hyperplane,
    pub mult: u64,
}

fn ceil_thirds(num: i64) -> u64 {
    // ceil(num / 3) for num >= 0
    (num.max(0) as u64).div_ceil(3)
}

/// The five plane types that together cover every nonzero point of a
/// generic 3D half-grid of order `n` at least `n` times.
pub fn generic3_family(g: &Grid) -> Result<Vec<Generic3Part>> {
    require(g, GridKind::Generic3, "generic3")?;
    let n = g.order();
    if n < 3 {
        return bad("generic3 cover needs n >= 3");
    }
    let ax = g.axes();
    let (a, b, c) = (&ax[0], &ax[1], &ax[2]);
    let third = n / 3;
    let two_thirds = 2 * n / 3;
    let up_third = ceil_thirds(n as i64);
    let ni = n as i64;
    let mut out = Vec::new();
    let mut add = |plane_type: u8, index: usize, plane: Hyperplane, mult: u64| {
        if mult > 0 {
            out.push(Generic3Part {
                plane_type,
                index,
                plane,
                mult,
            });
        }
    };
    for i in 1..=two_thirds {
        let m = ceil_thirds(2 * ni - 3 * i as i64);
        add(1, i, Hyperplane::axis(3, 0, &a[i]), m);
        add(1, i, Hyperplane::axis(3, 1, &b[i]), m);
        add(1, i, Hyperplane::axis(3, 2, &c[i]), m);
    }
    for i in 1..=n {
        let (t, m) = if i <= third { (2, i as u64) } else { (3, up_third) };
        add(t, i, intercept_plane([Some(&a[i]), Some(&b[i]), None]), m);
        add(t, i, intercept_plane([None, Some(&b[i]), Some(&c[i])]), m);
        add(t, i, intercept_plane([Some(&a[i]), None, Some(&c[i])]), m);
    }
    for i in 1..=n {
        let m = if i <= two_thirds {
            ceil_thirds((3 * i as i64 - ni).abs())
        } else {
            up_third
        };
        let t = if i <= two_thirds { 4 } else { 5 };
        add(t, i, intercept_plane([Some(&a[i]), Some(&b[i]), Some(&c[i])]), m);
    }
    Ok(out)
}

/// `q` copies of [`generic3_family`] plus `v` copies of every nonzero axis
/// plane, where `k = q n + v`.
pub fn generic3_cover(g: &Grid, k: u64) -> Result<Cover> {
    let family = generic3_family(g)?;
    let n = g.order() as u64;
    let (q, v) = (k / n, k % n);
    let mut c = Cover::new();
    for part in family {
        c.push(part.plane, part.mult * q);
    }
    for t in 0..3 {
        for value in &g.axes()[t][1..] {
            c.push(Hyperplane::axis(3, t, value), v);
        }
    }
    Ok(c.normalized())
}

fn halfrect_shift(m: usize, n: usize, y0: usize) -> usize {
    // ceil((n - m) y0 / (m - 1))
    ((n - m) * y0).div_ceil(m - 1)
}

/// Size `n - ceil((n-m)/(m-1) y0) - 1` of the optimal cover of a
/// half-rectangular grid missing `(x0, y0)`.
pub fn halfrect_value(m: usize, n: usize, y0: usize) -> usize {
    n - halfrect_shift(m, n, y0) - 1
}

/// Lines `y = i` below `P`, `x = i` left of `P`, and diagonals `x + y = i`
/// beyond `P`, covering every point except `P = (x0, y0)` once.
pub fn halfrect_cover(g: &Grid, p: PointId) -> Result<Cover> {
    require(g, GridKind::Halfrect, "halfrect")?;
    if p >= g.len() {
        return bad("point is not in the grid");
    }
    let (n, m) = (g.order(), g.m().expect("halfrect grids have m"));
    let (x0, y0) = (g.point(p).indices[0], g.point(p).indices[1]);
    let top = n - 1 - halfrect_shift(m, n, y0);
    let mut c = Cover::new();
    for i in 0..y0 {
        c.push(Hyperplane::from_ints(&[0, 1], i as i64)?, 1);
    }
    for i in 0..x0 {
        c.push(Hyperplane::from_ints(&[1, 0], i as i64)?, 1);
    }
    for i in x0 + y0 + 1..=top {
        c.push(Hyperplane::from_ints(&[1, 1], i as i64)?, 1);
    }
    Ok(c)
}

/// Hyperplanes `sum x_t = i` for `1 <= i <= n-1`, each `k` times.
pub fn simplex_cover(g: &Grid, k: u64) -> Result<Cover> {
    require(g, GridKind::Simplex, "simplex")?;
    let ones = vec![1i64; g.dim()];
    let mut c = Cover::new();
    for i in 1..g.order() {
        c.push(Hyperplane::from_ints(&ones, i as i64)?, k);
    }
    Ok(c)
}

/// Axis lines through every non-minimal axis value, each `k` times; misses
/// the minimal corner.
pub fn fullgrid_cover(g: &Grid, k: u64) -> Result<Cover> {
    require(g, GridKind::Fullgrid, "fullgrid")?;
    let mut c = Cover::new();
    for t in 0..2 {
        for v in &g.axes()[t][1..] {
            c.push(Hyperplane::axis(2, t, v), k);
        }
    }
    Ok(c)
}

/// The construction matching `g`'s kind and the missing point, if any.
pub fn default_cover(g: &Grid, k: u64, missing: Option<PointId>) -> Option<Cover> {
    let vertex = g.vertex();
    let at_vertex = missing.is_some() && missing == vertex;
    match g.kind() {
        GridKind::Conical if missing.is_none() => rows_cover(g, k).ok(),
        GridKind::Simplex if at_vertex => simplex_cover(g, k).ok(),
        GridKind::Generic2 if at_vertex => generic2_cover(g, k).ok(),
        GridKind::Generic3 if at_vertex => generic3_cover(g, k).ok(),
        GridKind::Halfrect => missing.and_then(|p| halfrect_cover(g, p).ok()).map(|c| c.repeated(k)),
        GridKind::Fullgrid if at_vertex => fullgrid_cover(g, k).ok(),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Rows,
    Generic2,
    Generic3,
    Halfrect,
    Simplex,
    Fullgrid,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Rows => "rows",
            Scheme::Generic2 => "generic2",
            Scheme::Generic3 => "generic3",
            Scheme::Halfrect => "halfrect",
            Scheme::Simplex => "simplex",
            Scheme::Fullgrid => "fullgrid",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Scheme> {
        Ok(match s {
            "rows" => Scheme::Rows,
            "generic2" => Scheme::Generic2,
            "generic3" => Scheme::Generic3,
            "halfrect" => Scheme::Halfrect,
            "simplex" => Scheme::Simplex,
            "fullgrid" => Scheme::Fullgrid,
            other => return bad(format!("unknown scheme {other:?}")),
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub scheme: Scheme,
    pub k: u64,
    pub missing: Option<Vec<usize>>,
    pub size: u64,
    pub claimed_bound: Scalar,
    pub verified: bool,
    pub min_coverage: u64,
    pub cover: CoverJson,
}

/// Slack constant used for the 3D family's size claim `31 n^2 / 18 + C n`.
pub const GENERIC3_LINEAR_SLACK: i64 = 6;

/// Builds the scheme's cover, verifies it, and compares its size with the
/// size claimed for the scheme. `point` is the missing point for the
/// half-rectangular scheme.
pub fn construct(g: &Grid, scheme: Scheme, k: u64, point: Option<PointId>) -> Result<ConstructionReport> {
    if k == 0 {
        return bad("k must be at least 1");
    }
    let n = g.order() as i64;
    let kk = Scalar::from(k);
    let (cover, missing, claimed) = match scheme {
        Scheme::Rows => (rows_cover(g, k)?, None, Scalar::from(n) * &kk),
        Scheme::Generic2 => (
            generic2_cover(g, k)?,
            g.vertex(),
            Scalar::new(3 * n, 2) * &kk + Scalar::new(1, 2) * &kk,
        ),
        Scheme::Generic3 => {
            let q = k / n as u64;
            let v = k % n as u64;
            let family = Scalar::new(31 * n * n, 18) + Scalar::from(GENERIC3_LINEAR_SLACK * n);
            (
                generic3_cover(g, k)?,
                g.vertex(),
                family.floor() * Scalar::from(q) + Scalar::from(3 * n * v as i64),
            )
        }
        Scheme::Halfrect => {
            let p = point.ok_or_else(|| crate::error::Error::BadInput("halfrect scheme needs a point".into()))?;
            let c = halfrect_cover(g, p)?.repeated(k);
            let value = halfrect_value(g.m().unwrap_or(2), g.order(), g.point(p).indices[1]);
            (c, Some(p), Scalar::from(value as u64) * &kk)
        }
        Scheme::Simplex => (simplex_cover(g, k)?, g.vertex(), Scalar::from(n - 1) * &kk),
        Scheme::Fullgrid => {
            let sides = (g.axes()[0].len() + g.axes()[1].len()) as i64 - 2;
            (fullgrid_cover(g, k)?, g.vertex(), Scalar::from(sides) * &kk)
        }
    };
    let report = verify_cover(g, &cover, k, missing)?;
    let size = cover.size();
    Ok(ConstructionReport {
        scheme,
        k,
        missing: missing.map(|m| g.point(m).indices.clone()),
        size,
        verified: report.ok && Scalar::from(size) <= claimed,
        claimed_bound: claimed,
        min_coverage: report.min_coverage,
        cover: cover.to_json(g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_conical, make_generic2, make_generic3, make_halfrect, make_simplex};

    #[test]
    fn rows_sizes() {
        let g = make_conical(3, 1).unwrap();
        assert_eq!(rows_cover(&g, 1).unwrap().size(), 3);
        assert_eq!(rows_cover(&g, 2).unwrap().size(), 6);
        assert!(verify_cover(&g, &rows_cover(&g, 2).unwrap(), 2, None).unwrap().ok);
        assert!(rows_cover(&make_simplex(2, 3).unwrap(), 1).is_err());
    }

    #[test]
    fn generic2_sizes() {
        for (n, k, size) in [(4, 1, 5), (5, 1, 7), (4, 3, 15)] {
            let g = make_generic2(n, 3).unwrap();
            let c = generic2_cover(&g, k).unwrap();
            assert_eq!(c.size(), size);
            let r = verify_cover(&g, &c, k, g.vertex()).unwrap();
            assert!(r.ok);
            assert_eq!(r.coverage[g.vertex().unwrap()], 0);
        }
    }

    #[test]
    fn generic3_family_counts() {
        let g = make_generic3(6, 2).unwrap();
        let fam = generic3_family(&g).unwrap();
        let by_type = |t: u8| fam.iter().filter(|p| p.plane_type == t).map(|p| p.mult).sum::<u64>();
        assert_eq!([1, 2, 3, 4, 5].map(by_type), [18, 9, 24, 4, 4]);
        let c = generic3_cover(&g, 6).unwrap();
        assert_eq!(c.size(), 59);
        let r = verify_cover(&g, &c, 6, g.vertex()).unwrap();
        assert!(r.ok, "{:?}", r.violations.first());

        let g = make_generic3(3, 0).unwrap();
        assert_eq!(generic3_cover(&g, 1).unwrap().size(), 9);
        assert!(
            verify_cover(&g, &generic3_cover(&g, 7).unwrap(), 7, g.vertex())
                .unwrap()
                .ok
        );
    }

    #[test]
    fn halfrect_examples() {
        let g = make_halfrect(3, 5).unwrap();
        let p = g.find(&[1, 1]).unwrap();
        let c = halfrect_cover(&g, p).unwrap();
        let expect = [
            Hyperplane::from_ints(&[0, 1], 0).unwrap(),
            Hyperplane::from_ints(&[1, 0], 0).unwrap(),
            Hyperplane::from_ints(&[1, 1], 3).unwrap(),
        ];
        let got: Vec<Hyperplane> = c
            .entries
            .iter()
            .map(|e| match &e.shape {
                crate::incidence::CoverShape::Plane(h) => h.clone(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(got, expect);
        assert!(verify_cover(&g, &c, 1, Some(p)).unwrap().ok);

        let p = g.find(&[0, 2]).unwrap();
        let c = halfrect_cover(&g, p).unwrap();
        assert_eq!(c.size(), 2);
        assert!(verify_cover(&g, &c, 1, Some(p)).unwrap().ok);

        let g = make_halfrect(4, 4).unwrap();
        let c = halfrect_cover(&g, g.vertex().unwrap()).unwrap();
        assert_eq!(c.size(), 3);
    }

    #[test]
    fn simplex_sizes() {
        let g = make_simplex(2, 4).unwrap();
        assert_eq!(simplex_cover(&g, 1).unwrap().size(), 3);
        let c = simplex_cover(&g, 2).unwrap();
        assert_eq!(c.size(), 6);
        let r = verify_cover(&g, &c, 2, g.vertex()).unwrap();
        assert!(r.ok);
        assert_eq!(r.coverage[g.vertex().unwrap()], 0);
    }

    #[test]
    fn reports_verify() {
        let g = make_generic2(6, 1).unwrap();
        let r = construct(&g, Scheme::Generic2, 2, None).unwrap();
        assert!(r.verified);
        assert_eq!(r.size, 2 * (3 + 5));
    }
}
