//! Genericity checks for half-grids: no non-axis-parallel line through
//! three points in 2D, and in 3D generic axis slices plus no full-support
//! plane through four points.

use std::collections::HashMap;
use std::hash::Hash;

use crate::grid::{Grid, PointId};
use crate::incidence::{line_through_coords, Hyperplane};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenericWitness {
    /// Three points on a line that is not parallel to an axis.
    Collinear([PointId; 3]),
    /// Three points of the slice `x_axis = const` on a line of that slice
    /// that is not parallel to an axis.
    SliceCollinear { axis: usize, points: [PointId; 3] },
    /// Four points on a plane whose normal has no zero entry.
    Coplanar([PointId; 4]),
}

impl GenericWitness {
    pub fn points(&self) -> Vec<PointId> {
        match self {
            GenericWitness::Collinear(p) | GenericWitness::SliceCollinear { points: p, .. } => p.to_vec(),
            GenericWitness::Coplanar(p) => p.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericReport {
    pub witness: Option<GenericWitness>,
}

impl GenericReport {
    pub fn is_generic(&self) -> bool {
        self.witness.is_none()
    }
}

/// First triple on a common line with two nonzero coefficients.
fn collinear_triple(pts: &[(PointId, [Scalar; 2])]) -> Option<[PointId; 3]> {
    for (a, (p, pc)) in pts.iter().enumerate() {
        let mut seen: HashMap<Hyperplane, PointId> = HashMap::new();
        for (q, qc) in &pts[a + 1..] {
            let h = line_through_coords(pc, qc).expect("distinct grid points");
            if h.support() < 2 {
                continue;
            }
            if let Some(&first) = seen.get(&h) {
                return Some([*p, first, *q]);
            }
            seen.insert(h, *q);
        }
    }
    None
}

pub fn check_generic2(g: &Grid) -> GenericReport {
    assert_eq!(g.dim(), 2, "check_generic2 needs a planar grid");
    let pts: Vec<(PointId, [Scalar; 2])> = g
        .points()
        .iter()
        .enumerate()
        .map(|(id, p)| (id, [p.coords[0].clone(), p.coords[1].clone()]))
        .collect();
    GenericReport {
        witness: collinear_triple(&pts).map(GenericWitness::Collinear),
    }
}

pub fn check_generic3(g: &Grid) -> GenericReport {
    assert_eq!(g.dim(), 3, "check_generic3 needs a 3D grid");
    if let Some(w) = slice_witness(g) {
        return GenericReport { witness: Some(w) };
    }
    let witness = match integer_coords(g) {
        Some(c) => coplanar_witness(
            c.len(),
            |p, q, r| int_normal(&c[p], &c[q], &c[r]),
            |p, q| !axis_parallel_int(&c[p], &c[q]),
        ),
        None => {
            let c: Vec<&[Scalar]> = g.points().iter().map(|p| p.coords.as_slice()).collect();
            coplanar_witness(
                c.len(),
                |p, q, r| scalar_normal(c[p], c[q], c[r]),
                |p, q| !axis_parallel_scalar(c[p], c[q]),
            )
        }
    };
    GenericReport { witness }
}

fn slice_witness(g: &Grid) -> Option<GenericWitness> {
    for axis in 0..3 {
        let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
        let mut slices: HashMap<usize, Vec<(PointId, [Scalar; 2])>> = HashMap::new();
        for (id, p) in g.points().iter().enumerate() {
            slices
                .entry(p.indices[axis])
                .or_default()
                .push((id, [p.coords[u].clone(), p.coords[v].clone()]));
        }
        let mut keys: Vec<usize> = slices.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            if let Some(points) = collinear_triple(&slices[&key]) {
                return Some(GenericWitness::SliceCollinear { axis, points });
            }
        }
    }
    None
}

/// Scans, for every pair `p < q`, the planes through `p`, `q` and a later
/// point `r`. `normal` returns the plane's canonical normal key and whether
/// it has full support, or `None` when `p, q, r` are collinear.
fn coplanar_witness<K: Hash + Eq>(
    len: usize,
    normal: impl Fn(usize, usize, usize) -> Option<(K, bool)>,
    skew_line: impl Fn(usize, usize) -> bool,
) -> Option<GenericWitness> {
    for p in 0..len {
        for q in p + 1..len {
            let mut collinear: Vec<PointId> = Vec::new();
            let mut groups: HashMap<K, PointId> = HashMap::new();
            let mut full_support_rep: Option<PointId> = None;
            for r in q + 1..len {
                match normal(p, q, r) {
                    None => {
                        collinear.push(r);
                        // Four points on a line that is not axis-parallel lie
                        // on some full-support plane.
                        if collinear.len() == 2 && skew_line(p, q) {
                            return Some(GenericWitness::Coplanar([p, q, collinear[0], r]));
                        }
                    }
                    Some((key, full)) => {
                        if !full {
                            continue;
                        }
                        if let Some(&prev) = groups.get(&key) {
                            return Some(GenericWitness::Coplanar([p, q, prev, r]));
                        }
                        groups.insert(key, r);
                        full_support_rep.get_or_insert(r);
                    }
                }
                if let (Some(&c), Some(f)) = (collinear.first(), full_support_rep) {
                    return Some(GenericWitness::Coplanar([p, q, c.min(f), c.max(f)]));
                }
            }
        }
    }
    None
}

/// Coordinates scaled by the common denominator, when small enough for the
/// cross products to fit comfortably in `i128`.
fn integer_coords(g: &Grid) -> Option<Vec<[i128; 3]>> {
    const LIMIT: i128 = 1 << 40;
    let mut lcm = Scalar::one();
    for axis in g.axes() {
        for v in axis {
            lcm = crate::scalar::int_lcm(&lcm, &Scalar::from(v.denom()));
        }
    }
    let mut out = Vec::with_capacity(g.len());
    for p in g.points() {
        let mut c = [0i128; 3];
        for (t, v) in p.coords.iter().enumerate() {
            let x = (v * &lcm).to_i64()? as i128;
            if x.abs() >= LIMIT {
                return None;
            }
            c[t] = x;
        }
        out.push(c);
    }
    Some(out)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

fn int_normal(p: &[i128; 3], q: &[i128; 3], r: &[i128; 3]) -> Option<([i128; 3], bool)> {
    let u = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
    let v = [r[0] - p[0], r[1] - p[1], r[2] - p[2]];
    let mut n = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    if n == [0, 0, 0] {
        return None;
    }
    let full = n.iter().all(|&x| x != 0);
    if !full {
        return Some((n, false));
    }
    let mut g = gcd_i128(gcd_i128(n[0], n[1]), n[2]);
    if n[0] < 0 {
        g = -g;
    }
    for x in &mut n {
        *x /= g;
    }
    Some((n, true))
}

fn axis_parallel_int(p: &[i128; 3], q: &[i128; 3]) -> bool {
    (0..3).filter(|&t| p[t] != q[t]).count() == 1
}

fn scalar_normal(p: &[Scalar], q: &[Scalar], r: &[Scalar]) -> Option<(Hyperplane, bool)> {
    let h = crate::incidence::plane_through_coords(p, q, r)?;
    let full = h.support() == 3;
    Some((h, full))
}

fn axis_parallel_scalar(p: &[Scalar], q: &[Scalar]) -> bool {
    (0..3).filter(|&t| p[t] != q[t]).count() == 1
}
