//! Fans realized by rational ray vectors.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{det3, quotient_functionals, Rat, Vec3};
use super::GeomError;
use crate::cell_type::CellType;
use crate::cells::Polytope3;
use crate::fan::{link, validate, FanComplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometricFan {
    pub rays: Vec<Vec3>,
    #[serde(rename = "cells", with = "cells_only")]
    pub complex: FanComplex,
}

mod cells_only {
    use super::FanComplex;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(c: &FanComplex, s: S) -> Result<S::Ok, S::Error> {
        c.cells().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<FanComplex, D::Error> {
        let cells = Vec::<Vec<usize>>::deserialize(d)?;
        let n = cells.iter().flatten().map(|&r| r + 1).max().unwrap_or(0);
        Ok(FanComplex::new(n, cells))
    }
}

impl GeometricFan {
    pub fn new(rays: Vec<Vec3>, cells: Vec<Vec<usize>>) -> Self {
        let complex = FanComplex::new(rays.len(), cells);
        GeometricFan { rays, complex }
    }

    /// Parse the JSON form; the ray count is taken from the ray list.
    pub fn from_json(text: &str) -> Result<Self, GeomError> {
        let raw: GeometricFan = serde_json::from_str(text).map_err(|e| GeomError::Json(e.to_string()))?;
        Ok(GeometricFan::new(raw.rays, raw.complex.cells().to_vec()))
    }

    pub fn transformed(&self, m: &super::Matrix3) -> Self {
        GeometricFan { rays: self.rays.iter().map(|r| m.mul_vec(r)).collect(), complex: self.complex.clone() }
    }
}

/// A local condition that fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CompletenessIssue {
    /// The walk rays do not bound a pointed convex cone in the stated order.
    CellNotConvex { cell: usize },
    /// The two cells on an edge are not strictly on opposite sides of its plane.
    EdgeSides { edge: (usize, usize) },
    /// The link of a ray is not a complete 2-dimensional fan winding once.
    LinkNotFan { ray: usize },
    /// The complex itself is not a valid sphere complex.
    Combinatorial(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub complete: bool,
    pub issues: Vec<CompletenessIssue>,
}

fn sign(r: &Rat) -> i32 {
    super::rational::sign(r)
}

/// Half-plane class then cross product: an exact angular order on nonzero 2-vectors.
pub(crate) fn angle_cmp(a: &(Rat, Rat), b: &(Rat, Rat)) -> Ordering {
    let half = |p: &(Rat, Rat)| if p.1.is_positive() || (p.1.is_zero() && p.0.is_positive()) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a.0 * &b.1 - &a.1 * &b.0;
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

fn cross2(a: &(Rat, Rat), b: &(Rat, Rat)) -> Rat {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// Images of `vs` in the plane `R^3 / span(axis)`.
fn project(axis: &Vec3, vs: &[&Vec3]) -> Vec<(Rat, Rat)> {
    let [f, g] = quotient_functionals(axis);
    vs.iter().map(|v| (f.dot(v), g.dot(v))).collect()
}

/// Nonzero 2-vectors in cyclic order form a complete fan winding exactly once.
fn winds_once(points: &[(Rat, Rat)]) -> bool {
    let k = points.len();
    if k < 3 || points.iter().any(|p| p.0.is_zero() && p.1.is_zero()) {
        return false;
    }
    let turns: Vec<i32> = (0..k).map(|i| sign(&cross2(&points[i], &points[(i + 1) % k]))).collect();
    let s = turns[0];
    if s == 0 || turns.iter().any(|&t| t != s) {
        return false;
    }
    let seq: Vec<&(Rat, Rat)> = if s > 0 { points.iter().collect() } else { points.iter().rev().collect() };
    let descents = (0..k)
        .filter(|&i| angle_cmp(seq[(i + 1) % k], seq[i]) != Ordering::Greater)
        .count();
    descents == 1
}

/// Certify completeness from local conditions: convex cells, edges separating their
/// cells, every link a complete planar fan, and the Euler relation of the complex.
pub fn verify_complete(fan: &GeometricFan) -> Result<CompletenessReport, GeomError> {
    if let Some(i) = fan.rays.iter().position(Vec3::is_zero) {
        return Err(GeomError::ZeroRay(i));
    }
    let c = &fan.complex;
    if c.ray_count() != fan.rays.len() {
        return Err(GeomError::RayCount { rays: fan.rays.len(), labels: c.ray_count() });
    }
    let validity = validate(c);
    if !validity.is_valid() {
        let issues = validity.violations.iter().map(|v| CompletenessIssue::Combinatorial(v.to_string())).collect();
        return Ok(CompletenessReport { complete: false, issues });
    }
    let r = &fan.rays;
    let mut issues = Vec::new();

    for (i, cell) in c.cells().iter().enumerate() {
        let k = cell.len();
        let mut orientation = 0;
        let mut convex = true;
        'walk: for p in 0..k {
            let (a, b) = (cell[p], cell[(p + 1) % k]);
            for &w in cell.iter().filter(|&&w| w != a && w != b) {
                let s = sign(&det3(&r[a], &r[b], &r[w]));
                if s == 0 || (orientation != 0 && s != orientation) {
                    convex = false;
                    break 'walk;
                }
                orientation = s;
            }
        }
        if !convex {
            issues.push(CompletenessIssue::CellNotConvex { cell: i });
        }
    }

    for e @ (u, v) in c.edges() {
        let sides: Vec<i32> = c
            .cells_on_edge(e)
            .iter()
            .map(|&cell| {
                let w = c.cell(cell).iter().copied().find(|&w| w != u && w != v).expect("cells have 3+ rays");
                sign(&det3(&r[u], &r[v], &r[w]))
            })
            .collect();
        if !(sides.len() == 2 && sides[0] * sides[1] == -1) {
            issues.push(CompletenessIssue::EdgeSides { edge: e });
        }
    }

    for ray in 0..c.ray_count() {
        let l = link(c, ray).expect("validated");
        let neighbours: Vec<&Vec3> = l.link_rays().iter().map(|&n| &r[n]).collect();
        if !winds_once(&project(&r[ray], &neighbours)) {
            issues.push(CompletenessIssue::LinkNotFan { ray });
        }
    }

    Ok(CompletenessReport { complete: issues.is_empty(), issues })
}

/// Link rays of a valence-4 ray form two antipodal pairs in the quotient plane:
/// `q2 = -k q0`, `q3 = -l q1` with `k, l > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayPairing {
    pub ray: usize,
    pub link_rays: [usize; 4],
    #[serde(with = "crate::geom::rational::rat_string")]
    pub first_ratio: Rat,
    #[serde(with = "crate::geom::rational::rat_string")]
    pub second_ratio: Rat,
}

/// Negation `v -> -v` permuting rays (up to positive scaling) and cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegationCertificate {
    pub ray_map: Vec<usize>,
    pub cell_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometricJammedCertificate {
    pub jammed: bool,
    pub reason: Option<String>,
    pub ray_pairings: Vec<RayPairing>,
    pub negation: Option<NegationCertificate>,
}

/// `Some(k)` with `k > 0` when `b = -k a`.
fn antipodal_ratio(a: &(Rat, Rat), b: &(Rat, Rat)) -> Option<Rat> {
    if !cross2(a, b).is_zero() {
        return None;
    }
    let k = if !a.0.is_zero() { -&b.0 / &a.0 } else { -&b.1 / &a.1 };
    k.is_positive().then_some(k)
}

fn negation(fan: &GeometricFan) -> Option<NegationCertificate> {
    let dirs: BTreeMap<Vec3, usize> = fan.rays.iter().enumerate().map(|(i, v)| (v.primitive(), i)).collect();
    let ray_map: Vec<usize> = fan
        .rays
        .iter()
        .map(|v| dirs.get(&(-v).primitive()).copied())
        .collect::<Option<_>>()?;
    let index: BTreeMap<BTreeSet<usize>, usize> = fan
        .complex
        .cells()
        .iter()
        .enumerate()
        .map(|(i, c)| (c.iter().copied().collect(), i))
        .collect();
    let cell_map: Vec<usize> = fan
        .complex
        .cells()
        .iter()
        .map(|c| index.get(&c.iter().map(|&r| ray_map[r]).collect()).copied())
        .collect::<Option<_>>()?;
    Some(NegationCertificate { ray_map, cell_map })
}

/// Geometric jammedness: antipodal link pairs at valence-4 rays, and negation
/// swapping exactly the disjoint cell pairs when there are any.
pub fn is_jammed_geometric(fan: &GeometricFan) -> Result<GeometricJammedCertificate, GeomError> {
    let report = verify_complete(fan)?;
    if !report.complete {
        return Err(GeomError::Incomplete(report.issues));
    }
    let c = &fan.complex;
    let negation = negation(fan);
    let mut ray_pairings = Vec::new();
    let reject = |reason: String, ray_pairings, negation| {
        Ok(GeometricJammedCertificate { jammed: false, reason: Some(reason), ray_pairings, negation })
    };

    for ray in 0..c.ray_count() {
        let l = link(c, ray).expect("complete fans are valid");
        match l.valence() {
            3 => {}
            4 => {
                let lr = l.link_rays();
                let q = project(&fan.rays[ray], &lr.iter().map(|&n| &fan.rays[n]).collect::<Vec<_>>());
                match (antipodal_ratio(&q[0], &q[2]), antipodal_ratio(&q[1], &q[3])) {
                    (Some(first_ratio), Some(second_ratio)) => ray_pairings.push(RayPairing {
                        ray,
                        link_rays: [lr[0], lr[1], lr[2], lr[3]],
                        first_ratio,
                        second_ratio,
                    }),
                    _ => return reject(format!("link of ray {ray} is not centrally symmetric"), ray_pairings, negation),
                }
            }
            v => return reject(format!("ray {ray} has valence {v}"), ray_pairings, negation),
        }
    }

    let sets: Vec<BTreeSet<usize>> = c.cells().iter().map(|x| x.iter().copied().collect()).collect();
    let mut disjoint = Vec::new();
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            let shared: Vec<usize> = sets[a].intersection(&sets[b]).copied().collect();
            match shared.len() {
                0 => disjoint.push((a, b)),
                1 => {
                    let l = link(c, shared[0]).expect("valid");
                    if !l.are_opposite(a, b) {
                        return reject(
                            format!("cells {a} and {b} meet only in ray {} without being opposite", shared[0]),
                            ray_pairings,
                            negation,
                        );
                    }
                }
                _ => {}
            }
        }
    }
    if !disjoint.is_empty() {
        let swapped = negation.as_ref().map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n.cell_map.len()).filter(|&a| a < n.cell_map[a]).map(|a| (a, n.cell_map[a])).collect();
            pairs == disjoint
        });
        if swapped != Some(true) {
            let (a, b) = disjoint[0];
            return reject(format!("cells {a} and {b} are disjoint and not swapped by negation"), ray_pairings, negation);
        }
    }
    Ok(GeometricJammedCertificate { jammed: true, reason: None, ray_pairings, negation })
}

/// Normal fan: one ray per facet (outer normal), one cell per vertex listing the
/// facets around it in cyclic order. Cell `i` belongs to `polytope.vertices[i]`.
pub fn normal_fan(polytope: &Polytope3) -> GeometricFan {
    let rays = polytope.facets.iter().map(|f| f.normal.clone()).collect();
    let cells = polytope.vertices.iter().map(|&v| polytope.facets_around(v)).collect();
    GeometricFan::new(rays, cells)
}

fn ints(v: &[[i64; 3]]) -> Vec<Vec3> {
    v.iter().map(|p| Vec3::from_ints(p[0], p[1], p[2])).collect()
}

/// Stored rational realization of each jammed type.
pub fn witness(tag: CellType) -> GeometricFan {
    match tag {
        CellType::Tetrahedron => GeometricFan::new(
            ints(&[[-1, 0, 0], [0, -1, 0], [0, 0, -1], [1, 1, 1]]),
            vec![vec![0, 1, 2], vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3]],
        ),
        CellType::Octahedron => {
            // ray k has coordinate i negative when bit i of k is set
            let rays = (0..8).map(|k| Vec3::from_ints(1 - 2 * (k & 1), 1 - 2 * ((k >> 1) & 1), 1 - 2 * ((k >> 2) & 1))).collect();
            GeometricFan { rays, complex: crate::fan::examples::cube_faces() }
        }
        CellType::Parallelepiped => GeometricFan {
            rays: ints(&[[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]),
            complex: crate::fan::examples::octants(),
        },
        // normal fan of conv{0, e1, e2, e1+e2, e3}
        CellType::QuadrangularPyramid => GeometricFan::new(
            ints(&[[0, 0, -1], [-1, 0, 0], [0, -1, 0], [1, 0, 1], [0, 1, 1]]),
            vec![vec![1, 2, 0], vec![2, 0, 3], vec![1, 0, 4], vec![0, 3, 4], vec![1, 2, 3, 4]],
        ),
        // normal fan of conv({0, e1, e2} x [0, e3])
        CellType::TriangularPrism => GeometricFan::new(
            ints(&[[0, 0, -1], [0, 0, 1], [-1, 0, 0], [0, -1, 0], [1, 1, 0]]),
            vec![vec![0, 2, 3], vec![0, 3, 4], vec![0, 2, 4], vec![1, 2, 3], vec![1, 3, 4], vec![1, 2, 4]],
        ),
    }
}
