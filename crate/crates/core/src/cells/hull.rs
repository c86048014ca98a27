//! Exact convex hulls of small 3-dimensional point sets.
//!
//! Facets are found by testing the plane through every non-collinear triple; a
//! plane with all points on one side supports a facet. Every point lying on the
//! plane is recorded with the facet, and the facet polygon is recovered by gift
//! wrapping inside the plane.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{CellError, PointConfig};
use crate::geom::rational::{affine_dimension, rat, Rat, Vec3};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Facet {
    /// Outer normal with coprime integer coordinates.
    pub normal: Vec3,
    /// `normal . x <= offset` on the polytope, with equality on the facet.
    #[serde(with = "crate::geom::rational::rat_string")]
    pub offset: Rat,
    /// Vertex labels in counter-clockwise order seen from outside.
    pub vertices: Vec<usize>,
    /// Every input label lying on the facet plane.
    pub points: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope3 {
    pub points: Vec<Vec3>,
    /// Labels of extreme points, sorted.
    pub vertices: Vec<usize>,
    /// Sorted label pairs.
    pub edges: Vec<[usize; 2]>,
    pub facets: Vec<Facet>,
}

/// One face of the boundary lattice (or the polytope itself, `dim == 3`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    pub vertices: BTreeSet<usize>,
    pub points: BTreeSet<usize>,
}

pub fn hull3(config: &PointConfig) -> Result<Polytope3, CellError> {
    let pts = &config.points;
    let dim = affine_dimension(pts);
    if pts.len() < 4 || dim < 3 {
        return Err(CellError::Degenerate { dimension: dim });
    }
    let n = pts.len();
    let mut planes: Vec<(Vec3, Rat, BTreeSet<usize>)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if planes.iter().any(|(_, _, on)| on.contains(&i) && on.contains(&j) && on.contains(&k)) {
                    continue;
                }
                let normal = (&pts[j] - &pts[i]).cross(&(&pts[k] - &pts[i]));
                if normal.is_zero() {
                    continue;
                }
                let offset = normal.dot(&pts[i]);
                let (mut pos, mut neg) = (false, false);
                let mut on = BTreeSet::new();
                for (l, p) in pts.iter().enumerate() {
                    let s = normal.dot(p) - &offset;
                    if s.is_positive() {
                        pos = true;
                    } else if s.is_negative() {
                        neg = true;
                    } else {
                        on.insert(l);
                    }
                    if pos && neg {
                        break;
                    }
                }
                if pos && neg {
                    continue;
                }
                let outer = if pos { -&normal } else { normal }.primitive();
                let off = outer.dot(&pts[i]);
                planes.push((outer, off, on));
            }
        }
    }

    let mut facets = Vec::with_capacity(planes.len());
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for (normal, offset, on) in planes {
        let ring = wrap_planar(pts, &on, &normal);
        for w in 0..ring.len() {
            let (a, b) = (ring[w], ring[(w + 1) % ring.len()]);
            edges.insert(if a < b { [a, b] } else { [b, a] });
            vertices.insert(a);
        }
        facets.push(Facet { normal, offset, vertices: ring, points: on.into_iter().collect() });
    }
    facets.sort_by(|a, b| a.vertices.iter().min().cmp(&b.vertices.iter().min()).then(a.points.cmp(&b.points)));
    Ok(Polytope3 {
        points: pts.clone(),
        vertices: vertices.into_iter().collect(),
        edges: edges.into_iter().collect(),
        facets,
    })
}

/// Gift wrapping of coplanar points; returns the polygon's corners counter-clockwise
/// around `normal`.
fn wrap_planar(pts: &[Vec3], on: &BTreeSet<usize>, normal: &Vec3) -> Vec<usize> {
    let ids: Vec<usize> = on.iter().copied().collect();
    let start = *ids.iter().min_by(|&&a, &&b| pts[a].cmp(&pts[b])).expect("facet has points");
    let mut ring = vec![start];
    let mut current = start;
    loop {
        let mut chosen = None;
        for &b in &ids {
            if pts[b] == pts[current] {
                continue;
            }
            let ab = &pts[b] - &pts[current];
            let len2 = ab.dot(&ab);
            let ok = ids.iter().all(|&p| {
                let ap = &pts[p] - &pts[current];
                let turn = ab.cross(&ap).dot(normal);
                if turn.is_negative() {
                    return false;
                }
                if turn.is_zero() {
                    let t = ap.dot(&ab);
                    return !t.is_negative() && t <= len2;
                }
                true
            });
            if ok {
                chosen = Some(b);
                break;
            }
        }
        let next = chosen.expect("a supporting line exists from every corner");
        if next == start {
            break;
        }
        ring.push(next);
        current = next;
    }
    ring
}

impl Polytope3 {
    /// (vertices, edges, facets).
    pub fn f_vector(&self) -> (usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.facets.len())
    }

    pub fn vertex_points(&self) -> Vec<Vec3> {
        self.vertices.iter().map(|&v| self.points[v].clone()).collect()
    }

    /// Closed halfspace membership.
    pub fn contains(&self, p: &Vec3) -> bool {
        self.facets.iter().all(|f| f.normal.dot(p) <= f.offset)
    }

    pub fn contains_strictly(&self, p: &Vec3) -> bool {
        self.facets.iter().all(|f| f.normal.dot(p) < f.offset)
    }

    fn points_on_segment(&self, a: usize, b: usize) -> BTreeSet<usize> {
        let (pa, pb) = (&self.points[a], &self.points[b]);
        let ab = pb - pa;
        let len2 = ab.dot(&ab);
        (0..self.points.len())
            .filter(|&p| {
                let ap = &self.points[p] - pa;
                let t = ap.dot(&ab);
                ap.cross(&ab).is_zero() && !t.is_negative() && t <= len2
            })
            .collect()
    }

    /// All nonempty faces: vertices, edges, facets and the polytope itself.
    pub fn faces(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for &v in &self.vertices {
            let same: BTreeSet<usize> = (0..self.points.len()).filter(|&p| self.points[p] == self.points[v]).collect();
            out.push(Face { dim: 0, vertices: BTreeSet::from([v]), points: same });
        }
        for &[a, b] in &self.edges {
            out.push(Face { dim: 1, vertices: BTreeSet::from([a, b]), points: self.points_on_segment(a, b) });
        }
        for f in &self.facets {
            out.push(Face {
                dim: 2,
                vertices: f.vertices.iter().copied().collect(),
                points: f.points.iter().copied().collect(),
            });
        }
        out.push(Face {
            dim: 3,
            vertices: self.vertices.iter().copied().collect(),
            points: (0..self.points.len()).collect(),
        });
        out
    }

    /// Facets (by index) containing a given vertex label, in cyclic order around it.
    pub fn facets_around(&self, v: usize) -> Vec<usize> {
        let at: Vec<usize> = (0..self.facets.len())
            .filter(|&f| self.facets[f].vertices.contains(&v))
            .collect();
        let shares_edge = |f: usize, g: usize| {
            let fv = &self.facets[f].vertices;
            let gv = &self.facets[g].vertices;
            let k = fv.len();
            let i = fv.iter().position(|&x| x == v).expect("vertex on facet");
            [fv[(i + 1) % k], fv[(i + k - 1) % k]].iter().any(|w| gv.contains(w))
        };
        let mut order = vec![at[0]];
        while order.len() < at.len() {
            let last = *order.last().expect("nonempty");
            let next = at
                .iter()
                .copied()
                .find(|&g| !order.contains(&g) && shares_edge(last, g));
            match next {
                Some(g) => order.push(g),
                None => break,
            }
        }
        order
    }

    pub fn centroid(&self) -> Vec3 {
        let k = rat(self.vertices.len() as i64);
        let sum = self.vertices.iter().fold(Vec3::zero(), |acc, &v| &acc + &self.points[v]);
        sum.scale(&k.recip())
    }
}

/// Exact volume by coning every facet triangle from the vertex centroid.
pub fn volume(polytope: &Polytope3) -> Rat {
    let r = polytope.centroid();
    let mut total = Rat::zero();
    for f in &polytope.facets {
        let p0 = &polytope.points[f.vertices[0]] - &r;
        for w in 1..f.vertices.len() - 1 {
            let p1 = &polytope.points[f.vertices[w]] - &r;
            let p2 = &polytope.points[f.vertices[w + 1]] - &r;
            total += crate::geom::rational::det3(&p0, &p1, &p2).abs();
        }
    }
    total / rat(6)
}
