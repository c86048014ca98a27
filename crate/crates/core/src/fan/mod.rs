//! Complete 3-dimensional fans as regular CW decompositions of the 2-sphere.
//!
//! A [`FanComplex`] stores only the maximal cones: each one is the cyclic walk of
//! the rays on its boundary. Two-dimensional cones (edges) are derived as the
//! unordered pairs of consecutive rays. Everything here is purely combinatorial;
//! coordinates live in [`crate::geom`].

mod canon;
mod jammed;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::{
    antipodal_involution, antipodal_involutions, are_isomorphic, automorphisms, canonical_code, AntipodalInvolution,
    CanonicalCode,
};
pub use jammed::{is_jammed, JammedCertificate, PairCase, PairKind, RejectionWitness};

/// Unordered ray pair, stored with the smaller index first.
pub type Edge = (usize, usize);

pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("invalid fan complex: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("unknown ray index {ray} (complex has {ray_count} rays)")]
    UnknownRay { ray: usize, ray_count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanComplex {
    #[serde(rename = "rays")]
    ray_count: usize,
    cells: Vec<Vec<usize>>,
}

impl FanComplex {
    /// Builds a complex without checking it; see [`validate`].
    pub fn new(ray_count: usize, cells: Vec<Vec<usize>>) -> Self {
        FanComplex { ray_count, cells }
    }

    pub fn ray_count(&self) -> usize {
        self.ray_count
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &[usize] {
        &self.cells[i]
    }

    /// Consecutive ray pairs of one cell walk.
    pub fn cell_edges(&self, i: usize) -> impl Iterator<Item = Edge> + '_ {
        let c = &self.cells[i];
        (0..c.len()).map(move |k| edge(c[k], c[(k + 1) % c.len()]))
    }

    /// Sorted, deduplicated derived edges.
    pub fn edges(&self) -> Vec<Edge> {
        let set: BTreeSet<Edge> = (0..self.cells.len()).flat_map(|i| self.cell_edges(i)).collect();
        set.into_iter().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Indices of the cells whose walk contains `ray`.
    pub fn cells_containing(&self, ray: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].contains(&ray)).collect()
    }

    /// Cells whose walk has `e` as a consecutive pair.
    pub fn cells_on_edge(&self, e: Edge) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cell_edges(i).any(|f| f == e))
            .collect()
    }

    /// Number of maximal cones containing each ray.
    pub fn valences(&self) -> Vec<usize> {
        let mut v = vec![0; self.ray_count];
        for c in &self.cells {
            for &r in c {
                if r < self.ray_count {
                    v[r] += 1;
                }
            }
        }
        v
    }

    /// Same complex with rays renamed by `perm` (old index -> new index).
    pub fn relabel_rays(&self, perm: &[usize]) -> FanComplex {
        FanComplex {
            ray_count: self.ray_count,
            cells: self.cells.iter().map(|c| c.iter().map(|&r| perm[r]).collect()).collect(),
        }
    }

    /// Same complex with cells listed in a different order (`order[k]` is the old index of new cell `k`).
    pub fn reorder_cells(&self, order: &[usize]) -> FanComplex {
        FanComplex {
            ray_count: self.ray_count,
            cells: order.iter().map(|&i| self.cells[i].clone()).collect(),
        }
    }

    /// Cell walks oriented coherently (every edge traversed once in each direction).
    /// `None` if the walks cannot be oriented, which never happens for a valid complex.
    pub fn oriented_cells(&self) -> Option<Vec<Vec<usize>>> {
        let n = self.cells.len();
        let mut cells = self.cells.clone();
        let mut done = vec![false; n];
        for root in 0..n {
            if done[root] {
                continue;
            }
            done[root] = true;
            let mut stack = vec![root];
            while let Some(f) = stack.pop() {
                let walk = cells[f].clone();
                for k in 0..walk.len() {
                    let (u, v) = (walk[k], walk[(k + 1) % walk.len()]);
                    for g in 0..n {
                        if g == f {
                            continue;
                        }
                        let Some(dir) = directed_edge(&cells[g], u, v) else { continue };
                        if done[g] {
                            if dir {
                                return None;
                            }
                            continue;
                        }
                        if dir {
                            cells[g].reverse();
                        }
                        done[g] = true;
                        stack.push(g);
                    }
                }
            }
        }
        Some(cells)
    }
}

/// `Some(true)` if `walk` traverses u->v, `Some(false)` for v->u, `None` if {u,v} is not an edge of it.
fn directed_edge(walk: &[usize], u: usize, v: usize) -> Option<bool> {
    let k = walk.len();
    for i in 0..k {
        let (a, b) = (walk[i], walk[(i + 1) % k]);
        if a == u && b == v {
            return Some(true);
        }
        if a == v && b == u {
            return Some(false);
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    NoCells,
    TooFewCells { count: usize },
    RayOutOfRange { cell: usize, ray: usize },
    ShortCell { cell: usize, len: usize },
    RepeatedRay { cell: usize, ray: usize },
    EdgeMultiplicity { edge: Edge, count: usize },
    LowDegree { ray: usize, degree: usize },
    LinkNotCycle { ray: usize },
    Euler { characteristic: i64 },
    BadIntersection { cells: (usize, usize), shared: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoCells => write!(f, "no cells"),
            Violation::TooFewCells { count } => write!(f, "too few cells: {count} < 4"),
            Violation::RayOutOfRange { cell, ray } => write!(f, "cell {cell} references unknown ray {ray}"),
            Violation::ShortCell { cell, len } => write!(f, "cell {cell} has only {len} rays"),
            Violation::RepeatedRay { cell, ray } => write!(f, "cell {cell} visits ray {ray} twice"),
            Violation::EdgeMultiplicity { edge, count } => {
                write!(f, "edge multiplicity: edge {}-{} lies in {count} cells", edge.0, edge.1)
            }
            Violation::LowDegree { ray, degree } => write!(f, "ray {ray} has degree {degree} < 3"),
            Violation::LinkNotCycle { ray } => write!(f, "link of ray {ray} is not a single cycle"),
            Violation::Euler { characteristic } => write!(f, "Euler characteristic {characteristic} != 2"),
            Violation::BadIntersection { cells, shared } => write!(
                f,
                "pairwise intersection not a face: cells {} and {} share rays {:?}",
                cells.0, cells.1, shared
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every fan axiom and lists all violations found.
pub fn validate(complex: &FanComplex) -> ValidityReport {
    let mut out = Vec::new();
    let cells = &complex.cells;
    if cells.is_empty() {
        out.push(Violation::NoCells);
        return ValidityReport { violations: out };
    }
    if cells.len() < 4 {
        out.push(Violation::TooFewCells { count: cells.len() });
    }
    let mut structural = false;
    for (i, c) in cells.iter().enumerate() {
        if c.len() < 3 {
            out.push(Violation::ShortCell { cell: i, len: c.len() });
        }
        let mut seen = BTreeSet::new();
        for &r in c {
            if r >= complex.ray_count {
                out.push(Violation::RayOutOfRange { cell: i, ray: r });
                structural = true;
            } else if !seen.insert(r) {
                out.push(Violation::RepeatedRay { cell: i, ray: r });
                structural = true;
            }
        }
    }
    if structural {
        return ValidityReport { violations: out };
    }

    let mut edge_cells: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for i in 0..cells.len() {
        for e in complex.cell_edges(i) {
            edge_cells.entry(e).or_default().push(i);
        }
    }
    for (e, cs) in &edge_cells {
        if cs.len() != 2 {
            out.push(Violation::EdgeMultiplicity { edge: *e, count: cs.len() });
        }
    }

    let mut degree = vec![0usize; complex.ray_count];
    for &(u, v) in edge_cells.keys() {
        degree[u] += 1;
        degree[v] += 1;
    }
    for (r, &d) in degree.iter().enumerate() {
        if d < 3 {
            out.push(Violation::LowDegree { ray: r, degree: d });
        }
    }

    for (r, &d) in degree.iter().enumerate() {
        if d > 0 && !link_is_cycle(complex, &edge_cells, r) {
            out.push(Violation::LinkNotCycle { ray: r });
        }
    }

    let chi = complex.ray_count as i64 - edge_cells.len() as i64 + cells.len() as i64;
    if chi != 2 {
        out.push(Violation::Euler { characteristic: chi });
    }

    let sets: Vec<BTreeSet<usize>> = cells.iter().map(|c| c.iter().copied().collect()).collect();
    for a in 0..cells.len() {
        for b in a + 1..cells.len() {
            let shared: Vec<usize> = sets[a].intersection(&sets[b]).copied().collect();
            let ok = match shared.len() {
                0 | 1 => true,
                2 => {
                    let e = edge(shared[0], shared[1]);
                    complex.cell_edges(a).any(|f| f == e) && complex.cell_edges(b).any(|f| f == e)
                }
                _ => false,
            };
            if !ok {
                out.push(Violation::BadIntersection { cells: (a, b), shared });
            }
        }
    }
    ValidityReport { violations: out }
}

fn link_is_cycle(complex: &FanComplex, edge_cells: &BTreeMap<Edge, Vec<usize>>, r: usize) -> bool {
    let around = complex.cells_containing(r);
    if around.is_empty() {
        return false;
    }
    // adjacency between cells around r through edges incident to r
    let mut adj: BTreeMap<usize, Vec<usize>> = around.iter().map(|&c| (c, Vec::new())).collect();
    for (e, cs) in edge_cells {
        if (e.0 == r || e.1 == r) && cs.len() == 2 {
            if let Some(v) = adj.get_mut(&cs[0]) { v.push(cs[1]) }
            if let Some(v) = adj.get_mut(&cs[1]) { v.push(cs[0]) }
        }
    }
    if adj.values().any(|v| v.len() != 2) {
        return false;
    }
    let mut seen = BTreeSet::from([around[0]]);
    let mut stack = vec![around[0]];
    while let Some(c) = stack.pop() {
        for &d in &adj[&c] {
            if seen.insert(d) {
                stack.push(d);
            }
        }
    }
    seen.len() == around.len()
}

fn require_valid(complex: &FanComplex) -> Result<(), FanError> {
    let report = validate(complex);
    if report.is_valid() {
        Ok(())
    } else {
        Err(FanError::Invalid(report.violations))
    }
}

/// Ray valence counts and face numbers of a fan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Profile {
    pub a3: u32,
    pub a4: u32,
    pub b: u32,
    pub c: u32,
}

impl Profile {
    pub const fn new(a3: u32, a4: u32, b: u32, c: u32) -> Self {
        Profile { a3, a4, b, c }
    }

    pub fn rays(&self) -> u32 {
        self.a3 + self.a4
    }

    /// Each 2-cone has exactly two rays: `2b = 3 a3 + 4 a4`.
    pub fn edge_relation_holds(&self) -> bool {
        2 * self.b == 3 * self.a3 + 4 * self.a4
    }

    pub fn euler_holds(&self) -> bool {
        self.a3 as i64 + self.a4 as i64 - self.b as i64 + self.c as i64 == 2
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a3, self.a4, self.b, self.c)
    }
}

impl std::str::FromStr for Profile {
    type Err = String;

    /// Parses `a3,a4,b,c`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(format!("expected a3,a4,b,c but got {s:?}"));
        }
        let mut v = [0u32; 4];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p.parse().map_err(|_| format!("not a non-negative integer: {p:?}"))?;
        }
        Ok(Profile::new(v[0], v[1], v[2], v[3]))
    }
}

pub fn profile(complex: &FanComplex) -> Result<Profile, FanError> {
    require_valid(complex)?;
    let val = complex.valences();
    Ok(Profile {
        a3: val.iter().filter(|&&v| v == 3).count() as u32,
        a4: val.iter().filter(|&&v| v == 4).count() as u32,
        b: complex.edge_count() as u32,
        c: complex.cell_count() as u32,
    })
}

/// Cyclic order of the maximal cones around one ray.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkCycle {
    pub ray: usize,
    pub cells_around: Vec<usize>,
    /// `edges_around[i]` is shared by `cells_around[i]` and `cells_around[i + 1]`.
    pub edges_around: Vec<Edge>,
}

impl LinkCycle {
    pub fn valence(&self) -> usize {
        self.cells_around.len()
    }

    pub fn position(&self, cell: usize) -> Option<usize> {
        self.cells_around.iter().position(|&c| c == cell)
    }

    /// Both cells sit at positions `{0,2}` or `{1,3}` of a 4-cycle.
    pub fn are_opposite(&self, a: usize, b: usize) -> bool {
        match (self.position(a), self.position(b)) {
            (Some(i), Some(j)) => self.valence() == 4 && (i + 2) % 4 == j,
            _ => false,
        }
    }

    /// Neighbour ray across each edge of the link, in cyclic order.
    pub fn link_rays(&self) -> Vec<usize> {
        self.edges_around
            .iter()
            .map(|&(u, v)| if u == self.ray { v } else { u })
            .collect()
    }
}

pub fn link(complex: &FanComplex, ray: usize) -> Result<LinkCycle, FanError> {
    if ray >= complex.ray_count {
        return Err(FanError::UnknownRay { ray, ray_count: complex.ray_count });
    }
    require_valid(complex)?;
    let around = complex.cells_containing(ray);
    let start = around[0];
    let mut cells_around = vec![start];
    let mut edges_around = Vec::new();
    let walk = complex.cell(start);
    let k = walk.iter().position(|&r| r == ray).unwrap_or(0);
    let mut exit = edge(ray, walk[(k + 1) % walk.len()]);
    let mut current = start;
    loop {
        edges_around.push(exit);
        let next = complex
            .cells_on_edge(exit)
            .into_iter()
            .find(|&c| c != current)
            .expect("valid complex: every edge lies in two cells");
        if next == start {
            break;
        }
        cells_around.push(next);
        exit = complex
            .cell_edges(next)
            .find(|&e| (e.0 == ray || e.1 == ray) && e != exit)
            .expect("valid complex: two edges at each ray of a cell");
        current = next;
    }
    Ok(LinkCycle { ray, cells_around, edges_around })
}

/// Standard examples used throughout the crate and its tests.
pub mod examples {
    use super::FanComplex;

    /// Boundary complex of a simplex: 4 rays, 4 triangles.
    pub fn tetrahedral() -> FanComplex {
        FanComplex::new(4, vec![vec![0, 1, 2], vec![0, 3, 1], vec![1, 3, 2], vec![0, 2, 3]])
    }

    /// Coordinate octants; ray `2i` is `+e_i`, ray `2i+1` is `-e_i`.
    pub fn octants() -> FanComplex {
        let mut cells = Vec::new();
        for s in 0..8usize {
            let x = s & 1;
            let y = (s >> 1) & 1;
            let z = (s >> 2) & 1;
            let mut c = vec![x, 2 + y, 4 + z];
            // orient all octants coherently: odd number of negative signs reverses
            if (x + y + z) % 2 == 1 {
                c.reverse();
            }
            cells.push(c);
        }
        FanComplex::new(6, cells)
    }

    /// Face fan of the cube `[-1,1]^3`; ray `k` is the sign vector with bits of `k` (bit set = negative).
    pub fn cube_faces() -> FanComplex {
        FanComplex::new(
            8,
            vec![
                vec![0, 2, 6, 4],
                vec![1, 5, 7, 3],
                vec![0, 4, 5, 1],
                vec![2, 3, 7, 6],
                vec![0, 1, 3, 2],
                vec![4, 6, 7, 5],
            ],
        )
    }

    /// Wheel with four spokes: apex ray 4 of valence 4.
    pub fn square_pyramid() -> FanComplex {
        FanComplex::new(
            5,
            vec![vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4], vec![3, 0, 4], vec![0, 3, 2, 1]],
        )
    }

    /// Face fan of a triangular bipyramid: apexes 0 and 1, equator 2, 3, 4.
    pub fn triangular_bipyramid() -> FanComplex {
        FanComplex::new(
            5,
            vec![
                vec![0, 2, 3],
                vec![0, 3, 4],
                vec![0, 4, 2],
                vec![1, 3, 2],
                vec![1, 4, 3],
                vec![1, 2, 4],
            ],
        )
    }

    /// Face fan of a triangular prism: 2 disjoint triangles and 3 quadrilaterals.
    pub fn triangular_prism_faces() -> FanComplex {
        FanComplex::new(
            6,
            vec![
                vec![0, 1, 2],
                vec![3, 5, 4],
                vec![0, 3, 4, 1],
                vec![1, 4, 5, 2],
                vec![2, 5, 3, 0],
            ],
        )
    }

    /// Face fan of a hexagonal bipyramid: the two apexes have valence 6.
    pub fn hexagonal_bipyramid() -> FanComplex {
        let mut cells = Vec::new();
        for i in 0..6 {
            let (a, b) = (i, (i + 1) % 6);
            cells.push(vec![6, a, b]);
            cells.push(vec![7, b, a]);
        }
        FanComplex::new(8, cells)
    }

    /// Face fan of a pentagonal bipyramid: apexes 5 and 6 have valence 5.
    pub fn pentagonal_bipyramid() -> FanComplex {
        let mut cells = Vec::new();
        for i in 0..5 {
            let (a, b) = (i, (i + 1) % 5);
            cells.push(vec![5, a, b]);
            cells.push(vec![6, b, a]);
        }
        FanComplex::new(7, cells)
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn standard_examples_are_valid() {
        for f in [
            tetrahedral(),
            octants(),
            cube_faces(),
            square_pyramid(),
            triangular_bipyramid(),
            triangular_prism_faces(),
            hexagonal_bipyramid(),
        ] {
            let r = validate(&f);
            assert!(r.is_valid(), "{:?}", r);
            assert!(f.oriented_cells().is_some());
        }
    }

    #[test]
    fn edge_in_three_cells_is_rejected() {
        let mut cells = tetrahedral().cells().to_vec();
        cells.push(vec![0, 1, 3]);
        let r = validate(&FanComplex::new(4, cells));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::EdgeMultiplicity { count: 3, .. })));
        assert!(r.violations.iter().any(|v| v.to_string().contains("edge multiplicity")));
    }

    #[test]
    fn cells_sharing_non_adjacent_rays_are_rejected() {
        // two quadrilaterals meeting in the diagonal pair {0,2}
        let f = FanComplex::new(6, vec![vec![0, 1, 2, 3], vec![0, 4, 2, 5]]);
        let r = validate(&f);
        assert!(r
            .violations
            .iter()
            .any(|v| v.to_string().contains("pairwise intersection not a face")));
    }

    #[test]
    fn fewer_than_four_cells_rejected() {
        let r = validate(&FanComplex::new(3, vec![vec![0, 1, 2], vec![0, 2, 1]]));
        assert!(r.violations.contains(&Violation::TooFewCells { count: 2 }));
        assert_eq!(validate(&FanComplex::new(0, vec![])).violations, vec![Violation::NoCells]);
    }

    #[test]
    fn out_of_range_and_repeats() {
        let r = validate(&FanComplex::new(3, vec![vec![0, 1, 5], vec![0, 0, 1], vec![0, 1, 2], vec![0, 2, 1]]));
        assert!(r.violations.contains(&Violation::RayOutOfRange { cell: 0, ray: 5 }));
        assert!(r.violations.contains(&Violation::RepeatedRay { cell: 1, ray: 0 }));
    }

    #[test]
    fn torus_fails_euler() {
        // 3x3 grid torus: 9 rays, 18 edges, 9 quads
        let idx = |i: usize, j: usize| (i % 3) * 3 + (j % 3);
        let cells = (0..3)
            .flat_map(|i| (0..3).map(move |j| vec![idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)]))
            .collect();
        let r = validate(&FanComplex::new(9, cells));
        assert!(r.violations.contains(&Violation::Euler { characteristic: 0 }));
    }

    #[test]
    fn profiles_of_examples() {
        assert_eq!(profile(&tetrahedral()).unwrap(), Profile::new(4, 0, 6, 4));
        assert_eq!(profile(&cube_faces()).unwrap(), Profile::new(8, 0, 12, 6));
        assert_eq!(profile(&octants()).unwrap(), Profile::new(0, 6, 12, 8));
        assert_eq!(profile(&square_pyramid()).unwrap(), Profile::new(4, 1, 8, 5));
        assert_eq!(profile(&triangular_bipyramid()).unwrap(), Profile::new(2, 3, 9, 6));
        assert!(profile(&FanComplex::new(4, vec![vec![0, 1, 2]])).is_err());
    }

    #[test]
    fn links() {
        for r in 0..6 {
            let l = link(&octants(), r).unwrap();
            assert_eq!(l.valence(), 4);
            assert_eq!(l.edges_around.len(), 4);
        }
        for r in 0..4 {
            assert_eq!(link(&tetrahedral(), r).unwrap().valence(), 3);
        }
        let apex = link(&square_pyramid(), 4).unwrap();
        assert_eq!(apex.valence(), 4);
        assert!(apex.are_opposite(0, 2));
        assert!(!apex.are_opposite(0, 1));
        assert_eq!(
            link(&tetrahedral(), 9),
            Err(FanError::UnknownRay { ray: 9, ray_count: 4 })
        );
    }

    #[test]
    fn link_consecutive_cells_share_edge() {
        let f = triangular_bipyramid();
        for r in 0..5 {
            let l = link(&f, r).unwrap();
            for i in 0..l.valence() {
                let e = l.edges_around[i];
                let on = f.cells_on_edge(e);
                assert!(on.contains(&l.cells_around[i]));
                assert!(on.contains(&l.cells_around[(i + 1) % l.valence()]));
            }
        }
    }

    #[test]
    fn profile_parsing() {
        assert_eq!("4,1,8,5".parse::<Profile>().unwrap(), Profile::new(4, 1, 8, 5));
        assert_eq!("(2, 3, 9, 6)".parse::<Profile>().unwrap(), Profile::new(2, 3, 9, 6));
        assert!("1,2,3".parse::<Profile>().is_err());
        assert!("a,2,3,4".parse::<Profile>().is_err());
    }

    #[test]
    fn json_document_shape() {
        let s = serde_json::to_string(&tetrahedral()).unwrap();
        assert!(s.starts_with("{\"rays\":4,\"cells\":"));
        let back: FanComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, tetrahedral());
    }
}
