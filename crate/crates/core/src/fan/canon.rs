//! Canonical codes and automorphisms of sphere complexes.
//!
//! A valid complex is a map on the sphere. Fixing a dart (a directed edge inside
//! a cell) and an orientation, a breadth-first walk over cells relabels the rays
//! in order of discovery and lists each cell from the dart through which it was
//! entered. The minimum of these listings over all darts and both orientations
//! is a complete isomorphism invariant.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use super::{edge, validate, FanComplex};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    ray_count: usize,
    cells: Vec<Vec<usize>>,
}

impl CanonicalCode {
    /// The relabeled complex the code spells out.
    pub fn to_complex(&self) -> FanComplex {
        FanComplex::new(self.ray_count, self.cells.clone())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.ray_count)?;
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, "/")?;
            }
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "{}", parts.join(","))?;
        }
        Ok(())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct DartMap {
    cells: Vec<Vec<usize>>,
    /// directed edge (u, v) -> (cell, position of u)
    dart_at: HashMap<(usize, usize), (usize, usize)>,
}

impl DartMap {
    fn new(cells: Vec<Vec<usize>>) -> Self {
        let mut dart_at = HashMap::new();
        for (f, c) in cells.iter().enumerate() {
            for p in 0..c.len() {
                dart_at.insert((c[p], c[(p + 1) % c.len()]), (f, p));
            }
        }
        DartMap { cells, dart_at }
    }

    fn darts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .flat_map(|(f, c)| (0..c.len()).map(move |p| (f, p)))
    }

    /// BFS listing from a start dart; returns the code cells and ray -> label.
    fn walk(&self, ray_count: usize, start: (usize, usize)) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut labels = vec![usize::MAX; ray_count];
        let mut next = 0;
        let mut visited = vec![false; self.cells.len()];
        let mut queue = VecDeque::from([start]);
        let mut code = Vec::with_capacity(self.cells.len());
        while let Some((f, p)) = queue.pop_front() {
            if visited[f] {
                continue;
            }
            visited[f] = true;
            let c = &self.cells[f];
            let k = c.len();
            let mut listed = Vec::with_capacity(k);
            for i in 0..k {
                let u = c[(p + i) % k];
                let v = c[(p + i + 1) % k];
                if labels[u] == usize::MAX {
                    labels[u] = next;
                    next += 1;
                }
                listed.push(labels[u]);
                if let Some(&twin) = self.dart_at.get(&(v, u)) {
                    if !visited[twin.0] {
                        queue.push_back(twin);
                    }
                }
            }
            code.push(listed);
        }
        (code, labels)
    }
}

/// All (code, labeling) pairs over every start dart and both orientations.
fn all_walks(complex: &FanComplex) -> Vec<(Vec<Vec<usize>>, Vec<usize>)> {
    let oriented = complex
        .oriented_cells()
        .unwrap_or_else(|| complex.cells().to_vec());
    let reversed: Vec<Vec<usize>> = oriented
        .iter()
        .map(|c| c.iter().rev().copied().collect())
        .collect();
    let mut out = Vec::new();
    for cells in [oriented, reversed] {
        let map = DartMap::new(cells);
        for d in map.darts() {
            out.push(map.walk(complex.ray_count(), d));
        }
    }
    out
}

/// Label-invariant code: equal codes exactly when the complexes are isomorphic.
/// Expects a valid complex.
pub fn canonical_code(complex: &FanComplex) -> CanonicalCode {
    let cells = all_walks(complex)
        .into_iter()
        .map(|(code, _)| code)
        .min()
        .unwrap_or_default();
    CanonicalCode { ray_count: complex.ray_count(), cells }
}

pub fn are_isomorphic(x: &FanComplex, y: &FanComplex) -> bool {
    x.ray_count() == y.ray_count()
        && x.cell_count() == y.cell_count()
        && canonical_code(x) == canonical_code(y)
}

/// All ray permutations mapping the cell set onto itself, sorted.
pub fn automorphisms(complex: &FanComplex) -> Vec<Vec<usize>> {
    let walks = all_walks(complex);
    let Some(best) = walks.iter().map(|(c, _)| c).min().cloned() else {
        return Vec::new();
    };
    let minimal: Vec<&Vec<usize>> = walks
        .iter()
        .filter(|(c, _)| *c == best)
        .map(|(_, l)| l)
        .collect();
    let base = minimal[0];
    let mut found = BTreeSet::new();
    for lab in &minimal {
        let mut inv = vec![0; lab.len()];
        for (r, &l) in lab.iter().enumerate() {
            inv[l] = r;
        }
        let sigma: Vec<usize> = base.iter().map(|&l| inv[l]).collect();
        found.insert(sigma);
    }
    found.into_iter().collect()
}

/// Fixed-point-free involutive automorphism pairing every cell with a ray-disjoint cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AntipodalInvolution {
    pub ray_map: Vec<usize>,
    pub cell_map: Vec<usize>,
}

impl AntipodalInvolution {
    /// Unordered cell pairs `(a, b)` with `a < b`.
    pub fn cell_pairs(&self) -> Vec<(usize, usize)> {
        self.cell_map
            .iter()
            .enumerate()
            .filter(|(a, b)| a < *b)
            .map(|(a, &b)| (a, b))
            .collect()
    }
}

fn cell_key(c: &[usize]) -> BTreeSet<usize> {
    c.iter().copied().collect()
}

fn as_antipodal(complex: &FanComplex, sigma: &[usize]) -> Option<AntipodalInvolution> {
    let n = complex.ray_count();
    if (0..n).any(|r| sigma[r] == r || sigma[sigma[r]] != r) {
        return None;
    }
    // a fixed edge would be swapped end to end
    if complex.edges().iter().any(|&(u, v)| edge(sigma[u], sigma[v]) == (u, v)) {
        return None;
    }
    let index: HashMap<BTreeSet<usize>, usize> = complex
        .cells()
        .iter()
        .enumerate()
        .map(|(i, c)| (cell_key(c), i))
        .collect();
    let mut cell_map = Vec::with_capacity(complex.cell_count());
    for c in complex.cells() {
        let image: BTreeSet<usize> = c.iter().map(|&r| sigma[r]).collect();
        let &j = index.get(&image)?;
        if !image.is_disjoint(&cell_key(c)) {
            return None;
        }
        cell_map.push(j);
    }
    Some(AntipodalInvolution { ray_map: sigma.to_vec(), cell_map })
}

/// Every antipodal involution, ordered lexicographically by ray map.
pub fn antipodal_involutions(complex: &FanComplex) -> Vec<AntipodalInvolution> {
    if !validate(complex).is_valid() {
        return Vec::new();
    }
    let mut seen = HashSet::new();
    automorphisms(complex)
        .iter()
        .filter_map(|s| as_antipodal(complex, s))
        .filter(|a| seen.insert(a.ray_map.clone()))
        .collect()
}

/// Lexicographically least antipodal involution (by ray map in the complex's own labels).
pub fn antipodal_involution(complex: &FanComplex) -> Option<AntipodalInvolution> {
    antipodal_involutions(complex).into_iter().next()
}
