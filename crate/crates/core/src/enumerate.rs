//! Counting relations for jammed fans, exhaustive generation of sphere
//! complexes with a given profile, and the resulting classification.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cell_type::CellType;
use crate::cells::{self, CellError};
use crate::fan::{antipodal_involution, canonical_code, is_jammed, profile, validate, CanonicalCode, FanComplex, Profile};

/// Largest ray count the generator accepts.
pub const MAX_RAYS: u32 = 8;

/// Cell counts searched by the profile solver. Nonnegativity of `a3` already
/// confines solutions to `c <= 8`; the range reaches past that on purpose.
const MAX_CELLS: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("profile {profile} has {rays} rays; generation is limited to {MAX_RAYS}")]
    TooManyRays { profile: Profile, rays: u32 },
    #[error("profile {0} violates the edge or Euler relation")]
    Inconsistent(Profile),
    #[error("a complete 2-dimensional fan needs at least 3 cones, got {0}")]
    TooFewCones(usize),
    #[error("classification inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Cell(#[from] CellError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileSolutionSet {
    pub symmetric: bool,
    pub profiles: BTreeSet<Profile>,
}

/// Every profile meeting the edge count `2b = 3 a3 + 4 a4`, the Euler relation
/// `a3 + a4 - b + c = 2`, and the pair count: each of the `c(c-1)/2` pairs of
/// cells shares a 2-cone (`b` pairs), meets opposite at a valence-4 ray (two
/// pairs per such ray) or, in the symmetric regime, is antipodal (`c/2` pairs).
pub fn solve_profiles(symmetric: bool) -> ProfileSolutionSet {
    let min_c = if symmetric { 6 } else { 4 };
    let profiles = (min_c..=MAX_CELLS).flat_map(|c| solve_profiles_for_cells(symmetric, c)).collect();
    ProfileSolutionSet { symmetric, profiles }
}

/// Solutions with a fixed number of cells.
pub fn solve_profiles_for_cells(symmetric: bool, c: u32) -> BTreeSet<Profile> {
    let mut out = BTreeSet::new();
    if c < 4 || (symmetric && (c % 2 == 1 || c < 6)) {
        return out;
    }
    let pairs = c * (c - 1) / 2;
    let antipodal = if symmetric { c / 2 } else { 0 };
    // b <= pairs bounds a3 + a4 through Euler
    let limit = (pairs + 2).saturating_sub(c);
    for a3 in 0..=limit {
        for a4 in 0..=limit - a3 {
            let b = a3 + a4 + c - 2;
            let p = Profile { a3, a4, b, c };
            if p.edge_relation_holds() && p.euler_holds() && pairs == 2 * a4 + b + antipodal {
                out.insert(p);
            }
        }
    }
    out
}

/// Relation left after eliminating `a4` and `b`: `c(c-1) = 8(c-2) - a3`
/// without symmetry, `c(c-2) = 8(c-2) - a3` with it.
pub fn reduced_relation_holds(p: &Profile, symmetric: bool) -> bool {
    let (a3, c) = (p.a3 as i64, p.c as i64);
    let lhs = if symmetric { c * (c - 2) } else { c * (c - 1) };
    lhs == 8 * (c - 2) - a3
}

/// Labeled simple graphs on `degrees.len()` vertices with the given degrees.
fn graphs_with_degrees(degrees: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn go(v: usize, need: &mut Vec<usize>, adj: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let n = need.len();
        if v == n {
            out.push(adj.clone());
            return;
        }
        if need[v] == 0 {
            go(v + 1, need, adj, out);
            return;
        }
        let later: Vec<usize> = (v + 1..n).filter(|&w| need[w] > 0).collect();
        let k = need[v];
        if later.len() < k {
            return;
        }
        // choose k of the later vertices
        let mut pick: Vec<usize> = (0..k).collect();
        loop {
            let chosen: Vec<usize> = pick.iter().map(|&i| later[i]).collect();
            need[v] = 0;
            for &w in &chosen {
                need[w] -= 1;
                adj[v].push(w);
                adj[w].push(v);
            }
            go(v + 1, need, adj, out);
            for &w in &chosen {
                need[w] += 1;
                adj[v].pop();
                adj[w].pop();
            }
            need[v] = k;
            // next combination
            let mut i = k;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if pick[i] < later.len() - k + i {
                    pick[i] += 1;
                    for j in i + 1..k {
                        pick[j] = pick[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    let n = degrees.len();
    let mut out = Vec::new();
    go(0, &mut degrees.to_vec(), &mut vec![Vec::new(); n], &mut out);
    out
}

fn connected(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Faces of the embedding given by a rotation system (cyclic neighbour order per
/// vertex). Gives up and returns `None` once more than `limit` faces appear.
fn trace_faces(rotation: &[Vec<usize>], limit: usize) -> Option<Vec<Vec<usize>>> {
    let n = rotation.len();
    // successor[b * n + a]: the neighbour after a in the rotation at b
    let mut successor = vec![usize::MAX; n * n];
    for (b, rot) in rotation.iter().enumerate() {
        for (i, &a) in rot.iter().enumerate() {
            successor[b * n + a] = rot[(i + 1) % rot.len()];
        }
    }
    let mut used = vec![false; n * n];
    let mut faces = Vec::new();
    for u in 0..n {
        for &v in &rotation[u] {
            if used[u * n + v] {
                continue;
            }
            if faces.len() == limit {
                return None;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = (u, v);
            while !used[a * n + b] {
                used[a * n + b] = true;
                face.push(a);
                let next = successor[b * n + a];
                a = b;
                b = next;
            }
            faces.push(face);
        }
    }
    Some(faces)
}

/// Sphere complexes on one labeled graph, one per rotation system with `cells`
/// faces. Reversing every rotation mirrors the complex without changing its
/// canonical code, so only one cyclic order is tried at the first vertex.
fn embeddings(adj: &[Vec<usize>], cells: usize) -> Vec<FanComplex> {
    let choices: Vec<Vec<Vec<usize>>> = adj
        .iter()
        .enumerate()
        .map(|(v, nb)| {
            permutations(&nb[1..])
                .into_iter()
                .filter(|p| v > 0 || p.first() < p.last())
                .map(|mut p| {
                    p.insert(0, nb[0]);
                    p
                })
                .collect()
        })
        .collect();
    let mut index = vec![0usize; adj.len()];
    let mut out = Vec::new();
    loop {
        let rotation: Vec<Vec<usize>> = index.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        if let Some(faces) = trace_faces(&rotation, cells) {
            if faces.len() == cells {
                let complex = FanComplex::new(adj.len(), faces);
                if validate(&complex).is_valid() {
                    out.push(complex);
                }
            }
        }
        // odometer
        let mut v = 0;
        loop {
            if v == adj.len() {
                return out;
            }
            index[v] += 1;
            if index[v] < choices[v].len() {
                break;
            }
            index[v] = 0;
            v += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub profile: Profile,
    pub canonical_code: CanonicalCode,
    pub jammed: bool,
    pub symmetric: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_tag: Option<CellType>,
}

/// All valid complexes with one profile, up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub profile: Profile,
    pub entries: Vec<CensusEntry>,
}

impl Census {
    pub fn codes(&self) -> Vec<&CanonicalCode> {
        self.entries.iter().map(|e| &e.canonical_code).collect()
    }

    pub fn jammed(&self) -> Vec<&CensusEntry> {
        self.entries.iter().filter(|e| e.jammed).collect()
    }
}

/// Exhaustive isomorph-free generation: every labeled graph with `a3` rays of
/// degree 3 and `a4` of degree 4, every rotation system on it, kept when the
/// traced faces form a valid complex with `c` cells.
pub fn generate(profile: Profile) -> Result<Census, EnumerateError> {
    if profile.rays() > MAX_RAYS {
        return Err(EnumerateError::TooManyRays { profile, rays: profile.rays() });
    }
    if !profile.edge_relation_holds() || !profile.euler_holds() {
        return Err(EnumerateError::Inconsistent(profile));
    }
    let degrees: Vec<usize> = (0..profile.rays()).map(|i| if i < profile.a3 { 3 } else { 4 }).collect();
    let graphs: Vec<_> = graphs_with_degrees(&degrees).into_iter().filter(|g| connected(g)).collect();
    let found: BTreeMap<CanonicalCode, ()> = graphs
        .par_iter()
        .flat_map_iter(|g| embeddings(g, profile.c as usize).into_iter().map(|f| (canonical_code(&f), ())))
        .collect();
    let known: Vec<(CanonicalCode, CellType)> =
        CellType::ALL.iter().map(|&t| (canonical_code(&crate::geom::witness(t).complex), t)).collect();
    let entries = found
        .into_keys()
        .map(|code| {
            let complex = code.to_complex();
            let jammed = is_jammed(&complex).is_ok();
            let symmetric = antipodal_involution(&complex).is_some();
            let type_tag = known.iter().find(|(k, _)| jammed && *k == code).map(|&(_, t)| t);
            CensusEntry { profile, canonical_code: code, jammed, symmetric, type_tag }
        })
        .collect();
    Ok(Census { profile, entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifiedType {
    pub type_tag: CellType,
    pub profile: Profile,
    pub canonical_code: CanonicalCode,
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub asymmetric_profiles: ProfileSolutionSet,
    pub symmetric_profiles: ProfileSolutionSet,
    pub censuses: Vec<Census>,
    pub types: Vec<ClassifiedType>,
}

impl Classification {
    pub fn asymmetric_count(&self) -> usize {
        self.types.iter().filter(|t| !t.symmetric).count()
    }

    pub fn symmetric_count(&self) -> usize {
        self.types.iter().filter(|t| t.symmetric).count()
    }
}

/// Solve both regimes, generate every profile, keep the jammed complexes and
/// name each by the cell polytope its system produces.
pub fn classify_jammed() -> Result<Classification, EnumerateError> {
    let asymmetric_profiles = solve_profiles(false);
    let symmetric_profiles = solve_profiles(true);
    let mut censuses = Vec::new();
    let mut types = Vec::new();
    for (set, symmetric) in [(&asymmetric_profiles, false), (&symmetric_profiles, true)] {
        for &p in &set.profiles {
            let mut census = generate(p)?;
            for entry in census.entries.iter_mut() {
                // the symmetric regime only admits complexes carrying an antipodal involution
                if !entry.jammed || entry.symmetric != symmetric {
                    continue;
                }
                let complex = entry.canonical_code.to_complex();
                let tag = cells::cell_report(&complex)?.type_tag;
                if tag.is_symmetric() != symmetric {
                    return Err(EnumerateError::Internal(format!("{tag} found in the wrong regime")));
                }
                let witness = crate::geom::witness(tag);
                if canonical_code(&witness.complex) != entry.canonical_code {
                    return Err(EnumerateError::Internal(format!("survivor {} has no matching witness", entry.canonical_code)));
                }
                if profile(&complex).ok() != Some(p) {
                    return Err(EnumerateError::Internal(format!("survivor {} has the wrong profile", entry.canonical_code)));
                }
                entry.type_tag = Some(tag);
                types.push(ClassifiedType { type_tag: tag, profile: p, canonical_code: entry.canonical_code.clone(), symmetric });
            }
            censuses.push(census);
        }
    }
    types.sort_by_key(|t| t.type_tag);
    let tags: BTreeSet<CellType> = types.iter().map(|t| t.type_tag).collect();
    if tags.len() != types.len() {
        return Err(EnumerateError::Internal("two survivors share a cell type".into()));
    }
    Ok(Classification { asymmetric_profiles, symmetric_profiles, censuses, types })
}

/// Whether a complete planar fan with `n` cones can be jammed. Two cones of the
/// cycle that are not neighbours meet only at the apex, so they must be swapped
/// by a central symmetry, which pairs cone `i` with cone `i + n/2`. Every
/// non-adjacent pair must be such a pair.
pub fn jammed_2d(n: usize) -> Result<bool, EnumerateError> {
    if n < 3 {
        return Err(EnumerateError::TooFewCones(n));
    }
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if !adjacent && !(n.is_multiple_of(2) && j == i + n / 2) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::examples::*;

    fn p(a3: u32, a4: u32, b: u32, c: u32) -> Profile {
        Profile { a3, a4, b, c }
    }

    #[test]
    fn asymmetric_profiles() {
        let s = solve_profiles(false);
        assert_eq!(s.profiles, BTreeSet::from([p(4, 0, 6, 4), p(4, 1, 8, 5), p(2, 3, 9, 6)]));
        for q in &s.profiles {
            assert!(reduced_relation_holds(q, false));
        }
        assert!(solve_profiles_for_cells(false, 7).is_empty());
        assert!(solve_profiles_for_cells(false, 3).is_empty());
    }

    #[test]
    fn symmetric_profiles() {
        let s = solve_profiles(true);
        assert_eq!(s.profiles, BTreeSet::from([p(0, 6, 12, 8), p(8, 0, 12, 6)]));
        for q in &s.profiles {
            assert!(reduced_relation_holds(q, true));
        }
        // the relation reprinted from the asymmetric case does not hold here
        assert!(!reduced_relation_holds(&p(8, 0, 12, 6), false));
    }

    #[test]
    fn forced_seven_cells_is_negative() {
        // a3 = 8(c - 2) - c(c - 1) at c = 7
        assert_eq!(8 * (7 - 2) - 7 * 6, -2);
    }

    #[test]
    fn degree_sequence_graphs() {
        assert_eq!(graphs_with_degrees(&[3, 3, 3, 3]).len(), 1);
        // labeled 3-regular graphs on 6 vertices: K_{3,3} (10) and the prism (60)
        assert_eq!(graphs_with_degrees(&[3; 6]).len(), 70);
    }

    #[test]
    fn tetrahedral_profile_has_one_complex() {
        let c = generate(p(4, 0, 6, 4)).unwrap();
        assert_eq!(c.entries.len(), 1);
        assert_eq!(c.entries[0].canonical_code, canonical_code(&tetrahedral()));
        assert!(c.entries[0].jammed);
    }

    #[test]
    fn examples_appear_in_their_census() {
        let oct = generate(p(0, 6, 12, 8)).unwrap();
        assert!(oct.codes().contains(&&canonical_code(&octants())));
        let prism = generate(p(2, 3, 9, 6)).unwrap();
        assert!(prism.codes().contains(&&canonical_code(&triangular_bipyramid())));
        let cube = generate(p(8, 0, 12, 6)).unwrap();
        assert!(cube.codes().contains(&&canonical_code(&cube_faces())));
        let pyr = generate(p(4, 1, 8, 5)).unwrap();
        assert!(pyr.codes().contains(&&canonical_code(&square_pyramid())));
    }

    #[test]
    fn resource_guard() {
        assert!(matches!(generate(p(0, 9, 18, 11)), Err(EnumerateError::TooManyRays { rays: 9, .. })));
        assert!(matches!(generate(p(4, 0, 7, 4)), Err(EnumerateError::Inconsistent(_))));
    }

    /// Independent oracle: every set of four triangles on four rays, filtered
    /// by validity only.
    #[test]
    fn brute_force_four_rays() {
        let triangles: Vec<Vec<usize>> = (0..4).map(|skip| (0..4).filter(|&r| r != skip).collect()).collect();
        let mut codes = BTreeSet::new();
        for mask in 0u32..16 {
            let cells: Vec<Vec<usize>> = (0..4).filter(|i| mask & (1 << i) != 0).map(|i| triangles[i].clone()).collect();
            let f = FanComplex::new(4, cells);
            if validate(&f).is_valid() {
                codes.insert(canonical_code(&f));
            }
        }
        let census: BTreeSet<CanonicalCode> = generate(p(4, 0, 6, 4)).unwrap().entries.into_iter().map(|e| e.canonical_code).collect();
        assert_eq!(codes, census);
    }

    /// Independent oracle on five rays: all sets of simple cycles on 5 labels
    /// with the (4,1,8,5) profile.
    #[test]
    fn brute_force_five_rays() {
        fn cycles(n: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            for mask in 0u32..(1 << n) {
                let set: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                if set.len() < 3 {
                    continue;
                }
                // cycles through the set up to rotation and reflection: fix the first element
                for perm in permutations(&set[1..]) {
                    if perm[0] < *perm.last().expect("len >= 2") {
                        let mut c = vec![set[0]];
                        c.extend(perm);
                        out.push(c);
                    }
                }
            }
            out
        }
        let all = cycles(5);
        let mut codes = BTreeSet::new();
        let target = p(4, 1, 8, 5);
        let k = all.len();
        for a in 0..k {
            for b in a + 1..k {
                for c in b + 1..k {
                    for d in c + 1..k {
                        for e in d + 1..k {
                            let cells: Vec<Vec<usize>> = [a, b, c, d, e].iter().map(|&i| all[i].clone()).collect();
                            let total: usize = cells.iter().map(Vec::len).sum();
                            if total != 16 {
                                continue;
                            }
                            let f = FanComplex::new(5, cells);
                            if validate(&f).is_valid() && profile(&f).ok() == Some(target) {
                                codes.insert(canonical_code(&f));
                            }
                        }
                    }
                }
            }
        }
        let census: BTreeSet<CanonicalCode> = generate(target).unwrap().entries.into_iter().map(|e| e.canonical_code).collect();
        assert_eq!(codes, census);
    }

    #[test]
    fn classification() {
        let cls = classify_jammed().unwrap();
        assert_eq!(cls.types.len(), 5);
        assert_eq!(cls.asymmetric_count(), 3);
        assert_eq!(cls.symmetric_count(), 2);
        let tags: Vec<CellType> = cls.types.iter().map(|t| t.type_tag).collect();
        assert_eq!(tags, CellType::ALL.to_vec());
        for t in &cls.types {
            let set = if t.symmetric { &cls.symmetric_profiles } else { &cls.asymmetric_profiles };
            assert!(set.profiles.contains(&t.profile));
        }
        assert_eq!(cls, classify_jammed().unwrap());
    }

    #[test]
    fn planar_fans() {
        for n in 3..=12 {
            assert_eq!(jammed_2d(n).unwrap(), n <= 4, "n = {n}");
        }
        assert!(matches!(jammed_2d(2), Err(EnumerateError::TooFewCones(2))));
    }
}
