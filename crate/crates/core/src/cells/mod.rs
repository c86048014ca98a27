//! Associated cells of jammed fans: the linear system on cell centres, its
//! canonical solution, exact hulls and the duality check between fan cones and
//! hull faces.

pub mod hull;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

pub use hull::{hull3, volume, Face, Facet, Polytope3};

use crate::cell_type::CellType;
use crate::fan::{is_jammed, FanComplex, RejectionWitness};
use crate::geom::rational::{affine_dimension, rat, Matrix3, Rat, Vec3};
use crate::lattice::span_lattice;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CellError {
    #[error("fan is not jammed: {0}")]
    NotJammed(RejectionWitness),
    #[error("points span an affine subspace of dimension {dimension}, not 3")]
    Degenerate { dimension: usize },
    #[error("cell system is inconsistent: {0}")]
    Inconsistent(String),
    #[error("hull has face counts {0:?}, which match none of the five cell types")]
    Unrecognized((usize, usize, usize)),
}

/// Labeled points `x_0, ..., x_n`; label `m` is the centre attached to cell `m` of the fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointConfig {
    pub points: Vec<Vec3>,
}

impl PointConfig {
    pub fn new(points: Vec<Vec3>) -> Self {
        PointConfig { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Translate so that `x_0` is the origin.
    pub fn anchored(&self) -> PointConfig {
        let base = self.points[0].clone();
        PointConfig::new(self.points.iter().map(|p| p - &base).collect())
    }

    pub fn transformed(&self, m: &Matrix3) -> PointConfig {
        PointConfig::new(self.points.iter().map(|p| m.mul_vec(p)).collect())
    }

    pub fn affine_dimension(&self) -> usize {
        affine_dimension(&self.points)
    }

    pub fn satisfies(&self, system: &EquationSystem) -> bool {
        system.quadruples.iter().all(|&[a, b, c, d]| {
            let p = &self.points;
            &p[a] + &p[b] == &p[c] + &p[d]
        })
    }
}

/// Quadruples `[m1, m2, m3, m4]` meaning `x_m1 + x_m2 = x_m3 + x_m4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationSystem {
    pub cell_count: usize,
    pub quadruples: Vec<[usize; 4]>,
    /// How many leading quadruples come from valence-4 rays; the rest come from the antipodal pairing.
    pub ray_quadruples: usize,
}

impl EquationSystem {
    /// Coefficient rows over the unknowns `x_1..x_n` (`x_0` is pinned to zero).
    fn rows(&self) -> Vec<Vec<Rat>> {
        let n = self.cell_count - 1;
        self.quadruples
            .iter()
            .map(|&[a, b, c, d]| {
                let mut row = vec![Rat::zero(); n];
                for (m, s) in [(a, 1), (b, 1), (c, -1), (d, -1)] {
                    if m > 0 {
                        row[m - 1] += rat(s);
                    }
                }
                row
            })
            .collect()
    }
}

pub fn derive_equations(complex: &FanComplex) -> Result<EquationSystem, CellError> {
    let cert = is_jammed(complex).map_err(CellError::NotJammed)?;
    let mut quadruples = Vec::new();
    for r in 0..complex.ray_count() {
        let l = crate::fan::link(complex, r).expect("jammed complexes are valid");
        if let [c0, c1, c2, c3] = l.cells_around[..] {
            quadruples.push([c0, c2, c1, c3]);
        }
    }
    let ray_quadruples = quadruples.len();
    if let Some(inv) = &cert.involution {
        let pairs = inv.cell_pairs();
        let (p, q) = pairs[0];
        for &(a, b) in &pairs[1..] {
            quadruples.push([p, q, a, b]);
        }
    }
    Ok(EquationSystem { cell_count: complex.cell_count(), quadruples, ray_quadruples })
}

/// Reduced row echelon form; returns the pivot column of each nonzero row.
fn rref(rows: &mut Vec<Vec<Rat>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &lead;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of the solution space of the scalar system, one vector per free unknown.
fn nullspace(system: &EquationSystem) -> Vec<Vec<Rat>> {
    let n = system.cell_count - 1;
    let mut rows = system.rows();
    let pivots = rref(&mut rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// For a triple of unknowns whose values determine the whole solution, the
/// coordinates of every `x_m` when those three are set to `e_1, e_2, e_3`.
fn instantiate_on(basis: &[Vec<Rat>], triple: [usize; 3]) -> Option<Vec<Vec3>> {
    let sub = Matrix3::from_rows([0, 1, 2].map(|j| Vec3::new(
        basis[0][triple[j]].clone(),
        basis[1][triple[j]].clone(),
        basis[2][triple[j]].clone(),
    )));
    // row j of `sub` gives unknown triple[j] in terms of the basis coefficients
    let inv = sub.inverse()?;
    let mut pts = vec![Vec3::zero()];
    for ((b0, b1), b2) in basis[0].iter().zip(&basis[1]).zip(&basis[2]) {
        let coeffs = Vec3::new(b0.clone(), b1.clone(), b2.clone());
        // x_m = coeffs . t where t solves sub . t = e_j per coordinate j
        pts.push(inv.transpose().mul_vec(&coeffs));
    }
    Some(pts)
}

/// Canonical solution: three unknowns are set to `e_1, e_2, e_3` in some order, the rest
/// follow. Among all admissible choices (integral, spanning Z^3 as a lattice),
/// the one with smallest coordinates wins, ties going to fewer negative entries,
/// then to the point set that is lexicographically least when coordinates are
/// read from the last axis (keeps bases in the first coordinate plane), and
/// finally to the lexicographically first triple.
pub fn solve_cell(system: &EquationSystem) -> Result<PointConfig, CellError> {
    let n = system.cell_count - 1;
    let basis = nullspace(system);
    if basis.len() != 3 {
        return Err(CellError::Inconsistent(format!(
            "solution space has {} free vectors, expected 3",
            basis.len()
        )));
    }
    type Key = (Rat, usize, Vec<Vec3>, [usize; 3]);
    let mut best: Option<(Key, Vec<Vec3>)> = None;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a == b || b == c || a == c {
                    continue;
                }
                let Some(pts) = instantiate_on(&basis, [a, b, c]) else { continue };
                if !pts.iter().all(Vec3::is_integral) {
                    continue;
                }
                match span_lattice(&pts) {
                    Ok(l) if l.covolume() == Rat::one() => {}
                    _ => continue,
                }
                let max = pts.iter().flat_map(|p| p.0.iter().map(|x| x.abs())).max().unwrap_or_default();
                let neg = pts.iter().flat_map(|p| p.0.iter()).filter(|x| x.is_negative()).count();
                let mut reversed: Vec<Vec3> = pts.iter().map(|p| Vec3([p[2].clone(), p[1].clone(), p[0].clone()])).collect();
                reversed.sort();
                let key = (max, neg, reversed, [a + 1, b + 1, c + 1]);
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, pts));
                }
            }
        }
    }
    let (_, pts) = best.ok_or_else(|| CellError::Inconsistent("no unimodular instantiation".into()))?;
    let config = PointConfig::new(pts);
    if !config.satisfies(system) {
        return Err(CellError::Inconsistent("solution fails substitution".into()));
    }
    let dim = config.affine_dimension();
    if dim != 3 {
        return Err(CellError::Degenerate { dimension: dim });
    }
    Ok(config)
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Matrix3 {
    let mut entry = || {
        let p: i64 = rng.gen_range(-9..=9);
        let q: i64 = rng.gen_range(1..=5);
        crate::geom::rational::ratio(p, q)
    };
    Matrix3::from_rows([0, 1, 2].map(|_| Vec3::new(entry(), entry(), entry())))
}

/// A random rational instantiation of the free vectors: the canonical solution
/// under a random nonsingular map plus a random translation. Draws that change
/// the hull's face counts are rerolled.
pub fn random_instantiation(system: &EquationSystem, seed: u64) -> Result<PointConfig, CellError> {
    let canonical = solve_cell(system)?;
    let reference = hull3(&canonical)?.f_vector();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m = random_matrix(&mut rng);
        if m.det().is_zero() {
            continue;
        }
        let config = canonical.transformed(&m);
        if !config.satisfies(system) {
            return Err(CellError::Inconsistent("linear image left the solution space".into()));
        }
        if hull3(&config)?.f_vector() == reference {
            return Ok(config);
        }
    }
}

/// A cone of the fan: the apex, a ray, a 2-cone or a maximal cone.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cone {
    Apex,
    Ray(usize),
    Edge(usize, usize),
    Cell(usize),
}

impl Cone {
    pub fn dim(&self) -> usize {
        match self {
            Cone::Apex => 0,
            Cone::Ray(_) => 1,
            Cone::Edge(..) => 2,
            Cone::Cell(_) => 3,
        }
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cone::Apex => write!(f, "apex"),
            Cone::Ray(r) => write!(f, "ray {r}"),
            Cone::Edge(u, v) => write!(f, "edge {u}-{v}"),
            Cone::Cell(c) => write!(f, "cell {c}"),
        }
    }
}

/// Every cone with its subcell: the labels of the maximal cones containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcellPoset {
    pub entries: Vec<(Cone, BTreeSet<usize>)>,
}

impl SubcellPoset {
    pub fn of(complex: &FanComplex) -> SubcellPoset {
        let mut entries = vec![(Cone::Apex, (0..complex.cell_count()).collect())];
        for r in 0..complex.ray_count() {
            entries.push((Cone::Ray(r), complex.cells_containing(r).into_iter().collect()));
        }
        for (u, v) in complex.edges() {
            entries.push((Cone::Edge(u, v), complex.cells_on_edge((u, v)).into_iter().collect()));
        }
        for c in 0..complex.cell_count() {
            entries.push((Cone::Cell(c), BTreeSet::from([c])));
        }
        SubcellPoset { entries }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub holds: bool,
    /// Cone name -> vertex labels of the matching hull face.
    pub cone_to_face: BTreeMap<String, Vec<usize>>,
    /// Cones whose subcell spans no face (condition 1).
    pub unmatched_cones: Vec<String>,
    /// Face vertex sets that are not subcells (condition 2).
    pub unmatched_faces: Vec<Vec<usize>>,
}

fn cone_key(c: &Cone) -> String {
    match c {
        Cone::Apex => "apex".into(),
        Cone::Ray(r) => format!("ray:{r}"),
        Cone::Edge(u, v) => format!("edge:{u}-{v}"),
        Cone::Cell(c) => format!("cell:{c:02}"),
    }
}

/// (1) every subcell spans a face of the hull, (2) every face's vertex set is a subcell.
pub fn check_duality(complex: &FanComplex, config: &PointConfig) -> Result<DualityReport, CellError> {
    let polytope = hull3(config)?;
    let faces = polytope.faces();
    let poset = SubcellPoset::of(complex);
    let mut cone_to_face = BTreeMap::new();
    let mut unmatched_cones = Vec::new();
    for (cone, sub) in &poset.entries {
        let hit = faces
            .iter()
            .find(|f| f.vertices.is_subset(sub) && sub.is_subset(&f.points) && f.dim + cone.dim() == 3);
        match hit {
            Some(f) => {
                cone_to_face.insert(cone_key(cone), f.vertices.iter().copied().collect());
            }
            None => unmatched_cones.push(cone_key(cone)),
        }
    }
    let subcells: BTreeSet<&BTreeSet<usize>> = poset.entries.iter().map(|(_, s)| s).collect();
    let unmatched_faces: Vec<Vec<usize>> = faces
        .iter()
        .filter(|f| !subcells.contains(&f.vertices))
        .map(|f| f.vertices.iter().copied().collect())
        .collect();
    let holds = unmatched_cones.is_empty() && unmatched_faces.is_empty();
    Ok(DualityReport { holds, cone_to_face, unmatched_cones, unmatched_faces })
}

/// Cell type read off the hull's face counts.
pub fn recognize(polytope: &Polytope3) -> Result<CellType, CellError> {
    let f = polytope.f_vector();
    CellType::from_f_vector(f).ok_or(CellError::Unrecognized(f))
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub type_tag: CellType,
    pub points: Vec<Vec3>,
    pub facets: Vec<Facet>,
    pub volume: String,
    pub duality: DualityReport,
}

/// Solve, hull and check a jammed complex end to end.
pub fn cell_report(complex: &FanComplex) -> Result<CellReport, CellError> {
    let system = derive_equations(complex)?;
    let config = solve_cell(&system)?;
    let polytope = hull3(&config)?;
    let type_tag = recognize(&polytope)?;
    let duality = check_duality(complex, &config)?;
    Ok(CellReport {
        type_tag,
        points: config.points,
        volume: crate::geom::rational::format_rat(&volume(&polytope)),
        facets: polytope.facets,
        duality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::examples::*;
    use crate::fan::{canonical_code, profile};

    fn pts(v: &[[i64; 3]]) -> Vec<Vec3> {
        v.iter().map(|p| Vec3::from_ints(p[0], p[1], p[2])).collect()
    }

    fn canonical(f: &FanComplex) -> FanComplex {
        canonical_code(f).to_complex()
    }

    fn point_set(c: &PointConfig) -> BTreeSet<Vec3> {
        c.points.iter().cloned().collect()
    }

    #[test]
    fn equation_counts() {
        assert!(derive_equations(&tetrahedral()).unwrap().quadruples.is_empty());
        let pyr = derive_equations(&square_pyramid()).unwrap();
        assert_eq!(pyr.quadruples.len(), 1);
        let par = derive_equations(&octants()).unwrap();
        assert_eq!((par.ray_quadruples, par.quadruples.len()), (6, 9));
        let oct = derive_equations(&cube_faces()).unwrap();
        assert_eq!((oct.ray_quadruples, oct.quadruples.len()), (0, 2));
        assert_eq!(derive_equations(&triangular_bipyramid()).unwrap().quadruples.len(), 3);
    }

    #[test]
    fn non_jammed_input_rejected() {
        assert!(matches!(derive_equations(&triangular_prism_faces()), Err(CellError::NotJammed(_))));
        assert!(matches!(derive_equations(&hexagonal_bipyramid()), Err(CellError::NotJammed(_))));
    }

    #[test]
    fn canonical_tetrahedron() {
        let c = solve_cell(&derive_equations(&tetrahedral()).unwrap()).unwrap();
        assert_eq!(point_set(&c), pts(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]).into_iter().collect());
    }

    #[test]
    fn canonical_parallelepiped_is_unit_cube() {
        let c = solve_cell(&derive_equations(&canonical(&octants())).unwrap()).unwrap();
        let cube: BTreeSet<Vec3> = (0..8).map(|i| Vec3::from_ints(i & 1, (i >> 1) & 1, (i >> 2) & 1)).collect();
        assert_eq!(point_set(&c), cube);
    }

    #[test]
    fn canonical_pyramid() {
        let sys = derive_equations(&canonical(&square_pyramid())).unwrap();
        let c = solve_cell(&sys).unwrap();
        let want: BTreeSet<Vec3> = pts(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]]).into_iter().collect();
        assert_eq!(point_set(&c), want);
        let [a, b, x, y] = sys.quadruples[0];
        assert_eq!(&c.points[a] + &c.points[b], &c.points[x] + &c.points[y]);
    }

    #[test]
    fn all_five_types_satisfy_duality() {
        let expected = [
            (tetrahedral(), CellType::Tetrahedron),
            (cube_faces(), CellType::Octahedron),
            (square_pyramid(), CellType::QuadrangularPyramid),
            (triangular_bipyramid(), CellType::TriangularPrism),
            (octants(), CellType::Parallelepiped),
        ];
        for (f, t) in expected {
            let f = canonical(&f);
            let report = cell_report(&f).unwrap();
            assert_eq!(report.type_tag, t);
            assert!(report.duality.holds, "{t}: {:?}", report.duality);
            let p = profile(&f).unwrap();
            let cones = 1 + p.rays() as usize + p.b as usize + p.c as usize;
            assert_eq!(report.duality.cone_to_face.len(), cones);
            let (v, e, fc) = t.f_vector();
            assert_eq!(cones, v + e + fc + 1);
        }
    }

    #[test]
    fn random_instantiations_keep_duality() {
        for f in [tetrahedral(), cube_faces(), square_pyramid(), triangular_bipyramid(), octants()] {
            let sys = derive_equations(&f).unwrap();
            for seed in 0..3 {
                let c = random_instantiation(&sys, seed).unwrap();
                assert!(c.satisfies(&sys));
                assert!(check_duality(&f, &c).unwrap().holds);
            }
        }
    }

    #[test]
    fn perturbed_parallelepiped_fails_second_condition() {
        let f = octants();
        let mut c = solve_cell(&derive_equations(&f).unwrap()).unwrap();
        let far = (0..c.len())
            .max_by_key(|&i| c.points[i].0.iter().filter(|x| x.is_positive()).count())
            .unwrap();
        c.points[far] = &c.points[far] + &Vec3::from_ints(1, 0, 0);
        let r = check_duality(&f, &c).unwrap();
        assert!(!r.holds);
        assert!(!r.unmatched_faces.is_empty());
    }

    #[test]
    fn flat_solution_is_degenerate() {
        let c = PointConfig::new(pts(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]));
        assert_eq!(check_duality(&tetrahedral(), &c), Err(CellError::Degenerate { dimension: 2 }));
    }
}
