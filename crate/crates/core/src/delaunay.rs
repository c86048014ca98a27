//! Voronoi and Delaunay structure of rank-3 lattices, in lattice coordinates
//! with the Gram matrix as metric, and the checks run on the resulting tiling.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cell_type::CellType;
use crate::cells::{check_duality, hull3, recognize, volume, CellError, PointConfig};
use crate::fan::canonical_code;
use crate::geom::fan::angle_cmp;
use crate::geom::rational::{ceil_sqrt, format_rat, quotient_functionals, rat, ratio, solve3, RatInput};
use crate::geom::{is_jammed_geometric, witness, GeomError, GeometricFan, Matrix3, Rat, Vec3};
use crate::lattice::span_lattice;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DelaunayError {
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("cell with {points} points around {center} matches none of the five types: {reason}")]
    Unclassifiable { center: Box<Vec3>, points: usize, reason: String },
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("invalid Gram input: {0}")]
    Input(String),
}

/// Positive definite symmetric form on lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix(Matrix3);

impl GramMatrix {
    pub fn new(m: Matrix3) -> Result<Self, DelaunayError> {
        if !m.is_symmetric() {
            return Err(DelaunayError::NotSymmetric);
        }
        if !m.is_positive_definite() {
            return Err(DelaunayError::NotPositiveDefinite);
        }
        Ok(GramMatrix(m))
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Result<Self, DelaunayError> {
        GramMatrix::new(Matrix3::from_ints(rows))
    }

    pub fn identity() -> Self {
        GramMatrix(Matrix3::identity())
    }

    pub fn fcc() -> Self {
        GramMatrix(Matrix3::from_ints([[2, 1, 1], [1, 2, 1], [1, 1, 2]]))
    }

    pub fn bcc() -> Self {
        GramMatrix(Matrix3::from_ints([[3, -1, -1], [-1, 3, -1], [-1, -1, 3]]))
    }

    pub fn hexagonal_prism() -> Self {
        GramMatrix(Matrix3::from_ints([[2, 1, 0], [1, 2, 0], [0, 0, 1]]))
    }

    pub fn matrix(&self) -> &Matrix3 {
        &self.0
    }

    pub fn form(&self, v: &Vec3) -> Rat {
        self.0.form(v)
    }

    /// `U^T G U`: the same lattice in another basis.
    pub fn conjugate(&self, u: &Matrix3) -> Result<Self, DelaunayError> {
        GramMatrix::new(u.transpose().mul(&self.0).mul(u))
    }

    fn inverse_diagonal(&self) -> [Rat; 3] {
        let inv = self.0.inverse().expect("positive definite");
        [0, 1, 2].map(|i| inv.entry(i, i).clone())
    }
}

impl Serialize for GramMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0 .0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GramMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<Vec<RatInput>>::deserialize(d)?;
        if raw.len() != 3 || raw.iter().any(|r| r.len() != 3) {
            return Err(serde::de::Error::custom("Gram matrix must be 3x3"));
        }
        let mut rows = Vec::new();
        for r in raw {
            let v: Vec<Rat> = r
                .into_iter()
                .map(RatInput::into_rat)
                .collect::<Result<_, _>>()
                .map_err(serde::de::Error::custom)?;
            rows.push(Vec3(v.try_into().expect("three entries")));
        }
        let m = Matrix3(rows.try_into().expect("three rows"));
        GramMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.0 .0.iter().map(|r| r.to_string()).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

fn floor_i64(r: &Rat) -> i64 {
    r.floor().to_integer().to_i64().expect("coordinates fit in i64")
}

fn ceil_i64(r: &Rat) -> i64 {
    r.ceil().to_integer().to_i64().expect("coordinates fit in i64")
}

/// Every integer point `u` with `q(u - center) <= radius_sq`, plus possibly a few more:
/// `|u_i - center_i| <= sqrt(radius_sq * (G^-1)_ii)` holds for all of them.
fn lattice_box(gram: &GramMatrix, center: &Vec3, radius_sq: &Rat) -> Vec<Vec3> {
    let diag = gram.inverse_diagonal();
    let ranges: Vec<(i64, i64)> = (0..3)
        .map(|i| {
            let s: BigInt = ceil_sqrt(&(radius_sq * &diag[i]));
            let s = Rat::from_integer(s);
            (floor_i64(&(&center[i] - &s)), ceil_i64(&(&center[i] + &s)))
        })
        .collect();
    let mut out = Vec::new();
    for x in ranges[0].0..=ranges[0].1 {
        for y in ranges[1].0..=ranges[1].1 {
            for z in ranges[2].0..=ranges[2].1 {
                out.push(Vec3::from_ints(x, y, z));
            }
        }
    }
    out
}

/// Voronoi-relevant vectors: `v` is relevant iff `v` and `-v` are the only
/// minima of the form on the coset `v + 2 Z^3`.
pub fn relevant_vectors(gram: &GramMatrix) -> Vec<Vec3> {
    let mut out = Vec::new();
    for mask in 1..8i64 {
        let parity = Vec3::from_ints(mask & 1, (mask >> 1) & 1, (mask >> 2) & 1);
        let bound = gram.form(&parity);
        let mut best: Option<Rat> = None;
        let mut minima = Vec::new();
        for v in lattice_box(gram, &Vec3::zero(), &bound) {
            let in_coset = (0..3).all(|i| (&v[i] - &parity[i]).to_integer().is_even());
            if !in_coset {
                continue;
            }
            let q = gram.form(&v);
            match &best {
                Some(b) if q > *b => {}
                Some(b) if q == *b => minima.push(v),
                _ => {
                    best = Some(q);
                    minima = vec![v];
                }
            }
        }
        if minima.len() == 2 {
            out.extend(minima);
        }
    }
    out.sort();
    out
}

/// Vertices of the Voronoi cell of the origin: `2 x^T G v <= q(v)` for relevant `v`.
pub fn voronoi_cell_vertices(gram: &GramMatrix, relevant: &[Vec3]) -> Vec<Vec3> {
    let normals: Vec<(Vec3, Rat)> = relevant
        .iter()
        .map(|v| (gram.matrix().mul_vec(v), gram.form(v) * ratio(1, 2)))
        .collect();
    let k = normals.len();
    let triples: Vec<(usize, usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).flat_map(move |j| (j + 1..k).map(move |l| (i, j, l))))
        .collect();
    let found: BTreeSet<Vec3> = triples
        .par_iter()
        .filter_map(|&(i, j, l)| {
            let m = Matrix3::from_rows([normals[i].0.clone(), normals[j].0.clone(), normals[l].0.clone()]);
            let rhs = Vec3::new(normals[i].1.clone(), normals[j].1.clone(), normals[l].1.clone());
            let x = solve3(&m, &rhs)?;
            normals.iter().all(|(n, b)| n.dot(&x) <= *b).then_some(x)
        })
        .collect();
    found.into_iter().collect()
}

/// Lattice points nearest to `x` under the form.
pub fn nearest_points(gram: &GramMatrix, x: &Vec3) -> Vec<Vec3> {
    let mut best: Option<Rat> = None;
    let mut pts = Vec::new();
    for u in lattice_box(gram, x, &gram.form(x)) {
        let q = gram.form(&(x - &u));
        match &best {
            Some(b) if q > *b => {}
            Some(b) if q == *b => pts.push(u),
            _ => {
                best = Some(q);
                pts = vec![u];
            }
        }
    }
    pts.sort();
    pts
}

/// Lattice points nearest to a vertex of the Voronoi tiling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DelaunayCell {
    pub center: Vec3,
    pub points: Vec<Vec3>,
    /// Translation classes of cells merged into this entry (1, or 2 when the
    /// cell and its point reflection are not translates).
    pub translation_classes: usize,
}

fn translation_key(points: &[Vec3]) -> Vec<Vec3> {
    let min = points.iter().min().expect("nonempty").clone();
    let mut k: Vec<Vec3> = points.iter().map(|p| p - &min).collect();
    k.sort();
    k
}

/// Delaunay cells up to translation and point reflection.
pub fn delaunay_cells(gram: &GramMatrix) -> Vec<DelaunayCell> {
    let relevant = relevant_vectors(gram);
    let vertices = voronoi_cell_vertices(gram, &relevant);
    let cells: Vec<(Vec3, Vec<Vec3>)> = vertices
        .par_iter()
        .map(|x| (x.clone(), nearest_points(gram, x)))
        .collect();
    // every translation class with k points shows up at k vertices of the origin's cell
    let mut seen: BTreeMap<Vec<Vec3>, (usize, Vec3, Vec<Vec3>)> = BTreeMap::new();
    for (x, pts) in &cells {
        let key = translation_key(pts);
        seen.entry(key).or_insert_with(|| (0, x.clone(), pts.clone())).0 += 1;
    }
    let mut groups: BTreeMap<Vec<Vec3>, DelaunayCell> = BTreeMap::new();
    for (key, (count, x, pts)) in seen {
        let classes = count / pts.len();
        let reflected: Vec<Vec3> = key.iter().map(|p| -p).collect();
        let group = key.clone().min(translation_key(&reflected));
        let min = pts.iter().min().expect("nonempty").clone();
        let entry = groups.entry(group).or_insert_with(|| DelaunayCell {
            center: &x - &min,
            points: key.clone(),
            translation_classes: 0,
        });
        entry.translation_classes += classes;
    }
    groups.into_values().collect()
}

/// The fan of the tiling at a Voronoi vertex: one cone per nearest point `u`,
/// `{d : d^T G (w - u) <= 0 for every other nearest point w}`. Cell `i` of the
/// fan belongs to `cell.points[i]`.
pub fn tangent_fan(gram: &GramMatrix, cell: &DelaunayCell) -> GeometricFan {
    let pts = &cell.points;
    let mut per_point: Vec<Vec<Vec3>> = Vec::with_capacity(pts.len());
    for u in pts {
        let normals: Vec<Vec3> = pts.iter().filter(|w| *w != u).map(|w| gram.matrix().mul_vec(&(w - u))).collect();
        let mut rays = BTreeSet::new();
        for a in 0..normals.len() {
            for b in a + 1..normals.len() {
                let d = normals[a].cross(&normals[b]);
                if d.is_zero() {
                    continue;
                }
                for s in [d.clone(), -&d] {
                    if normals.iter().all(|n| n.dot(&s) <= Rat::zero()) {
                        rays.insert(s.primitive());
                    }
                }
            }
        }
        per_point.push(rays.into_iter().collect());
    }
    let all: BTreeSet<Vec3> = per_point.iter().flatten().cloned().collect();
    let rays: Vec<Vec3> = all.into_iter().collect();
    let index: BTreeMap<&Vec3, usize> = rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let cells = per_point
        .iter()
        .map(|cone| {
            let axis = cone.iter().fold(Vec3::zero(), |a, r| &a + r);
            let [f, g] = quotient_functionals(&axis);
            let mut order: Vec<(&Vec3, (Rat, Rat))> = cone.iter().map(|r| (r, (f.dot(r), g.dot(r)))).collect();
            order.sort_by(|a, b| angle_cmp(&a.1, &b.1));
            order.iter().map(|(r, _)| index[r]).collect()
        })
        .collect();
    GeometricFan::new(rays, cells)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifiedCell {
    pub cell: DelaunayCell,
    pub type_tag: CellType,
    pub duality_ok: bool,
    /// The points generate the whole lattice.
    pub lattice_ok: bool,
    pub affine_dimension: usize,
    #[serde(serialize_with = "ser_rat")]
    pub volume: Rat,
}

fn ser_rat<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rat(r))
}

/// Name a cell by its hull and by the fan of the tiling around its centre, and
/// check duality and the lattice it spans.
pub fn classify_cell(cell: &DelaunayCell, gram: &GramMatrix) -> Result<ClassifiedCell, DelaunayError> {
    let unclassifiable = |reason: String| DelaunayError::Unclassifiable {
        center: Box::new(cell.center.clone()),
        points: cell.points.len(),
        reason,
    };
    let config = PointConfig::new(cell.points.clone());
    let polytope = hull3(&config).map_err(|e| unclassifiable(e.to_string()))?;
    let type_tag = recognize(&polytope).map_err(|e| unclassifiable(e.to_string()))?;
    let fan = tangent_fan(gram, cell);
    if canonical_code(&fan.complex) != canonical_code(&witness(type_tag).complex) {
        return Err(unclassifiable(format!("hull looks like a {type_tag} but the fan does not")));
    }
    let duality_ok = check_duality(&fan.complex, &config)?.holds;
    let lattice_ok = span_lattice(&cell.points).map(|l| l.covolume().is_one()).unwrap_or(false);
    Ok(ClassifiedCell {
        cell: cell.clone(),
        type_tag,
        duality_ok,
        lattice_ok,
        affine_dimension: config.affine_dimension(),
        volume: volume(&polytope),
    })
}

/// Every vertex fan of the tiling is complete and jammed.
pub fn verify_prop1(gram: &GramMatrix) -> Result<bool, DelaunayError> {
    for cell in delaunay_cells(gram) {
        if !is_jammed_geometric(&tangent_fan(gram, &cell))?.jammed {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For every tetrahedral cell with centre `x` and every point `c` of it, each
/// edge midpoint of `-D + x + c` lies strictly inside the Voronoi cell of `c`;
/// by translation this is `x - (p + q)/2` strictly inside the cell of the origin.
pub fn verify_midpoint_interior(gram: &GramMatrix) -> bool {
    let relevant = relevant_vectors(gram);
    let inside = |y: &Vec3| relevant.iter().all(|v| rat(2) * gram.matrix().bilinear(y, v) < gram.form(v));
    delaunay_cells(gram)
        .iter()
        .filter(|c| c.points.len() == 4)
        .all(|cell| {
            let p = &cell.points;
            cell.points.iter().all(|c| {
                (0..4).all(|i| {
                    (i + 1..4).all(|j| {
                        let mid = (&p[i] + &p[j]).scale(&ratio(1, 2));
                        let m = &(&cell.center + c) - &mid;
                        inside(&(&m - c))
                    })
                })
            })
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    pub gram: GramMatrix,
    pub relevant_vectors: usize,
    pub voronoi_vertices: usize,
    pub cells: Vec<ClassifiedCell>,
    pub type_counts: BTreeMap<CellType, usize>,
    pub prop1: bool,
    pub midpoint_interior: bool,
    /// Sum of translation classes times coordinate volume; must equal 1.
    #[serde(serialize_with = "ser_rat")]
    pub volume_sum: Rat,
    pub partition_ok: bool,
    pub passed: bool,
    #[serde(skip)]
    pub runtime_ms: u128,
}

/// Full harness on one lattice.
pub fn analyze(gram: &GramMatrix) -> Result<LatticeReport, DelaunayError> {
    let start = Instant::now();
    let relevant = relevant_vectors(gram);
    let voronoi_vertices = voronoi_cell_vertices(gram, &relevant).len();
    let cells: Vec<ClassifiedCell> = delaunay_cells(gram)
        .par_iter()
        .map(|c| classify_cell(c, gram))
        .collect::<Result<_, _>>()?;
    let mut type_counts = BTreeMap::new();
    for c in &cells {
        *type_counts.entry(c.type_tag).or_insert(0) += 1;
    }
    let prop1 = verify_prop1(gram)?;
    let midpoint_interior = verify_midpoint_interior(gram);
    let volume_sum = cells
        .iter()
        .fold(Rat::zero(), |acc, c| acc + rat(c.cell.translation_classes as i64) * &c.volume);
    let partition_ok = volume_sum.is_one();
    let passed = prop1
        && midpoint_interior
        && partition_ok
        && cells.iter().all(|c| c.duality_ok && c.lattice_ok && c.affine_dimension == 3);
    Ok(LatticeReport {
        gram: gram.clone(),
        relevant_vectors: relevant.len(),
        voronoi_vertices,
        cells,
        type_counts,
        prop1,
        midpoint_interior,
        volume_sum,
        partition_ok,
        passed,
        runtime_ms: start.elapsed().as_millis(),
    })
}

/// A named Gram matrix, as stored in survey input files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedGram {
    pub name: String,
    pub gram: GramMatrix,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GramListEntry {
    Named(NamedGram),
    Bare(GramMatrix),
}

/// Parse a survey file: a JSON list of Gram matrices or of `{name, gram}` objects.
pub fn parse_gram_list(text: &str) -> Result<Vec<NamedGram>, DelaunayError> {
    let raw: Vec<serde_json::Value> = serde_json::from_str(text).map_err(|e| DelaunayError::Input(e.to_string()))?;
    raw.into_iter()
        .enumerate()
        .map(|(i, v)| match serde_json::from_value::<GramListEntry>(v.clone()) {
            Ok(GramListEntry::Named(n)) => Ok(n),
            Ok(GramListEntry::Bare(g)) => Ok(NamedGram { name: format!("gram-{i}"), gram: g }),
            Err(_) => {
                // re-parse the likely intended shape for a precise message
                let err = match v.get("gram") {
                    Some(g) => serde_json::from_value::<GramMatrix>(g.clone()).err(),
                    None => serde_json::from_value::<GramMatrix>(v).err(),
                };
                Err(DelaunayError::Input(format!(
                    "entry {i}: {}",
                    err.map_or("unrecognized entry".to_string(), |e| e.to_string())
                )))
            }
        })
        .collect()
}

/// Parse a single Gram matrix file.
pub fn parse_gram(text: &str) -> Result<GramMatrix, DelaunayError> {
    serde_json::from_str(text).map_err(|e| DelaunayError::Input(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyEntry {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<LatticeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub entries: Vec<SurveyEntry>,
    pub types_seen: BTreeSet<CellType>,
    pub passed: bool,
}

/// Run the harness on each lattice; a failing entry is recorded, not fatal.
pub fn survey(grams: &[NamedGram]) -> SurveyReport {
    let entries: Vec<SurveyEntry> = grams
        .par_iter()
        .map(|g| match analyze(&g.gram) {
            Ok(r) => SurveyEntry { name: g.name.clone(), report: Some(r), error: None },
            Err(e) => SurveyEntry { name: g.name.clone(), report: None, error: Some(e.to_string()) },
        })
        .collect();
    let types_seen = entries
        .iter()
        .filter_map(|e| e.report.as_ref())
        .flat_map(|r| r.type_counts.keys().copied())
        .collect();
    let passed = entries.iter().all(|e| e.report.as_ref().is_some_and(|r| r.passed));
    SurveyReport { entries, types_seen, passed }
}

/// Curated lattices shipped with the crate.
pub const CURATED_GRAMS: &str = include_str!("../data/curated_grams.json");

pub fn curated_grams() -> Vec<NamedGram> {
    parse_gram_list(CURATED_GRAMS).expect("bundled data parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn types(g: &GramMatrix) -> BTreeMap<CellType, usize> {
        analyze(g).unwrap().type_counts
    }

    #[test]
    fn rejects_bad_forms() {
        assert_eq!(GramMatrix::from_ints([[1, 2, 0], [2, 1, 0], [0, 0, 1]]), Err(DelaunayError::NotPositiveDefinite));
        assert_eq!(GramMatrix::from_ints([[1, 1, 0], [0, 1, 0], [0, 0, 1]]), Err(DelaunayError::NotSymmetric));
        assert!(parse_gram(r#"[["1","0","0"],["0","1/0","0"],["0","0","1"]]"#).is_err());
        assert_eq!(parse_gram(r#"[["2","1","1"],["1","2","1"],[1,1,2]]"#).unwrap(), GramMatrix::fcc());
    }

    #[test]
    fn relevant_vector_counts() {
        assert_eq!(relevant_vectors(&GramMatrix::identity()).len(), 6);
        assert_eq!(relevant_vectors(&GramMatrix::fcc()).len(), 12);
        assert_eq!(relevant_vectors(&GramMatrix::bcc()).len(), 14);
        assert_eq!(relevant_vectors(&GramMatrix::hexagonal_prism()).len(), 8);
        for g in [GramMatrix::identity(), GramMatrix::fcc(), GramMatrix::bcc()] {
            let r = relevant_vectors(&g);
            assert!(r.iter().all(|v| r.contains(&-v)));
        }
    }

    #[test]
    fn cubic_lattice() {
        let cells = delaunay_cells(&GramMatrix::identity());
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].points.len(), 8);
        assert_eq!(cells[0].center, Vec3::new(ratio(1, 2), ratio(1, 2), ratio(1, 2)));
        let r = analyze(&GramMatrix::identity()).unwrap();
        assert!(r.passed);
        assert_eq!(r.cells[0].type_tag, CellType::Parallelepiped);
        assert!(verify_midpoint_interior(&GramMatrix::identity()));
    }

    #[test]
    fn fcc_lattice() {
        let cells = delaunay_cells(&GramMatrix::fcc());
        let sizes: BTreeSet<usize> = cells.iter().map(|c| c.points.len()).collect();
        assert_eq!(sizes, BTreeSet::from([4, 6]));
        let r = analyze(&GramMatrix::fcc()).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.type_counts, BTreeMap::from([(CellType::Tetrahedron, 1), (CellType::Octahedron, 1)]));
        // two tetrahedra and one octahedron per fundamental domain
        let tet = r.cells.iter().find(|c| c.type_tag == CellType::Tetrahedron).unwrap();
        assert_eq!(tet.cell.translation_classes, 2);
    }

    #[test]
    fn bcc_lattice() {
        let r = analyze(&GramMatrix::bcc()).unwrap();
        assert!(r.passed);
        assert_eq!(r.type_counts.keys().copied().collect::<Vec<_>>(), vec![CellType::Tetrahedron]);
        assert!(verify_midpoint_interior(&GramMatrix::bcc()));
    }

    #[test]
    fn hexagonal_prism_lattice() {
        let cells = delaunay_cells(&GramMatrix::hexagonal_prism());
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].points.len(), 6);
        assert_eq!(types(&GramMatrix::hexagonal_prism()), BTreeMap::from([(CellType::TriangularPrism, 1)]));
    }

    #[test]
    fn curated_family_shows_all_types() {
        let s = survey(&curated_grams());
        assert!(s.passed);
        assert_eq!(s.types_seen, CellType::ALL.into_iter().collect());
    }

    #[test]
    fn survey_isolates_failures() {
        let good = NamedGram { name: "cubic".into(), gram: GramMatrix::identity() };
        let s = survey(&[good]);
        assert_eq!(s.types_seen, BTreeSet::from([CellType::Parallelepiped]));
        assert!(parse_gram_list(r#"[[[1,0,0],[0,1,0],[0,0,1]], {"name": "bad", "gram": [[1,2,0],[2,1,0],[0,0,1]]}]"#).is_err());
        let list = parse_gram_list(r#"[[[1,0,0],[0,1,0],[0,0,1]], {"name": "fcc", "gram": [[2,1,1],[1,2,1],[1,1,2]]}]"#).unwrap();
        assert_eq!(list[0].name, "gram-0");
        assert_eq!(list[1].name, "fcc");
    }

    fn unimodular(seed: u64) -> Matrix3 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut rows = Matrix3::identity().0;
        for _ in 0..4 {
            let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
            if i != j {
                rows[i] = &rows[i] + &rows[j].scale(&rat(rng.gen_range(-1..=1)));
            }
        }
        Matrix3(rows)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]
        #[test]
        fn classification_invariant_under_basis_change(seed in any::<u64>(), which in 0usize..4) {
            let g = [GramMatrix::identity(), GramMatrix::fcc(), GramMatrix::bcc(), GramMatrix::hexagonal_prism()][which].clone();
            let h = g.conjugate(&unimodular(seed)).unwrap();
            let r = analyze(&h).unwrap();
            prop_assert!(r.passed);
            prop_assert_eq!(r.type_counts, types(&g));
        }
    }
}
