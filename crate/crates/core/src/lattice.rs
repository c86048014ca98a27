//! Lattices spanned by cell centres, difference bodies, the packing bound on
//! the affine index, and elimination of index-2 superlattices for the
//! tetrahedral cell.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cell_type::CellType;
use crate::cells::{self, hull3, volume, CellError, PointConfig, Polytope3};
use crate::geom::rational::{det3, format_rat, rat, ratio, solve3, Matrix3, Rat, Vec3};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("difference vectors have rank {0}, not 3")]
    RankDeficient(usize),
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error("no elimination witness for coset shift {0}")]
    NoWitness(Box<Vec3>),
    #[error("difference body is not centrally symmetric")]
    NotSymmetric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lattice3 {
    /// Basis rows in Hermite normal form.
    pub basis: [Vec3; 3],
}

impl Lattice3 {
    pub fn standard() -> Lattice3 {
        Lattice3 { basis: [0, 1, 2].map(Vec3::unit) }
    }

    pub fn covolume(&self) -> Rat {
        det3(&self.basis[0], &self.basis[1], &self.basis[2]).abs()
    }

    pub fn matrix(&self) -> Matrix3 {
        Matrix3::from_rows(self.basis.clone())
    }

    /// Coordinates of `v` in the basis.
    pub fn coordinates(&self, v: &Vec3) -> Vec3 {
        solve3(&self.matrix().transpose(), v).expect("basis is independent")
    }

    pub fn contains(&self, v: &Vec3) -> bool {
        self.coordinates(v).is_integral()
    }

    pub fn point(&self, coords: &Vec3) -> Vec3 {
        self.matrix().transpose().mul_vec(coords)
    }
}

/// Hermite normal form of integer row vectors; returns the nonzero rows.
fn hermite(mut rows: Vec<[BigInt; 3]>) -> Vec<[BigInt; 3]> {
    let mut out = Vec::new();
    for col in 0..3 {
        // gcd-reduce the column among remaining rows into one pivot row
        loop {
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).expect("nonempty");
            for &i in &nz {
                if i != p {
                    let q = rows[i][col].div_floor(&rows[p][col]);
                    let pr = rows[p].clone();
                    for (x, y) in rows[i].iter_mut().zip(pr.iter()) {
                        *x -= &q * y;
                    }
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| !rows[i][col].is_zero()) {
            let mut r = rows.remove(i);
            if r[col].is_negative() {
                for x in r.iter_mut() {
                    *x = -x.clone();
                }
            }
            out.push(r);
        }
    }
    // reduce entries above pivots into [0, pivot)
    for i in 0..out.len() {
        let col = (0..3).find(|&c| !out[i][c].is_zero()).expect("nonzero row");
        for j in 0..i {
            let q = out[j][col].div_floor(&out[i][col]);
            let pr = out[i].clone();
            for (x, y) in out[j].iter_mut().zip(pr.iter()) {
                *x -= &q * y;
            }
        }
    }
    out
}

/// Lattice generated by `x_m - x_0`.
pub fn span_lattice(points: &[Vec3]) -> Result<Lattice3, LatticeError> {
    let diffs: Vec<Vec3> = points.iter().skip(1).map(|p| p - &points[0]).collect();
    let denom = diffs
        .iter()
        .flat_map(|d| d.0.iter().map(|x| x.denom().clone()))
        .fold(BigInt::one(), |a, b| a.lcm(&b));
    let scale = Rat::from_integer(denom.clone());
    let rows: Vec<[BigInt; 3]> = diffs
        .iter()
        .map(|d| [0, 1, 2].map(|i| (&d[i] * &scale).to_integer()))
        .collect();
    let h = hermite(rows);
    if h.len() < 3 {
        return Err(LatticeError::RankDeficient(h.len()));
    }
    let inv = Rat::from_integer(denom).recip();
    let basis = [0, 1, 2].map(|i| Vec3(h[i].clone().map(|x| Rat::from_integer(x) * &inv)));
    Ok(Lattice3 { basis })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceBody {
    pub polytope: Polytope3,
}

impl DifferenceBody {
    pub fn volume(&self) -> Rat {
        volume(&self.polytope)
    }
}

pub fn difference_body(polytope: &Polytope3) -> Result<DifferenceBody, LatticeError> {
    let verts = polytope.vertex_points();
    let mut diffs: Vec<Vec3> = Vec::new();
    for a in &verts {
        for b in &verts {
            diffs.push(a - b);
        }
    }
    diffs.sort();
    diffs.dedup();
    let body = hull3(&PointConfig::new(diffs))?;
    let vs: std::collections::BTreeSet<Vec3> = body.vertex_points().into_iter().collect();
    if !vs.iter().all(|v| vs.contains(&-v)) {
        return Err(LatticeError::NotSymmetric);
    }
    Ok(DifferenceBody { polytope: body })
}

/// `8 covol(L) / vol(D - D)`: an upper bound for the index of the spanned
/// lattice in the affine lattice.
pub fn index_bound_for(config: &PointConfig) -> Result<Rat, LatticeError> {
    let lattice = span_lattice(&config.points)?;
    let body = difference_body(&hull3(config)?)?;
    Ok(rat(8) * lattice.covolume() / body.volume())
}

/// Canonical point configuration of a cell type.
pub fn canonical_config(tag: CellType) -> Result<PointConfig, LatticeError> {
    let complex = crate::geom::witness(tag).complex;
    Ok(cells::solve_cell(&cells::derive_equations(&complex)?)?)
}

pub fn index_bound(tag: CellType) -> Result<Rat, LatticeError> {
    index_bound_for(&canonical_config(tag)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Superlattice {
    pub base: Lattice3,
    pub coset_shift: Vec3,
}

impl Superlattice {
    pub fn contains(&self, v: &Vec3) -> bool {
        self.base.contains(v) || self.base.contains(&(v - &self.coset_shift))
    }
}

/// The seven lattices containing `base` with index 2: shifts `(e1 b1 + e2 b2 + e3 b3) / 2`.
pub fn halflattice_candidates(base: &Lattice3) -> Vec<Superlattice> {
    (1..8u32)
        .map(|mask| {
            let coords = Vec3::new(
                ratio((mask & 1) as i64, 2),
                ratio(((mask >> 1) & 1) as i64, 2),
                ratio(((mask >> 2) & 1) as i64, 2),
            );
            Superlattice { base: base.clone(), coset_shift: base.point(&coords) }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminationWitness {
    pub shift: Vec3,
    /// Endpoints of an edge of `T = -conv(config)`.
    pub edge: [Vec3; 2],
    pub midpoint: Vec3,
    /// A point of the candidate outside the base with `midpoint - s` in `T`.
    pub s: Vec3,
}

impl EliminationWitness {
    /// Re-check against the facet inequalities of `T`.
    pub fn verify(&self, candidate: &Superlattice, t: &Polytope3) -> bool {
        let mid = (&self.edge[0] + &self.edge[1]).scale(&ratio(1, 2));
        mid == self.midpoint
            && candidate.contains(&self.s)
            && !candidate.base.contains(&self.s)
            && t.contains(&(&self.midpoint - &self.s))
    }
}

/// `T = -conv(config)`.
pub fn negated_hull(config: &PointConfig) -> Result<Polytope3, LatticeError> {
    Ok(hull3(&PointConfig::new(config.points.iter().map(|p| -p).collect()))?)
}

fn box_offsets(radius: i64) -> Vec<[i64; 3]> {
    let mut v = Vec::new();
    for x in -radius..=radius {
        for y in -radius..=radius {
            for z in -radius..=radius {
                v.push([x, y, z]);
            }
        }
    }
    v.sort_by_key(|z| (z.iter().map(|c| c.abs()).max().unwrap_or(0), *z));
    v
}

/// Find an edge midpoint `m` of `T` and a point `s` of the candidate's new coset
/// with `m - s` in `T`: then `m` lies in both `T` and `T + s`.
pub fn eliminate_candidate(candidate: &Superlattice, config: &PointConfig) -> Result<EliminationWitness, LatticeError> {
    let t = negated_hull(config)?;
    let offsets = box_offsets(2);
    for &[a, b] in &t.edges {
        let edge = [t.points[a].clone(), t.points[b].clone()];
        let midpoint = (&edge[0] + &edge[1]).scale(&ratio(1, 2));
        for z in &offsets {
            let s = &candidate.coset_shift + &candidate.base.point(&Vec3::from_ints(z[0], z[1], z[2]));
            if t.contains(&(&midpoint - &s)) {
                let w = EliminationWitness { shift: candidate.coset_shift.clone(), edge, midpoint, s };
                debug_assert!(w.verify(candidate, &t));
                return Ok(w);
            }
        }
    }
    Err(LatticeError::NoWitness(Box::new(candidate.coset_shift.clone())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeIndex {
    pub type_tag: CellType,
    #[serde(serialize_with = "ser_rat")]
    pub bound: Rat,
    /// Largest index allowed by the bound alone.
    pub bound_index: u32,
    pub index: u32,
    pub method: &'static str,
    pub eliminations: Vec<EliminationWitness>,
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rat(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexVerdict {
    pub types: Vec<TypeIndex>,
    pub all_index_one: bool,
    /// The bound rests on the packing of translated difference bodies; that premise is not re-derived here.
    pub premise: &'static str,
}

/// Index of the spanned lattice in the affine lattice for each cell type.
pub fn index_verdict() -> Result<IndexVerdict, LatticeError> {
    let mut types = Vec::new();
    for tag in CellType::ALL {
        let config = canonical_config(tag)?;
        let bound = index_bound_for(&config)?;
        let bound_index = bound.floor().to_integer().try_into().unwrap_or(u32::MAX);
        let (index, method, eliminations) = if bound < rat(2) {
            (1, "bound below 2", Vec::new())
        } else if bound < rat(3) {
            let base = span_lattice(&config.points)?;
            let witnesses = halflattice_candidates(&base)
                .par_iter()
                .map(|c| eliminate_candidate(c, &config))
                .collect::<Result<Vec<_>, _>>()?;
            (1, "bound below 3 and all index-2 candidates eliminated", witnesses)
        } else {
            return Err(LatticeError::Cell(CellError::Inconsistent(format!("index bound {bound} for {tag} is too weak"))));
        };
        types.push(TypeIndex { type_tag: tag, bound, bound_index, index, method, eliminations });
    }
    let all_index_one = types.iter().all(|t| t.index == 1);
    Ok(IndexVerdict {
        types,
        all_index_one,
        premise: "interiors of translates of the difference body by the affine lattice do not overlap",
    })
}
