//! Combinatorial jammedness test.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::canon::{antipodal_involutions, AntipodalInvolution};
use super::{edge, link, validate, Edge, FanComplex, LinkCycle, Violation};

/// How one pair of distinct maximal cones meets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PairKind {
    /// (i) the cones share a 2-cone.
    SharedEdge(Edge),
    /// (ii) the cones meet in a valence-4 ray and are opposite in its link.
    OppositeAtRay(usize),
    /// (iii) the cones meet only at the apex and are swapped by the involution.
    Antipodal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCase {
    pub cells: (usize, usize),
    pub kind: PairKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JammedCertificate {
    pub pairs: Vec<PairCase>,
    /// Present only when some pair of cells is disjoint.
    pub involution: Option<AntipodalInvolution>,
}

impl JammedCertificate {
    fn count(&self, f: impl Fn(&PairKind) -> bool) -> usize {
        self.pairs.iter().filter(|p| f(&p.kind)).count()
    }

    pub fn edge_pairs(&self) -> usize {
        self.count(|k| matches!(k, PairKind::SharedEdge(_)))
    }

    pub fn ray_pairs(&self) -> usize {
        self.count(|k| matches!(k, PairKind::OppositeAtRay(_)))
    }

    pub fn antipodal_pairs(&self) -> usize {
        self.count(|k| matches!(k, PairKind::Antipodal))
    }

    pub fn is_symmetric(&self) -> bool {
        self.involution.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RejectionWitness {
    Invalid(Vec<Violation>),
    Valence { ray: usize, valence: usize },
    NotOpposite { cells: (usize, usize), ray: usize },
    DisjointWithoutSymmetry { cells: (usize, usize) },
}

impl fmt::Display for RejectionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectionWitness::Invalid(v) => write!(f, "invalid complex ({} violations)", v.len()),
            RejectionWitness::Valence { ray, valence } => write!(f, "ray {ray} has valence {valence}"),
            RejectionWitness::NotOpposite { cells, ray } => write!(
                f,
                "cells {} and {} meet only in ray {ray} without being opposite in its link",
                cells.0, cells.1
            ),
            RejectionWitness::DisjointWithoutSymmetry { cells } => write!(
                f,
                "cells {} and {} are disjoint but no central symmetry swaps them",
                cells.0, cells.1
            ),
        }
    }
}

/// Accepts exactly the jammed complexes: all valences 3 or 4, and every pair of
/// distinct cells meets in an edge, in a valence-4 ray where they are opposite,
/// or not at all with an antipodal involution pairing precisely the disjoint pairs.
pub fn is_jammed(complex: &FanComplex) -> Result<JammedCertificate, RejectionWitness> {
    let report = validate(complex);
    if !report.is_valid() {
        return Err(RejectionWitness::Invalid(report.violations));
    }
    let valences = complex.valences();
    if let Some((ray, &valence)) = valences.iter().enumerate().find(|(_, &v)| v != 3 && v != 4) {
        return Err(RejectionWitness::Valence { ray, valence });
    }
    let links: Vec<LinkCycle> = (0..complex.ray_count())
        .map(|r| link(complex, r).expect("validated"))
        .collect();
    let sets: Vec<BTreeSet<usize>> = complex.cells().iter().map(|c| c.iter().copied().collect()).collect();

    let mut pairs = Vec::new();
    let mut disjoint = Vec::new();
    for a in 0..complex.cell_count() {
        for b in a + 1..complex.cell_count() {
            let shared: Vec<usize> = sets[a].intersection(&sets[b]).copied().collect();
            let kind = match shared.as_slice() {
                [u, v] => PairKind::SharedEdge(edge(*u, *v)),
                [r] => {
                    if !links[*r].are_opposite(a, b) {
                        return Err(RejectionWitness::NotOpposite { cells: (a, b), ray: *r });
                    }
                    PairKind::OppositeAtRay(*r)
                }
                [] => {
                    disjoint.push((a, b));
                    PairKind::Antipodal
                }
                _ => unreachable!("validated: cells meet in at most an edge"),
            };
            pairs.push(PairCase { cells: (a, b), kind });
        }
    }

    let involution = if disjoint.is_empty() {
        None
    } else {
        let found = antipodal_involutions(complex)
            .into_iter()
            .find(|inv| inv.cell_pairs() == disjoint);
        match found {
            Some(inv) => Some(inv),
            None => return Err(RejectionWitness::DisjointWithoutSymmetry { cells: disjoint[0] }),
        }
    };
    Ok(JammedCertificate { pairs, involution })
}
