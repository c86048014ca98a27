use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The five combinatorial types of associated cells of codimension-3 faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellType {
    Tetrahedron,
    Octahedron,
    QuadrangularPyramid,
    TriangularPrism,
    Parallelepiped,
}

impl CellType {
    pub const ALL: [CellType; 5] = [
        CellType::Tetrahedron,
        CellType::Octahedron,
        CellType::QuadrangularPyramid,
        CellType::TriangularPrism,
        CellType::Parallelepiped,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            CellType::Tetrahedron => "tetrahedron",
            CellType::Octahedron => "octahedron",
            CellType::QuadrangularPyramid => "quadrangular-pyramid",
            CellType::TriangularPrism => "triangular-prism",
            CellType::Parallelepiped => "parallelepiped",
        }
    }

    /// (vertices, edges, facets) of the cell polytope.
    pub fn f_vector(self) -> (usize, usize, usize) {
        match self {
            CellType::Tetrahedron => (4, 6, 4),
            CellType::Octahedron => (6, 12, 8),
            CellType::QuadrangularPyramid => (5, 8, 5),
            CellType::TriangularPrism => (6, 9, 5),
            CellType::Parallelepiped => (8, 12, 6),
        }
    }

    pub fn from_f_vector(f: (usize, usize, usize)) -> Option<CellType> {
        CellType::ALL.into_iter().find(|t| t.f_vector() == f)
    }

    /// Whether the fan of this type is centrally symmetric.
    pub fn is_symmetric(self) -> bool {
        matches!(self, CellType::Octahedron | CellType::Parallelepiped)
    }
}

impl fmt::Display for CellType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for CellType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CellType::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| {
                let tags: Vec<&str> = CellType::ALL.iter().map(|t| t.tag()).collect();
                format!("unknown type {s:?} (expected one of {})", tags.join(", "))
            })
    }
}
