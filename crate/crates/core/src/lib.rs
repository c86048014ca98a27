pub mod cell_type;
pub mod cells;
pub mod delaunay;
pub mod enumerate;
pub mod fan;
pub mod geom;
pub mod lattice;
pub mod report;

pub use cell_type::CellType;
