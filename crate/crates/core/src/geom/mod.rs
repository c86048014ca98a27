//! Exact rational geometry of fans in 3-space.

pub mod fan;
pub mod rational;

use thiserror::Error;

pub use fan::{
    is_jammed_geometric, normal_fan, verify_complete, witness, CompletenessIssue, CompletenessReport,
    GeometricFan, GeometricJammedCertificate, NegationCertificate, RayPairing,
};
pub use rational::{Matrix3, Rat, Vec3};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("malformed rational {0:?} (expected \"p/q\" with q > 0)")]
    MalformedRational(String),
    #[error("ray {0} is the zero vector")]
    ZeroRay(usize),
    #[error("{rays} ray vectors given but the cells use {labels} labels")]
    RayCount { rays: usize, labels: usize },
    #[error("fan is not complete ({} failed local conditions)", .0.len())]
    Incomplete(Vec<CompletenessIssue>),
    #[error("invalid fan JSON: {0}")]
    Json(String),
}
